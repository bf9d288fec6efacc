#include "asyncbcd/app/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "asyncbcd/analysis.hpp"
#include "asyncbcd/logistic.hpp"
#include "asyncbcd/sampling.hpp"
#include "asyncbcd/trace_io.hpp"

namespace asyncbcd::app {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>> kSchema = {
    {"objective",
     {"kind", "eigenvalues", "dimension", "matrix", "rhs", "certify", "dataset", "samples", "features", "separation",
      "latent-rank", "data-seed", "lambda", "preprocess"}},
    {"partition", {"n", "sizes"}},
    {"schedule", {"B", "mode", "period", "seed"}},
    {"run", {"horizon", "gamma", "x0", "record-every", "diagnostics", "margin-cache", "stop-ratio"}},
    {"output", {"directory", "emit-csv", "emit-svg", "emit-report"}},
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto s = trim(text);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError(key, "expected a real number, got '" + text + "'");
  return v;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto s = trim(text);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ConfigError(key, "expected a nonnegative integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  const auto s = trim(text);
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

Vector to_list(const std::string& key, const std::string& text) {
  Vector out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) out.push_back(to_double(key, item));
  return out;
}

std::string join(const Vector& v, const char* sep = ",") {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += sep;
    out += format_real(v[k]);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> get(const std::string& section, const std::string& key) const {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    const auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  template <class F, class T>
  void read(const std::string& section, const std::string& key, T& out, F convert) const {
    if (auto v = get(section, key)) out = convert(section + "." + key, *v);
  }

 private:
  const pt::ptree& tree_;
};

}  // namespace

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }
  for (const auto& [section, body] : tree) {
    const auto it = kSchema.find(section);
    if (it == kSchema.end()) {
      if (body.empty()) throw ConfigError(section, "keys must live inside a [section]");
      throw ConfigError(section, "unknown section");
    }
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw ConfigError(section + "." + key, "unknown key");
  }

  RunConfig c;
  const Reader r(tree);
  auto as_size = [](const std::string& k, const std::string& v) { return static_cast<std::size_t>(to_unsigned(k, v)); };
  auto as_string = [](const std::string&, const std::string& v) { return v; };

  auto& o = c.objective;
  r.read("objective", "kind", o.kind, as_string);
  r.read("objective", "eigenvalues", o.eigenvalues, to_list);
  r.read("objective", "dimension", o.dimension, as_size);
  if (auto v = r.get("objective", "matrix")) {
    o.matrix.clear();
    if (!v->empty())
      for (const auto& row : split(*v, ';')) o.matrix.push_back(to_list("objective.matrix", row));
  }
  r.read("objective", "rhs", o.rhs, to_list);
  r.read("objective", "certify", o.certify, to_bool);
  r.read("objective", "dataset", o.dataset, as_string);
  r.read("objective", "samples", o.samples, as_size);
  r.read("objective", "features", o.features, as_size);
  r.read("objective", "separation", o.separation, to_double);
  r.read("objective", "latent-rank", o.latent_rank, as_size);
  r.read("objective", "data-seed", o.data_seed, to_unsigned);
  r.read("objective", "lambda", o.lambda, to_double);
  r.read("objective", "preprocess", o.preprocess, to_bool);
  static const std::set<std::string> kinds{"diagonal-quadratic", "pl-sine", "least-squares", "logistic-l2"};
  if (!kinds.count(o.kind))
    throw ConfigError("objective.kind", "unknown kind '" + o.kind +
                                            "' (expected diagonal-quadratic, pl-sine, least-squares or logistic-l2)");

  r.read("partition", "n", c.partition.n, as_size);
  if (auto v = r.get("partition", "sizes")) {
    c.partition.sizes.clear();
    for (double s : to_list("partition.sizes", *v)) {
      if (s < 1 || s != std::floor(s)) throw ConfigError("partition.sizes", "block sizes must be positive integers");
      c.partition.sizes.push_back(static_cast<std::size_t>(s));
    }
    if (!r.get("partition", "n")) c.partition.n = c.partition.sizes.size();
  }
  if (c.partition.n == 0) throw ConfigError("partition.n", "must be at least 1");
  if (!c.partition.sizes.empty() && c.partition.sizes.size() != c.partition.n)
    throw ConfigError("partition.sizes", "lists " + std::to_string(c.partition.sizes.size()) + " blocks but n = " +
                                             std::to_string(c.partition.n));

  r.read("schedule", "B", c.schedule.B, as_size);
  r.read("schedule", "mode", c.schedule.mode, as_string);
  r.read("schedule", "period", c.schedule.period, as_size);
  r.read("schedule", "seed", c.schedule.seed, to_unsigned);
  if (c.schedule.B == 0) throw ConfigError("schedule.B", "the delay bound must be at least 1");
  try {
    parse_schedule_mode(c.schedule.mode);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("schedule.mode", e.what());
  }
  if (c.schedule.period > c.schedule.B) throw ConfigError("schedule.period", "must not exceed B");

  r.read("run", "horizon", c.run.horizon, as_size);
  if (auto v = r.get("run", "gamma")) {
    if (*v == "auto") c.run.gamma.reset();
    else {
      c.run.gamma = to_double("run.gamma", *v);
      if (!(*c.run.gamma > 0.0)) throw ConfigError("run.gamma", "must be positive or auto");
    }
  }
  r.read("run", "x0", c.run.x0, as_string);
  r.read("run", "record-every", c.run.record_every, as_size);
  r.read("run", "diagnostics", c.run.diagnostics, to_bool);
  r.read("run", "margin-cache", c.run.margin_cache, to_bool);
  if (auto v = r.get("run", "stop-ratio")) {
    if (v->empty() || *v == "none") c.run.stop_ratio.reset();
    else c.run.stop_ratio = to_double("run.stop-ratio", *v);
  }
  if (c.run.horizon == 0) throw ConfigError("run.horizon", "must be at least 1");
  if (c.run.record_every == 0) throw ConfigError("run.record-every", "must be at least 1");
  try {
    make_x0(c.run.x0, 1);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("run.x0", e.what());
  }

  r.read("output", "directory", c.output.directory, as_string);
  r.read("output", "emit-csv", c.output.emit_csv, to_bool);
  r.read("output", "emit-svg", c.output.emit_svg, to_bool);
  r.read("output", "emit-report", c.output.emit_report, to_bool);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  auto b = [](bool v) { return v ? "true" : "false"; };
  std::ostringstream out;
  const auto& o = c.objective;
  out << "[objective]\n"
      << "kind = " << o.kind << "\n"
      << "eigenvalues = " << join(o.eigenvalues) << "\n"
      << "dimension = " << o.dimension << "\n";
  std::string rows;
  for (std::size_t k = 0; k < o.matrix.size(); ++k) rows += (k ? ";" : "") + join(o.matrix[k]);
  out << "matrix = " << rows << "\n"
      << "rhs = " << join(o.rhs) << "\n"
      << "certify = " << b(o.certify) << "\n"
      << "dataset = " << o.dataset << "\n"
      << "samples = " << o.samples << "\n"
      << "features = " << o.features << "\n"
      << "separation = " << format_real(o.separation) << "\n"
      << "latent-rank = " << o.latent_rank << "\n"
      << "data-seed = " << o.data_seed << "\n"
      << "lambda = " << format_real(o.lambda) << "\n"
      << "preprocess = " << b(o.preprocess) << "\n\n";
  Vector sizes(c.partition.sizes.begin(), c.partition.sizes.end());
  out << "[partition]\n"
      << "n = " << c.partition.n << "\n";
  if (!sizes.empty()) out << "sizes = " << join(sizes) << "\n";
  out << "\n[schedule]\n"
      << "B = " << c.schedule.B << "\n"
      << "mode = " << c.schedule.mode << "\n"
      << "period = " << c.schedule.period << "\n"
      << "seed = " << c.schedule.seed << "\n\n";
  out << "[run]\n"
      << "horizon = " << c.run.horizon << "\n"
      << "gamma = " << (c.run.gamma ? format_real(*c.run.gamma) : std::string("auto")) << "\n"
      << "x0 = " << c.run.x0 << "\n"
      << "record-every = " << c.run.record_every << "\n"
      << "diagnostics = " << b(c.run.diagnostics) << "\n"
      << "margin-cache = " << b(c.run.margin_cache) << "\n"
      << "stop-ratio = " << (c.run.stop_ratio ? format_real(*c.run.stop_ratio) : std::string("none")) << "\n\n";
  out << "[output]\n"
      << "directory = " << c.output.directory << "\n"
      << "emit-csv = " << b(c.output.emit_csv) << "\n"
      << "emit-svg = " << b(c.output.emit_svg) << "\n"
      << "emit-report = " << b(c.output.emit_report) << "\n";
  return out.str();
}

Vector make_x0(const std::string& spec, std::size_t m) {
  if (spec == "zeros") return Vector(m, 0.0);
  if (spec == "ones") return Vector(m, 1.0);
  const std::string prefix = "gaussian(";
  if (spec.rfind(prefix, 0) == 0 && spec.back() == ')') {
    const auto inner = spec.substr(prefix.size(), spec.size() - prefix.size() - 1);
    std::uint64_t seed = 0;
    auto [p, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), seed);
    if (inner.empty() || ec != std::errc() || p != inner.data() + inner.size())
      throw std::invalid_argument("bad seed in '" + spec + "'");
    return sample_gaussian(m, 1.0, 1, seed).front();
  }
  throw std::invalid_argument("x0 must be zeros, ones or gaussian(<seed>), got '" + spec + "'");
}

namespace {

ObjectiveInstance build_objective(const ObjectiveConfig& o) {
  try {
    if (o.kind == "diagonal-quadratic") return make_builtin(DiagonalQuadraticParams{o.eigenvalues});
    if (o.kind == "pl-sine") return make_builtin(PlSineParams{o.dimension});
    if (o.kind == "least-squares") {
      if (o.matrix.empty()) throw ConfigError("objective.matrix", "least-squares needs a matrix");
      LeastSquaresParams p{o.matrix.size(), o.matrix.front().size(), {}, o.rhs, o.certify};
      for (const auto& row : o.matrix) {
        if (row.size() != p.cols) throw ConfigError("objective.matrix", "rows have different lengths");
        p.matrix.insert(p.matrix.end(), row.begin(), row.end());
      }
      if (o.rhs.size() != p.rows) throw ConfigError("objective.rhs", "needs one entry per matrix row");
      return make_builtin(p);
    }
    Dataset d;
    if (o.dataset == "synthetic") {
      d = generate_synthetic({o.samples, o.features, o.separation, o.data_seed, o.latent_rank});
    } else {
      try {
        d = load_sparse_text(o.dataset);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("objective.dataset", e.what());
      }
    }
    if (o.preprocess) d = preprocess(std::move(d));
    if (o.lambda < 0) throw ConfigError("objective.lambda", "must be nonnegative");
    return make_builtin(LogisticParams{std::move(d), o.lambda});
  } catch (const std::invalid_argument& e) {
    throw ConfigError("objective", e.what());
  }
}

}  // namespace

Problem build_problem(const RunConfig& c) {
  ObjectiveInstance obj = build_objective(c.objective);
  const std::size_t m = obj.dimension();

  std::optional<BlockPartition> part;
  try {
    part = c.partition.sizes.empty() ? make_partition(m, EqualSplit{c.partition.n})
                                     : make_partition(m, ExplicitSizes{c.partition.sizes});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(c.partition.sizes.empty() ? "partition.n" : "partition.sizes", e.what());
  }

  ScheduleSpec spec{part->blocks(), c.run.horizon, c.schedule.B, parse_schedule_mode(c.schedule.mode),
                    c.schedule.period == 0 ? c.schedule.B : c.schedule.period, c.schedule.seed};
  try {
    validate_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(spec.horizon < spec.delay_bound ? "run.horizon" : "schedule.period", e.what());
  }

  Problem p{std::move(obj), *part, spec, make_x0(c.run.x0, m), 0.0, false, std::nullopt, {}};
  if (p.objective.certificate && p.objective.lipschitz)
    p.gamma0 = compute_gamma0(p.objective.certificate->mu, *p.objective.lipschitz, spec.processors, spec.delay_bound);
  if (c.run.gamma) {
    p.gamma = *c.run.gamma;
    p.beyond_gamma0 = !p.gamma0 || p.gamma > *p.gamma0;
  } else {
    if (!p.gamma0) throw ConfigError("run.gamma", "auto needs an objective with known mu and L");
    p.gamma = 0.99 * *p.gamma0;
  }

  p.options.diagnostics = c.run.diagnostics;
  p.options.record_every = c.run.record_every;
  p.options.margin_cache = c.run.margin_cache;
  if (c.run.margin_cache && p.objective.fn->margin_model() == nullptr)
    throw ConfigError("run.margin-cache", "objective '" + p.objective.name() + "' has no margin model");
  if (c.run.stop_ratio) {
    if (!p.objective.f_star) throw ConfigError("run.stop-ratio", "needs an objective with known f*");
    p.options.stop_gap = *c.run.stop_ratio * (eval_value(p.objective, p.x0) - *p.objective.f_star);
  }
  return p;
}

}  // namespace asyncbcd::app
