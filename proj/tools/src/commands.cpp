#include "asyncbcd/app/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "asyncbcd/analysis.hpp"
#include "asyncbcd/app/svg.hpp"
#include "asyncbcd/trace_io.hpp"

namespace asyncbcd::app {

namespace fs = std::filesystem;

namespace {

std::string short_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

bool lemmas_failed(const BoundReportInput& r) { return r.lemmas && !r.lemmas->pass(); }

double parse_value(const std::string& param, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("sweep." + param, "'" + value + "' is not a number");
  }
}

std::size_t parse_count(const std::string& param, const std::string& value) {
  const double v = parse_value(param, value);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw ConfigError("sweep." + param, "'" + value + "' is not a nonnegative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::unavailable: return "n/a";
    case BoundStatus::pass: return "pass";
    case BoundStatus::fail: return "fail";
    case BoundStatus::informational_pass: return "informational-pass";
    case BoundStatus::informational_fail: return "informational-fail";
  }
  return "?";
}

RunOutcome execute(const Problem& p) {
  RunOutcome o;
  ScheduleStream stream(p.schedule);
  o.trace = run(p.objective, p.partition, stream, p.x0, p.gamma, p.options);
  if (p.objective.f_star) o.initial_gap = eval_value(p.objective, p.x0) - *p.objective.f_star;

  auto& r = o.report;
  r.gamma = p.gamma;
  r.informational = p.beyond_gamma0;
  const std::size_t n = p.schedule.processors, B = p.schedule.delay_bound;
  const auto& cert = p.objective.certificate;
  if (cert && p.objective.lipschitz) r.constants = compute_constants(cert->mu, *p.objective.lipschitz, n, B, p.gamma);

  if (o.trace.diverged) {
    r.note = "diverged at t=" + std::to_string(o.trace.steps) + "; gamma is too large";
    o.exit_code = kExitRun;
    return o;
  }
  if (p.options.diagnostics) r.lemmas = check_lemmas(o.trace);
  if (!p.objective.f_star) {
    r.note = "f* unknown; bound not evaluated";
  } else if (o.trace.steps < 2 * B) {
    r.note = "fewer than 2B steps; bound not evaluated";
  } else {
    r.series = estimate_eta(o.trace);
    if (cert && p.gamma * cert->mu < 1.0) {
      r.bound = check_theorem_bound(*r.series, cert->mu, p.gamma);
    } else {
      r.note = cert ? "gamma * mu >= 1; bound not evaluated" : "mu unknown; bound not evaluated";
    }
    try {
      r.fit = fit_contraction(*r.series);
    } catch (const std::invalid_argument&) {
    }
  }

  if (r.bound || r.lemmas) {
    const bool ok = (!r.bound || r.bound->pass) && !lemmas_failed(r);
    if (r.informational) o.status = ok ? BoundStatus::informational_pass : BoundStatus::informational_fail;
    else o.status = ok ? BoundStatus::pass : BoundStatus::fail;
  }
  if (o.status == BoundStatus::fail) o.exit_code = kExitCheck;
  return o;
}

std::string summarize(const RunOutcome& o) {
  std::string s = "objective=" + o.trace.objective + " steps=" + std::to_string(o.trace.steps);
  s += " final_gap=";
  s += o.trace.f_star ? short_real(o.trace.final_value - *o.trace.f_star) : std::string("n/a");
  s += " rho=";
  s += o.report.fit ? short_real(o.report.fit->rho) : std::string("n/a");
  s += " gamma=" + short_real(o.report.gamma);
  s += std::string(" bound=") + to_string(o.status);
  if (o.trace.diverged) s += " diverged";
  if (o.trace.stopped_early) s += " stopped";
  return s;
}

int cmd_run(const fs::path& config, const std::optional<fs::path>& out_dir, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::optional<Problem> p;
  try {
    c = load_config(config);
    p.emplace(build_problem(c));
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  const fs::path dir = out_dir ? *out_dir : fs::path(c.output.directory);

  RunOutcome o = execute(*p);
  try {
    fs::create_directories(dir);
    if (c.output.emit_csv) write_trace_csv(o.trace, dir / "trace.csv");
    if (c.output.emit_report) write_bound_report(o.report, dir / "report.json");
    if (c.output.emit_svg)
      write_file(dir / "convergence.svg", render_svg({series_from_records(o.trace.objective, o.trace.records)},
                                                     o.trace.objective, "iteration t", "f(x(t)) - f*"));
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return kExitRun;
  }
  out << summarize(o) << "\n";
  if (o.trace.diverged)
    err << "run failure: " << o.report.note << " (run.gamma = " << short_real(p->gamma) << ")\n";
  else if (o.exit_code == kExitCheck)
    err << "check failure: bound or lemma violated with gamma <= gamma0\n";
  return o.exit_code;
}

const std::vector<std::string>& sweep_params() {
  static const std::vector<std::string> names{"B", "gamma", "n", "seed"};
  return names;
}

RunConfig apply_sweep_value(RunConfig c, const std::string& param, const std::string& value) {
  if (param == "B") {
    c.schedule.B = parse_count(param, value);
    if (c.schedule.B == 0) throw ConfigError("schedule.B", "the delay bound must be at least 1");
  } else if (param == "gamma") {
    const double g = parse_value(param, value);
    if (!(g > 0.0)) throw ConfigError("run.gamma", "must be positive");
    c.run.gamma = g;
  } else if (param == "n") {
    c.partition.n = parse_count(param, value);
    c.partition.sizes.clear();
    if (c.partition.n == 0) throw ConfigError("partition.n", "must be at least 1");
  } else if (param == "seed") {
    c.schedule.seed = parse_count(param, value);
  } else {
    throw ConfigError("sweep.param", "unknown parameter '" + param + "'");
  }
  return c;
}

int cmd_sweep(const fs::path& config, const std::string& param, const std::vector<std::string>& values,
              std::ostream& out, std::ostream& err) {
  RunConfig base;
  std::vector<std::pair<double, std::string>> order;
  std::map<std::string, Problem> problems;
  try {
    base = load_config(config);
    if (values.empty()) throw ConfigError("sweep.values", "empty list");
    for (const auto& v : values) {
      const double key = parse_value(param, v);
      for (const auto& [k, s] : order)
        if (k == key) throw ConfigError("sweep.values", "duplicate value '" + v + "'");
      order.emplace_back(key, v);
      problems.emplace(v, build_problem(apply_sweep_value(base, param, v)));
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::sort(order.begin(), order.end());

  const fs::path dir = base.output.directory;
  std::string combined = std::string("run_id,") + kTraceHeader + "\n";
  std::string summary = "run_id,value,steps,initial_gap,final_gap,threshold_step,rho,bound\n";
  std::vector<PlotSeries> plot;
  int code = kExitOk;
  const double ratio = base.run.stop_ratio.value_or(1e-3);

  for (const auto& [key, value] : order) {
    const std::string id = param + "=" + value;
    const Problem& p = problems.at(value);
    RunOutcome o = execute(p);

    const std::string body = format_trace_csv(o.trace.records);
    std::istringstream lines(body.substr(body.find('\n') + 1));
    for (std::string line; std::getline(lines, line);) combined += id + "," + line + "\n";

    std::optional<std::size_t> hit;
    if (o.trace.f_star) hit = first_hit(o.trace, ratio * o.initial_gap);
    summary += id + "," + value + "," + std::to_string(o.trace.steps) + ",";
    summary += (o.trace.f_star ? format_real(o.initial_gap) : std::string()) + ",";
    summary += (o.trace.f_star ? format_real(o.trace.final_value - *o.trace.f_star) : std::string()) + ",";
    summary += (hit ? std::to_string(*hit) : std::string()) + ",";
    summary += (o.report.fit ? format_real(o.report.fit->rho) : std::string()) + ",";
    summary += std::string(to_string(o.status)) + "\n";
    plot.push_back(series_from_records(id, o.trace.records));

    try {
      fs::create_directories(dir);
      if (base.output.emit_report) write_bound_report(o.report, dir / ("report_" + id + ".json"));
    } catch (const std::exception& e) {
      err << "output error: " << e.what() << "\n";
      return kExitRun;
    }
    out << id << " " << summarize(o) << " threshold_step=" << (hit ? std::to_string(*hit) : std::string("none"))
        << "\n";
    if (o.exit_code != kExitOk) {
      err << id << ": " << (o.trace.diverged ? "run failure: " + o.report.note : std::string("check failure")) << "\n";
      code = std::max(code, o.exit_code);
    }
  }

  try {
    write_file(dir / "sweep_trace.csv", combined);
    write_file(dir / "sweep_summary.csv", summary);
    write_file(dir / "sweep.svg", render_svg(plot, "gap vs iteration, sweep over " + param, "iteration t",
                                             "f(x(t)) - f*"));
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return kExitRun;
  }
  return code;
}

int cmd_report(const fs::path& in, const fs::path& svg, std::ostream& out, std::ostream& err) {
  std::vector<PlotSeries> plot;
  try {
    std::ifstream file(in);
    if (!file) throw std::invalid_argument("cannot open " + in.string());
    std::string header;
    if (!std::getline(file, header)) throw std::invalid_argument(in.string() + ": empty file");
    if (header.rfind("run_id,", 0) == 0) {
      std::vector<std::string> ids;
      std::map<std::string, std::string> groups;
      for (std::string line; std::getline(file, line);) {
        if (line.empty()) continue;
        const std::string id = line.substr(0, line.find(','));
        if (!groups.count(id)) {
          ids.push_back(id);
          groups[id] = std::string(kTraceHeader) + "\n";
        }
        groups[id] += line.substr(line.find(',') + 1) + "\n";
      }
      for (const auto& id : ids) {
        std::istringstream body(groups[id]);
        plot.push_back(series_from_records(id, parse_trace_csv(body, in.string() + " [" + id + "]")));
      }
    } else {
      plot.push_back(series_from_records(in.stem().string(), read_trace_csv(in)));
    }
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    write_file(svg, render_svg(plot, in.filename().string(), "iteration t", "f(x(t)) - f*"));
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return kExitRun;
  }
  out << "wrote " << svg.string() << " (" << plot.size() << " series)\n";
  return kExitOk;
}

}  // namespace asyncbcd::app
