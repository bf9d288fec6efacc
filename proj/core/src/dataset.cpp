#include "asyncbcd/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "asyncbcd/sampling.hpp"

namespace asyncbcd {

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.samples < 2) throw std::invalid_argument("synthetic dataset needs at least 2 samples");
  if (spec.features == 0) throw std::invalid_argument("synthetic dataset needs at least 1 feature");
  Rng rng(spec.seed);
  const std::size_t m = spec.features;

  Dataset d;
  d.samples = spec.samples;
  d.features = m;
  d.values.assign(spec.samples * m, 0.0);
  d.labels.resize(spec.samples);
  d.provenance = {DatasetProvenance::Kind::synthetic, spec.seed, {}};

  if (spec.latent_rank == 0) {
    Vector u(m);
    double u2 = 0.0;
    do {
      for (auto& v : u) v = standard_normal(rng);
      u2 = squared_norm(u);
    } while (u2 == 0.0);
    for (auto& v : u) v /= std::sqrt(u2);
    for (std::size_t k = 0; k < spec.samples; ++k) {
      d.labels[k] = static_cast<int>(k % 2);
      const double shift = (d.labels[k] == 1 ? 0.5 : -0.5) * spec.separation;
      auto r = d.row(k);
      for (std::size_t c = 0; c < m; ++c) r[c] = standard_normal(rng) + shift * u[c];
    }
    return d;
  }

  const std::size_t rank = spec.latent_rank;
  const double scale = 1.0 / std::sqrt(static_cast<double>(rank));
  // factors[l * m + c]: column l of the m x rank loading matrix.
  Vector factors(rank * m);
  for (auto& v : factors) v = scale * standard_normal(rng);
  Vector g(rank);
  for (std::size_t k = 0; k < spec.samples; ++k) {
    d.labels[k] = static_cast<int>(k % 2);
    const double shift = (d.labels[k] == 1 ? 0.5 : -0.5) * spec.separation;
    for (auto& v : g) v = standard_normal(rng);
    auto r = d.row(k);
    for (std::size_t c = 0; c < m; ++c) {
      double s = shift * factors[c];
      for (std::size_t l = 0; l < rank; ++l) s += g[l] * factors[l * m + c];
      r[c] = s;
    }
  }
  return d;
}

namespace {

[[noreturn]] void parse_error(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  throw std::invalid_argument(path.string() + ":" + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view s, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) parse_error(path, line, "cannot parse number '" + std::string(s) + "'");
  return v;
}

}  // namespace

Dataset load_sparse_text(const std::filesystem::path& path, std::size_t features) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dataset file " + path.string());

  struct Entry {
    std::size_t index;
    double value;
  };
  std::vector<std::vector<Entry>> rows;
  std::vector<int> labels;
  std::size_t widest = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;

    const double y = parse_double(tok, path, line_no);
    int label = 0;
    if (y == 1.0) label = 1;
    else if (y == 0.0 || y == -1.0) label = 0;
    else parse_error(path, line_no, "label must be 0, 1, -1 or +1, got '" + tok + "'");

    std::vector<Entry> entries;
    std::size_t previous = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0) parse_error(path, line_no, "expected idx:val, got '" + tok + "'");
      std::size_t idx = 0;
      const std::string_view idx_text(tok.data(), colon);
      auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
      if (ec != std::errc() || ptr != idx_text.data() + idx_text.size() || idx == 0)
        parse_error(path, line_no, "bad feature index in '" + tok + "'");
      if (idx <= previous) parse_error(path, line_no, "feature indices must be strictly increasing");
      if (features != 0 && idx > features)
        parse_error(path, line_no, "feature index " + std::to_string(idx) + " exceeds declared dimension " +
                                       std::to_string(features));
      previous = idx;
      entries.push_back({idx - 1, parse_double(std::string_view(tok).substr(colon + 1), path, line_no)});
    }
    widest = std::max(widest, previous);
    rows.push_back(std::move(entries));
    labels.push_back(label);
  }

  Dataset d;
  d.samples = rows.size();
  d.features = features != 0 ? features : widest;
  d.values.assign(d.samples * d.features, 0.0);
  d.labels = std::move(labels);
  d.provenance = {DatasetProvenance::Kind::loaded, 0, path.string()};
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (const auto& e : rows[k]) d.values[k * d.features + e.index] = e.value;
  return d;
}

void save_sparse_text(const Dataset& d, const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t k = 0; k < d.samples; ++k) {
    std::fprintf(f, "%d", d.labels[k]);
    for (std::size_t c = 0; c < d.features; ++c) {
      const double v = d.at(k, c);
      if (v != 0.0) std::fprintf(f, " %zu:%.17g", c + 1, v);
    }
    std::fputc('\n', f);
  }
  std::fclose(f);
}

Dataset standardize(Dataset d) {
  if (d.samples < 2) throw std::invalid_argument("standardize needs at least 2 samples");
  const double count = static_cast<double>(d.samples);
  for (std::size_t c = 0; c < d.features; ++c) {
    double mean = 0.0;
    for (std::size_t k = 0; k < d.samples; ++k) mean += d.at(k, c);
    mean /= count;
    double var = 0.0;
    for (std::size_t k = 0; k < d.samples; ++k) {
      const double dev = d.at(k, c) - mean;
      var += dev * dev;
    }
    var /= count - 1.0;
    const double sd = std::sqrt(var);
    for (std::size_t k = 0; k < d.samples; ++k) {
      double& v = d.values[k * d.features + c];
      v = sd > 0.0 ? (v - mean) / sd : 0.0;
    }
  }
  return d;
}

Dataset normalize_rows(Dataset d) {
  for (std::size_t k = 0; k < d.samples; ++k) {
    auto r = d.row(k);
    const double len = norm(r);
    if (len == 0.0) throw std::invalid_argument("row " + std::to_string(k) + " is all zero and cannot be normalized");
    for (auto& v : r) v /= len;
  }
  return d;
}

Dataset preprocess(Dataset d) { return normalize_rows(standardize(std::move(d))); }

}  // namespace asyncbcd
