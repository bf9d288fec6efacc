#include "asyncbcd/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace asyncbcd {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void put(std::string& out, const std::optional<double>& v) {
  out += ',';
  if (v) out += format_real(*v);
}

void put(std::string& out, const std::optional<LemmaPair>& p) {
  put(out, p ? std::optional<double>(p->lhs) : std::nullopt);
  put(out, p ? std::optional<double>(p->rhs) : std::nullopt);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::string format_trace_csv(const std::vector<TraceRecord>& records) {
  std::string out = kTraceHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.t);
    put(out, r.f_true);
    put(out, r.gap);
    put(out, r.grad_norm_sq);
    put(out, r.s_norm_sq);
    out += ',' + std::to_string(r.max_staleness);
    put(out, r.lemma1);
    put(out, r.lemma2);
    put(out, r.lemma3);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_trace_csv(trace.records);
}

std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open trace " + path.string());
  return parse_trace_csv(in, path.string());
}

std::vector<TraceRecord> parse_trace_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument(source + ": empty trace file");
  const auto header = split(line);
  const auto expected = split(kTraceHeader);
  std::size_t first = header.size();
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == expected[0]) {
      first = c;
      break;
    }
  if (first + expected.size() > header.size())
    throw std::invalid_argument(source + ":1: header does not contain the trace columns");
  for (std::size_t c = 0; c < expected.size(); ++c)
    if (header[first + c] != expected[c])
      throw std::invalid_argument(source + ":1: expected column '" + expected[c] + "', found '" + header[first + c] + "'");

  std::vector<TraceRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() < first + expected.size())
      throw std::invalid_argument(source + ":" + std::to_string(line_no) + ": too few columns");
    auto cell = [&](std::size_t c) -> const std::string& { return cells[first + c]; };
    auto real = [&](std::size_t c) -> std::optional<double> {
      const auto& s = cell(c);
      if (s.empty()) return std::nullopt;
      double v = 0.0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument(source + ":" + std::to_string(line_no) + ": bad number '" + s + "'");
      return v;
    };
    auto integer = [&](std::size_t c) {
      const auto& s = cell(c);
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument(source + ":" + std::to_string(line_no) + ": bad integer '" + s + "'");
      return v;
    };
    auto pair = [&](std::size_t c) -> std::optional<LemmaPair> {
      const auto l = real(c), r = real(c + 1);
      if (!l || !r) return std::nullopt;
      return LemmaPair{*l, *r};
    };
    TraceRecord r;
    r.t = integer(0);
    const auto f = real(1);
    if (!f) throw std::invalid_argument(source + ":" + std::to_string(line_no) + ": f_true is required");
    r.f_true = *f;
    r.gap = real(2);
    r.grad_norm_sq = real(3);
    r.s_norm_sq = real(4).value_or(0.0);
    r.max_staleness = integer(5);
    r.lemma1 = pair(6);
    r.lemma2 = pair(8);
    r.lemma3 = pair(10);
    records.push_back(r);
  }
  return records;
}

}  // namespace asyncbcd
