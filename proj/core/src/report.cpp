#include "asyncbcd/report.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace asyncbcd {

namespace {

nlohmann::json real(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json tally(const LemmaTally& t) {
  nlohmann::json j{{"checked", t.checked}, {"violations", t.violations}, {"worst_excess", real(t.worst_excess)}};
  j["first_violation"] = t.first_violation ? nlohmann::json(*t.first_violation) : nlohmann::json(nullptr);
  return j;
}

}  // namespace

std::string bound_report_json(const BoundReportInput& in) {
  nlohmann::ordered_json j;
  j["gamma"] = real(in.gamma);
  j["gamma0"] = in.constants ? real(in.constants->gamma0) : nlohmann::json(nullptr);
  if (in.constants) {
    const auto& c = *in.constants;
    j["constants"] = {{"mu", real(c.mu)}, {"L", real(c.L)}, {"n", c.n},         {"B", c.B},
                      {"C1", real(c.C1)}, {"C2", real(c.C2)}, {"C3", real(c.C3)}, {"C4", real(c.C4)},
                      {"A1", real(c.A1)}, {"A2", real(c.A2)}};
  } else {
    j["constants"] = nullptr;
  }
  j["eta"] = in.series ? real(in.series->eta) : nlohmann::json(nullptr);
  nlohmann::json windows = nlohmann::json::array();
  if (in.bound) {
    for (const auto& w : in.bound->windows) {
      double worst = 0.0;
      if (w.alpha) worst = *w.alpha;
      if (w.beta) worst = std::max(worst, *w.beta);
      windows.push_back({{"k", w.k},
                         {"alpha", w.alpha ? real(*w.alpha) : nlohmann::json(nullptr)},
                         {"beta", w.beta ? real(*w.beta) : nlohmann::json(nullptr)},
                         {"bound", real(w.bound)},
                         {"slack", real(w.bound - worst)}});
    }
  }
  j["windows"] = std::move(windows);
  if (in.bound) {
    j["worst_ratio"] = real(in.bound->worst_ratio);
    j["first_violation"] = in.bound->first_violation ? nlohmann::json(*in.bound->first_violation) : nlohmann::json(nullptr);
  }
  if (in.lemmas)
    j["lemmas"] = {{"lemma1", tally(in.lemmas->lemma1)}, {"lemma2", tally(in.lemmas->lemma2)}, {"lemma3", tally(in.lemmas->lemma3)}};
  if (in.fit)
    j["contraction"] = {{"rho", real(in.fit->rho)}, {"residual", real(in.fit->residual)}, {"windows", in.fit->windows_used}};
  j["informational"] = in.informational;
  j["pass"] = in.bound ? nlohmann::json(in.bound->pass) : nlohmann::json(nullptr);
  if (!in.note.empty()) j["note"] = in.note;
  return j.dump(2) + "\n";
}

void write_bound_report(const BoundReportInput& in, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << bound_report_json(in);
}

}  // namespace asyncbcd
