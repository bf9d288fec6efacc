#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "asyncbcd/analysis.hpp"
#include "asyncbcd/app/checks.hpp"
#include "asyncbcd/app/commands.hpp"
#include "asyncbcd/app/config.hpp"
#include "asyncbcd/sampling.hpp"
#include "asyncbcd/simulator.hpp"

using namespace asyncbcd;
namespace fs = std::filesystem;

namespace {

constexpr double kPLTol = 1e-10;
constexpr double kGradTol = 1e-5;
constexpr double kFitTol = 1e-6;
constexpr double kRateSlack = 1e-6;
constexpr double kC1Seconds = 1.0;
constexpr double kC2Seconds = 60.0;
constexpr double kC4Seconds = 300.0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::vector<app::GridOutcome>& grid() {
  static const std::vector<app::GridOutcome> runs = app::run_theorem_grid();
  return runs;
}

Verdict c1_synchronous_reduction() {
  const auto start = Clock::now();
  std::size_t mismatches = 0, objectives = 0;
  for (const auto& [name, obj] : app::all_builtins()) {
    for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
      ++objectives;
      const std::size_t m = obj.dimension();
      const auto partition = make_partition(m, EqualSplit{n});
      const double gamma = 0.5 / *obj.lipschitz;
      const Vector x0 = sample_gaussian(m, 1.0, 1, 99).front();
      const auto trace = run(obj, partition, AsyncSchedule(n, 1000, 1), x0, gamma);

      Vector x = x0;
      bool same = trace.steps == 1000 && trace.records.size() == 1000;
      for (std::size_t t = 0; same && t < 1000; ++t) {
        same = trace.records[t].f_true == obj.fn->value(x);
        Vector g(m);
        obj.fn->gradient(x, g);
        for (std::size_t k = 0; k < m; ++k) x[k] = x[k] - gamma * g[k];
      }
      same = same && trace.final_state == x;
      if (!same) ++mismatches;
    }
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < kC1Seconds, std::to_string(objectives - mismatches) + "/" +
                                                       std::to_string(objectives) + " bitwise, " + real(elapsed) + " s"};
}

Verdict c2_theorem_bound() {
  const auto start = Clock::now();
  const auto& runs = grid();
  const double elapsed = seconds_since(start);
  std::size_t failed = 0, short_runs = 0;
  double worst = 0.0;
  for (const auto& o : runs) {
    if (o.diverged || !o.bound.pass) ++failed;
    if (o.steps < 20 * o.c.B || o.bound.windows.empty()) ++short_runs;
    worst = std::max(worst, o.bound.worst_ratio);
  }
  return {failed == 0 && short_runs == 0 && elapsed < kC2Seconds,
          std::to_string(runs.size() - failed) + "/" + std::to_string(runs.size()) +
              " runs, worst ratio " + real(worst) + ", " + real(elapsed) + " s"};
}

Verdict c3_lemmas() {
  std::size_t violations = 0, checked1 = 0, checked2 = 0, checked3 = 0;
  for (const auto& o : grid()) {
    violations += o.lemmas.lemma1.violations + o.lemmas.lemma2.violations + o.lemmas.lemma3.violations;
    checked1 += o.lemmas.lemma1.checked;
    checked2 += o.lemmas.lemma2.checked;
    checked3 += o.lemmas.lemma3.checked;
  }
  return {violations == 0 && checked1 > 0 && checked2 > 0 && checked3 > 0,
          std::to_string(violations) + " violations over " + std::to_string(checked1) + "/" +
              std::to_string(checked2) + "/" + std::to_string(checked3) + " lemma 1/2/3 checks"};
}

Verdict c4_delay_ordering() {
  const auto start = Clock::now();
  const auto base = app::load_config(fs::path(ASYNCBCD_SOURCE_DIR) / "configs" / "logistic.ini");
  std::string detail;
  bool ordered = true;
  for (std::uint64_t seed : {1, 2, 3}) {
    std::optional<std::size_t> previous;
    detail += (detail.empty() ? "" : "; ") + std::string("seed ") + std::to_string(seed) + ":";
    for (const char* B : {"10", "100", "1000"}) {
      auto config = app::apply_sweep_value(base, "B", B);
      config.schedule.seed = seed;
      const auto problem = app::build_problem(config);
      const auto outcome = app::execute(problem);
      const auto hit = first_hit(outcome.trace, *config.run.stop_ratio * outcome.initial_gap);
      detail += std::string(" B=") + B + "->" + (hit ? std::to_string(*hit) : std::string("none"));
      if (!hit || (previous && *hit <= *previous)) ordered = false;
      previous = hit;
    }
  }
  const double elapsed = seconds_since(start);
  return {ordered && elapsed < kC4Seconds, detail + ", " + real(elapsed) + " s"};
}

Verdict c5_rc_to_pl() {
  const auto half = make_builtin(DiagonalQuadraticParams{{1.0, 1.0}});
  const RCParameters rc{2.0, 1.0, {0.0, 0.0}};
  const auto cert = rc_to_pl(rc, 1.0);
  const auto certified = with_rc_certificate(half, rc);
  const auto points = sample_box(2, -5.0, 5.0, 1000, 5);
  const auto pl = check_pl_at(certified, cert, points, kPLTol);
  const auto rc_report = check_rc_at(half, rc, points, kPLTol);
  const bool mu_ok = cert.mu == 1.0;
  return {mu_ok && pl.pass && rc_report.pass,
          "mu=" + real(cert.mu) + " pl=" + (pl.pass ? "pass" : "fail") + " rc=" + (rc_report.pass ? "pass" : "fail") +
              " (worst rc slack " + real(rc_report.worst_slack) + ")"};
}

Verdict c6_pl_sine() {
  const auto obj = make_builtin(PlSineParams{1});
  const auto points = grid_1d(-10.0, 10.0, 10000);
  const auto report = check_pl_at(obj, PLCertificate{1.0 / 32.0, CertificateProvenance::analytic}, points, kPLTol);
  double worst = INFINITY;
  for (const auto& p : points) {
    const double x = p[0];
    const double f = x * x + 3.0 * std::sin(x) * std::sin(x);
    const double g = 2.0 * x + 3.0 * std::sin(2.0 * x);
    if (f < 1e-12) continue;
    worst = std::min(worst, 0.5 * g * g / f);
  }
  return {report.pass && worst >= 1.0 / 32.0,
          "checked " + std::to_string(report.checked) + ", brute-force worst ratio " + real(worst)};
}

Verdict c7_gradients() {
  std::string detail;
  bool ok = true;
  for (const auto& [name, obj] : app::all_builtins()) {
    const auto r = check_gradient_fd(obj, sample_gaussian(obj.dimension(), 3.0, 100, 17), kGradTol);
    ok = ok && r.pass;
    detail += (detail.empty() ? "" : ", ") + name + " " + real(r.max_relative_error);
  }
  return {ok, detail};
}

Verdict c8_schedules() {
  const auto trials = app::run_schedule_trials(200, 8);
  std::size_t failed = 0, adversarial = 0, missed = 0;
  for (const auto& t : trials) {
    if (!t.report.pass) ++failed;
    const auto& s = t.spec;
    if (s.mode == ScheduleMode::adversarial_max && s.processors >= 2 && s.horizon >= 2 * s.delay_bound) {
      ++adversarial;
      if (t.max_staleness != s.delay_bound - 1) ++missed;
    }
  }
  return {failed == 0 && missed == 0 && adversarial > 0,
          std::to_string(trials.size() - failed) + "/" + std::to_string(trials.size()) + " valid, " +
              std::to_string(adversarial - missed) + "/" + std::to_string(adversarial) +
              " adversarial runs reach B-1"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict c9_determinism() {
  const fs::path root = fs::temp_directory_path() / ("asyncbcd_c9_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path config = root / "run.ini";
  std::ofstream(config) << "[objective]\nkind = logistic-l2\nsamples = 300\nfeatures = 12\nlambda = 0.01\n"
                           "[partition]\nn = 4\n[schedule]\nB = 6\nmode = uniform-random\nseed = 9\n"
                           "[run]\nhorizon = 600\ngamma = 0.05\nx0 = gaussian(4)\ndiagnostics = true\n";
  bool same = true;
  std::string detail;
  for (const fs::path& cfg : {config, fs::path(ASYNCBCD_SOURCE_DIR) / "configs" / "quadratic.ini"}) {
    std::string first;
    for (int k = 0; k < 2; ++k) {
      const fs::path out = root / (cfg.stem().string() + std::to_string(k));
      const std::string cmd = std::string("\"") + ASYNCBCD_CLI + "\" run --config \"" + cfg.string() + "\" --out \"" +
                              out.string() + "\" > /dev/null";
      const int status = std::system(cmd.c_str());
      const std::string csv = slurp(out / "trace.csv");
      if (status != 0 || csv.empty()) same = false;
      if (k == 0) first = csv;
      else same = same && csv == first;
    }
    detail += (detail.empty() ? "" : ", ") + cfg.filename().string() + " " + std::to_string(first.size()) + " bytes";
  }
  fs::remove_all(root);
  return {same, detail};
}

Verdict c10_contraction() {
  struct Case {
    Vector eigenvalues;
    double lambda;
  };
  const double gamma = 0.1;
  double worst_fit = 0.0;
  for (const auto& c : {Case{{1.0, 1.0}, 1.0}, Case{{2.0, 2.0, 2.0}, 2.0}, Case{{1.0, 4.0}, 1.0}}) {
    const auto obj = make_builtin(DiagonalQuadraticParams{c.eigenvalues});
    const std::size_t m = c.eigenvalues.size();
    Vector x0(m, 0.0);
    x0[0] = 1.0;
    const auto trace = run(obj, make_partition(m, EqualSplit{m}), AsyncSchedule(m, 60, 1), x0, gamma);
    const auto fit = fit_contraction(estimate_eta(trace));
    const double expected = (1.0 - gamma * c.lambda) * (1.0 - gamma * c.lambda);
    worst_fit = std::max(worst_fit, std::abs(fit.rho - expected) / expected);
  }
  std::size_t fitted = 0, above = 0;
  for (const auto& o : grid()) {
    if (!o.fit) continue;
    ++fitted;
    if (o.fit->rho > 1.0 - o.gamma * o.mu + kRateSlack) ++above;
  }
  return {worst_fit <= kFitTol && above == 0 && fitted > 0,
          "closed-form relative error " + real(worst_fit) + ", " + std::to_string(fitted - above) + "/" +
              std::to_string(fitted) + " grid fits within 1-gamma*mu"};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Verdict()>>> list{
      {"synchronous reduction", c1_synchronous_reduction},
      {"theorem bound grid", c2_theorem_bound},
      {"lemma suite", c3_lemmas},
      {"delay ordering on logistic", c4_delay_ordering},
      {"rc to pl", c5_rc_to_pl},
      {"pl-sine mu=1/32", c6_pl_sine},
      {"gradient finite differences", c7_gradients},
      {"schedule soundness", c8_schedules},
      {"determinism", c9_determinism},
      {"contraction rate", c10_contraction},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int a = 1; a < argc; ++a) selected.push_back(std::strtoul(argv[a], nullptr, 10));
  if (selected.empty())
    for (std::size_t k = 1; k <= criteria().size(); ++k) selected.push_back(k);

  int failures = 0;
  for (std::size_t k : selected) {
    if (k < 1 || k > criteria().size()) {
      std::printf("FAIL C%zu unknown criterion\n", k);
      ++failures;
      continue;
    }
    const auto& [name, fn] = criteria()[k - 1];
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s C%zu %s: %s\n", v.pass ? "PASS" : "FAIL", k, name.c_str(), v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
