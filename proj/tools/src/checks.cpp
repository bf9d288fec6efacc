#include "asyncbcd/app/checks.hpp"

#include <cstdio>
#include <ostream>

#include "asyncbcd/sampling.hpp"
#include "asyncbcd/simulator.hpp"

namespace asyncbcd::app {

namespace {

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string describe(const std::vector<NamedObjective>& objs, const GridCase& c) {
  return objs[c.objective].name + " n=" + std::to_string(c.n) + " B=" + std::to_string(c.B) + " mode=" +
         to_string(c.mode) + " seed=" + std::to_string(c.seed);
}

int suite_theorem(std::ostream& out, bool lemmas) {
  const auto objs = grid_objectives();
  std::size_t failed = 0, total = 0;
  for (const auto& c : theorem_grid()) {
    const auto o = run_grid_case(objs, c);
    const bool ok = !o.diverged && (lemmas ? o.lemmas.pass() : o.bound.pass);
    ++total;
    failed += ok ? 0 : 1;
    out << verdict(ok) << " " << o.label;
    if (lemmas)
      out << " lemma1=" << o.lemmas.lemma1.violations << "/" << o.lemmas.lemma1.checked
          << " lemma2=" << o.lemmas.lemma2.violations << "/" << o.lemmas.lemma2.checked
          << " lemma3=" << o.lemmas.lemma3.violations << "/" << o.lemmas.lemma3.checked << "\n";
    else
      out << " windows=" << o.bound.windows.size() << " worst_ratio=" << real(o.bound.worst_ratio) << "\n";
  }
  out << (failed ? "FAIL " : "PASS ") << total - failed << "/" << total << " cases\n";
  return failed ? 3 : 0;
}

int suite_pl(std::ostream& out) {
  std::size_t failed = 0;
  auto report = [&](const std::string& name, const PLCheckReport& r) {
    failed += r.pass ? 0 : 1;
    out << verdict(r.pass) << " " << name << " checked=" << r.checked << " skipped=" << r.skipped
        << " worst_ratio=" << real(r.worst_ratio) << "\n";
  };
  const auto sine = make_builtin(PlSineParams{1});
  report("pl-sine grid[-10,10] mu=1/32", check_pl_at(sine, *sine.certificate, grid_1d(-10.0, 10.0, 10000)));
  for (const auto& [name, obj] : all_builtins())
    report(name + " sampled", check_pl_at(obj, *obj.certificate, sample_box(obj.dimension(), -5.0, 5.0, 1000, 7)));

  const auto half = make_builtin(DiagonalQuadraticParams{{1.0, 1.0}});
  const RCParameters rc{2.0, 2.0, {0.0, 0.0}};
  const auto points = sample_box(2, -5.0, 5.0, 1000, 11);
  const auto rc_report = check_rc_at(half, rc, points);
  failed += rc_report.pass ? 0 : 1;
  out << verdict(rc_report.pass) << " 0.5|x|^2 RC(2,2) worst_slack=" << real(rc_report.worst_slack) << "\n";
  const auto certified = with_rc_certificate(half, rc);
  report("0.5|x|^2 RC(2,2) -> PL mu=" + real(certified.certificate->mu),
         check_pl_at(certified, *certified.certificate, points));
  return failed ? 3 : 0;
}

int suite_grad(std::ostream& out) {
  std::size_t failed = 0;
  for (const auto& [name, obj] : all_builtins()) {
    const auto r = check_gradient_fd(obj, sample_gaussian(obj.dimension(), 3.0, 100, 5));
    failed += r.pass ? 0 : 1;
    out << verdict(r.pass) << " " << name << " max_relative_error=" << real(r.max_relative_error) << "\n";
  }
  return failed ? 3 : 0;
}

int suite_schedule(std::ostream& out) {
  std::size_t failed = 0;
  for (const auto& trial : run_schedule_trials(200, 2024)) {
    const auto& s = trial.spec;
    bool ok = trial.report.pass;
    if (s.mode == ScheduleMode::adversarial_max && s.processors >= 2 && s.horizon >= 2 * s.delay_bound)
      ok = ok && trial.max_staleness == s.delay_bound - 1;
    failed += ok ? 0 : 1;
    out << verdict(ok) << " mode=" << to_string(s.mode) << " n=" << s.processors << " B=" << s.delay_bound
        << " T=" << s.horizon << " seed=" << s.seed << " max_staleness=" << trial.max_staleness;
    if (!trial.report.pass) out << " " << trial.report.message;
    out << "\n";
  }
  return failed ? 3 : 0;
}

}  // namespace

std::vector<NamedObjective> grid_objectives() {
  std::vector<NamedObjective> out;
  out.push_back({"diag-quadratic", make_builtin(DiagonalQuadraticParams{{1.0, 2.0, 3.0, 4.0}})});
  out.push_back({"pl-sine", make_builtin(PlSineParams{4})});
  const Vector a{1.0, 0.0, 1.0, 0.0,  //
                 0.0, 1.0, 0.0, 1.0,  //
                 1.0, 1.0, 1.0, 1.0};
  const Vector x_ref{1.0, -1.0, 0.5, 2.0};
  Vector b(3, 0.0);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 4; ++c) b[r] += a[r * 4 + c] * x_ref[c];
  out.push_back({"least-squares", make_builtin(LeastSquaresParams{3, 4, a, b, true})});
  return out;
}

std::vector<NamedObjective> all_builtins() {
  auto out = grid_objectives();
  auto data = preprocess(generate_synthetic({200, 10, 1.0, 3, 0}));
  out.push_back({"logistic-l2", make_builtin(LogisticParams{std::move(data), 0.01})});
  return out;
}

std::vector<GridCase> theorem_grid() {
  std::vector<GridCase> out;
  for (std::size_t obj = 0; obj < 3; ++obj)
    for (std::size_t n : {1, 2, 4})
      for (std::size_t B : {1, 2, 5})
        for (auto mode : {ScheduleMode::periodic, ScheduleMode::uniform_random, ScheduleMode::adversarial_max})
          for (std::uint64_t seed = 1; seed <= 5; ++seed) out.push_back({obj, n, B, mode, seed});
  return out;
}

GridOutcome run_grid_case(const std::vector<NamedObjective>& objectives, const GridCase& c) {
  const auto& obj = objectives.at(c.objective).objective;
  GridOutcome o;
  o.c = c;
  o.label = describe(objectives, c);
  o.mu = obj.certificate->mu;
  o.gamma = 0.99 * compute_gamma0(o.mu, *obj.lipschitz, c.n, c.B);

  const auto partition = make_partition(obj.dimension(), EqualSplit{c.n});
  ScheduleStream stream({c.n, kGridWindows * c.B, c.B, c.mode, c.B, c.seed});
  const Vector x0 = sample_gaussian(obj.dimension(), 2.0, 1, 1000 + c.seed).front();
  SimulationOptions opts;
  opts.diagnostics = true;
  const auto trace = run(obj, partition, stream, x0, o.gamma, opts);
  o.steps = trace.steps;
  o.diverged = trace.diverged;
  if (o.diverged) return o;
  const auto series = estimate_eta(trace);
  o.bound = check_theorem_bound(series, o.mu, o.gamma);
  o.lemmas = check_lemmas(trace);
  try {
    o.fit = fit_contraction(series);
  } catch (const std::invalid_argument&) {
  }
  return o;
}

std::vector<GridOutcome> run_theorem_grid() {
  const auto objs = grid_objectives();
  std::vector<GridOutcome> out;
  for (const auto& c : theorem_grid()) out.push_back(run_grid_case(objs, c));
  return out;
}

std::vector<ScheduleTrial> run_schedule_trials(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  const ScheduleMode modes[] = {ScheduleMode::synchronous, ScheduleMode::periodic, ScheduleMode::uniform_random,
                                ScheduleMode::adversarial_max};
  std::vector<ScheduleTrial> out;
  for (std::size_t k = 0; k < count; ++k) {
    ScheduleSpec s;
    s.mode = modes[uniform_int(rng, 0, 3)];
    s.processors = uniform_int(rng, 1, 8);
    s.delay_bound = s.mode == ScheduleMode::synchronous ? 1 : uniform_int(rng, 1, 12);
    s.horizon = uniform_int(rng, s.delay_bound, 6 * s.delay_bound + 10);
    s.period = s.mode == ScheduleMode::periodic ? uniform_int(rng, 1, s.delay_bound) : 1;
    s.seed = uniform_int(rng, 0, 1'000'000);
    const auto schedule = generate_schedule(s);
    out.push_back({s, validate_schedule(schedule), schedule.max_active_staleness()});
  }
  return out;
}

const std::vector<std::string>& check_suites() {
  static const std::vector<std::string> names{"lemmas", "pl", "grad", "schedule", "theorem"};
  return names;
}

int run_check_suite(const std::string& suite, std::ostream& out) {
  if (suite == "lemmas") return suite_theorem(out, true);
  if (suite == "theorem") return suite_theorem(out, false);
  if (suite == "pl") return suite_pl(out);
  if (suite == "grad") return suite_grad(out);
  if (suite == "schedule") return suite_schedule(out);
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace asyncbcd::app
