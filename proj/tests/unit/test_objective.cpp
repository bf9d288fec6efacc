#include <gtest/gtest.h>

#include <cmath>

#include "asyncbcd/builtins.hpp"
#include "asyncbcd/sampling.hpp"

using namespace asyncbcd;

namespace {

ObjectiveInstance half_norm(std::size_t m) { return make_builtin(DiagonalQuadraticParams{Vector(m, 1.0)}); }

LeastSquaresParams one_zero() { return {2, 2, {1, 0, 0, 0}, {1, 0}, true}; }

}  // namespace

TEST(Objective, ValueExamples) {
  EXPECT_DOUBLE_EQ(eval_value(half_norm(2), std::vector<double>{3, 4}), 12.5);
  EXPECT_EQ(eval_value(make_builtin(PlSineParams{1}), std::vector<double>{0}), 0.0);
}

TEST(Objective, DimensionMismatchNamesBoth) {
  try {
    eval_value(half_norm(2), std::vector<double>{1, 2, 3});
    FAIL();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('2'), std::string::npos);
    EXPECT_NE(msg.find('3'), std::string::npos);
  }
}

TEST(Objective, BlockGradientExamples) {
  const auto p = make_partition(2, EqualSplit{2});
  EXPECT_EQ(eval_block_gradient(half_norm(2), std::vector<double>{3, 4}, 1, p), Vector{4});
  const auto q = make_builtin(DiagonalQuadraticParams{{1, 4}});
  EXPECT_EQ(eval_block_gradient(q, std::vector<double>{1, 1}, 1, p), Vector{4});
  EXPECT_THROW(eval_block_gradient(q, std::vector<double>{1, 1}, 2, p), std::out_of_range);
}

TEST(Objective, BlockGradientsConcatenateToGradient) {
  std::vector<ObjectiveInstance> objs{
      make_builtin(DiagonalQuadraticParams{{1, 2, 3, 4, 5}}),
      make_builtin(PlSineParams{5}),
      make_builtin(LeastSquaresParams{3, 5, {1, 2, 0, 1, 0, 0, 1, 1, 0, 2, 1, 3, 1, 1, 2}, {1, 2, 3}, false}),
  };
  const auto p = make_partition(5, ExplicitSizes{{2, 1, 2}});
  for (const auto& obj : objs)
    for (const auto& x : sample_box(5, -3, 3, 50, 11)) {
      const auto g = eval_gradient(obj, x);
      Vector cat;
      for (std::size_t i = 0; i < 3; ++i) {
        const auto gi = eval_block_gradient(obj, x, i, p);
        cat.insert(cat.end(), gi.begin(), gi.end());
      }
      EXPECT_EQ(cat, g) << obj.name();
    }
}

TEST(Objective, BuiltinCertificates) {
  const auto sine = make_builtin(PlSineParams{1});
  ASSERT_TRUE(sine.certificate);
  EXPECT_EQ(sine.certificate->mu, 1.0 / 32.0);

  const auto q = make_builtin(DiagonalQuadraticParams{{1, 4}});
  EXPECT_EQ(q.certificate->mu, 1.0);
  EXPECT_EQ(*q.lipschitz, 4.0);
  EXPECT_EQ(*q.f_star, 0.0);

  const auto ls = make_builtin(one_zero());
  EXPECT_NEAR(ls.certificate->mu, 1.0, 1e-15);
  EXPECT_NEAR(*ls.lipschitz, 1.0, 1e-15);
}

TEST(Objective, LeastSquaresRejectsUnreachableRhsWhenCertifying) {
  EXPECT_THROW(make_builtin(LeastSquaresParams{2, 2, {1, 0, 0, 0}, {1, 1}, true}), std::invalid_argument);
  const auto obj = make_builtin(LeastSquaresParams{2, 2, {1, 0, 0, 0}, {1, 1}, false});
  EXPECT_FALSE(obj.certificate);
  EXPECT_NEAR(*obj.f_star, 0.5, 1e-15);
}

TEST(Objective, LeastSquaresMuMatchesGridMinimum) {
  // Brute-force PL ratio over a 200 x 200 grid on [-3, 3]^2, computed directly from the formula.
  double worst = 1e300;
  for (const auto& z : grid_2d(-3, 3, 200)) {
    const double r = z[0] - 1.0;
    const double gap = 0.5 * r * r;
    if (gap < 1e-12) continue;
    worst = std::min(worst, 0.5 * r * r / gap);
  }
  const auto obj = make_builtin(one_zero());
  EXPECT_NEAR(worst, obj.certificate->mu, 1e-12);
  EXPECT_TRUE(check_pl_at(obj, *obj.certificate, grid_2d(-3, 3, 200)).pass);
}

TEST(Objective, RcToPl) {
  EXPECT_EQ(rc_to_pl({1, 1, {0}}, 1).mu, 1.0);
  EXPECT_EQ(rc_to_pl({1, 2, {0}}, 0.5).mu, 0.5);
  EXPECT_EQ(rc_to_pl({1, 2, {0}}, 0.5).provenance, CertificateProvenance::rc_derived);
  EXPECT_THROW(rc_to_pl({1, 1, {0}}, 0.0), std::invalid_argument);
}

TEST(Objective, ValidRcCertificateImpliesPl) {
  // For 0.5|x|^2, <g, z> = |z|^2 and |g|^2 = |z|^2, so RC(2, 2) holds with equality.
  const auto obj = with_rc_certificate(half_norm(2), RCParameters{2, 2, {0, 0}});
  const auto pts = sample_box(2, -5, 5, 1000, 3);
  EXPECT_TRUE(check_rc_at(obj, *obj.rc, pts).pass);
  EXPECT_DOUBLE_EQ(obj.certificate->mu, 0.25);
  EXPECT_TRUE(check_pl_at(obj, *obj.certificate, pts).pass);
}

TEST(Objective, RcCheckRejectsTooStrongParameters) {
  const auto obj = half_norm(2);
  EXPECT_FALSE(check_rc_at(obj, RCParameters{2, 1, {0, 0}}, sample_box(2, -5, 5, 100, 3)).pass);
}

TEST(Objective, PlCheckOnQuadratic) {
  const auto q = make_builtin(DiagonalQuadraticParams{{1, 4}});
  const auto pts = sample_box(2, -5, 5, 1000, 9);
  const auto ok = check_pl_at(q, PLCertificate{1.0}, pts);
  EXPECT_TRUE(ok.pass);
  EXPECT_GE(ok.worst_ratio, 1.0 - 1e-12);
  std::vector<Vector> axis{{1, 0}, {2, 1e-3}, {-3, 0}};
  const auto bad = check_pl_at(q, PLCertificate{1.5}, axis);
  EXPECT_FALSE(bad.pass);
  EXPECT_NEAR(bad.worst_ratio, 1.0, 1e-12);
}

TEST(Objective, PlCheckSkipsMinimizerAndNeedsFStar) {
  const auto q = half_norm(1);
  const auto r = check_pl_at(q, PLCertificate{1.0}, {{0.0}, {1e-7}, {1.0}});
  EXPECT_EQ(r.skipped, 2u);
  EXPECT_EQ(r.checked, 1u);
  auto no_star = q;
  no_star.f_star.reset();
  EXPECT_THROW(check_pl_at(no_star, PLCertificate{1.0}, {{1.0}}), std::invalid_argument);
}

TEST(Objective, PlSineCertificate) {
  const auto obj = make_builtin(PlSineParams{1});
  const auto r = check_pl_at(obj, *obj.certificate, sample_box(1, -10, 10, 1000, 5));
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.worst_ratio, 1.0 / 32.0);
}

TEST(Objective, PlSineIsNonconvex) {
  const auto obj = make_builtin(PlSineParams{1});
  // Witness: the midpoint of 1.3 and 2.1 sits above the chord.
  const Vector x{1.3}, y{2.1}, mid{1.7};
  EXPECT_GT(eval_value(obj, mid), 0.5 * eval_value(obj, x) + 0.5 * eval_value(obj, y));
}

TEST(Objective, GradientsMatchFiniteDifferences) {
  std::vector<ObjectiveInstance> objs{
      make_builtin(DiagonalQuadraticParams{{1, 2, 3, 4}}),
      make_builtin(PlSineParams{4}),
      make_builtin(LeastSquaresParams{3, 4, {1, 2, 0, 1, 0, 0, 1, 1, 1, 2, 1, 2}, {1, 2, 3}, false}),
  };
  for (const auto& obj : objs) {
    const auto r = check_gradient_fd(obj, sample_box(4, -3, 3, 100, 21));
    EXPECT_TRUE(r.pass) << obj.name() << " " << r.max_relative_error;
  }
}

TEST(Objective, ValuesStayAboveFStar) {
  std::vector<ObjectiveInstance> objs{
      make_builtin(DiagonalQuadraticParams{{1, 2, 3}}),
      make_builtin(PlSineParams{3}),
      make_builtin(LeastSquaresParams{2, 3, {1, 1, 0, 0, 1, 1}, {1, 2}, true}),
  };
  for (const auto& obj : objs)
    for (const auto& x : sample_box(3, -10, 10, 200, 2)) EXPECT_GE(eval_value(obj, x), *obj.f_star);
}
