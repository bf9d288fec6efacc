#include <gtest/gtest.h>

#include "asyncbcd/analysis.hpp"
#include "asyncbcd/app/config.hpp"

using namespace asyncbcd;
using namespace asyncbcd::app;

namespace {

std::string error_key(const std::string& text) {
  try {
    build_problem(parse_config(text));
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST(Config, DefaultsRoundTrip) {
  const RunConfig c;
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, RoundTripKeepsEveryField) {
  const RunConfig c = parse_config(R"(
[objective]
kind = least-squares
matrix = 1,0.1; 0,3
rhs = 0.30000000000000004, -2
certify = false

[partition]
sizes = 1,1

[schedule]
B = 7
mode = adversarial-max
seed = 12

[run]
horizon = 99
gamma = 0.0123
x0 = gaussian(5)
record-every = 3
diagnostics = true
stop-ratio = 1e-4

[output]
directory = somewhere
emit-svg = true
emit-report = false
)");
  EXPECT_EQ(c.partition.n, 2u);
  EXPECT_EQ(c.objective.matrix.size(), 2u);
  EXPECT_EQ(c.objective.rhs[0], 0.30000000000000004);
  EXPECT_EQ(*c.run.gamma, 0.0123);
  EXPECT_EQ(*c.run.stop_ratio, 1e-4);
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, UnknownKeysAndSectionsAreNamed) {
  EXPECT_EQ(error_key("[run]\nhorizn = 3\n"), "run.horizn");
  EXPECT_EQ(error_key("[runs]\nhorizon = 3\n"), "runs");
  EXPECT_EQ(error_key("[schedule]\nB = 0\n"), "schedule.B");
  EXPECT_EQ(error_key("[schedule]\nmode = sometimes\n"), "schedule.mode");
  EXPECT_EQ(error_key("[run]\ngamma = -1\n"), "run.gamma");
  EXPECT_EQ(error_key("[run]\nx0 = gaussian(x)\n"), "run.x0");
  EXPECT_EQ(error_key("[objective]\nkind = cubic\n"), "objective.kind");
  EXPECT_EQ(error_key("[partition]\nn = 3\n"), "partition.n");
}

TEST(Config, AutoGammaNeedsMuAndL) {
  const auto p = build_problem(parse_config("[objective]\neigenvalues = 1,2\n[partition]\nn = 2\n"));
  ASSERT_TRUE(p.gamma0.has_value());
  EXPECT_EQ(p.gamma, 0.99 * compute_gamma0(1.0, 2.0, 2, 1));
  EXPECT_FALSE(p.beyond_gamma0);
  EXPECT_EQ(error_key("[objective]\nkind = logistic-l2\nsamples = 20\nfeatures = 3\nlambda = 0\n"), "run.gamma");
  EXPECT_EQ(error_key("[objective]\nkind = least-squares\nmatrix = 1,0;0,0\nrhs = 1,0\ncertify = false\n"),
            "run.gamma");
}

TEST(Config, ExplicitGammaAboveGamma0IsFlagged) {
  const auto p = build_problem(parse_config("[objective]\neigenvalues = 1,2\n[run]\ngamma = 0.1\n"));
  EXPECT_TRUE(p.beyond_gamma0);
}

TEST(Config, MarginCacheNeedsLogistic) {
  EXPECT_EQ(error_key("[run]\nmargin-cache = true\n"), "run.margin-cache");
}

TEST(Config, InitialPoints) {
  EXPECT_EQ(make_x0("zeros", 3), Vector(3, 0.0));
  EXPECT_EQ(make_x0("ones", 2), Vector(2, 1.0));
  EXPECT_EQ(make_x0("gaussian(3)", 4), make_x0("gaussian(3)", 4));
  EXPECT_NE(make_x0("gaussian(3)", 4), make_x0("gaussian(4)", 4));
  EXPECT_THROW(make_x0("twos", 2), std::invalid_argument);
}
