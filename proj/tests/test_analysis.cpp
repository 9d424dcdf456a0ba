#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rweno/analysis.hpp"

using namespace rweno;

namespace {

std::vector<Scheme> classical() {
  std::vector<Scheme> s;
  for (auto n : kClassicalSchemes) s.push_back(make_scheme(n));
  return s;
}

int mode_near(double kappa_dx, int nx) { return static_cast<int>(std::lround(kappa_dx * nx / (2 * std::numbers::pi))); }

}  // namespace

TEST(AdrModes, SpanUpToCutoff) {
  const auto m = adr_modes(256, 64);
  ASSERT_EQ(m.size(), 64u);
  EXPECT_EQ(m.front(), 2);
  EXPECT_EQ(m.back(), 128);
  EXPECT_THROW(adr(make_scheme("weno3-js"), {129}, 256), ConfigError);
  EXPECT_THROW(adr(make_scheme("weno3-js"), {0}, 256), ConfigError);
}

TEST(Adr, SmallWavenumberLimit) {
  const int nx = 1024;
  for (const auto& s : classical()) {
    const auto pt = adr(s, {1}, nx).front();
    ASSERT_TRUE(pt.valid);
    EXPECT_NEAR(pt.dispersion / pt.kappa_dx, 1.0, 1e-3) << s.name();
    EXPECT_LT(pt.leakage, 1e-6) << s.name();
  }
}

TEST(Adr, Weno3DissipationVanishesAtSmallWavenumber) {
  const int nx = 256;
  const auto pt = adr(make_scheme("weno3-js"), {mode_near(0.05, nx)}, nx).front();
  EXPECT_NEAR(pt.kappa_dx, 0.05, 0.02);
  EXPECT_LE(pt.dissipation, 1e-10);
}

TEST(Adr, Weno5DissipatesLessThanWeno3AtHalfCutoff) {
  const int nx = 256;
  const int m = nx / 4;  // kappa dx = pi / 2
  const auto w3 = adr(make_scheme("weno3-js"), {m}, nx).front();
  const auto w5 = adr(make_scheme("weno5-js"), {m}, nx).front();
  EXPECT_NEAR(w3.kappa_dx, std::numbers::pi / 2, 1e-12);
  EXPECT_LT(std::abs(w5.dissipation), std::abs(w3.dissipation));
}

TEST(Adr, NoSchemeAmplifies) {
  const auto modes = adr_modes(256, 64);
  for (const auto& s : classical()) {
    for (const auto& pt : adr(s, modes, 256)) {
      ASSERT_TRUE(pt.valid);
      EXPECT_LE(pt.dissipation, 1e-8) << s.name() << " at " << pt.kappa_dx;
    }
  }
}

TEST(Adr, IdealLinearSchemeMatchesClosedForm) {
  // Linear scheme: k' dx is the Fourier symbol of the flux difference.
  const auto s = make_scheme("ideal3");
  for (int m : {4, 16, 40, 100}) {
    const auto pt = adr(s, {m}, 256).front();
    const double th = 2 * std::numbers::pi * m / 256;
    const std::complex<double> I(0, 1);
    // Face value u_{i+1/2} = (-u_{i-1} + 5 u_i + 2 u_{i+1}) / 6 applied to e^{i j th}.
    const auto face = (-std::exp(-I * th) + 5.0 + 2.0 * std::exp(I * th)) / 6.0;
    const auto kp = -I * face * (1.0 - std::exp(-I * th));
    EXPECT_NEAR(pt.dispersion, kp.real(), 1e-4) << m;
    EXPECT_NEAR(pt.dissipation, kp.imag(), 1e-4) << m;
  }
}

TEST(Convergence, Weno3CosineBetweenSecondAndThirdOrder) {
  // Pre-asymptotic on coarse grids; eps = 1e-6 restores the ideal weights as dx shrinks.
  const auto rows = convergence_study({make_scheme("weno3-js")}, make_problem("advection-cosine"), {64, 128, 256, 512});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_GE(rows[0].slope, 1.8);
  EXPECT_LE(rows[0].slope, 3.2);
  EXPECT_NEAR(std::log2(rows[0].error / rows[1].error), 2.2, 0.2);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].error, rows[i - 1].error);
}

TEST(Convergence, IdealWeightsAreThirdOrderOnSmoothData) {
  const auto rows =
      convergence_study({make_scheme("ideal3")}, make_problem("advection-cosine"), {32, 64, 128, 256});
  EXPECT_GE(rows[0].slope, 2.8);
  const auto interp =
      convergence_study({make_scheme("ideal3")}, eval_function(EvalFunction::SinCubed), {32, 64, 128, 256});
  EXPECT_GE(interp[0].slope, 2.8);
}

TEST(Convergence, SmoothErrorsDecreaseForEveryScheme) {
  const auto rows = convergence_study(classical(), eval_function(EvalFunction::SinCubed), {32, 64, 128, 256});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].scheme == rows[i - 1].scheme) {
      EXPECT_LT(rows[i].error, rows[i - 1].error) << rows[i].scheme;
    }
  }
}

TEST(Convergence, SigmoidSlopesNearOnePointSix) {
  const auto rows = convergence_study({make_scheme("weno3-js"), make_scheme("weno3-z"), make_scheme("ideal3")},
                                      make_problem("advection-sigmoid"), {64, 128, 256, 512});
  for (std::size_t i = 0; i < rows.size(); i += 4) {
    EXPECT_NEAR(rows[i].slope, 1.6, 0.4) << rows[i].scheme;
  }
}

TEST(Convergence, NeedsThreeGrids) {
  EXPECT_THROW(convergence_study(classical(), make_problem("advection-cosine"), {64, 128}), ConfigError);
}

TEST(Report, SingleRowLayout) {
  Report r{{}, {"a", "b"}, {{"1", "x"}}};
  std::ostringstream os;
  emit_report(os, r);
  EXPECT_EQ(os.str(), "# rweno-report v1\na,b\n1,x\n");
}

TEST(Report, RoundTripAndDeterministicBytes) {
  std::vector<ConvergenceRow> rows{{"weno3-js", 64, 1.0 / 64, 1.25e-3, 2.01}, {"weno3-js", 128, 1.0 / 128, 3.1e-4, 2.01}};
  const auto r = convergence_report(rows, {{"version", "1"}, {"seed", "7"}});
  std::ostringstream a, b;
  emit_report(a, r);
  emit_report(b, r);
  EXPECT_EQ(a.str(), b.str());
  std::istringstream in(a.str());
  EXPECT_EQ(parse_report(in), r);
}

TEST(Report, AdrInvalidPointsPrintNan) {
  ADRPoint bad;
  bad.kappa_dx = 1.0;
  bad.valid = false;
  const auto r = adr_report({{"quick", {bad}}});
  EXPECT_EQ(r.rows[0][2], "nan");
  EXPECT_EQ(r.columns.size(), 5u);
}

TEST(Report, Errors) {
  Report r{{}, {"a", "b"}, {{"1"}}};
  std::ostringstream os;
  EXPECT_THROW(emit_report(os, r), ConfigError);
  EXPECT_THROW(emit_report("/nonexistent-dir/x.csv", Report{{}, {"a"}, {{"1"}}}), ConfigError);
  EXPECT_THROW(emit_report((std::filesystem::temp_directory_path() / "rweno_empty.csv").string(), Report{{}, {"a"}, {}}),
               ConfigError);
  std::istringstream junk("a,b\n1,2\n");
  EXPECT_THROW(parse_report(junk), ConfigError);
}
