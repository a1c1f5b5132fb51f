#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fewbody/coordinate_interference.hpp"
#include "fewbody/error.hpp"
#include "fewbody/pdf_grid.hpp"
#include "fewbody/spectral_analysis.hpp"
#include "support/draws.hpp"

using namespace fewbody;
using fewbody::testing::Draws;
using std::numbers::pi;

namespace {

struct Offsets {
  double particle;
  double scatterer;
};

// Classical meeting point: the particle (x = v t) hits the scatterer that
// starts at x0 (x = x0 + V t); both reflected tracks are extrapolated back
// to t = 0. Recoil velocities come from momentum/energy balance solved by
// elimination, independent of the library.
Offsets classical_offsets(double m, double v, double M, double V, double x0) {
  const double p = m * v + M * V;
  const double vc = p / (m + M);
  const double v1 = 2.0 * vc - v;  // reflect through the c.m. velocity
  const double V2 = 2.0 * vc - V;
  const double t_c = x0 / (v - V);
  const double x_c = v * t_c;
  return {x_c - v1 * t_c, x_c - V2 * t_c};
}

double cos2(double a) { return std::pow(std::cos(a), 2); }

}  // namespace

TEST(PhaseOffsets, SqiExamples) {
  SqiOffsets o = phase_offsets_sqi(1, 1, 1);
  EXPECT_DOUBLE_EQ(o.particle, 1.0);
  EXPECT_DOUBLE_EQ(o.scatterer, 0.0);
  o = phase_offsets_sqi(1, 3, 2);
  EXPECT_DOUBLE_EQ(o.particle, 3.0);
  EXPECT_DOUBLE_EQ(o.scatterer, 1.0);
  o = phase_offsets_sqi(1e-12, 1, 2);
  EXPECT_NEAR(o.particle, 4.0, 1e-10);
  EXPECT_NEAR(o.scatterer, 2.0, 1e-10);
}

TEST(PhaseOffsets, SqiMatchesClassicalMeetingPoint) {
  Draws draws(101);
  for (int i = 0; i < 1000; ++i) {
    const double m = draws.log_uniform(0.01, 100), M = draws.log_uniform(0.01, 100);
    const double V = draws.uniform(-2, 2), v = V + draws.uniform(0.1, 5);
    const double x0 = draws.uniform(0.1, 10);
    const Offsets c = classical_offsets(m, v, M, V, x0);
    const SqiOffsets o = phase_offsets_sqi(m, M, x0);
    EXPECT_NEAR(o.particle, c.particle, 1e-9 * x0);
    EXPECT_NEAR(o.scatterer, c.scatterer, 1e-9 * x0);
  }
}

TEST(PhaseOffsets, CqiIsSqiWithDoubledMass) {
  Draws draws(102);
  for (int i = 0; i < 500; ++i) {
    const double m = draws.log_uniform(0.01, 100), M = draws.log_uniform(0.01, 100);
    const double x0 = draws.uniform(0.1, 10);
    const CqiOffsets c = phase_offsets_cqi(m, M, x0);
    const SqiOffsets s = phase_offsets_sqi(m, 2 * M, x0);
    EXPECT_EQ(c.particle, s.particle);
    EXPECT_EQ(c.scatterer, s.scatterer);
    const Offsets k = classical_offsets(m, 1.0, 2 * M, 0.0, x0);
    EXPECT_NEAR(c.particle, k.particle, 1e-9 * x0);
    EXPECT_NEAR(c.scatterer, k.scatterer, 1e-9 * x0);
  }
}

TEST(PhaseOffsets, CqiValues) {
  CqiOffsets c = phase_offsets_cqi(1, 5, 11);
  EXPECT_DOUBLE_EQ(c.particle, 20.0);
  EXPECT_DOUBLE_EQ(c.scatterer, 9.0);
  EXPECT_DOUBLE_EQ(c.particle_as_printed, 10.0);
  c = phase_offsets_cqi(1, 1, 3);
  EXPECT_DOUBLE_EQ(c.particle, 4.0);
  EXPECT_DOUBLE_EQ(c.particle_as_printed, 2.0);
  EXPECT_DOUBLE_EQ(c.scatterer, 1.0);
  EXPECT_DOUBLE_EQ(phase_offsets_cqi(2, 1, 3).scatterer, 0.0);
}

TEST(Amplitudes, SqiBranchesReproduceClosedForm) {
  Draws draws(103);
  for (int i = 0; i < 300; ++i) {
    const double m = draws.log_uniform(0.1, 10), M = draws.log_uniform(0.1, 10);
    const double V = draws.uniform(-1, 1), v = V + draws.uniform(0.2, 3);
    const ScatteringScenario s = make_three_body(m, v, M, V, draws.uniform(0.5, 5), Model::sqi);
    const auto br = sqi_scattered_branches(s, natural_units());
    const double x1 = draws.uniform(-5, 5), x2 = draws.uniform(-5, 5), x3 = draws.uniform(-5, 5);
    const double t = draws.uniform(0, 10);
    const double assembled = std::norm(evaluate(br[0], x1, x2, x3, t) + evaluate(br[1], x1, x2, x3, t)) / 4.0;
    EXPECT_NEAR(assembled, pdf_sqi_3body(s, x1, x2, x3), 1e-9);
  }
}

TEST(Amplitudes, CqiBranchesReproduceClosedForm) {
  Draws draws(104);
  for (int i = 0; i < 300; ++i) {
    const double m = draws.log_uniform(0.1, 10), M = draws.log_uniform(0.1, 10);
    const double V = draws.uniform(-1, 1), v = V + draws.uniform(0.2, 3);
    const double x0 = draws.uniform(0.5, 5);
    const ScatteringScenario s = make_three_body(m, v, M, V, x0, Model::cqi);
    const auto br = cqi_scattered_branches(s, natural_units());
    const double x1 = draws.uniform(-5, 5), x2 = draws.uniform(-5, 5), x3 = draws.uniform(-5, 5);
    const double t = draws.uniform(0, 10);
    const double assembled = std::norm(evaluate(br[0], x1, x2, x3, t) + evaluate(br[1], x1, x2, x3, t)) / 4.0;
    EXPECT_NEAR(assembled, pdf_cqi_3body(s, x0), 1e-9);
  }
}

TEST(Amplitudes, HardSphereBoundaryCondition) {
  Draws draws(105);
  for (int i = 0; i < 300; ++i) {
    const double m = draws.log_uniform(0.1, 10), M = draws.log_uniform(0.1, 10);
    const double V = draws.uniform(-1, 1), v = V + draws.uniform(0.2, 3);
    const ScatteringScenario s = make_three_body(m, v, M, V, draws.uniform(0.5, 5), Model::sqi);
    const AmplitudeBranch inc = sqi_incident_branch(s, natural_units());
    const auto br = sqi_scattered_branches(s, natural_units());
    EXPECT_LT(std::abs(evaluate(inc, 0, 0, 1.3, 0) + evaluate(br[0], 0, 0, 1.3, 0)), 1e-10);
    const double x = draws.uniform(-3, 3), t = draws.uniform(0, 5), y = draws.uniform(-3, 3);
    EXPECT_LT(std::abs(evaluate(inc, x, x, y, t) + evaluate(br[0], x, x, y, t)), 1e-10);
    EXPECT_LT(std::abs(evaluate(inc, x, y, x, t) + evaluate(br[1], x, y, x, t)), 1e-10);
  }
}

TEST(Amplitudes, EnvelopeRidesOnClassicalTrack) {
  ScatteringScenario s = make_three_body(1, 1, 3, 0, 2, Model::sqi);
  s.particles[0].coherence_length = 1.0;
  const auto br = sqi_scattered_branches(s, natural_units());
  const double t = 4.0;
  const double centre = br[1].bodies[0].classical_position(t);
  EXPECT_NEAR(centre, 3.0 - 0.5 * t, 1e-15);
  const double at = std::abs(evaluate(br[1], centre, 0, 0, t));
  EXPECT_NEAR(at, 1.0, 1e-15);
  EXPECT_LT(std::abs(evaluate(br[1], centre + 0.7, 0, 0, t)), at);
}

TEST(Pdf, SqiExamples) {
  const ScatteringScenario s = make_three_body(1, 1, 1, 0, 1, Model::sqi);
  EXPECT_NEAR(pdf_sqi_3body(s, 0, 0.3, 0.3), 1.0, 1e-15);
  EXPECT_NEAR(pdf_sqi_3body(s, 0, 0, pi), 0.0, 1e-15);
  EXPECT_EQ(pdf_sqi_3body(s, 7, 0.1, 0.9), pdf_sqi_3body(s, -2, 0.1, 0.9));
  EXPECT_THROW(pdf_sqi_3body(make_three_body(1, 1, 1, 0, 1, Model::cqi), 0, 0, 0), std::invalid_argument);
}

TEST(Pdf, SqiFringePeriodFromSampledGrid) {
  const ScatteringScenario s = make_three_body(1, 1, 2, 0, 1, Model::sqi);
  EXPECT_NEAR(sqi_fringe_period(1, 2, 1, 0), 1.5 * pi, 1e-15);
  const auto d = linspace(0.0, 20 * pi, 4001);
  std::vector<double> y;
  for (double x : d) y.push_back(pdf_sqi_3body(s, 0, 0, x));
  const PeriodEstimate e = estimate_period(d, y);
  EXPECT_NEAR(e.period / (1.5 * pi), 1.0, 1e-9);
}

TEST(Pdf, CqiExamples) {
  const ScatteringScenario s = make_three_body(1, 1, 1, 0, 1, Model::cqi);
  EXPECT_NEAR(pdf_cqi_3body(s, 0.75 * pi), 0.0, 1e-15);
  EXPECT_NEAR(pdf_cqi_3body(s, 1e-12), 1.0, 1e-15);
  EXPECT_NEAR(cqi_fringe_period(1, 1, 1, 0), 1.5 * pi, 1e-15);
  const auto x0 = linspace(0.1, 0.1 + 20 * pi, 4001);
  std::vector<double> y;
  for (double x : x0) y.push_back(pdf_cqi_3body(s, x));
  EXPECT_NEAR(estimate_period(x0, y).period / (1.5 * pi), 1.0, 1e-9);
}

TEST(Pdf, FourBodyExamples) {
  EXPECT_NEAR(pdf_cqi_4body(1, 1, 1, 0, pi / 2), 0.0, 1e-15);
  for (double x0 : {0.1, 1.0, 7.0}) EXPECT_EQ(pdf_cqi_4body(2, 3, 0.5, 0.5, x0), 1.0);
  EXPECT_NEAR(cqi4_fringe_period(1, 1, 1, 0), pi, 1e-15);
}

TEST(Pdf, FourBodyIsThreeBodyWithDoubledParticleMass) {
  Draws draws(106);
  for (int i = 0; i < 1000; ++i) {
    const double m = draws.log_uniform(0.01, 100), M = draws.log_uniform(0.01, 100);
    const double v = draws.uniform(-3, 3), V = draws.uniform(-3, 3), x0 = draws.uniform(0.01, 10);
    const ScatteringScenario s = make_three_body(2 * m, v, M, V, x0, Model::cqi);
    EXPECT_NEAR(pdf_cqi_4body(m, M, v, V, x0), pdf_cqi_3body(s, x0), 1e-12);
  }
}

TEST(Pdf, PeriodsScaleInverselyWithRelativeSpeed) {
  Draws draws(107);
  for (int i = 0; i < 200; ++i) {
    const double m = draws.log_uniform(0.1, 10), M = draws.log_uniform(0.1, 10);
    const double dv = draws.uniform(0.1, 3), s = draws.uniform(0.1, 10);
    EXPECT_NEAR(sqi_fringe_period(m, M, s * dv, 0) * s, sqi_fringe_period(m, M, dv, 0),
                1e-13 * sqi_fringe_period(m, M, dv, 0));
    EXPECT_NEAR(cqi_fringe_period(m, M, s * dv, 0) * s, cqi_fringe_period(m, M, dv, 0),
                1e-13 * cqi_fringe_period(m, M, dv, 0));
  }
  EXPECT_TRUE(std::isinf(sqi_fringe_period(1, 1, 2, 2)));
}

TEST(Pdf, HeavyScattererPeriodsAgree) {
  for (double ratio : {1e4, 1e5, 1e7}) {
    const double sqi = sqi_fringe_period(1, ratio, 1, 0);
    const double cqi = cqi_fringe_period(1, ratio, 1, 0);
    EXPECT_LT(std::abs(cqi / sqi - 1.0), 1e-3);
  }
}

TEST(Visibility, LongCoherenceGivesFullOverlap) {
  ScatteringScenario s = make_three_body(1, 1, 1, 0, 1, Model::cqi);
  s.particles[0].coherence_length = 1e4;
  const VisibilityReport r = overlap_visibility(s);
  EXPECT_GT(r.factor, 0.9999);
  EXPECT_EQ(r.verdict, "full interference");
}

TEST(Visibility, HalfOverlapMatchesNumericalIntegral) {
  const double x0 = 1.3;
  const double l = 2 * x0 / std::sqrt(std::log(4.0));
  ScatteringScenario s = make_three_body(1, 1, 1, 0, x0, Model::sqi);
  s.particles[0].coherence_length = l;
  const VisibilityReport r = overlap_visibility(s);
  EXPECT_NEAR(r.particle_path, 0.5, 1e-6);
  EXPECT_NEAR(r.factor, 0.5, 1e-6);
  EXPECT_EQ(r.verdict, "partial interference");
  // Overlap integral of two normalized amplitudes with sigma = l/2 displaced by 2 x0.
  const double sigma = l / 2;
  const auto x = linspace(-20 * sigma, 20 * sigma + 2 * x0, 20001);
  std::vector<double> y;
  for (double xi : x) {
    const double a = std::exp(-xi * xi / (4 * sigma * sigma));
    const double b = std::exp(-(xi - 2 * x0) * (xi - 2 * x0) / (4 * sigma * sigma));
    y.push_back(a * b / std::sqrt(2 * pi * sigma * sigma));
  }
  EXPECT_NEAR(trapezoid(x, y), r.particle_path, 1e-8);
}

TEST(Visibility, ShortCoherenceDestroysInterference) {
  ScatteringScenario s = make_three_body(1, 1, 1, 0, 5, Model::sqi);
  s.particles[0].coherence_length = 0.5;
  const VisibilityReport r = overlap_visibility(s);
  EXPECT_LT(r.factor, 1e-10);
  EXPECT_EQ(r.verdict, "path information: no interference");
  EXPECT_NEAR(pdf_sqi_3body(s, 0, 0, 0), 0.5, 1e-9);
  EXPECT_NEAR(pdf_sqi_3body(s, 0, 0, pi), 0.5, 1e-9);
}

TEST(Visibility, RecoilComponentsPerModel) {
  ScatteringScenario s = make_three_body(1, 1, 1, 0, 1, Model::sqi);
  s.scatterers[0].coherence_length = 0.2;
  s.scatterers[1].coherence_length = 0.2;
  VisibilityReport r = overlap_visibility(s);
  // q = M (V_2r - V) = 1, sigma = 0.1: exp(-q^2 sigma^2 / 2) per scatterer.
  EXPECT_NEAR(r.scatterer_recoil, std::exp(-0.01), 1e-12);
  EXPECT_EQ(r.cm_recoil, 1.0);
  s.model = Model::cqi;
  r = overlap_visibility(s);
  // kick = 2 M dV' = 4/3, sigma_cm = 0.1 / sqrt 2.
  EXPECT_NEAR(r.cm_recoil, std::exp(-(16.0 / 9.0) * 0.005 / 2), 1e-12);
  EXPECT_EQ(r.scatterer_recoil, 1.0);
}

TEST(Marginal, SqiIsFlatCqiCarriesGlobalFactor) {
  ScatteringScenario s = make_three_body(1, 1, 1, 0, 0.75 * pi, Model::sqi);
  const auto x1 = linspace(-5, 5, 21);
  const MarginalOptions opt = default_marginal_window(s);
  const MarginalResult sqi = marginal_particle_pdf(Model::sqi, s, x1, opt);
  EXPECT_FALSE(sqi.warning.has_value());
  EXPECT_GE(sqi.periods_covered, 10.0 - 1e-9);
  EXPECT_LT(relative_ripple(sqi.grid.values()), 1e-3);

  const MarginalResult zero = marginal_particle_pdf(Model::cqi, s, x1, opt);
  for (double v : zero.grid.values()) EXPECT_NEAR(v, 0.0, 1e-12);
  s.x0 = 1.5 * pi;
  const MarginalResult peak = marginal_particle_pdf(Model::cqi, s, x1, opt);
  EXPECT_LT(relative_ripple(peak.grid.values()), 1e-12);
  EXPECT_GT(peak.grid.values().front(), 0.0);
}

TEST(Marginal, ShortWindowWarns) {
  const ScatteringScenario s = make_three_body(1, 1, 1, 0, 1, Model::sqi);
  MarginalOptions opt;
  opt.x2_min = 0;
  opt.x2_max = 0.5;
  opt.x3_min = 1;
  opt.x3_max = 1.5;
  opt.samples = 11;
  const std::vector<double> x1{0.0, 1.0};
  const MarginalResult r = marginal_particle_pdf(Model::sqi, s, x1, opt);
  ASSERT_TRUE(r.warning.has_value());
  EXPECT_EQ(*r.warning, "marginal not converged");
}

TEST(Pdf, UnequalScatterersRejected) {
  ScatteringScenario s = make_three_body(1, 1, 1, 0, 1, Model::sqi);
  s.scatterers[1].mass = 2;
  s.unequal_scatterers = true;
  EXPECT_THROW(pdf_sqi_3body(s, 0, 0, 0), PhysicsError);
}
