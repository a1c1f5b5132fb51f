#include <cmath>

#include <gtest/gtest.h>

#include "fewbody/codata.hpp"
#include "fewbody/error.hpp"
#include "fewbody/kinematics.hpp"
#include "support/draws.hpp"

using namespace fewbody;
using fewbody::testing::Draws;

namespace {

// Independent two-equation solve: eliminate the scatterer velocity with the
// momentum equation and bisect the energy balance for the particle velocity,
// staying away from the trivial root v1 = v.
struct TwoBodyRoot {
  double v1;
  double V2;
};

TwoBodyRoot bisect_two_body(double m, double v, double M, double V) {
  const double p = m * v + M * V;
  const double e = m * v * v + M * V * V;
  auto f = [&](double v1) {
    const double V2 = (p - m * v1) / M;
    return m * v1 * v1 + M * V2 * V2 - e;
  };
  // The reflection root lies on the far side of the c.m. velocity from v.
  const double vc = p / (m + M);
  double lo = vc;
  double hi = vc - (v - vc) * 4.0;
  if (lo > hi) std::swap(lo, hi);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(lo) < 0.0) == (f(mid) < 0.0)) lo = mid; else hi = mid;
  }
  const double v1 = 0.5 * (lo + hi);
  return {v1, (p - m * v1) / M};
}

void expect_conserved(const RecoilSolution& s, double tol = 1e-12) {
  EXPECT_LE(s.momentum_residual(), tol) << s.branch;
  EXPECT_LE(s.energy_residual(), tol) << s.branch;
}

}  // namespace

TEST(TwoBodyRecoil, EqualMassExchange) {
  const RecoilSolution s = solve_two_body_recoil(1, 1, 1, 0);
  EXPECT_DOUBLE_EQ(s.particle_velocity(), 0.0);
  EXPECT_DOUBLE_EQ(s.scatterer_velocity(), 1.0);
  EXPECT_EQ(s.branch, "single-scatterer");
}

TEST(TwoBodyRecoil, MirrorLimit) {
  const RecoilSolution s = solve_two_body_recoil(1, 1, 1e6, 0);
  EXPECT_NEAR(s.particle_velocity(), -1.0, 3e-6);
  EXPECT_NEAR(s.scatterer_velocity(), 2e-6, 1e-11);
}

TEST(TwoBodyRecoil, MatchesIndependentSolver) {
  const RecoilSolution s = solve_two_body_recoil(1, 1, 3, 0);
  const TwoBodyRoot root = bisect_two_body(1, 1, 3, 0);
  EXPECT_NEAR(root.v1, -0.5, 1e-12);
  EXPECT_NEAR(root.V2, 0.5, 1e-12);
  EXPECT_NEAR(s.particle_velocity(), root.v1, 1e-12);
  EXPECT_NEAR(s.scatterer_velocity(), root.V2, 1e-12);
}

TEST(TwoBodyRecoil, Wavevectors) {
  const RecoilSolution s = solve_two_body_recoil(2, 1, 3, 0.5);
  EXPECT_DOUBLE_EQ(s.particles[0].wavevector, 2 * s.particle_velocity());
  EXPECT_DOUBLE_EQ(s.scatterers[0].wavevector, 3 * s.scatterer_velocity());
  const RecoilSolution si = solve_two_body_recoil(codata::neutron_mass, 1e3, codata::atomic_mass_unit, 0, si_units());
  EXPECT_NEAR(si.particles[0].wavevector,
              codata::neutron_mass * si.particle_velocity() / codata::reduced_planck,
              1e-12 * std::abs(si.particles[0].wavevector));
}

TEST(CollectiveRecoil, TwoEqualScatterers) {
  const RecoilSolution s = solve_collective_recoil(1, 1, 1, 0, 2);
  EXPECT_NEAR(s.particle_velocity(), -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(s.scatterer_velocity(), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(s.branch, "collective");
  // Pair convention: K' = 2 M V' / hbar.
  EXPECT_NEAR(s.scatterers[0].wavevector, 4.0 / 3.0, 1e-15);
  const TwoBodyRoot root = bisect_two_body(1, 1, 2, 0);
  EXPECT_NEAR(s.particle_velocity(), root.v1, 1e-12);
}

TEST(CollectiveRecoil, HeavyMirrorAndCoMoving) {
  EXPECT_NEAR(solve_collective_recoil(1, 1, 1e12, 0, 2).particle_velocity(), -1.0, 1e-11);
  const RecoilSolution s = solve_collective_recoil(1, 1, 1, 1, 2);
  EXPECT_DOUBLE_EQ(s.particle_velocity(), 1.0);
  EXPECT_DOUBLE_EQ(s.scatterer_velocity(), 1.0);
  EXPECT_THROW(solve_collective_recoil(1, 1, 1, 0, 0), std::invalid_argument);
}

TEST(CollectiveRecoil, PrintedPairFormulas) {
  Draws draws(11);
  for (int i = 0; i < 200; ++i) {
    const double m = draws.log_uniform(0.1, 10), M = draws.log_uniform(0.1, 10);
    const double v = draws.uniform(-3, 3), V = draws.uniform(-3, 3);
    const RecoilSolution s = solve_collective_recoil(m, v, M, V, 2);
    EXPECT_NEAR(s.particle_velocity(), ((m - 2 * M) * v + 4 * M * V) / (m + 2 * M), 1e-12);
    EXPECT_NEAR(s.scatterer_velocity(), (2 * m * v + (2 * M - m) * V) / (m + 2 * M), 1e-12);
  }
}

TEST(EnsembleConservation, Examples) {
  EnsembleSpec a{1, 2, 1, 1, 1, 1, 1, 0};
  RecoilSolution s = solve_ensemble_conservation(a);
  EXPECT_NEAR(s.particle_velocity() - 1.0, -4.0 / 3.0, 1e-15);
  EXPECT_NEAR(s.scatterer_velocity(), 2.0 / 3.0, 1e-15);

  EnsembleSpec b{1, 1, 1, 1, 1, 1, 1, 0};
  s = solve_ensemble_conservation(b);
  EXPECT_NEAR(s.particle_velocity() - 1.0, -1.0, 1e-15);
  EXPECT_NEAR(s.scatterer_velocity(), 1.0, 1e-15);

  EnsembleSpec c{2, 2, 1, 1, 1, 1, 1, 0};
  s = solve_ensemble_conservation(c);
  EXPECT_NEAR(s.particle_velocity() - 1.0, -1.0, 1e-15);
  EXPECT_NEAR(s.scatterer_velocity(), 1.0, 1e-15);
  expect_conserved(s);
}

TEST(EnsembleConservation, RejectsTrivialRootAndBadSpecs) {
  EnsembleSpec same{1, 1, 1, 1, 1, 1, 0.5, 0.5};
  try {
    solve_ensemble_conservation(same);
    FAIL() << "expected PhysicsError";
  } catch (const PhysicsError& e) {
    EXPECT_NE(std::string(e.what()).find("no scattering"), std::string::npos);
  }
  EnsembleSpec thin{2, 1, 0.25, 1, 1, 1, 1, 0};
  EXPECT_THROW(solve_ensemble_conservation(thin), std::invalid_argument);
  EnsembleSpec frac{1, 1, 1.5, 1, 1, 1, 1, 0};
  EXPECT_THROW(solve_ensemble_conservation(frac), std::invalid_argument);
}

TEST(EnsembleConservation, ReductionChain) {
  Draws draws(21);
  for (int i = 0; i < 2000; ++i) {
    const double m = draws.log_uniform(1e-3, 1e3), M = draws.log_uniform(1e-3, 1e3);
    const double v = draws.uniform(-10, 10), V = draws.uniform(-10, 10);
    const int n_s = draws.integer(1, 6);
    const RecoilSolution two = solve_two_body_recoil(m, v, M, V);
    const RecoilSolution one = solve_collective_recoil(m, v, M, V, 1);
    const RecoilSolution many = solve_collective_recoil(m, v, M, V, n_s);
    const RecoilSolution ens = solve_ensemble_conservation({1, n_s, 1, 1, m, M, v, V});
    const RecoilSolution ens1 = solve_ensemble_conservation({1, 1, 1, 1, m, M, v, V});
    const double scale = std::abs(v) + std::abs(V);
    EXPECT_NEAR(one.particle_velocity(), two.particle_velocity(), 1e-12 * scale);
    EXPECT_NEAR(one.scatterer_velocity(), two.scatterer_velocity(), 1e-12 * scale);
    EXPECT_NEAR(ens1.particle_velocity(), two.particle_velocity(), 1e-12 * scale);
    EXPECT_NEAR(ens.particle_velocity(), many.particle_velocity(), 1e-12 * scale);
    EXPECT_NEAR(ens.scatterer_velocity(), many.scatterer_velocity(), 1e-12 * scale);
  }
}

TEST(UnequalScatterers, SymmetricReduction) {
  const RecoilSolution u = solve_unequal_scatterer_recoil(1, 1, 1, 0, 1, 0);
  const RecoilSolution c = solve_collective_recoil(1, 1, 1, 0, 2);
  EXPECT_NEAR(u.particle_velocity(), c.particle_velocity(), 1e-12);
  EXPECT_NEAR(u.scatterer_velocity(0), c.scatterer_velocity(), 1e-12);
  EXPECT_NEAR(u.scatterer_velocity(1), c.scatterer_velocity(), 1e-12);
}

TEST(UnequalScatterers, ConstraintsSubstituteBack) {
  const double m = 1, v = 1, M2 = 1, V2 = 0, M3 = 3, V3 = 0;
  const RecoilSolution u = solve_unequal_scatterer_recoil(m, v, M2, V2, M3, V3);
  const double v1 = u.particle_velocity(), w2 = u.scatterer_velocity(0), w3 = u.scatterer_velocity(1);
  EXPECT_LT(std::abs(m * v1 + M2 * w2 + M3 * w3 - (m * v + M2 * V2 + M3 * V3)), 1e-10);
  EXPECT_LT(std::abs(m * v1 * v1 + M2 * w2 * w2 + M3 * w3 * w3 - (m * v * v + M2 * V2 * V2 + M3 * V3 * V3)), 1e-10);
  EXPECT_LT(std::abs((w2 - w3) - (V2 - V3)), 1e-10);
  EXPECT_NE(v1, v);
}

TEST(UnequalScatterers, MatchesEffectiveTwoBodyOracle) {
  // Equal velocity changes reduce the problem to a particle against a rigid
  // body of mass M2 + M3 moving at the mass-weighted velocity.
  Draws draws(31);
  for (int i = 0; i < 500; ++i) {
    const double m = draws.log_uniform(0.01, 100), M2 = draws.log_uniform(0.01, 100),
                 M3 = draws.log_uniform(0.01, 100);
    const double v = draws.uniform(-5, 5), V2 = draws.uniform(-5, 5), V3 = draws.uniform(-5, 5);
    const double Ms = M2 + M3, Vc = (M2 * V2 + M3 * V3) / Ms;
    if (std::abs(v - Vc) < 1e-3) continue;
    const TwoBodyRoot root = bisect_two_body(m, v, Ms, Vc);
    const RecoilSolution u = solve_unequal_scatterer_recoil(m, v, M2, V2, M3, V3);
    const double scale = std::abs(v) + std::abs(V2) + std::abs(V3);
    EXPECT_NEAR(u.particle_velocity(), root.v1, 1e-9 * scale);
    EXPECT_NEAR(u.scatterer_velocity(0) - V2, root.V2 - Vc, 1e-9 * scale);
    EXPECT_NEAR(u.scatterer_velocity(1) - V3, root.V2 - Vc, 1e-9 * scale);
    expect_conserved(u);
  }
}

TEST(UnequalScatterers, CoMovingAndIterationBudget) {
  EXPECT_THROW(solve_unequal_scatterer_recoil(1, 1, 2, 1, 5, 1), PhysicsError);
  try {
    solve_unequal_scatterer_recoil(1, 1, 1, 0, 30, 0.2, NewtonSettings{1e-300, 0});
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(WavevectorRatio, ElectronOnNeon) {
  const double M = 20.1797 * codata::atomic_mass_unit;
  const WavevectorRatio r = wavevector_ratio_massive(codata::electron_mass, M, 1e6, 0.0, si_units());
  EXPECT_NEAR(std::abs(r.printed), 2.7e-5, 0.05e-5);
  EXPECT_LT(r.printed, 0.0);
  EXPECT_NEAR(r.magnitude_cross_check, r.printed, 1e-9 * std::abs(r.printed));
}

TEST(WavevectorRatio, EqualMassCrossChecks) {
  const WavevectorRatio r = wavevector_ratio_massive(1, 1, 1, 0);
  EXPECT_NEAR(r.printed, -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.signed_cross_check, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.magnitude_cross_check, -1.0 / 3.0, 1e-15);
}

TEST(WavevectorRatio, NoRelativeMotionAndZeroSpeed) {
  EXPECT_EQ(wavevector_ratio_massive(1, 2, 0.7, 0.7).printed, 0.0);
  try {
    wavevector_ratio_massive(1, 1, 0, 1);
    FAIL() << "expected PhysicsError";
  } catch (const PhysicsError& e) {
    EXPECT_NE(std::string(e.what()).find("undefined ratio"), std::string::npos);
  }
}

TEST(WavevectorRatio, MagnitudeCrossCheckWhenBothRetroReflect) {
  Draws draws(41);
  for (int i = 0; i < 1000; ++i) {
    const double m = draws.log_uniform(1e-3, 1.0), M = draws.log_uniform(2.0, 1e3);
    const double v = draws.uniform(0.1, 10), V = draws.uniform(-0.1, 0.0);
    const WavevectorRatio r = wavevector_ratio_massive(m, M, v, V);
    EXPECT_NEAR(r.signed_cross_check, -r.printed, 1e-12);
    EXPECT_NEAR(r.magnitude_cross_check, r.printed, 1e-12);
  }
}

TEST(WavevectorRatio, Photon) {
  const double nu = codata::speed_of_light / 500e-9;
  EXPECT_NEAR(wavevector_ratio_photon(nu, codata::atomic_mass_unit), 2.66e-9, 0.005e-9);
  EXPECT_EQ(wavevector_ratio_photon(0.0, codata::atomic_mass_unit), 0.0);
  EXPECT_LT(wavevector_ratio_photon(nu, 1e30), 1e-35);
}

TEST(WavevectorRatio, UnitModeConsistency) {
  Draws draws(51);
  for (int i = 0; i < 200; ++i) {
    const double m = draws.log_uniform(1e-4, 1), M = draws.log_uniform(1, 1e4);
    const double v = draws.uniform(0.1, 5), V = draws.uniform(-1, 1);
    const double u = codata::atomic_mass_unit, s = 1e3;
    const WavevectorRatio nat = wavevector_ratio_massive(m, M, v, V, natural_units());
    const WavevectorRatio si = wavevector_ratio_massive(m * u, M * u, v * s, V * s, si_units());
    EXPECT_NEAR(nat.printed, si.printed, 1e-10 * std::abs(nat.printed) + 1e-300);
        // The cross-check subtracts nearly equal wavevectors; cancellation leaves
    // about 1e-16 / |ratio| relative error.
    EXPECT_NEAR(nat.signed_cross_check, si.signed_cross_check, 1e-7 * std::abs(nat.signed_cross_check) + 1e-15);
  }
}

TEST(Properties, ConservationOverRandomDraws) {
  Draws draws(61);
  for (int i = 0; i < 10000; ++i) {
    const double m = draws.log_uniform(1e-3, 1e3), M = draws.log_uniform(1e-3, 1e3);
    const double v = draws.uniform(-10, 10), V = draws.uniform(-10, 10);
    const int n_s = draws.integer(1, 8);
    expect_conserved(solve_two_body_recoil(m, v, M, V));
    expect_conserved(solve_collective_recoil(m, v, M, V, n_s));
  }
}

TEST(Properties, GalileanCovariance) {
  Draws draws(71);
  for (int i = 0; i < 2000; ++i) {
    const double m = draws.log_uniform(0.01, 100), M = draws.log_uniform(0.01, 100), M3 = draws.log_uniform(0.01, 100);
    const double v = draws.uniform(-5, 5), V = draws.uniform(-5, 5), V3 = draws.uniform(-5, 5);
    const double u = draws.uniform(-5, 5);
    const int n_s = draws.integer(1, 4);
    const RecoilSolution a = solve_two_body_recoil(m, v, M, V);
    const RecoilSolution b = solve_two_body_recoil(m, v + u, M, V + u);
    EXPECT_NEAR(b.particle_velocity(), a.particle_velocity() + u, 1e-10);
    EXPECT_NEAR(b.scatterer_velocity(), a.scatterer_velocity() + u, 1e-10);
    const RecoilSolution c = solve_collective_recoil(m, v, M, V, n_s);
    const RecoilSolution d = solve_collective_recoil(m, v + u, M, V + u, n_s);
    EXPECT_NEAR(d.particle_velocity(), c.particle_velocity() + u, 1e-10);
    const double Vc = (M * V + M3 * V3) / (M + M3);
    if (std::abs(v - Vc) < 1e-2) continue;
    const RecoilSolution e = solve_unequal_scatterer_recoil(m, v, M, V, M3, V3);
    const RecoilSolution f = solve_unequal_scatterer_recoil(m, v + u, M, V + u, M3, V3 + u);
    EXPECT_NEAR(f.particle_velocity(), e.particle_velocity() + u, 1e-10);
    EXPECT_NEAR(f.scatterer_velocity(1), e.scatterer_velocity(1) + u, 1e-10);
  }
}

TEST(Properties, HeavyScattererAgreement) {
  Draws draws(81);
  for (int i = 0; i < 2000; ++i) {
    const double m = draws.log_uniform(0.01, 10);
    const double M = m * draws.log_uniform(100, 1e8);
    const double v = draws.uniform(-5, 5), V = draws.uniform(-5, 5);
    const double sqi = solve_two_body_recoil(m, v, M, V).particle_velocity();
    const double cqi = solve_collective_recoil(m, v, M, V, 2).particle_velocity();
    EXPECT_LE(std::abs(sqi - cqi), 4.0 * m / M * std::abs(v - V) * (1 + 1e-12) + 1e-15);
  }
}
