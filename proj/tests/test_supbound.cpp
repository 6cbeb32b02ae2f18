#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "supent/errors.hpp"
#include "supent/supbound.hpp"

using namespace supent;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Ket zeros(std::size_t n) { return basis_ket(Register::qubits(n), std::vector<std::size_t>(n, 0)); }
Ket ones(std::size_t n) { return basis_ket(Register::qubits(n), std::vector<std::size_t>(n, 1)); }

void expect_same(const BoundReport& x, const BoundReport& y, double tol) {
  EXPECT_NEAR(x.lhs, y.lhs, tol);
  EXPECT_NEAR(x.term_psi, y.term_psi, tol);
  EXPECT_NEAR(x.term_phi, y.term_phi, tol);
  EXPECT_NEAR(x.cross_term, y.cross_term, tol);
  EXPECT_NEAR(x.rhs, y.rhs, tol);
  EXPECT_NEAR(x.gap, y.gap, tol);
  EXPECT_NEAR(x.gamma_norm, y.gamma_norm, tol);
}

}  // namespace

TEST(RhsEq7, Examples) {
  EXPECT_NEAR(rhs_eq7(SuperposCoeffs(kInvSqrt2, kInvSqrt2), 0, 0, 0.5), 0.5, 1e-15);
  EXPECT_NEAR(rhs_eq7(SuperposCoeffs(0.3, 0.0), 0.7, 0.9, 0.5), 0.09 * 0.7, 1e-15);
  EXPECT_NEAR(rhs_eq7(SuperposCoeffs(0.6, 0.8), 1, 1, 1), 1.96, 1e-15);
  EXPECT_THROW(rhs_eq7(SuperposCoeffs(0.6, 0.8), -1, 1, 1), DomainError);
  EXPECT_THROW(rhs_eq7(SuperposCoeffs(0.6, 0.8), 1, 1, -0.1), DomainError);
}

TEST(RhsEq7, MonotoneInNorm) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const SuperposCoeffs c = random_coeffs(rng);
    const double e1 = u(rng), e2 = u(rng), n1 = u(rng), n2 = n1 + u(rng);
    EXPECT_LE(rhs_eq7(c, e1, e2, n1), rhs_eq7(c, e1, e2, n2));
  }
}

TEST(RhsEq10, Examples) {
  EXPECT_NEAR(rhs_eq10(SuperposCoeffs(kInvSqrt2, kInvSqrt2), 0, 0, 1), 1.0, 1e-15);
  EXPECT_NEAR(rhs_eq10(SuperposCoeffs(0.6, 0.8), 0.5, 0.25, 0), 0.36 * 0.5 + 0.64 * 0.25, 1e-15);
  EXPECT_NEAR(rhs_eq10(SuperposCoeffs(1.0, 0.0), 0.42, 0.9, 1), 0.42, 1e-15);
  EXPECT_THROW(rhs_eq10(SuperposCoeffs(1.0, 0.0), 0.42, 0.9, -1), DomainError);
}

TEST(CheckBoundNegativity, TwoQubitSaturation) {
  for (double a : {0.1, 0.3, 0.6, kInvSqrt2, 0.9}) {
    const double b = std::sqrt(1 - a * a);
    const BoundReport r = check_bound_negativity(ones(2), zeros(2), SuperposCoeffs(a, b), {0});
    EXPECT_NEAR(r.lhs, a * b, 1e-10);
    EXPECT_NEAR(r.rhs, a * b, 1e-10);
    EXPECT_EQ(r.term_psi, 0.0);
    EXPECT_EQ(r.term_phi, 0.0);
    EXPECT_NEAR(r.witness_norm_or_k, 0.5, 1e-12);
    EXPECT_TRUE(r.saturated);
    EXPECT_EQ(r.inequality_kind, InequalityKind::eq7);
    EXPECT_NEAR(r.rhs, r.term_psi + r.term_phi + r.cross_term, 1e-12);
  }
}

TEST(CheckBoundNegativity, SingleBranch) {
  const Ket bell = ghz(2, 0.0);
  const BoundReport r = check_bound_negativity(bell, bell, SuperposCoeffs(1.0, 0.0), {0});
  EXPECT_NEAR(r.lhs, 0.5, 1e-12);
  EXPECT_NEAR(r.term_psi, 0.5, 1e-12);
  EXPECT_EQ(r.cross_term, 0.0);
  EXPECT_TRUE(r.saturated);
}

TEST(CheckBoundNegativity, RandomPairsHaveNoViolations) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Ket psi = random_ket(Register::qubits(2), rng);
    const Ket phi = random_ket(Register::qubits(2), rng);
    const SuperposCoeffs c = random_coeffs(rng);
    BoundReport r;
    ASSERT_NO_THROW(r = check_bound_negativity(psi, phi, c, {0}));
    EXPECT_GE(r.gap, -kViolationTol);
    EXPECT_NEAR(r.rhs, r.term_psi + r.term_phi + r.cross_term, 1e-12);
    EXPECT_NEAR(r.gap, r.rhs - r.lhs, 1e-15);
  }
}

TEST(CheckBoundNegativity, RawPolicyScalesLhs) {
  const Ket z = zeros(2);
  const Ket bell = ghz(2, 0.0);
  const SuperposCoeffs c(0.6, 0.8);
  const BoundReport ren = check_bound_negativity(z, bell, c, {0}, GammaPolicy::renormalized);
  const BoundReport raw = check_bound_negativity(z, bell, c, {0}, GammaPolicy::raw);
  const double g = (superpose(c, z, bell).norm_squared());
  EXPECT_NEAR(ren.gamma_norm, g, 1e-14);
  EXPECT_NEAR(raw.lhs, g * ren.lhs, 1e-12);
  EXPECT_EQ(raw.policy, GammaPolicy::raw);
}

TEST(CheckBoundNegativity, PhaseInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> theta(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    const Ket psi = random_ket(Register::qubits(3), rng);
    const Ket phi = random_ket(Register::qubits(3), rng);
    const SuperposCoeffs c = random_coeffs(rng);
    const Complex u = std::polar(1.0, theta(rng));
    const BoundReport base = check_bound_negativity(psi, phi, c, {1});
    const BoundReport turned = check_bound_negativity(psi.scaled(std::conj(u)), phi, SuperposCoeffs(c.a * u, c.b), {1});
    expect_same(base, turned, 1e-12);
  }
}

TEST(CheckBoundNegativity, Errors) {
  EXPECT_THROW(check_bound_negativity(zeros(2), zeros(3), SuperposCoeffs(1, 1), {0}), RegisterMismatch);
  EXPECT_THROW(check_bound_negativity(zeros(2).scaled(2.0), zeros(2), SuperposCoeffs(1, 1), {0}), DomainError);
}

TEST(CheckBoundK, Examples) {
  const Witness w = ghz_witness(2, 0.0);
  const BoundReport r = check_bound_k(zeros(2), ones(2), SuperposCoeffs(0.6, 0.8), w, 0, 0, 0.96);
  EXPECT_NEAR(r.gap, 0.0, 1e-12);
  EXPECT_EQ(r.inequality_kind, InequalityKind::eq10);
  EXPECT_EQ(r.witness_norm_or_k, 1.0);

  const BoundReport sep = check_bound_k(zeros(2), ones(2), SuperposCoeffs(0.6, 0.8), w, 0.1, 0.2, 0.0);
  EXPECT_NEAR(sep.gap, sep.rhs, 1e-15);

  EXPECT_THROW(check_bound_k(zeros(2), ones(2), SuperposCoeffs(0.6, 0.8), w, 0, 0, 1.5), BoundViolation);
}

TEST(CheckBoundK, ViolationCarriesInstance) {
  try {
    check_bound_k(zeros(2), ones(2), SuperposCoeffs(0.6, 0.8), ghz_witness(2, 0.0), 0, 0, 1.5);
    FAIL() << "expected BoundViolation";
  } catch (const BoundViolation& e) {
    EXPECT_NE(e.instance_json().find("\"a\""), std::string::npos);
    EXPECT_NE(e.instance_json().find("\"psi\""), std::string::npos);
  }
}

TEST(GhzSaturation, Examples) {
  for (auto [n, phi] : {std::pair<std::size_t, double>{3, 0.0}, {2, std::numbers::pi}, {8, std::numbers::pi / 4}}) {
    const SaturationReport s = ghz_saturation_experiment(n, phi);
    EXPECT_NEAR(s.report.lhs, 1.0, 1e-6);
    EXPECT_NEAR(s.report.rhs, 1.0, 1e-12);
    EXPECT_LE(std::abs(s.report.gap), 1e-6);
    EXPECT_TRUE(s.report.saturated);
    EXPECT_EQ(s.k, 1.0);
    EXPECT_NEAR(s.gamma_bounds.lower, 1.0, 1e-9);
    ASSERT_TRUE(s.gamma_bounds.upper.has_value());
    EXPECT_NEAR(*s.gamma_bounds.upper, 1.0, 1e-9);
    EXPECT_TRUE(s.gamma_bounds.certified_upper);
  }
  EXPECT_THROW(ghz_saturation_experiment(1, 0.0), DomainError);
}

TEST(GhzSaturation, SdpCrossCheck) {
  const SaturationReport s = ghz_saturation_experiment(3, 0.3, true);
  ASSERT_TRUE(s.ppt_sdp.has_value());
  EXPECT_NEAR(*s.ppt_sdp, 1.0, 1e-4);
}

TEST(RandomSweep, NegativityTwoQubits) {
  SweepConfig cfg;
  cfg.samples = 1000;
  cfg.seed = 42;
  const SweepSummary s = random_sweep(cfg);
  EXPECT_EQ(s.samples, 1000u);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_GE(s.min_gap, -kViolationTol);
  EXPECT_EQ(s.rows.size(), 1000u);
}

TEST(RandomSweep, SingleSampleEchoesGap) {
  SweepConfig cfg;
  cfg.samples = 1;
  cfg.seed = 9;
  const SweepSummary s = random_sweep(cfg);
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_EQ(s.min_gap, s.rows[0].gap);
  EXPECT_EQ(s.mean_gap, s.rows[0].gap);
  EXPECT_NEAR(s.rows[0].gap, s.rows[0].rhs - s.rows[0].lhs, 1e-15);
}

TEST(RandomSweep, DeterministicAcrossRunsAndThreads) {
  SweepConfig cfg;
  cfg.qubits = 3;
  cfg.samples = 60;
  cfg.seed = 5;
  const SweepSummary a = random_sweep(cfg);
  const SweepSummary b = random_sweep(cfg);
  cfg.threads = 3;
  const SweepSummary c = random_sweep(cfg);
  for (const SweepSummary* other : {&b, &c}) {
    EXPECT_EQ(a.min_gap, other->min_gap);
    EXPECT_EQ(a.mean_gap, other->mean_gap);
    ASSERT_EQ(a.rows.size(), other->rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      EXPECT_EQ(a.rows[i].lhs, other->rows[i].lhs);
      EXPECT_EQ(a.rows[i].gap, other->rows[i].gap);
    }
  }
}

TEST(RandomSweep, RobustnessAndGhzFamily) {
  SweepConfig cfg;
  cfg.kind = QuantifierKind::generalized_robustness;
  cfg.samples = 40;
  const SweepSummary s = random_sweep(cfg);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_GE(s.min_gap, -kViolationTol);

  cfg.ghz_family = true;
  cfg.qubits = 3;
  const SweepSummary g = random_sweep(cfg);
  EXPECT_EQ(g.violations, 0u);
  // k = 1 and E(Gamma) = 2|a||b| exactly: every instance saturates.
  for (const SweepSample& row : g.rows) EXPECT_NEAR(row.gap, 0.0, 1e-6);
}

TEST(RandomSweep, RejectsZeroSamples) {
  SweepConfig cfg;
  cfg.samples = 0;
  EXPECT_THROW(random_sweep(cfg), DomainError);
}

TEST(ScalarLemma, MaxIsSubadditive) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int trial = 0; trial < 100000; ++trial) {
    const double x = g(rng), y = g(rng);
    ASSERT_LE(std::max(0.0, x + y), std::max(0.0, x) + std::max(0.0, y));
  }
}
