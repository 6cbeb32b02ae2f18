#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supent/quantifiers.hpp"

namespace supent {

inline constexpr double kSaturationTol = 1e-6;
inline constexpr double kViolationTol = 1e-8;

enum class InequalityKind { eq7, eq10 };

const char* to_string(InequalityKind kind);

/// How E(Gamma) is evaluated when Gamma = a psi + b phi is not unit norm.
enum class GammaPolicy { renormalized, raw };

struct BoundReport {
  double lhs = 0.0;
  double term_psi = 0.0;
  double term_phi = 0.0;
  double cross_term = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool saturated = false;
  InequalityKind inequality_kind = InequalityKind::eq7;
  double gamma_norm = 1.0;  // squared norm of the raw superposition
  GammaPolicy policy = GammaPolicy::renormalized;
  double abs_a = 0.0;
  double abs_b = 0.0;
  double witness_norm_or_k = 0.0;
};

/// |a|^2 e_psi + |b|^2 e_phi + 2|a||b| norm_w_gamma
double rhs_eq7(const SuperposCoeffs& coeffs, double e_psi, double e_phi, double norm_w_gamma);

/// |a|^2 e_psi + |b|^2 e_phi + 2 k |a||b|
double rhs_eq10(const SuperposCoeffs& coeffs, double e_psi, double e_phi, double k);

/// Negativity instance of the operator-norm bound, using the optimal
/// negativity witness of Gamma. Throws BoundViolation if gap < -kViolationTol.
BoundReport check_bound_negativity(const Ket& psi, const Ket& phi, const SuperposCoeffs& coeffs,
                                   const Partition& part,
                                   GammaPolicy policy = GammaPolicy::renormalized);

/// Class-constant instance: cross term 2 k |a||b| with k = witness_k(w).
BoundReport check_bound_k(const Ket& psi, const Ket& phi, const SuperposCoeffs& coeffs,
                          const Witness& w, double e_psi, double e_phi, double e_gamma);

struct SaturationReport {
  BoundReport report;
  RobustnessBounds gamma_bounds;
  double e_psi = 0.0;
  double e_phi = 0.0;
  double k = 0.0;
  std::optional<double> ppt_sdp;
};

/// psi = |0...0>, phi = |1...1>, a = 1/sqrt2, b = e^{i phase}/sqrt2, so Gamma is
/// GHZ_n(phase). R_g(Gamma) from the witness/mixing sandwich, k from the GHZ
/// witness. Throws ExperimentFailure if the sandwich does not close or the
/// gap exceeds kSaturationTol.
SaturationReport ghz_saturation_experiment(std::size_t n, double phase, bool sdp_cross_check = false);

struct SweepConfig {
  QuantifierKind kind = QuantifierKind::negativity;
  std::size_t qubits = 2;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  std::vector<Partition> partitions;  // empty selects all single cuts
  GammaPolicy policy = GammaPolicy::renormalized;
  bool ghz_family = false;  // psi = |0...0>, phi = |1...1>, GHZ-class witness
  std::size_t threads = 1;
  double sdp_tol = 1e-5;
};

struct SweepSample {
  std::size_t index = 0;
  double abs_a = 0.0;
  double abs_b = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

struct SweepSummary {
  std::size_t samples = 0;
  double min_gap = 0.0;
  double mean_gap = 0.0;
  std::size_t violations = 0;
  std::uint64_t seed = 0;
  SweepConfig config;
  std::vector<SweepSample> rows;  // one per sample, the tightest partition
};

/// Instance i draws from a generator seeded with (seed, i), so the result does
/// not depend on the thread count. Throws BoundViolation carrying the first
/// offending instance when any sample violates its bound.
SweepSummary random_sweep(const SweepConfig& config);

/// Haar-distributed unit ket (normalized complex Gaussian amplitudes).
template <class Rng>
Ket random_ket(const Register& reg, Rng& rng);

/// a = cos(theta), b = e^{i chi} sin(theta) with theta, chi uniform.
template <class Rng>
SuperposCoeffs random_coeffs(Rng& rng);

}  // namespace supent

#include "supent/supbound_random.ipp"
