#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "supent/linops.hpp"

namespace supent {

/// X -> offset + T(X), required PSD. T is the identity or a partial transpose;
/// both are Frobenius isometries and self-adjoint.
struct PsdMap {
  CMatrix offset;
  std::optional<PartialTransposeMap> transpose;
  std::string label;

  CMatrix apply(const CMatrix& x) const;
  CMatrix apply_linear(const CMatrix& x) const;
};

/// minimize Tr(C X) subject to every PsdMap(X) >= 0.
///
/// The solver needs the first constraint to be X >= 0 (identity map, zero
/// offset) and C positive definite: that is what makes every iterate
/// repairable into an exactly feasible primal/dual pair.
struct SdpProblem {
  Register reg;
  CMatrix objective;
  std::vector<PsdMap> constraints;

  std::size_t variable_dim() const noexcept { return static_cast<std::size_t>(objective.rows()); }
  void validate() const;
};

enum class SdpStatus { optimal, max_iter, infeasible };

const char* to_string(SdpStatus status);

struct SdpSolution {
  CMatrix x_opt;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  SdpStatus status = SdpStatus::max_iter;
  /// One PSD dual block per constraint; C - sum_j T_j(Z_j) >= 0 is what the
  /// dual value certifies. Empty means the dual is not verifiable.
  std::vector<CMatrix> dual_blocks;
};

/// Largest variable side accepted by solve.
inline constexpr std::size_t kMaxSdpDim = 256;

/// 1e-6 up to dimension 16, 1e-4 up to 256; throws SizeError beyond.
double default_sdp_tolerance(std::size_t dim);

/// min Tr(X) s.t. X >= 0 and (rho + X)^{T_p} >= 0 for every listed partition.
SdpProblem build_robustness_sdp(const HermOp& rho, std::span<const Partition> parts);

/// ADMM on the constraint copies, with every few iterations a repair step that
/// produces an exactly feasible primal (shift by t I) and dual (rescale) pair.
/// Deterministic for fixed inputs.
SdpSolution solve(const SdpProblem& problem, double tol, std::size_t max_iter = 200000);

/// Recomputes constraint eigenvalues, the objective, the dual value and the
/// dual feasibility from scratch, and checks the gap against tol.
bool check_certificate(const SdpProblem& problem, const SdpSolution& solution, double tol);

}  // namespace supent
