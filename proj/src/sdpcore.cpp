#include "supent/sdpcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "supent/errors.hpp"

namespace supent {

namespace {

double frob_inner(const CMatrix& a, const CMatrix& b) {
  // Re Tr(A^dagger B)
  return a.cwiseProduct(b.conjugate()).sum().real();
}

CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

struct DualRepair {
  std::vector<CMatrix> blocks;
  double value = -std::numeric_limits<double>::infinity();
};

class AdmmState {
 public:
  AdmmState(const SdpProblem& problem)
      : p_(problem),
        j_(problem.constraints.size()),
        d_(static_cast<Eigen::Index>(problem.variable_dim())),
        x_(CMatrix::Zero(d_, d_)),
        s_(j_, CMatrix::Zero(d_, d_)),
        u_(j_, CMatrix::Zero(d_, d_)) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(p_.objective);
    c_inv_sqrt_ = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                  eig.eigenvectors().adjoint();
  }

  // One ADMM sweep; returns (primal residual, dual residual).
  std::pair<double, double> step() {
    CMatrix acc = -p_.objective / beta_;
    for (std::size_t j = 0; j < j_; ++j) {
      acc += p_.constraints[j].apply_linear(s_[j] - u_[j] - p_.constraints[j].offset);
    }
    x_ = hermitize(acc / static_cast<double>(j_));

    double r2 = 0.0;
    CMatrix ds = CMatrix::Zero(d_, d_);
    for (std::size_t j = 0; j < j_; ++j) {
      const CMatrix v = p_.constraints[j].apply(x_);
      const CMatrix prev = s_[j];
      s_[j] = hermitize(detail::psd_part(v + u_[j]));
      const CMatrix resid = v - s_[j];
      u_[j] += resid;
      r2 += resid.squaredNorm();
      ds += p_.constraints[j].apply_linear(s_[j] - prev);
    }
    return {std::sqrt(r2), beta_ * ds.norm()};
  }

  void rebalance(double primal_res, double dual_res) {
    if (primal_res > 10.0 * dual_res) {
      beta_ *= 2.0;
      for (CMatrix& u : u_) u /= 2.0;
    } else if (dual_res > 10.0 * primal_res) {
      beta_ /= 2.0;
      for (CMatrix& u : u_) u *= 2.0;
    }
  }

  // X_+ + t I with t the worst constraint violation of X_+.
  CMatrix repaired_primal() const {
    CMatrix x = hermitize(detail::psd_part(x_));
    double shift = 0.0;
    for (std::size_t j = 1; j < j_; ++j) {
      const double lo = detail::hermitian_eigenvalues(hermitize(p_.constraints[j].apply(x))).minCoeff();
      shift = std::max(shift, -lo);
    }
    if (shift > 0) x += shift * CMatrix::Identity(d_, d_);
    return x;
  }

  // Z_j = (-beta U_j)_+ for j >= 1, scaled so that C - sum_j T_j(Z_j) >= 0;
  // that remainder is the slack block Z_0.
  DualRepair repaired_dual() const {
    DualRepair out;
    out.blocks.assign(j_, CMatrix::Zero(d_, d_));
    CMatrix m = CMatrix::Zero(d_, d_);
    for (std::size_t j = 1; j < j_; ++j) {
      out.blocks[j] = hermitize(detail::psd_part(-beta_ * u_[j]));
      m += p_.constraints[j].apply_linear(out.blocks[j]);
    }
    const double top =
        detail::hermitian_eigenvalues(hermitize(c_inv_sqrt_ * m * c_inv_sqrt_)).maxCoeff();
    const double scale = top > 1.0 ? 1.0 / top : 1.0;
    double value = 0.0;
    for (std::size_t j = 1; j < j_; ++j) {
      out.blocks[j] *= scale;
      value -= frob_inner(out.blocks[j], p_.constraints[j].offset);
    }
    out.blocks[0] = hermitize(p_.objective - scale * m);
    out.value = value;
    return out;
  }

 private:
  const SdpProblem& p_;
  std::size_t j_;
  Eigen::Index d_;
  double beta_ = 1.0;
  CMatrix x_;
  std::vector<CMatrix> s_;
  std::vector<CMatrix> u_;
  CMatrix c_inv_sqrt_;
};

}  // namespace

CMatrix PsdMap::apply_linear(const CMatrix& x) const {
  return transpose ? transpose->apply(x) : x;
}

CMatrix PsdMap::apply(const CMatrix& x) const { return offset + apply_linear(x); }

void SdpProblem::validate() const {
  const auto d = static_cast<Eigen::Index>(reg.total_dim());
  if (objective.rows() != d || objective.cols() != d) throw DimensionError("SDP objective side mismatch");
  if ((objective - objective.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTol) {
    throw HermiticityError("SDP objective is not Hermitian");
  }
  if (constraints.empty()) throw DomainError("SDP has no constraints");
  for (const PsdMap& c : constraints) {
    if (c.offset.rows() != d || c.offset.cols() != d) throw DimensionError("SDP constraint side mismatch");
    if ((c.offset - c.offset.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTol) {
      throw HermiticityError("SDP constraint offset is not Hermitian");
    }
  }
  const PsdMap& first = constraints.front();
  if (first.transpose || first.offset.cwiseAbs().maxCoeff() != 0.0) {
    throw DomainError("SDP: the first constraint must be X >= 0");
  }
  if (detail::hermitian_eigenvalues(objective).minCoeff() <= 0.0) {
    throw DomainError("SDP: objective must be positive definite");
  }
}

const char* to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::max_iter: return "max_iter";
    case SdpStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

double default_sdp_tolerance(std::size_t dim) {
  if (dim <= 16) return 1e-6;
  if (dim <= kMaxSdpDim) return 1e-4;
  throw SizeError("SDP dimension " + std::to_string(dim) + " exceeds " + std::to_string(kMaxSdpDim));
}

SdpProblem build_robustness_sdp(const HermOp& rho, std::span<const Partition> parts) {
  if (parts.empty()) throw DomainError("robustness SDP needs at least one partition");
  if (rho.dim() > kMaxSdpDim) {
    throw SizeError("SDP dimension " + std::to_string(rho.dim()) + " exceeds " +
                    std::to_string(kMaxSdpDim));
  }
  require_density(rho, "build_robustness_sdp");
  const auto d = static_cast<Eigen::Index>(rho.dim());
  SdpProblem problem{rho.reg(), CMatrix::Identity(d, d), {}};
  problem.constraints.push_back({CMatrix::Zero(d, d), std::nullopt, "X"});
  for (const Partition& part : parts) {
    part.validate(rho.reg(), true);
    PartialTransposeMap map(rho.reg(), part);
    CMatrix offset = map.apply(rho.matrix());
    problem.constraints.push_back({std::move(offset), std::move(map), "(rho+X)^T" + part.to_string()});
  }
  return problem;
}

SdpSolution solve(const SdpProblem& problem, double tol, std::size_t max_iter) {
  if (!(tol > 0)) throw DomainError("SDP tolerance must be > 0");
  if (problem.variable_dim() > kMaxSdpDim) {
    throw SizeError("SDP dimension " + std::to_string(problem.variable_dim()) + " exceeds " +
                    std::to_string(kMaxSdpDim));
  }
  problem.validate();

  constexpr std::size_t kCheckEvery = 10;
  constexpr std::size_t kRebalanceEvery = 25;

  AdmmState state(problem);
  SdpSolution best;
  best.primal_value = std::numeric_limits<double>::infinity();
  best.dual_value = -std::numeric_limits<double>::infinity();

  for (std::size_t it = 1; it <= max_iter; ++it) {
    const auto [primal_res, dual_res] = state.step();
    best.iterations = it;
    if (it % kRebalanceEvery == 0) state.rebalance(primal_res, dual_res);
    if (it % kCheckEvery != 0 && it != max_iter) continue;

    CMatrix x = state.repaired_primal();
    const double pv = frob_inner(problem.objective, x);
    if (pv < best.primal_value) {
      best.primal_value = pv;
      best.x_opt = std::move(x);
    }
    DualRepair dual = state.repaired_dual();
    if (dual.value > best.dual_value) {
      best.dual_value = dual.value;
      best.dual_blocks = std::move(dual.blocks);
    }
    best.gap = best.primal_value - best.dual_value;
    if (best.gap <= tol) {
      best.status = SdpStatus::optimal;
      return best;
    }
  }
  best.status = SdpStatus::max_iter;
  return best;
}

bool check_certificate(const SdpProblem& problem, const SdpSolution& solution, double tol) {
  const auto d = static_cast<Eigen::Index>(problem.variable_dim());
  const CMatrix& x = solution.x_opt;
  if (x.rows() != d || x.cols() != d || !x.allFinite()) return false;
  if ((x - x.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTol) return false;

  for (const PsdMap& c : problem.constraints) {
    if (detail::hermitian_eigenvalues(hermitize(c.apply(x))).minCoeff() < -tol) return false;
  }
  const double primal = frob_inner(problem.objective, x);
  if (std::abs(primal - solution.primal_value) > tol) return false;

  if (solution.dual_blocks.size() != problem.constraints.size()) return false;
  CMatrix residual = problem.objective;
  double dual = 0.0;
  for (std::size_t j = 0; j < problem.constraints.size(); ++j) {
    const CMatrix& z = solution.dual_blocks[j];
    if (z.rows() != d || z.cols() != d || !z.allFinite()) return false;
    if (detail::hermitian_eigenvalues(hermitize(z)).minCoeff() < -tol) return false;
    residual -= problem.constraints[j].apply_linear(z);
    dual -= frob_inner(z, problem.constraints[j].offset);
  }
  if (residual.cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(dual - solution.dual_value) > tol) return false;

  const double gap = primal - dual;
  return gap >= -1e-8 && gap <= tol;
}

}  // namespace supent
