#include "supent/quantifiers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "supent/errors.hpp"

namespace supent {

const char* to_string(QuantifierKind kind) {
  switch (kind) {
    case QuantifierKind::negativity: return "negativity";
    case QuantifierKind::generalized_robustness: return "robustness";
  }
  return "unknown";
}

std::vector<Partition> QuantifierConfig::resolved_partitions(const Register& reg) const {
  std::vector<Partition> parts =
      partitions.empty() ? Partition::single_cuts(reg.num_subsystems()) : partitions;
  for (const Partition& p : parts) p.validate(reg, true);
  return parts;
}

double negativity(const HermOp& rho, const Partition& part) {
  require_density(rho, "negativity");
  part.validate(rho.reg(), true);
  const RVector ev = eigenvalues(partial_transpose(rho, part));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] < 0) sum -= ev[i];
  return std::max(0.0, sum);
}

double witnessed_entanglement_pure(const Ket& psi, const Witness& w) {
  if (!psi.is_normalized()) throw DomainError("witnessed_entanglement_pure: ket is not normalized");
  return std::max(0.0, -eval_witness(w, psi));
}

std::vector<bool> ppt_check(const HermOp& rho, std::span<const Partition> parts, double tol) {
  require_density(rho, "ppt_check");
  std::vector<bool> out;
  out.reserve(parts.size());
  for (const Partition& part : parts) {
    part.validate(rho.reg(), true);
    out.push_back(is_psd(partial_transpose(rho, part), tol));
  }
  return out;
}

HermOp mix(const HermOp& rho, const HermOp& pi, double s) {
  if (!(s >= 0) || !std::isfinite(s)) throw DomainError("mix: weight s must be >= 0");
  if (!(rho.reg() == pi.reg())) throw RegisterMismatch("mix: registers differ");
  require_density(rho, "mix (rho)");
  require_density(pi, "mix (pi)");
  return HermOp(rho.reg(), (rho.matrix() + s * pi.matrix()) / (1.0 + s));
}

bool separability_certificate_diagonal(const HermOp& rho, double tol) {
  return detail::max_abs_offdiag(rho.matrix()) <= tol;
}

namespace {

// The separability test as a margin that is concave in s and >= 0 exactly
// where mix(rho, pi, s) passes.
class MixingMargin {
 public:
  MixingMargin(const HermOp& rho, const HermOp& pi, const MixingSearch& search)
      : rho_(rho.matrix()), pi_(pi.matrix()), search_(search) {
    if (search.test == SeparabilityTest::ppt_all_cuts) {
      const std::vector<Partition> parts = search.partitions.empty()
                                               ? Partition::single_cuts(rho.reg().num_subsystems())
                                               : search.partitions;
      for (const Partition& part : parts) {
        part.validate(rho.reg(), true);
        PartialTransposeMap map(rho.reg(), part);
        rho_pt_.push_back(map.apply(rho_));
        pi_pt_.push_back(map.apply(pi_));
      }
    }
  }

  double operator()(double s) const {
    if (search_.test == SeparabilityTest::diagonal) {
      return search_.diagonal_tol * (1.0 + s) - detail::max_abs_offdiag(rho_ + s * pi_);
    }
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < rho_pt_.size(); ++p) {
      const CMatrix m = rho_pt_[p] + s * pi_pt_[p];
      worst = std::min(worst, detail::hermitian_eigenvalues(0.5 * (m + m.adjoint())).minCoeff());
    }
    return worst + search_.ppt_tol * (1.0 + s);
  }

  // Points where some off-diagonal |rho_ij + s pi_ij| is minimal; the exact
  // separable point of a coherence-cancelling mixture is among them.
  std::vector<double> critical_points(double lo, double hi) const {
    std::vector<double> pts;
    if (search_.test != SeparabilityTest::diagonal) return pts;
    for (Eigen::Index j = 0; j < pi_.cols(); ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const double w = std::norm(pi_(i, j));
        if (w == 0.0) continue;
        const double s = -(std::conj(pi_(i, j)) * rho_(i, j)).real() / w;
        if (s >= lo && s <= hi) pts.push_back(s);
      }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

 private:
  CMatrix rho_;
  CMatrix pi_;
  std::vector<CMatrix> rho_pt_;
  std::vector<CMatrix> pi_pt_;
  const MixingSearch& search_;
};

constexpr std::size_t kMaxCriticalChecks = 64;

// Candidates replace earlier ones only on a real improvement, so exact
// presets are not displaced by rounding-level differences.
constexpr double kImprovement = 1e-12;

}  // namespace

RobustnessBounds rg_upper_via_mixing(const HermOp& rho, const HermOp& pi,
                                     const MixingSearch& search) {
  if (!(rho.reg() == pi.reg())) throw RegisterMismatch("rg_upper_via_mixing: registers differ");
  require_density(rho, "rg_upper_via_mixing (rho)");
  require_density(pi, "rg_upper_via_mixing (pi)");
  const double s_max = search.s_max > 0 ? search.s_max : static_cast<double>(rho.dim());
  if (!(search.s_max >= 0) || !(search.resolution > 0) || !std::isfinite(s_max)) {
    throw DomainError("rg_upper_via_mixing: invalid bisection bracket");
  }

  const MixingMargin margin(rho, pi, search);
  const bool certifies = search.test == SeparabilityTest::diagonal;

  RobustnessBounds out;
  out.mixing_state_used = pi;
  out.upper_source = certifies ? "mixing/diagonal" : "mixing/ppt (uncertified)";

  auto finish = [&](double s) {
    const HermOp sigma = mix(rho, pi, s);
    bool ok = false;
    if (certifies) {
      ok = separability_certificate_diagonal(sigma, search.diagonal_tol);
    } else {
      const std::vector<Partition> parts = search.partitions.empty()
                                               ? Partition::single_cuts(rho.reg().num_subsystems())
                                               : search.partitions;
      const std::vector<bool> ppt = ppt_check(sigma, parts, search.ppt_tol);
      ok = std::all_of(ppt.begin(), ppt.end(), [](bool b) { return b; });
    }
    if (ok) {
      out.upper = s;
      out.s_star = s;
      out.certified_upper = certifies;
    }
    return out;
  };

  if (margin(0.0) >= 0) return finish(0.0);

  std::optional<double> pass;
  std::size_t checked = 0;
  for (double s : margin.critical_points(0.0, s_max)) {
    if (++checked > kMaxCriticalChecks) break;
    if (margin(s) >= 0) {
      pass = s;
      break;
    }
  }

  if (!pass) {
    // Golden-section ascent on the concave margin until some point passes.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = s_max;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = margin(c), fd = margin(d);
    while (b - a > 1e-13 * std::max(1.0, b)) {
      if (fc >= 0) { pass = c; break; }
      if (fd >= 0) { pass = d; break; }
      if (fc < fd) {
        a = c; c = d; fc = fd;
        d = a + inv_phi * (b - a); fd = margin(d);
      } else {
        b = d; d = c; fd = fc;
        c = b - inv_phi * (b - a); fc = margin(c);
      }
    }
    if (!pass && margin(b) >= 0) pass = b;
    if (!pass) return out;
  }

  // Left end of the passing interval; 0 is known to fail.
  double lo = 0.0, hi = *pass;
  while (hi - lo > search.resolution) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) >= 0 ? hi : lo) = mid;
  }
  checked = 0;
  for (double s : margin.critical_points(lo, hi)) {
    if (++checked > kMaxCriticalChecks) break;
    if (margin(s) >= 0) {
      hi = s;
      break;
    }
  }
  return finish(hi);
}

RobustnessBounds rg_lower_via_witness(const HermOp& rho, const Witness& w) {
  if (!w.cap_identity()) throw ClassError("rg_lower_via_witness: witness is not in the class W <= I");
  require_density(rho, "rg_lower_via_witness");
  RobustnessBounds out;
  out.lower = std::max(0.0, -eval_witness(w, rho));
  out.witness_used = w;
  out.lower_source = "witness";
  return out;
}

PptRobustness rg_ppt_sdp_detailed(const HermOp& rho, std::span<const Partition> parts, double tol) {
  const SdpProblem problem = build_robustness_sdp(rho, parts);
  const double t = tol > 0 ? tol : default_sdp_tolerance(problem.variable_dim());
  SdpSolution sol = solve(problem, t);
  if (sol.status != SdpStatus::optimal) {
    throw SolverFailure(std::string("PPT robustness SDP ended with status ") + to_string(sol.status) +
                            ", gap " + std::to_string(sol.gap),
                        sol.primal_value);
  }
  // sum_p Z_p^{T_p} = I - Z_0
  Witness w(HermOp(rho.reg(), problem.objective - sol.dual_blocks[0]), std::nullopt, true);
  const double value = sol.primal_value;
  const double lower = std::max(0.0, sol.dual_value);
  return PptRobustness{value, lower, std::move(w), std::move(sol)};
}

double rg_ppt_sdp(const HermOp& rho, std::span<const Partition> parts, double tol) {
  return rg_ppt_sdp_detailed(rho, parts, tol).value;
}

std::optional<DephasingPartner> dephasing_partner(const HermOp& rho) {
  require_density(rho, "dephasing_partner");
  const CMatrix& m = rho.matrix();
  if (detail::max_abs_offdiag(m) == 0.0) return std::nullopt;

  const Eigen::Index d = m.rows();
  RVector inv_sqrt = RVector::Zero(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double p = m(i, i).real();
    if (p > 1e-15) inv_sqrt[i] = 1.0 / std::sqrt(p);
  }
  const CMatrix k = inv_sqrt.asDiagonal() * m * inv_sqrt.asDiagonal();
  const double top = detail::hermitian_eigenvalues(0.5 * (k + k.adjoint())).maxCoeff();
  const double s = top - 1.0;
  if (!(s > 0)) return std::nullopt;

  CMatrix diag = CMatrix::Zero(d, d);
  diag.diagonal() = m.diagonal();
  return DephasingPartner{HermOp(rho.reg(), ((1.0 + s) * diag - m) / s), s};
}

std::optional<double> ghz_phase(const HermOp& rho, double tol) {
  const Register& reg = rho.reg();
  if (!reg.is_qubits() || reg.num_subsystems() < 2) return std::nullopt;
  const CMatrix& m = rho.matrix();
  const Eigen::Index last = m.rows() - 1;
  const Complex corner = m(last, 0);
  if (std::abs(m(0, 0) - 0.5) > tol || std::abs(m(last, last) - 0.5) > tol ||
      std::abs(std::abs(corner) - 0.5) > tol) {
    return std::nullopt;
  }
  CMatrix rest = m;
  rest(0, 0) = rest(last, last) = rest(0, last) = rest(last, 0) = 0.0;
  if (rest.cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return std::arg(corner);
}

SandwichResult robustness_sandwich(const HermOp& rho, const SandwichOptions& options) {
  require_density(rho, "robustness_sandwich");
  const std::vector<Partition> parts = options.partitions.empty()
                                           ? Partition::single_cuts(rho.reg().num_subsystems())
                                           : options.partitions;
  SandwichResult result;
  RobustnessBounds& bounds = result.bounds;
  bounds.lower_source = "trivial";

  std::vector<Witness> witnesses = options.witnesses;
  std::vector<std::pair<HermOp, std::string>> mixers;
  for (const HermOp& pi : options.mixing_candidates) mixers.emplace_back(pi, "candidate");

  if (options.presets) {
    if (const auto phase = ghz_phase(rho)) {
      const std::size_t n = rho.reg().num_subsystems();
      witnesses.push_back(ghz_witness(n, *phase));
      mixers.emplace_back(density(ghz(n, *phase, true)), "ghz_orthogonal");
    }
    if (auto partner = dephasing_partner(rho)) mixers.emplace_back(partner->pi, "dephasing_partner");
  }

  for (const Witness& w : witnesses) {
    RobustnessBounds lb = rg_lower_via_witness(rho, w);
    if (!bounds.witness_used || lb.lower > bounds.lower + kImprovement) {
      bounds.lower = lb.lower;
      bounds.witness_used = w;
      bounds.lower_source = "witness";
    }
  }

  if (options.ppt_sdp) {
    PptRobustness sdp = rg_ppt_sdp_detailed(rho, parts, options.sdp_tol);
    result.ppt_sdp = sdp.value;
    result.ppt_sdp_lower = sdp.lower;
    RobustnessBounds lb = rg_lower_via_witness(rho, sdp.witness);
    if (lb.lower > bounds.lower + kImprovement) {
      bounds.lower = lb.lower;
      bounds.witness_used = sdp.witness;
      bounds.lower_source = "ppt_sdp_dual_witness";
    }
  }

  if (separability_certificate_diagonal(rho, options.search.diagonal_tol)) {
    bounds.upper = 0.0;
    bounds.s_star = 0.0;
    bounds.certified_upper = true;
    bounds.upper_source = "diagonal";
    return result;
  }

  MixingSearch search = options.search;
  search.test = SeparabilityTest::diagonal;
  for (const auto& [pi, label] : mixers) {
    RobustnessBounds ub = rg_upper_via_mixing(rho, pi, search);
    if (ub.upper && ub.certified_upper && (!bounds.upper || *ub.upper < *bounds.upper - kImprovement)) {
      bounds.upper = ub.upper;
      bounds.s_star = ub.s_star;
      bounds.mixing_state_used = ub.mixing_state_used;
      bounds.certified_upper = true;
      bounds.upper_source = "mixing/" + label;
    }
  }

  if (!bounds.upper && options.presets) {
    MixingSearch ppt = options.search;
    ppt.test = SeparabilityTest::ppt_all_cuts;
    ppt.partitions = parts;
    const auto d = static_cast<Eigen::Index>(rho.dim());
    const HermOp maximally_mixed(rho.reg(), CMatrix::Identity(d, d) / static_cast<double>(d));
    RobustnessBounds ub = rg_upper_via_mixing(rho, maximally_mixed, ppt);
    if (ub.upper) {
      bounds.upper = ub.upper;
      bounds.s_star = ub.s_star;
      bounds.mixing_state_used = ub.mixing_state_used;
      bounds.certified_upper = false;
      bounds.upper_source = "mixing/maximally_mixed (ppt, uncertified)";
    }
  }
  return result;
}

}  // namespace supent
