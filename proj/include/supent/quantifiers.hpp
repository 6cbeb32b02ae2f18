#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "supent/linops.hpp"
#include "supent/sdpcore.hpp"
#include "supent/witnesses.hpp"

namespace supent {

enum class QuantifierKind { negativity, generalized_robustness };

const char* to_string(QuantifierKind kind);

struct QuantifierTolerances {
  double ppt = 1e-9;
  double diagonal = 1e-12;
  double sdp = 0.0;  // 0 selects default_sdp_tolerance(dim)
};

struct QuantifierConfig {
  QuantifierKind kind = QuantifierKind::negativity;
  std::vector<Partition> partitions;  // empty selects all single cuts
  QuantifierTolerances tolerances;

  std::vector<Partition> resolved_partitions(const Register& reg) const;
};

/// Sum of |negative eigenvalues| of rho^{T_part}.
double negativity(const HermOp& rho, const Partition& part);

/// max(0, -<psi|W|psi>)
double witnessed_entanglement_pure(const Ket& psi, const Witness& w);

std::vector<bool> ppt_check(const HermOp& rho, std::span<const Partition> parts, double tol);

/// (rho + s pi) / (1 + s)
HermOp mix(const HermOp& rho, const HermOp& pi, double s);

/// True iff every off-diagonal entry has modulus <= tol. A diagonal density
/// operator is a convex combination of product basis projectors.
bool separability_certificate_diagonal(const HermOp& rho, double tol);

enum class SeparabilityTest { diagonal, ppt_all_cuts };

struct MixingSearch {
  double s_max = 0.0;  // 0 selects the total dimension
  double resolution = 1e-6;
  SeparabilityTest test = SeparabilityTest::diagonal;
  std::vector<Partition> partitions;  // for ppt_all_cuts; empty selects single cuts
  double diagonal_tol = 1e-12;
  double ppt_tol = 1e-9;
};

struct RobustnessBounds {
  double lower = 0.0;
  std::optional<double> upper;
  bool certified_upper = false;
  std::optional<Witness> witness_used;
  std::optional<HermOp> mixing_state_used;
  std::optional<double> s_star;
  std::string upper_source;
  std::string lower_source;
};

/// Smallest s in [0, s_max] at which mix(rho, pi, s) passes the selected
/// separability test. Both tests have a concave margin in s, so the passing
/// set is an interval: locate its peak, then bisect for the left end.
RobustnessBounds rg_upper_via_mixing(const HermOp& rho, const HermOp& pi,
                                     const MixingSearch& search = {});

/// max(0, -Tr(W rho)) for a witness in the class W <= I.
RobustnessBounds rg_lower_via_witness(const HermOp& rho, const Witness& w);

struct PptRobustness {
  double value = 0.0;  // primal optimum
  double lower = 0.0;  // dual value, a certified lower bound on the PPT optimum
  Witness witness;     // dual witness W = sum_p Z_p^{T_p}, W <= I
  SdpSolution solution;
};

/// PPT relaxation of the generalized robustness; a lower bound on R_g.
/// Throws SolverFailure (carrying the best primal value) unless optimal.
double rg_ppt_sdp(const HermOp& rho, std::span<const Partition> parts, double tol = 0.0);
PptRobustness rg_ppt_sdp_detailed(const HermOp& rho, std::span<const Partition> parts,
                                  double tol = 0.0);

/// The state pi with (rho + s pi)/(1 + s) = diag(rho) for the smallest such s.
/// Returns nullopt when rho is already diagonal.
struct DephasingPartner {
  HermOp pi;
  double s;
};
std::optional<DephasingPartner> dephasing_partner(const HermOp& rho);

/// The phase phi when rho = |GHZ_N(phi)><GHZ_N(phi)| within tol on a qubit register.
std::optional<double> ghz_phase(const HermOp& rho, double tol = 1e-9);

struct SandwichOptions {
  std::vector<Witness> witnesses;
  std::vector<HermOp> mixing_candidates;
  bool presets = true;   // GHZ witness/partner when rho is GHZ, dephasing partner
  bool ppt_sdp = false;  // also solve the PPT relaxation; its dual witness joins the lower side
  std::vector<Partition> partitions;
  MixingSearch search;
  double sdp_tol = 0.0;
};

struct SandwichResult {
  RobustnessBounds bounds;
  std::optional<double> ppt_sdp;
  std::optional<double> ppt_sdp_lower;
};

/// Best lower bound over the witness candidates and best certified upper bound
/// over the mixing candidates. Upper bounds are relative to the candidates tried.
SandwichResult robustness_sandwich(const HermOp& rho, const SandwichOptions& options);

}  // namespace supent
