#pragma once

#include <cstdint>
#include <optional>

#include "supent/linops.hpp"
#include "supent/qstate.hpp"

namespace supent {

/// Spectral class -n I <= W <= m I.
struct ClassBounds {
  double m = 0.0;
  double n = 0.0;
};

/// An operator plus the witness class it is claimed to belong to. Claims are
/// checked against the spectrum on construction (tolerance 1e-9).
class Witness {
 public:
  explicit Witness(HermOp op, std::optional<ClassBounds> bounds = std::nullopt,
                   bool cap_identity = false);

  static Witness zero(const Register& reg);

  const HermOp& op() const noexcept { return op_; }
  const Register& reg() const noexcept { return op_.reg(); }
  const std::optional<ClassBounds>& class_bounds() const noexcept { return bounds_; }
  bool cap_identity() const noexcept { return cap_identity_; }

 private:
  struct Trusted {};
  Witness(Trusted, HermOp op, std::optional<ClassBounds> bounds, bool cap_identity);
  friend Witness ghz_witness(std::size_t n, double phase);

  HermOp op_;
  std::optional<ClassBounds> bounds_;
  bool cap_identity_ = false;
};

struct ProductSearchConfig {
  std::size_t restarts = 32;
  std::size_t max_iterations = 500;
  std::uint64_t seed = 20070427;
  double convergence_tol = 1e-13;
};

/// Tr(W rho); the imaginary residue is discarded.
double eval_witness(const Witness& w, const HermOp& state);
/// <psi|W|psi>
double eval_witness(const Witness& w, const Ket& state);

/// (P_neg(rho^{T_A}))^{T_A}. No class claim is attached.
Witness negativity_optimal_witness(const HermOp& rho, const Partition& part);

/// I - 2|GHZ_n(phase)><GHZ_n(phase)|, in the class W <= I with (m, n) = (1, 1).
Witness ghz_witness(std::size_t n, double phase);

/// max(m, n), from the declared class bounds if any, else from the spectrum.
double witness_k(const Witness& w);

/// Lower bound on max <prod|P|prod> over fully product unit kets, by see-saw
/// over single sites with random restarts. Restart r is seeded with seed + r.
double max_product_overlap(const HermOp& projector, const ProductSearchConfig& config = {});

/// 2 Re(conj(a) b <psi|W|phi>)
double interference_term(const Witness& w, const Ket& psi, const Ket& phi,
                         const SuperposCoeffs& coeffs);

}  // namespace supent
