#pragma once

#include <cstddef>
#include <span>

#include "supent/linops.hpp"
#include "supent/register.hpp"

namespace supent {

inline constexpr double kNormTol = 1e-12;

/// Dense amplitude vector over a register.
class Ket {
 public:
  Ket(Register reg, CVector amplitudes);

  const Register& reg() const noexcept { return reg_; }
  const CVector& amplitudes() const noexcept { return amps_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }

  double norm_squared() const { return amps_.squaredNorm(); }
  bool is_normalized(double tol = kNormTol) const;
  /// Throws DomainError when the norm is below kNormTol.
  Ket normalized() const;
  Ket scaled(Complex factor) const;

 private:
  Register reg_;
  CVector amps_;
};

/// Coefficients a, b of a|psi> + b|phi>; finite and not both zero.
struct SuperposCoeffs {
  SuperposCoeffs(Complex a, Complex b);

  Complex a;
  Complex b;
};

enum class SuperposMode { raw, renormalize };

Ket basis_ket(const Register& reg, std::span<const std::size_t> labels);
Ket basis_ket(const Register& reg, std::initializer_list<std::size_t> labels);
Ket tensor(const Ket& left, const Ket& right);

/// a|psi> + b|phi>. In raw mode the natural norm is kept.
Ket superpose(const SuperposCoeffs& coeffs, const Ket& psi, const Ket& phi,
              SuperposMode mode = SuperposMode::raw);

/// (|0...0> + e^{i phase}|1...1>)/sqrt(2), or with a minus sign when orthogonal.
Ket ghz(std::size_t n, double phase, bool orthogonal = false);

Complex overlap(const Ket& psi, const Ket& phi);
HermOp density(const Ket& psi);

}  // namespace supent
