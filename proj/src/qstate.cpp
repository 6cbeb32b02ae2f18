#include "supent/qstate.hpp"

#include <cmath>

#include "supent/errors.hpp"

namespace supent {

Ket::Ket(Register reg, CVector amplitudes) : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != reg_.total_dim()) {
    throw DimensionError("ket length " + std::to_string(amps_.size()) +
                         " does not match register " + reg_.to_string());
  }
  if (!amps_.allFinite()) throw DomainError("ket has non-finite amplitudes");
}

bool Ket::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

Ket Ket::normalized() const {
  const double n2 = norm_squared();
  if (n2 < kNormTol) throw DomainError("cannot normalize a ket of norm^2 " + std::to_string(n2));
  return Ket(reg_, amps_ / std::sqrt(n2));
}

Ket Ket::scaled(Complex factor) const { return Ket(reg_, factor * amps_); }

SuperposCoeffs::SuperposCoeffs(Complex a_, Complex b_) : a(a_), b(b_) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
      !std::isfinite(b.imag())) {
    throw DomainError("superposition coefficients must be finite");
  }
  if (a == Complex{} && b == Complex{}) throw DomainError("superposition coefficients are both zero");
}

Ket basis_ket(const Register& reg, std::span<const std::size_t> labels) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(reg.total_dim()));
  amps[static_cast<Eigen::Index>(reg.encode(labels))] = 1.0;
  return Ket(reg, amps);
}

Ket basis_ket(const Register& reg, std::initializer_list<std::size_t> labels) {
  return basis_ket(reg, std::span<const std::size_t>(labels.begin(), labels.size()));
}

Ket tensor(const Ket& left, const Ket& right) {
  const CVector& u = left.amplitudes();
  const CVector& v = right.amplitudes();
  CVector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out.segment(i * v.size(), v.size()) = u[i] * v;
  return Ket(left.reg().concat(right.reg()), out);
}

Ket superpose(const SuperposCoeffs& coeffs, const Ket& psi, const Ket& phi, SuperposMode mode) {
  if (!(psi.reg() == phi.reg())) {
    throw RegisterMismatch("superpose: registers " + psi.reg().to_string() + " and " +
                           phi.reg().to_string() + " differ");
  }
  if (!psi.is_normalized() || !phi.is_normalized()) {
    throw DomainError("superpose: constituents must be normalized");
  }
  Ket gamma(psi.reg(), coeffs.a * psi.amplitudes() + coeffs.b * phi.amplitudes());
  if (mode == SuperposMode::renormalize) return gamma.normalized();
  return gamma;
}

Ket ghz(std::size_t n, double phase, bool orthogonal) {
  if (n < 2) throw DomainError("GHZ state needs n >= 2 qubits");
  const Register reg = Register::qubits(n);
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(reg.total_dim()));
  const double h = 1.0 / std::sqrt(2.0);
  amps[0] = h;
  amps[amps.size() - 1] = (orthogonal ? -h : h) * std::polar(1.0, phase);
  return Ket(reg, amps);
}

Complex overlap(const Ket& psi, const Ket& phi) {
  if (!(psi.reg() == phi.reg())) throw RegisterMismatch("overlap: registers differ");
  return psi.amplitudes().dot(phi.amplitudes());
}

HermOp density(const Ket& psi) {
  return HermOp(psi.reg(), psi.amplitudes() * psi.amplitudes().adjoint());
}

}  // namespace supent
