#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "supent/register.hpp"

namespace supent {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kDefaultEigTol = 1e-9;

/// Dense Hermitian operator on a register. Construction checks
/// max |M - M^dagger| <= kHermiticityTol and then symmetrizes exactly.
class HermOp {
 public:
  HermOp(Register reg, CMatrix matrix);

  static HermOp identity(const Register& reg);
  static HermOp zero(const Register& reg);

  const Register& reg() const noexcept { return reg_; }
  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  double trace() const { return m_.trace().real(); }

  HermOp operator+(const HermOp& other) const;
  HermOp operator-(const HermOp& other) const;
  HermOp scaled(double factor) const;

 private:
  Register reg_;
  CMatrix m_;
};

/// The subsystems transposed by T_A.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::size_t> transposed);
  Partition(std::initializer_list<std::size_t> transposed)
      : Partition(std::vector<std::size_t>(transposed)) {}

  const std::vector<std::size_t>& subsystems() const noexcept { return idx_; }
  bool contains(std::size_t k) const;
  bool empty() const noexcept { return idx_.empty(); }

  /// Throws DimensionError on an out-of-range index. With as_bipartition,
  /// the empty set and the full set are rejected too.
  void validate(const Register& reg, bool as_bipartition) const;

  Partition complement(const Register& reg) const;
  std::string to_string() const;

  /// {0}, {1}, ..., {n-1}: every single-subsystem-versus-rest cut.
  static std::vector<Partition> single_cuts(std::size_t n);

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> idx_;
};

/// Precomputed index map for repeated partial transposes on one register.
/// M'(i, j) = M(a(j) + b(i), a(i) + b(j)) with a(.) the transposed digits.
class PartialTransposeMap {
 public:
  PartialTransposeMap(const Register& reg, const Partition& part);

  CMatrix apply(const CMatrix& m) const;
  const Partition& partition() const noexcept { return part_; }

 private:
  Partition part_;
  std::vector<std::size_t> a_part_;
};

struct EigDecomp {
  RVector values;   // ascending
  CMatrix vectors;  // columns, orthonormal
};

HermOp partial_transpose(const HermOp& op, const Partition& part);
EigDecomp eig_hermitian(const HermOp& op);
RVector eigenvalues(const HermOp& op);
double min_eigenvalue(const HermOp& op);
double max_eigenvalue(const HermOp& op);
double operator_norm(const HermOp& op);
bool is_psd(const HermOp& op, double tol);
HermOp neg_eigenspace_projector(const HermOp& op, double tol = kDefaultEigTol);

/// Throws DomainError unless op is PSD within tol and has unit trace within tol.
void require_density(const HermOp& op, const char* what, double tol = 1e-9);

namespace detail {

// Matrix-level kernels shared by the solver loops; inputs are assumed Hermitian.
RVector hermitian_eigenvalues(const CMatrix& m);
CMatrix psd_part(const CMatrix& m);
double max_abs_offdiag(const CMatrix& m);

}  // namespace detail

}  // namespace supent
