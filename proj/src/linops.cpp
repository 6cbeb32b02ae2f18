#include "supent/linops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "supent/errors.hpp"

namespace supent {

HermOp::HermOp(Register reg, CMatrix matrix) : reg_(std::move(reg)), m_(std::move(matrix)) {
  const auto side = static_cast<Eigen::Index>(reg_.total_dim());
  if (m_.rows() != side || m_.cols() != side) {
    throw DimensionError("operator side " + std::to_string(m_.rows()) + "x" +
                         std::to_string(m_.cols()) + " does not match register " +
                         reg_.to_string());
  }
  if (!m_.allFinite()) throw DomainError("operator has non-finite entries");
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermiticityTol) {
    throw HermiticityError("operator is not Hermitian (max |M - M^dagger| = " +
                           std::to_string(asym) + ")");
  }
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

HermOp HermOp::identity(const Register& reg) {
  const auto d = static_cast<Eigen::Index>(reg.total_dim());
  return HermOp(reg, CMatrix::Identity(d, d));
}

HermOp HermOp::zero(const Register& reg) {
  const auto d = static_cast<Eigen::Index>(reg.total_dim());
  return HermOp(reg, CMatrix::Zero(d, d));
}

HermOp HermOp::operator+(const HermOp& other) const {
  if (!(reg_ == other.reg_)) throw RegisterMismatch("operator registers differ");
  return HermOp(reg_, m_ + other.m_);
}

HermOp HermOp::operator-(const HermOp& other) const {
  if (!(reg_ == other.reg_)) throw RegisterMismatch("operator registers differ");
  return HermOp(reg_, m_ - other.m_);
}

HermOp HermOp::scaled(double factor) const { return HermOp(reg_, factor * m_); }

Partition::Partition(std::vector<std::size_t> transposed) : idx_(std::move(transposed)) {
  std::sort(idx_.begin(), idx_.end());
  idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
}

bool Partition::contains(std::size_t k) const {
  return std::binary_search(idx_.begin(), idx_.end(), k);
}

void Partition::validate(const Register& reg, bool as_bipartition) const {
  for (std::size_t k : idx_) {
    if (k >= reg.num_subsystems()) {
      throw DimensionError("partition index " + std::to_string(k) + " invalid for register " +
                           reg.to_string());
    }
  }
  if (as_bipartition && (idx_.empty() || idx_.size() == reg.num_subsystems())) {
    throw DimensionError("partition " + to_string() + " is not a proper bipartition of " +
                         reg.to_string());
  }
}

Partition Partition::complement(const Register& reg) const {
  validate(reg, false);
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < reg.num_subsystems(); ++k)
    if (!contains(k)) rest.push_back(k);
  return Partition(std::move(rest));
}

std::string Partition::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < idx_.size(); ++i) out << (i ? "," : "") << idx_[i];
  out << '}';
  return out.str();
}

std::vector<Partition> Partition::single_cuts(std::size_t n) {
  std::vector<Partition> cuts;
  cuts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) cuts.emplace_back(std::vector<std::size_t>{k});
  return cuts;
}

PartialTransposeMap::PartialTransposeMap(const Register& reg, const Partition& part)
    : part_(part), a_part_(reg.total_dim(), 0) {
  part.validate(reg, false);
  for (std::size_t i = 0; i < reg.total_dim(); ++i) {
    std::size_t rest = i;
    std::size_t a = 0;
    std::size_t stride = 1;
    for (std::size_t k = reg.num_subsystems(); k-- > 0;) {
      const std::size_t digit = rest % reg.dim(k);
      rest /= reg.dim(k);
      if (part.contains(k)) a += digit * stride;
      stride *= reg.dim(k);
    }
    a_part_[i] = a;
  }
}

CMatrix PartialTransposeMap::apply(const CMatrix& m) const {
  const auto d = static_cast<Eigen::Index>(a_part_.size());
  if (m.rows() != d || m.cols() != d) throw DimensionError("partial transpose: side mismatch");
  CMatrix out(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const std::size_t aj = a_part_[static_cast<std::size_t>(j)];
    const std::size_t bj = static_cast<std::size_t>(j) - aj;
    for (Eigen::Index i = 0; i < d; ++i) {
      const std::size_t ai = a_part_[static_cast<std::size_t>(i)];
      const std::size_t bi = static_cast<std::size_t>(i) - ai;
      out(i, j) = m(static_cast<Eigen::Index>(aj + bi), static_cast<Eigen::Index>(ai + bj));
    }
  }
  return out;
}

HermOp partial_transpose(const HermOp& op, const Partition& part) {
  return HermOp(op.reg(), PartialTransposeMap(op.reg(), part).apply(op.matrix()));
}

EigDecomp eig_hermitian(const HermOp& op) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(op.matrix());
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolve did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector eigenvalues(const HermOp& op) { return detail::hermitian_eigenvalues(op.matrix()); }

double min_eigenvalue(const HermOp& op) { return eigenvalues(op).minCoeff(); }

double max_eigenvalue(const HermOp& op) { return eigenvalues(op).maxCoeff(); }

double operator_norm(const HermOp& op) { return eigenvalues(op).cwiseAbs().maxCoeff(); }

bool is_psd(const HermOp& op, double tol) {
  if (tol < 0) throw DomainError("is_psd: tolerance must be >= 0");
  return min_eigenvalue(op) >= -tol;
}

HermOp neg_eigenspace_projector(const HermOp& op, double tol) {
  if (tol < 0) throw DomainError("neg_eigenspace_projector: tolerance must be >= 0");
  const EigDecomp eig = eig_hermitian(op);
  const auto d = static_cast<Eigen::Index>(op.dim());
  CMatrix p = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (eig.values[i] < -tol) p += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
  }
  return HermOp(op.reg(), p);
}

void require_density(const HermOp& op, const char* what, double tol) {
  const double tr = op.trace();
  if (std::abs(tr - 1.0) > tol) {
    throw DomainError(std::string(what) + ": expected unit trace, got " + std::to_string(tr));
  }
  const double lo = min_eigenvalue(op);
  if (lo < -tol) {
    throw DomainError(std::string(what) + ": operator is not PSD (min eigenvalue " +
                      std::to_string(lo) + ")");
  }
}

namespace detail {

RVector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolve did not converge");
  return solver.eigenvalues();
}

CMatrix psd_part(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolve did not converge");
  const RVector clipped = solver.eigenvalues().cwiseMax(0.0);
  const CMatrix& v = solver.eigenvectors();
  return v * clipped.asDiagonal() * v.adjoint();
}

double max_abs_offdiag(const CMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

}  // namespace detail

}  // namespace supent
