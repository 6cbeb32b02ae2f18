#include "supent/witnesses.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "supent/errors.hpp"

namespace supent {

namespace {

constexpr double kClassTol = 1e-9;

void check_class(const HermOp& op, const std::optional<ClassBounds>& bounds, bool cap_identity) {
  if (!bounds && !cap_identity) return;
  const RVector ev = eigenvalues(op);
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (bounds) {
    if (bounds->m < 0 || bounds->n < 0) throw ClassError("class bounds m, n must be >= 0");
    if (hi > bounds->m + kClassTol || lo < -bounds->n - kClassTol) {
      throw ClassError("witness spectrum [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "] violates the declared class [-" + std::to_string(bounds->n) + ", " +
                       std::to_string(bounds->m) + "]");
    }
  }
  if (cap_identity && hi > 1.0 + kClassTol) {
    throw ClassError("witness max eigenvalue " + std::to_string(hi) + " exceeds 1");
  }
}

CVector kron_all(const std::vector<CVector>& sites) {
  CVector out = CVector::Ones(1);
  for (const CVector& v : sites) {
    CVector next(out.size() * v.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * v.size(), v.size()) = out[i] * v;
    out = std::move(next);
  }
  return out;
}

template <class Rng>
CVector random_unit(std::size_t d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v[i] = Complex(re, im);
  }
  return v.normalized();
}

}  // namespace

Witness::Witness(HermOp op, std::optional<ClassBounds> bounds, bool cap_identity)
    : op_(std::move(op)), bounds_(bounds), cap_identity_(cap_identity) {
  check_class(op_, bounds_, cap_identity_);
}

Witness::Witness(Trusted, HermOp op, std::optional<ClassBounds> bounds, bool cap_identity)
    : op_(std::move(op)), bounds_(bounds), cap_identity_(cap_identity) {}

Witness Witness::zero(const Register& reg) {
  return Witness(HermOp::zero(reg), ClassBounds{0.0, 0.0}, true);
}

double eval_witness(const Witness& w, const HermOp& state) {
  if (!(w.reg() == state.reg())) throw RegisterMismatch("eval_witness: registers differ");
  // Tr(W rho) = sum_ij W_ij rho_ji
  return w.op().matrix().cwiseProduct(state.matrix().transpose()).sum().real();
}

double eval_witness(const Witness& w, const Ket& state) {
  if (!(w.reg() == state.reg())) throw RegisterMismatch("eval_witness: registers differ");
  const CVector& v = state.amplitudes();
  return v.dot(w.op().matrix() * v).real();
}

Witness negativity_optimal_witness(const HermOp& rho, const Partition& part) {
  require_density(rho, "negativity_optimal_witness");
  part.validate(rho.reg(), true);
  const HermOp pt = partial_transpose(rho, part);
  return Witness(partial_transpose(neg_eigenspace_projector(pt), part));
}

Witness ghz_witness(std::size_t n, double phase) {
  const Ket g = ghz(n, phase);
  const HermOp w = HermOp::identity(g.reg()) - density(g).scaled(2.0);
  // Spectrum is {-1} once and {+1} otherwise, so the class claim holds exactly.
  return Witness(Witness::Trusted{}, w, ClassBounds{1.0, 1.0}, true);
}

double witness_k(const Witness& w) {
  if (w.class_bounds()) return std::max(w.class_bounds()->m, w.class_bounds()->n);
  const RVector ev = eigenvalues(w.op());
  const double m = std::max(0.0, ev.maxCoeff());
  const double n = std::max(0.0, -ev.minCoeff());
  return std::max(m, n);
}

double max_product_overlap(const HermOp& projector, const ProductSearchConfig& config) {
  if (config.restarts < 1) throw DomainError("product search needs restarts >= 1");
  if (!(config.convergence_tol > 0)) throw DomainError("product search needs convergence_tol > 0");
  const CMatrix& p = projector.matrix();
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-9) {
    throw DomainError("max_product_overlap: input is not a projector");
  }

  const Register& reg = projector.reg();
  const std::size_t n_sites = reg.num_subsystems();
  double best = 0.0;

  for (std::size_t r = 0; r < config.restarts; ++r) {
    std::mt19937_64 rng(config.seed + r);
    std::vector<CVector> sites;
    sites.reserve(n_sites);
    for (std::size_t k = 0; k < n_sites; ++k) sites.push_back(random_unit(reg.dim(k), rng));

    CVector prod = kron_all(sites);
    double value = prod.dot(p * prod).real();

    for (std::size_t it = 0; it < config.max_iterations; ++it) {
      const double before = value;
      for (std::size_t k = 0; k < n_sites; ++k) {
        // Columns: the product ket with site k replaced by each basis vector.
        const auto dk = static_cast<Eigen::Index>(reg.dim(k));
        CMatrix basis(static_cast<Eigen::Index>(reg.total_dim()), dk);
        const CVector saved = sites[k];
        for (Eigen::Index i = 0; i < dk; ++i) {
          sites[k] = CVector::Unit(dk, i);
          basis.col(i) = kron_all(sites);
        }
        sites[k] = saved;

        CMatrix local = basis.adjoint() * p * basis;
        local = (0.5 * (local + local.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<CMatrix> eig(local);
        const RVector& ev = eig.eigenvalues();
        const double top = ev[dk - 1];

        // Degenerate top eigenspace: keep the previous site vector's component in it.
        Eigen::Index first_top = dk - 1;
        while (first_top > 0 && top - ev[first_top - 1] <= 1e-12) --first_top;
        CVector next = eig.eigenvectors().col(dk - 1);
        if (first_top < dk - 1) {
          const CMatrix top_space = eig.eigenvectors().rightCols(dk - first_top);
          const CVector kept = top_space * (top_space.adjoint() * saved);
          if (kept.norm() > 1e-8) next = kept.normalized();
        }
        sites[k] = next;
        value = top;
      }
      if (value - before < config.convergence_tol) break;
    }
    best = std::max(best, value);
  }
  return best;
}

double interference_term(const Witness& w, const Ket& psi, const Ket& phi,
                         const SuperposCoeffs& coeffs) {
  if (!(w.reg() == psi.reg()) || !(psi.reg() == phi.reg())) {
    throw RegisterMismatch("interference_term: registers differ");
  }
  const Complex cross = psi.amplitudes().dot(w.op().matrix() * phi.amplitudes());
  return 2.0 * (std::conj(coeffs.a) * coeffs.b * cross).real();
}

}  // namespace supent
