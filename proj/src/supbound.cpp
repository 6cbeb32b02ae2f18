#include "supent/supbound.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

#include "json.hpp"
#include "supent/errors.hpp"

namespace supent {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json ket_json(const Ket& k) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < k.amplitudes().size(); ++i) amps.push_back(complex_json(k.amplitudes()[i]));
  return json{{"dims", k.reg().dims()}, {"amplitudes", amps}};
}

std::string instance_json(const Ket& psi, const Ket& phi, const SuperposCoeffs& c,
                          const BoundReport& r, const json& extra) {
  json j{{"psi", ket_json(psi)},
         {"phi", ket_json(phi)},
         {"a", complex_json(c.a)},
         {"b", complex_json(c.b)},
         {"inequality", to_string(r.inequality_kind)},
         {"lhs", r.lhs},
         {"rhs", r.rhs},
         {"gap", r.gap}};
  j.update(extra);
  return j.dump();
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite and >= 0, got " + std::to_string(v));
  }
}

void finish(BoundReport& r) {
  r.gap = r.rhs - r.lhs;
  r.saturated = r.gap <= kSaturationTol;
}

void require_pair(const Ket& psi, const Ket& phi) {
  if (!(psi.reg() == phi.reg())) throw RegisterMismatch("superposition constituents have different registers");
  if (!psi.is_normalized() || !phi.is_normalized()) {
    throw DomainError("superposition constituents must be normalized");
  }
}

BoundReport negativity_report(const Ket& psi, const Ket& phi, const SuperposCoeffs& coeffs,
                              const Partition& part, GammaPolicy policy) {
  require_pair(psi, phi);
  part.validate(psi.reg(), true);
  const Ket raw = superpose(coeffs, psi, phi, SuperposMode::raw);

  BoundReport r;
  r.inequality_kind = InequalityKind::eq7;
  r.policy = policy;
  r.abs_a = std::abs(coeffs.a);
  r.abs_b = std::abs(coeffs.b);
  r.gamma_norm = raw.norm_squared();

  double w_norm = 0.0;
  if (r.gamma_norm >= kNormTol) {
    const HermOp rho = density(raw.normalized());
    const Witness w = negativity_optimal_witness(rho, part);
    w_norm = operator_norm(w.op());
    const double e_gamma = negativity(rho, part);
    r.lhs = policy == GammaPolicy::raw ? r.gamma_norm * e_gamma : e_gamma;
  }
  const double e_psi = negativity(density(psi), part);
  const double e_phi = negativity(density(phi), part);
  r.term_psi = std::norm(coeffs.a) * e_psi;
  r.term_phi = std::norm(coeffs.b) * e_phi;
  r.cross_term = 2.0 * r.abs_a * r.abs_b * w_norm;
  r.witness_norm_or_k = w_norm;
  r.rhs = r.term_psi + r.term_phi + r.cross_term;
  finish(r);
  return r;
}

BoundReport k_report(const Ket& psi, const Ket& phi, const SuperposCoeffs& coeffs, const Witness& w,
                     double e_psi, double e_phi, double e_gamma) {
  require_pair(psi, phi);
  if (!(w.reg() == psi.reg())) throw RegisterMismatch("witness register differs from the states");
  require_nonnegative(e_psi, "e_psi");
  require_nonnegative(e_phi, "e_phi");
  require_nonnegative(e_gamma, "e_gamma");
  const double k = witness_k(w);

  BoundReport r;
  r.inequality_kind = InequalityKind::eq10;
  r.abs_a = std::abs(coeffs.a);
  r.abs_b = std::abs(coeffs.b);
  r.gamma_norm = superpose(coeffs, psi, phi, SuperposMode::raw).norm_squared();
  r.lhs = e_gamma;
  r.term_psi = std::norm(coeffs.a) * e_psi;
  r.term_phi = std::norm(coeffs.b) * e_phi;
  r.cross_term = 2.0 * k * r.abs_a * r.abs_b;
  r.witness_norm_or_k = k;
  r.rhs = r.term_psi + r.term_phi + r.cross_term;
  finish(r);
  return r;
}

}  // namespace

const char* to_string(InequalityKind kind) {
  return kind == InequalityKind::eq7 ? "operator_norm" : "class_constant";
}

double rhs_eq7(const SuperposCoeffs& coeffs, double e_psi, double e_phi, double norm_w_gamma) {
  require_nonnegative(e_psi, "e_psi");
  require_nonnegative(e_phi, "e_phi");
  require_nonnegative(norm_w_gamma, "norm_w_gamma");
  const double aa = std::abs(coeffs.a), bb = std::abs(coeffs.b);
  return aa * aa * e_psi + bb * bb * e_phi + 2.0 * aa * bb * norm_w_gamma;
}

double rhs_eq10(const SuperposCoeffs& coeffs, double e_psi, double e_phi, double k) {
  require_nonnegative(e_psi, "e_psi");
  require_nonnegative(e_phi, "e_phi");
  require_nonnegative(k, "k");
  const double aa = std::abs(coeffs.a), bb = std::abs(coeffs.b);
  return aa * aa * e_psi + bb * bb * e_phi + 2.0 * k * aa * bb;
}

BoundReport check_bound_negativity(const Ket& psi, const Ket& phi, const SuperposCoeffs& coeffs,
                                   const Partition& part, GammaPolicy policy) {
  BoundReport r = negativity_report(psi, phi, coeffs, part, policy);
  if (r.gap < -kViolationTol) {
    throw BoundViolation("negativity superposition bound violated by " + std::to_string(-r.gap),
                         instance_json(psi, phi, coeffs, r, {{"partition", part.subsystems()}}));
  }
  return r;
}

BoundReport check_bound_k(const Ket& psi, const Ket& phi, const SuperposCoeffs& coeffs,
                          const Witness& w, double e_psi, double e_phi, double e_gamma) {
  BoundReport r = k_report(psi, phi, coeffs, w, e_psi, e_phi, e_gamma);
  if (r.gap < -kViolationTol) {
    throw BoundViolation("class-constant superposition bound violated by " + std::to_string(-r.gap),
                         instance_json(psi, phi, coeffs, r, {{"k", r.witness_norm_or_k}}));
  }
  return r;
}

SaturationReport ghz_saturation_experiment(std::size_t n, double phase, bool sdp_cross_check) {
  if (n < 2) throw DomainError("GHZ saturation needs n >= 2");
  const Register reg = Register::qubits(n);
  const Ket psi = basis_ket(reg, std::vector<std::size_t>(n, 0));
  const Ket phi = basis_ket(reg, std::vector<std::size_t>(n, 1));
  const double h = 1.0 / std::numbers::sqrt2;
  const SuperposCoeffs coeffs(h, h * std::polar(1.0, phase));
  const HermOp rho = density(superpose(coeffs, psi, phi));

  SaturationReport out;
  // Product basis states: the diagonal certificate closes at s = 0.
  SandwichOptions product_opts;
  product_opts.presets = false;
  const SandwichResult e_psi = robustness_sandwich(density(psi), product_opts);
  const SandwichResult e_phi = robustness_sandwich(density(phi), product_opts);
  out.e_psi = e_psi.bounds.upper.value_or(0.0);
  out.e_phi = e_phi.bounds.upper.value_or(0.0);

  const Witness w = ghz_witness(n, phase);
  out.k = witness_k(w);
  const RobustnessBounds lower = rg_lower_via_witness(rho, w);
  const RobustnessBounds upper = rg_upper_via_mixing(rho, density(ghz(n, phase, true)));

  out.gamma_bounds = upper;
  out.gamma_bounds.lower = lower.lower;
  out.gamma_bounds.witness_used = lower.witness_used;
  out.gamma_bounds.lower_source = "ghz_witness";
  out.gamma_bounds.upper_source = "mixing/ghz_orthogonal";

  if (!upper.upper || !upper.certified_upper) {
    throw ExperimentFailure("no certified mixing upper bound for GHZ", lower.lower,
                            std::numeric_limits<double>::infinity());
  }
  if (std::abs(*upper.upper - lower.lower) > kSaturationTol) {
    throw ExperimentFailure("robustness sandwich does not close", lower.lower, *upper.upper);
  }

  out.report = check_bound_k(psi, phi, coeffs, w, out.e_psi, out.e_phi, lower.lower);
  if (out.report.gap > kSaturationTol) {
    throw ExperimentFailure("superposition bound not saturated (gap " + std::to_string(out.report.gap) + ")",
                            lower.lower, *upper.upper);
  }

  if (sdp_cross_check) {
    const std::vector<Partition> cuts = Partition::single_cuts(n);
    out.ppt_sdp = rg_ppt_sdp(rho, cuts);
    const double tol = default_sdp_tolerance(rho.dim());
    if (*out.ppt_sdp < lower.lower - tol || *out.ppt_sdp > *upper.upper + tol) {
      throw ExperimentFailure("PPT relaxation outside the robustness sandwich", lower.lower, *upper.upper);
    }
  }
  return out;
}

namespace {

struct SampleOutcome {
  SweepSample row;
  bool violated = false;
  std::string instance;
};

SampleOutcome run_sample(const SweepConfig& cfg, const Register& reg,
                         const std::vector<Partition>& parts, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);

  const std::size_t n = reg.num_subsystems();
  const Ket psi = cfg.ghz_family ? basis_ket(reg, std::vector<std::size_t>(n, 0)) : random_ket(reg, rng);
  const Ket phi = cfg.ghz_family ? basis_ket(reg, std::vector<std::size_t>(n, 1)) : random_ket(reg, rng);
  const SuperposCoeffs coeffs = random_coeffs(rng);

  SampleOutcome out;
  out.row.index = index;
  bool have_row = false;
  auto consider = [&](const BoundReport& r, json extra) {
    if (!have_row || r.gap < out.row.gap) {
      out.row = {index, r.abs_a, r.abs_b, r.lhs, r.rhs, r.gap};
      have_row = true;
    }
    if (r.gap < -kViolationTol && !out.violated) {
      out.violated = true;
      extra["sample"] = index;
      extra["seed"] = cfg.seed;
      out.instance = instance_json(psi, phi, coeffs, r, extra);
    }
  };

  if (cfg.kind == QuantifierKind::negativity) {
    for (const Partition& part : parts) {
      consider(negativity_report(psi, phi, coeffs, part, cfg.policy), {{"partition", part.subsystems()}});
    }
    return out;
  }

  const Ket raw = superpose(coeffs, psi, phi, SuperposMode::raw);
  const double g = raw.norm_squared();
  const Ket gamma = raw.normalized();
  const double scale = cfg.policy == GammaPolicy::raw ? g : 1.0;
  if (cfg.ghz_family) {
    // Gamma = a|0..0> + b|1..1>: the GHZ witness at the relative phase of b/a.
    const double rel = std::arg(coeffs.b) - std::arg(coeffs.a);
    const Witness w = ghz_witness(n, rel);
    const double e_gamma = scale * std::max(0.0, -eval_witness(w, gamma));
    consider(k_report(psi, phi, coeffs, w, 0.0, 0.0, e_gamma), {{"witness", "ghz"}});
    return out;
  }
  // Upper bounds (primal) for the constituents, and the dual witness of Gamma
  // for the left side: the bound then holds for any feasible pair.
  const double e_psi = rg_ppt_sdp(density(psi), parts, cfg.sdp_tol);
  const double e_phi = rg_ppt_sdp(density(phi), parts, cfg.sdp_tol);
  const PptRobustness g_sdp = rg_ppt_sdp_detailed(density(gamma), parts, cfg.sdp_tol);
  const double e_gamma = scale * std::max(0.0, -eval_witness(g_sdp.witness, gamma));
  consider(k_report(psi, phi, coeffs, g_sdp.witness, e_psi, e_phi, e_gamma), {{"witness", "ppt_sdp_dual"}});
  return out;
}

}  // namespace

SweepSummary random_sweep(const SweepConfig& config) {
  if (config.samples < 1) throw DomainError("sweep needs samples >= 1");
  if (config.qubits < 2) throw DomainError("sweep needs at least 2 qubits");
  const Register reg = Register::qubits(config.qubits);
  const std::vector<Partition> parts =
      config.partitions.empty() ? Partition::single_cuts(config.qubits) : config.partitions;
  for (const Partition& p : parts) p.validate(reg, true);

  std::vector<SampleOutcome> outcomes(config.samples);
  std::vector<std::exception_ptr> errors(config.samples);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.samples; i = next++) {
      try {
        outcomes[i] = run_sample(config, reg, parts, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, config.samples));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  SweepSummary summary;
  summary.samples = config.samples;
  summary.seed = config.seed;
  summary.config = config;
  summary.min_gap = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  const std::string* first_bad = nullptr;
  for (const SampleOutcome& o : outcomes) {
    summary.rows.push_back(o.row);
    summary.min_gap = std::min(summary.min_gap, o.row.gap);
    sum += o.row.gap;
    if (o.violated) {
      ++summary.violations;
      if (!first_bad) first_bad = &o.instance;
    }
  }
  summary.mean_gap = sum / static_cast<double>(config.samples);
  if (summary.violations > 0) {
    throw BoundViolation(std::to_string(summary.violations) + " of " + std::to_string(config.samples) +
                             " sweep samples violate the bound",
                         *first_bad);
  }
  return summary;
}

}  // namespace supent
