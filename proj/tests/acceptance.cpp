// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "supent/errors.hpp"
#include "supent/quantifiers.hpp"
#include "supent/supbound.hpp"

using namespace supent;

namespace {

const double kPhis[] = {0.0, std::numbers::pi / 4, std::numbers::pi};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later checks keep running so the detail
// reflects the worst deviation seen.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      first_ = what;
    }
  }
  void track(double deviation) { worst_ = std::max(worst_, deviation); }
  double worst() const { return worst_; }

  Outcome done(const std::string& summary) const {
    std::ostringstream os;
    os << summary;
    if (!pass_) os << "; first failure: " << first_;
    return {pass_, os.str()};
  }

 private:
  bool pass_ = true;
  std::string first_;
  double worst_ = 0.0;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string where(std::size_t n, double phi) { return "N=" + std::to_string(n) + " phi=" + fmt(phi); }

Ket zeros(std::size_t n) { return basis_ket(Register::qubits(n), std::vector<std::size_t>(n, 0)); }
Ket ones(std::size_t n) { return basis_ket(Register::qubits(n), std::vector<std::size_t>(n, 1)); }

Outcome ghz_robustness_exactness() {
  Checker c;
  for (std::size_t n = 2; n <= 8; ++n)
    for (double phi : kPhis) {
      const HermOp rho = density(ghz(n, phi));
      const RobustnessBounds lower = rg_lower_via_witness(rho, ghz_witness(n, phi));
      const RobustnessBounds upper = rg_upper_via_mixing(rho, density(ghz(n, phi, true)));
      c.track(std::abs(lower.lower - 1.0));
      c.expect(std::abs(lower.lower - 1.0) <= 1e-9, "lower " + where(n, phi));
      c.expect(upper.upper.has_value() && upper.certified_upper, "no certified upper " + where(n, phi));
      if (upper.upper) {
        c.track(std::abs(*upper.upper - 1.0));
        c.expect(std::abs(*upper.upper - 1.0) <= 1e-9, "upper " + where(n, phi));
      }
    }
  return c.done("21 (N, phi) cases, max |bound - 1| = " + fmt(c.worst()));
}

Outcome peres_profile() {
  Checker c;
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto cuts = Partition::single_cuts(n);
    for (double phi : kPhis)
      for (double s : {0.0, 0.25, 0.5, 0.75, 0.9, 1.0, 1.1}) {
        const HermOp sigma = mix(density(ghz(n, phi)), density(ghz(n, phi, true)), s);
        const std::vector<bool> ppt = ppt_check(sigma, cuts, 1e-9);
        for (bool p : ppt) c.expect(p == (s == 1.0), "ppt flag " + where(n, phi) + " s=" + fmt(s));
        if (s == 1.0) continue;
        const double formula = -std::abs(1 - s) / (2 * (1 + s));
        for (const Partition& part : cuts) {
          const double got = min_eigenvalue(partial_transpose(sigma, part));
          c.track(std::abs(got - formula));
          c.expect(std::abs(got - formula) <= 1e-9, "min PT eigenvalue " + where(n, phi) + " s=" + fmt(s));
        }
        const double ref = oracle::jacobi_eigenvalues(
            oracle::bipartite_partial_transpose(sigma.matrix(), 2, std::size_t{1} << (n - 1), true)).front();
        c.expect(std::abs(ref - formula) <= 1e-9, "oracle disagrees " + where(n, phi) + " s=" + fmt(s));
      }
  }
  return c.done("N=2..6 x 3 phases x 7 weights, max eigenvalue deviation " + fmt(c.worst()));
}

Outcome two_qubit_saturation() {
  Checker c;
  for (int k = 0; k < 20; ++k) {
    const double theta = (k + 0.5) * 2 * std::numbers::pi / 20;
    const double a = std::cos(theta), b = std::sin(theta);
    const BoundReport r = check_bound_negativity(ones(2), zeros(2), SuperposCoeffs(a, b), {0});
    const double target = std::abs(a) * std::abs(b);
    c.track(std::max(std::abs(r.lhs - target), std::abs(r.rhs - target)));
    c.expect(std::abs(r.lhs - target) <= 1e-10 && std::abs(r.rhs - target) <= 1e-10, "a=" + fmt(a));
  }
  return c.done("20 real (a, b) pairs, max |side - |a||b|| = " + fmt(c.worst()));
}

Outcome ghz_bound_saturation() {
  Checker c;
  for (std::size_t n = 2; n <= 8; ++n)
    for (double phi : kPhis) {
      try {
        const SaturationReport s = ghz_saturation_experiment(n, phi, n <= 4);
        c.track(std::abs(s.report.gap));
        c.expect(std::abs(s.report.gap) <= 1e-6 && s.report.saturated, "gap " + where(n, phi));
        c.expect(s.k == 1.0, "k " + where(n, phi));
        if (n <= 4) c.expect(s.ppt_sdp.has_value() && std::abs(*s.ppt_sdp - 1.0) <= 1e-4, "sdp " + where(n, phi));
      } catch (const Error& e) {
        c.expect(false, where(n, phi) + ": " + e.what());
      }
    }
  return c.done("21 cases (SDP cross-check for N<=4), max |gap| = " + fmt(c.worst()));
}

Outcome theorem_sweeps() {
  Checker c;
  std::ostringstream summary;
  struct Case {
    QuantifierKind kind;
    std::size_t qubits;
    std::size_t samples;
    bool ghz_family;
  };
  const Case cases[] = {
      {QuantifierKind::negativity, 2, 1000, false},
      {QuantifierKind::negativity, 3, 500, false},
      {QuantifierKind::generalized_robustness, 2, 1000, false},
      {QuantifierKind::generalized_robustness, 3, 500, false},
      {QuantifierKind::generalized_robustness, 2, 1000, true},
      {QuantifierKind::generalized_robustness, 3, 500, true},
  };
  double min_gap = 1e300;
  std::size_t total = 0;
  for (const Case& k : cases) {
    SweepConfig cfg;
    cfg.kind = k.kind;
    cfg.qubits = k.qubits;
    cfg.samples = k.samples;
    cfg.ghz_family = k.ghz_family;
    cfg.seed = 42;
    const std::string label = std::string(to_string(k.kind)) + " N=" + std::to_string(k.qubits) +
                              (k.ghz_family ? " ghz-family" : "");
    try {
      const SweepSummary s = random_sweep(cfg);
      c.expect(s.violations == 0 && s.min_gap >= -kViolationTol, label);
      min_gap = std::min(min_gap, s.min_gap);
      total += s.samples;
    } catch (const BoundViolation& e) {
      c.expect(false, label + ": " + e.what());
    }
  }
  return c.done(std::to_string(total) + " instances, 0 violations required, min gap " + fmt(min_gap));
}

Outcome witness_equivalence() {
  Checker c;
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const HermOp rho = density(random_ket(Register::qubits(2), rng));
    const double via_eigs = negativity(rho, {0});
    const double via_witness = -eval_witness(negativity_optimal_witness(rho, {0}), rho);
    const double ref = oracle::negativity_2party(rho.matrix(), 2, 2);
    c.track(std::abs(via_eigs - via_witness));
    c.expect(std::abs(via_eigs - via_witness) <= 1e-10, "state " + std::to_string(i));
    c.expect(std::abs(via_eigs - ref) <= 1e-10, "oracle, state " + std::to_string(i));
  }
  return c.done("100 random pure states, max difference " + fmt(c.worst()));
}

Outcome sdp_validation() {
  Checker c;
  const std::vector<Partition> one{Partition{0}};
  std::mt19937_64 rng(77);
  for (int i = 0; i < 50; ++i) {
    const HermOp rho = density(random_ket(Register::qubits(2), rng));
    const double sdp = rg_ppt_sdp(rho, one);
    const double ref = oracle::ppt_robustness_bisection(rho.matrix(), 2, 2);
    c.track(std::abs(sdp - ref));
    c.expect(std::abs(sdp - ref) <= 1e-4, "state " + std::to_string(i));
  }
  const HermOp r = density(superpose(SuperposCoeffs(0.6, 0.8), zeros(2), ones(2)));
  const double v = rg_ppt_sdp(r, one);
  c.expect(std::abs(v - 0.96) <= 1e-4, "0.6|00>+0.8|11> gave " + fmt(v));
  return c.done("50 random states, max |sdp - oracle| = " + fmt(c.worst()) + "; 0.6/0.8 state -> " + fmt(v));
}

Outcome witness_validity() {
  Checker c;
  ProductSearchConfig cfg;
  cfg.restarts = 32;
  for (std::size_t n = 2; n <= 4; ++n) {
    const double v = max_product_overlap(density(ghz(n, 0.0)), cfg);
    c.track(std::abs(v - 0.5));
    c.expect(std::abs(v - 0.5) <= 1e-6, "N=" + std::to_string(n) + " gave " + fmt(v));
  }
  return c.done("GHZ_2..4 projectors, max |overlap - 1/2| = " + fmt(c.worst()));
}

Outcome scalar_lemma() {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  std::size_t failures = 0;
  for (int i = 0; i < 100000; ++i) {
    const double x = g(rng), y = g(rng);
    if (std::max(0.0, x + y) > std::max(0.0, x) + std::max(0.0, y)) ++failures;
  }
  return {failures == 0, "100000 pairs, " + std::to_string(failures) + " failures"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;  // 0: no runtime requirement
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"GHZ robustness exactness", 10, ghz_robustness_exactness},
      {"Peres-criterion profile", 0, peres_profile},
      {"two-qubit operator-norm bound saturation", 1, two_qubit_saturation},
      {"GHZ class-constant bound saturation", 30, ghz_bound_saturation},
      {"theorem-as-oracle sweeps", 120, theorem_sweeps},
      {"witness equivalence", 0, witness_equivalence},
      {"PPT-robustness SDP validation", 0, sdp_validation},
      {"GHZ witness validity (product overlap)", 30, witness_validity},
      {"scalar lemma", 0, scalar_lemma},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_seconds > 0 && secs > criteria[i].budget_seconds) {
      o.pass = false;
      o.detail += "; over the " + fmt(criteria[i].budget_seconds) + " s budget";
    }
    failed += !o.pass;
    std::printf("%s %zu. %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
