#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "supent/cli.hpp"

namespace supent::cli {

using nlohmann::json;

namespace {

std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* policy_name(GammaPolicy p) { return p == GammaPolicy::raw ? "raw" : "renormalized"; }

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const BoundReport& r) {
  return json{{"inequality", to_string(r.inequality_kind)},
              {"lhs", r.lhs},
              {"term_psi", r.term_psi},
              {"term_phi", r.term_phi},
              {"cross_term", r.cross_term},
              {"rhs", r.rhs},
              {"gap", r.gap},
              {"saturated", r.saturated},
              {"gamma_norm", r.gamma_norm},
              {"gamma_policy", policy_name(r.policy)},
              {"abs_a", r.abs_a},
              {"abs_b", r.abs_b},
              {r.inequality_kind == InequalityKind::eq7 ? "witness_norm" : "k", r.witness_norm_or_k}};
}

json to_json(const RobustnessBounds& b) {
  json j{{"lower", b.lower},
         {"lower_source", b.lower_source},
         {"upper", b.upper ? json(*b.upper) : json("unknown")},
         {"certified_upper", b.certified_upper},
         {"upper_source", b.upper_source}};
  if (b.s_star) j["s_star"] = *b.s_star;
  if (b.witness_used) j["witness_k"] = witness_k(*b.witness_used);
  return j;
}

json to_json(const SweepSummary& s, bool include_rows) {
  json cfg{{"quantifier", to_string(s.config.kind)},
           {"qubits", s.config.qubits},
           {"samples", s.config.samples},
           {"seed", s.config.seed},
           {"gamma_policy", policy_name(s.config.policy)},
           {"ghz_family", s.config.ghz_family},
           {"sdp_tolerance", s.config.sdp_tol}};
  json parts = json::array();
  for (const Partition& p : s.config.partitions) parts.push_back(p.subsystems());
  cfg["partitions"] = parts;
  json j{{"samples", s.samples},
         {"min_gap", s.min_gap},
         {"mean_gap", s.mean_gap},
         {"violations", s.violations},
         {"seed", s.seed},
         {"config", cfg}};
  if (include_rows) {
    json rows = json::array();
    for (const SweepSample& r : s.rows) {
      rows.push_back({{"index", r.index}, {"abs_a", r.abs_a}, {"abs_b", r.abs_b},
                      {"lhs", r.lhs}, {"rhs", r.rhs}, {"gap", r.gap}});
    }
    j["rows"] = rows;
  }
  return j;
}

json to_json(const SaturationReport& s) {
  json j{{"bound", to_json(s.report)},
         {"gamma_robustness", to_json(s.gamma_bounds)},
         {"e_psi", s.e_psi},
         {"e_phi", s.e_phi},
         {"k", s.k}};
  if (s.ppt_sdp) j["ppt_sdp"] = *s.ppt_sdp;
  return j;
}

void write_sweep_csv(const SweepSummary& summary, std::ostream& out) {
  out << "index,|a|,|b|,lhs,rhs,gap\n";
  for (const SweepSample& r : summary.rows) {
    out << r.index << ',' << full_precision(r.abs_a) << ',' << full_precision(r.abs_b) << ','
        << full_precision(r.lhs) << ',' << full_precision(r.rhs) << ',' << full_precision(r.gap) << '\n';
  }
}

double parse_phase(const std::string& text) {
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw DomainError("cannot parse phase '" + text + "'");
    }
    return v;
  };
  std::string_view s = text;
  const std::size_t at = s.find("pi");
  if (at == std::string_view::npos) return number(s);

  std::string_view head = s.substr(0, at);
  std::string_view tail = s.substr(at + 2);
  if (!head.empty() && head.back() == '*') head.remove_suffix(1);
  double factor = 1.0;
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty() && head != "+") {
    factor = number(head);
  }
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw DomainError("cannot parse phase '" + text + "'");
    divisor = number(tail.substr(1));
    if (divisor == 0.0) throw DomainError("phase divisor is zero");
  }
  return factor * std::numbers::pi / divisor;
}

}  // namespace supent::cli
