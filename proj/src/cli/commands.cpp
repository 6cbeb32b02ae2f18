#include <chrono>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "supent/cli.hpp"

namespace supent::cli {

using nlohmann::json;

namespace {

Partition parse_partition(const std::string& text) {
  std::vector<std::size_t> idx;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (item.empty() || pos != item.size()) throw DimensionError("invalid partition '" + text + "'");
    idx.push_back(v);
  }
  if (idx.empty()) throw DimensionError("empty partition '" + text + "'");
  return Partition(std::move(idx));
}

std::vector<Partition> parse_partitions(const std::vector<std::string>& flags) {
  std::vector<Partition> parts;
  for (const std::string& f : flags) parts.push_back(parse_partition(f));
  return parts;
}

json partitions_json(const std::vector<Partition>& parts) {
  json j = json::array();
  for (const Partition& p : parts) j.push_back(p.subsystems());
  return j;
}

struct Run {
  json report;
  json results;
  int code = kExitOk;

  void fail(int exit_code, const std::string& kind, const std::string& message, json extra = json::object()) {
    code = exit_code;
    json e{{"kind", kind}, {"message", message}};
    e.update(extra);
    report["error"] = e;
  }
};

void cmd_quantify(Run& run, const std::string& path, const std::string& quantifier,
                  const std::vector<Partition>& flags, double tolerance) {
  const LoadedState st = load_state_file(path);
  const HermOp rho = density(st.ket);
  const std::vector<Partition> parts =
      flags.empty() ? Partition::single_cuts(st.ket.reg().num_subsystems()) : flags;
  for (const Partition& p : parts) p.validate(st.ket.reg(), true);
  run.report["config"]["partitions"] = partitions_json(parts);

  json results{{"state", {{"dims", st.ket.reg().dims()}, {"input_norm_squared", st.input_norm_squared}}}};

  if (quantifier == "negativity" || quantifier == "all") {
    json neg = json::array();
    const std::vector<bool> ppt = ppt_check(rho, parts, QuantifierTolerances{}.ppt);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      neg.push_back({{"partition", parts[i].subsystems()},
                     {"value", negativity(rho, parts[i])},
                     {"ppt", static_cast<bool>(ppt[i])}});
    }
    results["negativity"] = neg;
  }

  if (quantifier == "robustness" || quantifier == "all") {
    SandwichOptions opts;
    opts.partitions = parts;
    SandwichResult sandwich = robustness_sandwich(rho, opts);
    json rob = to_json(sandwich.bounds);
    rob["upper_relative_to"] = "mixing candidates: ghz_orthogonal (GHZ inputs), dephasing_partner, maximally_mixed";
    if (rho.dim() <= kMaxSdpDim) {
      try {
        const PptRobustness sdp = rg_ppt_sdp_detailed(rho, parts, tolerance);
        rob["ppt_sdp"] = sdp.value;
        rob["ppt_sdp_lower"] = sdp.lower;
        rob["ppt_sdp_gap"] = sdp.solution.gap;
        rob["ppt_sdp_iterations"] = sdp.solution.iterations;
        const RobustnessBounds lb = rg_lower_via_witness(rho, sdp.witness);
        if (lb.lower > sandwich.bounds.lower + 1e-12) {
          rob["lower"] = lb.lower;
          rob["lower_source"] = "ppt_sdp_dual_witness";
        }
      } catch (const SolverFailure& e) {
        rob["ppt_sdp"] = "failed";
        rob["ppt_sdp_best_primal"] = e.best_primal();
        results["robustness"] = rob;
        run.report["partial_results"] = results;
        run.fail(kExitSolver, "solver_failure", e.what(), {{"best_primal", e.best_primal()}});
        return;
      }
    } else {
      rob["ppt_sdp"] = "skipped: dimension above " + std::to_string(kMaxSdpDim);
    }
    results["robustness"] = rob;
  }
  run.results = results;
}

void cmd_ghz_saturation(Run& run, std::size_t n, double phase, bool sdp_check) {
  try {
    run.results = to_json(ghz_saturation_experiment(n, phase, sdp_check));
  } catch (const ExperimentFailure& e) {
    run.fail(kExitSaturation, "saturation_failure", e.what(), {{"lower", e.lower()}, {"upper", e.upper()}});
  }
}

void cmd_sweep(Run& run, const SweepConfig& cfg, const std::string& csv_path) {
  try {
    const SweepSummary summary = random_sweep(cfg);
    run.results = to_json(summary);
    if (!csv_path.empty()) {
      std::ofstream csv(csv_path);
      if (!csv) throw DomainError("cannot write CSV to " + csv_path);
      write_sweep_csv(summary, csv);
      run.results["csv"] = csv_path;
    }
  } catch (const BoundViolation& e) {
    run.fail(kExitViolation, "bound_violation", e.what(), {{"instance", json::parse(e.instance_json())}});
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();

  CLI::App app{"Witnessed entanglement quantifiers and superposition bounds", "supent"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string state_path;
  std::string quantifier = "all";
  std::vector<std::string> partition_flags;
  double tolerance = 0.0;
  std::size_t threads = 1;
  std::size_t n = 3;
  std::string phi_text = "0";
  bool sdp_check = false;
  bool orthogonal = false;
  std::size_t samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t qubits = 2;
  std::string csv_path;
  bool renormalize = true;
  bool ghz_family = false;

  auto* quantify = app.add_subcommand("quantify", "Negativity and robustness bounds for a state file");
  quantify->add_option("state", state_path, "JSON state file")->required();
  quantify->add_option("--quantifier", quantifier)
      ->check(CLI::IsMember({"negativity", "robustness", "all"}));
  quantify->add_option("--partition", partition_flags, "Transposed subsystems, e.g. 0,2 (repeatable)");
  quantify->add_option("--tolerance", tolerance, "PPT-SDP duality-gap tolerance (0: by dimension)")
      ->check(CLI::NonNegativeNumber);
  quantify->add_option("--threads", threads)->check(CLI::PositiveNumber);

  auto* saturation = app.add_subcommand("ghz-saturation", "Saturation of the class-constant bound on GHZ_n(phi)");
  saturation->add_option("--n", n, "Qubit count (>= 2)");
  saturation->add_option("--phi", phi_text, "Phase in radians; accepts pi, pi/4, -3pi/2");
  saturation->add_flag("--sdp-check", sdp_check, "Also solve the PPT relaxation (n <= 8)");
  saturation->add_option("--threads", threads)->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "Random instances of the superposition bounds");
  sweep->add_option("--quantifier", quantifier)->check(CLI::IsMember({"negativity", "robustness"}));
  sweep->add_option("--samples", samples);
  sweep->add_option("--seed", seed);
  sweep->add_option("--qubits", qubits);
  sweep->add_option("--partition", partition_flags, "Transposed subsystems (repeatable)");
  sweep->add_option("--tolerance", tolerance, "SDP tolerance for robustness sweeps")
      ->check(CLI::NonNegativeNumber);
  sweep->add_flag("--renormalize,!--no-renormalize", renormalize,
                  "Evaluate E(Gamma) on the renormalized superposition (default)");
  sweep->add_flag("--ghz-family", ghz_family, "psi = |0..0>, phi = |1..1> with GHZ-class witnesses");
  sweep->add_option("--threads", threads)->check(CLI::PositiveNumber);
  sweep->add_option("--csv", csv_path, "Per-sample CSV output path");

  auto* make_ghz = app.add_subcommand("make-ghz", "Print a GHZ_n(phi) state file");
  make_ghz->add_option("--n", n);
  make_ghz->add_option("--phi", phi_text);
  make_ghz->add_flag("--orthogonal", orthogonal);

  std::vector<std::string> argv_store{"supent"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());

  Run r;
  r.report = {{"tool", "supent"}, {"version", kVersion}, {"argv", args}};

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    r.fail(kExitInput, "usage", e.what());
    r.report["status"] = "error";
    r.report["exit_code"] = r.code;
    out << r.report.dump(2) << '\n';
    return r.code;
  }

  const CLI::App* sub = app.get_subcommands().front();
  r.report["command"] = sub->get_name();

  try {
    if (sub == make_ghz) {
      if (n < 2) throw DomainError("--n must be >= 2");
      out << to_state_file(ghz(n, parse_phase(phi_text), orthogonal)).dump(2) << '\n';
      return kExitOk;
    }
    if (sub == quantify) {
      r.report["config"] = {{"state", state_path},
                            {"quantifier", quantifier},
                            {"tolerance", tolerance},
                            {"threads", threads}};
      cmd_quantify(r, state_path, quantifier, parse_partitions(partition_flags), tolerance);
    } else if (sub == saturation) {
      const double phase = parse_phase(phi_text);
      r.report["config"] = {{"n", n}, {"phi", phase}, {"sdp_check", sdp_check}};
      if (n < 2) throw DomainError("--n must be >= 2");
      cmd_ghz_saturation(r, n, phase, sdp_check);
    } else if (sub == sweep) {
      if (samples < 1) throw DomainError("--samples must be >= 1");
      if (qubits < 2) throw DomainError("--qubits must be >= 2");
      SweepConfig cfg;
      cfg.kind = quantifier == "robustness" ? QuantifierKind::generalized_robustness : QuantifierKind::negativity;
      cfg.qubits = qubits;
      cfg.samples = samples;
      cfg.seed = seed;
      cfg.partitions = parse_partitions(partition_flags);
      cfg.policy = renormalize ? GammaPolicy::renormalized : GammaPolicy::raw;
      cfg.ghz_family = ghz_family;
      cfg.threads = threads;
      if (tolerance > 0) cfg.sdp_tol = tolerance;
      r.report["seed"] = seed;
      r.report["config"] = {{"quantifier", to_string(cfg.kind)},
                            {"samples", samples},
                            {"seed", seed},
                            {"qubits", qubits},
                            {"partitions", partitions_json(cfg.partitions)},
                            {"renormalize", renormalize},
                            {"ghz_family", ghz_family},
                            {"threads", threads},
                            {"sdp_tolerance", cfg.sdp_tol},
                            {"csv", csv_path}};
      cmd_sweep(r, cfg, csv_path);
    }
  } catch (const ParseError& e) {
    r.fail(kExitInput, "parse_error", e.what(), {{"location", e.location()}});
  } catch (const SolverFailure& e) {
    r.fail(kExitSolver, "solver_failure", e.what(), {{"best_primal", e.best_primal()}});
  } catch (const ExperimentFailure& e) {
    r.fail(kExitSaturation, "saturation_failure", e.what(), {{"lower", e.lower()}, {"upper", e.upper()}});
  } catch (const BoundViolation& e) {
    r.fail(kExitViolation, "bound_violation", e.what(), {{"instance", json::parse(e.instance_json())}});
  } catch (const DimensionError& e) {
    r.fail(kExitInput, "dimension_error", e.what());
  } catch (const DomainError& e) {
    r.fail(kExitInput, "domain_error", e.what());
  } catch (const RegisterMismatch& e) {
    r.fail(kExitInput, "register_mismatch", e.what());
  } catch (const HermiticityError& e) {
    r.fail(kExitInput, "hermiticity_error", e.what());
  } catch (const SizeError& e) {
    r.fail(kExitInput, "size_error", e.what());
  } catch (const std::exception& e) {
    r.fail(kExitInternal, "internal_error", e.what());
  }

  if (r.code == kExitOk) r.report["results"] = r.results;
  if (r.code != kExitOk) err << "supent: " << r.report["error"]["message"].get<std::string>() << '\n';
  r.report["status"] = r.code == kExitOk ? "ok" : "error";
  r.report["exit_code"] = r.code;
  r.report["duration_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << r.report.dump(2) << '\n';
  return r.code;
}

}  // namespace supent::cli
