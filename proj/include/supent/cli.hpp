#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "supent/errors.hpp"
#include "supent/quantifiers.hpp"
#include "supent/supbound.hpp"

namespace supent::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInput = 2,
  kExitSolver = 3,
  kExitSaturation = 4,
  kExitViolation = 5,
};

/// Malformed state file; location is "line L, column C" or a JSON pointer.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string location)
      : Error(what + " at " + location), location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

struct LoadedState {
  Ket ket;  // normalized
  double input_norm_squared;
};

/// Dense {"dims": [...], "amplitudes": [[re, im], ...]} or sparse
/// {"dims": [...], "amplitudes": [{"basis": "0101", "amp": [re, im]}, ...]}.
LoadedState parse_state_file(const std::string& text);
LoadedState load_state_file(const std::filesystem::path& path);
nlohmann::json to_state_file(const Ket& ket);

nlohmann::json to_json(Complex z);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const RobustnessBounds& b);
nlohmann::json to_json(const SweepSummary& s, bool include_rows = false);
nlohmann::json to_json(const SaturationReport& s);

/// index,|a|,|b|,lhs,rhs,gap with round-trip precision.
void write_sweep_csv(const SweepSummary& summary, std::ostream& out);

/// Parses "0.5", "pi", "-pi/4", "3pi/2", "2*pi".
double parse_phase(const std::string& text);

/// Full command-line entry point. The JSON run report goes to out,
/// diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace supent::cli
