#include <fstream>
#include <sstream>

#include "supent/cli.hpp"

namespace supent::cli {

namespace {

using nlohmann::json;

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Complex parse_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ParseError("expected a [re, im] pair of numbers", where);
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

LoadedState parse_state_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON", line_col(text, e.byte));
  }
  if (!doc.is_object()) throw ParseError("state file must be a JSON object", "/");
  if (!doc.contains("dims")) throw ParseError("missing field", "/dims");
  if (!doc.contains("amplitudes")) throw ParseError("missing field", "/amplitudes");

  const json& jd = doc["dims"];
  if (!jd.is_array() || jd.empty()) throw ParseError("dims must be a nonempty array", "/dims");
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < jd.size(); ++k) {
    if (!jd[k].is_number_unsigned() || jd[k].get<std::size_t>() < 2) {
      throw ParseError("subsystem dimension must be an integer >= 2", "/dims/" + std::to_string(k));
    }
    dims.push_back(jd[k].get<std::size_t>());
  }
  const Register reg = [&] {
    try {
      return Register(dims);
    } catch (const DimensionError& e) {
      throw ParseError(e.what(), "/dims");
    }
  }();

  const json& ja = doc["amplitudes"];
  if (!ja.is_array()) throw ParseError("amplitudes must be an array", "/amplitudes");
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(reg.total_dim()));
  const bool sparse = !ja.empty() && ja[0].is_object();
  if (sparse) {
    for (std::size_t i = 0; i < ja.size(); ++i) {
      const std::string where = "/amplitudes/" + std::to_string(i);
      const json& e = ja[i];
      if (!e.is_object() || !e.contains("basis") || !e["basis"].is_string() || !e.contains("amp")) {
        throw ParseError("sparse entry needs \"basis\" (string) and \"amp\"", where);
      }
      const std::string basis = e["basis"].get<std::string>();
      if (basis.size() != dims.size()) {
        throw ParseError("basis string needs one digit per subsystem", where + "/basis");
      }
      std::vector<std::size_t> labels;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const char c = basis[k];
        if (c < '0' || c > '9' || static_cast<std::size_t>(c - '0') >= dims[k]) {
          throw ParseError("basis digit out of range for subsystem " + std::to_string(k), where + "/basis");
        }
        labels.push_back(static_cast<std::size_t>(c - '0'));
      }
      amps[static_cast<Eigen::Index>(reg.encode(labels))] += parse_pair(e["amp"], where + "/amp");
    }
  } else {
    if (ja.size() != reg.total_dim()) {
      throw ParseError("dense amplitude count " + std::to_string(ja.size()) +
                           " does not match the product of dims " + std::to_string(reg.total_dim()),
                       "/amplitudes");
    }
    for (std::size_t i = 0; i < ja.size(); ++i) {
      amps[static_cast<Eigen::Index>(i)] = parse_pair(ja[i], "/amplitudes/" + std::to_string(i));
    }
  }
  if (!amps.allFinite()) throw ParseError("amplitudes must be finite", "/amplitudes");
  const double n2 = amps.squaredNorm();
  if (n2 < kNormTol) throw ParseError("state needs at least one nonzero amplitude", "/amplitudes");
  return {Ket(reg, amps).normalized(), n2};
}

LoadedState load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_file(buf.str());
}

nlohmann::json to_state_file(const Ket& ket) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < ket.amplitudes().size(); ++i) amps.push_back(to_json(ket.amplitudes()[i]));
  return json{{"dims", ket.reg().dims()}, {"amplitudes", std::move(amps)}};
}

}  // namespace supent::cli
