#include "supent/register.hpp"

#include <limits>
#include <sstream>

#include "supent/errors.hpp"

namespace supent {

namespace {
constexpr std::size_t kMaxTotalDim = std::size_t{1} << 24;
}

Register::Register(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("register needs at least one subsystem");
  for (std::size_t d : dims_) {
    if (d < 2) throw DimensionError("subsystem dimension must be >= 2, got " + std::to_string(d));
    if (total_ > kMaxTotalDim / d) throw DimensionError("register total dimension too large");
    total_ *= d;
  }
}

Register Register::qubits(std::size_t n) { return Register(std::vector<std::size_t>(n, 2)); }

std::size_t Register::stride(std::size_t k) const {
  if (k >= dims_.size()) throw DimensionError("subsystem index out of range");
  std::size_t s = 1;
  for (std::size_t j = k + 1; j < dims_.size(); ++j) s *= dims_[j];
  return s;
}

std::size_t Register::encode(std::span<const std::size_t> labels) const {
  if (labels.size() != dims_.size()) {
    throw DimensionError("expected " + std::to_string(dims_.size()) + " labels, got " +
                         std::to_string(labels.size()));
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (labels[k] >= dims_[k]) {
      throw DimensionError("label " + std::to_string(labels[k]) + " out of range for subsystem " +
                           std::to_string(k) + " of dimension " + std::to_string(dims_[k]));
    }
    index = index * dims_[k] + labels[k];
  }
  return index;
}

std::vector<std::size_t> Register::decode(std::size_t index) const {
  if (index >= total_) throw DimensionError("basis index out of range");
  std::vector<std::size_t> labels(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    labels[k] = index % dims_[k];
    index /= dims_[k];
  }
  return labels;
}

Register Register::concat(const Register& other) const {
  std::vector<std::size_t> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return Register(std::move(dims));
}

bool Register::is_qubits() const noexcept {
  for (std::size_t d : dims_)
    if (d != 2) return false;
  return true;
}

std::string Register::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < dims_.size(); ++k) out << (k ? "," : "") << dims_[k];
  out << ']';
  return out.str();
}

}  // namespace supent
