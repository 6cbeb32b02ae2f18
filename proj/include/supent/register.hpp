#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace supent {

/// Ordered list of subsystem dimensions. Amplitudes are stored row-major:
/// subsystem 0 is the most significant digit of a basis index.
class Register {
 public:
  explicit Register(std::vector<std::size_t> dims);

  static Register qubits(std::size_t n);

  std::size_t num_subsystems() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t k) const { return dims_.at(k); }
  std::size_t total_dim() const noexcept { return total_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  /// Stride of subsystem k in the flattened index.
  std::size_t stride(std::size_t k) const;

  std::size_t encode(std::span<const std::size_t> labels) const;
  std::vector<std::size_t> decode(std::size_t index) const;

  Register concat(const Register& other) const;

  bool is_qubits() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Register&, const Register&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

}  // namespace supent
