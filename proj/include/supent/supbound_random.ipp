#pragma once

#include <cmath>
#include <numbers>
#include <random>

namespace supent {

template <class Rng>
Ket random_ket(const Register& reg, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector amps(static_cast<Eigen::Index>(reg.total_dim()));
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    amps[i] = Complex(re, im);
  }
  return Ket(reg, amps).normalized();
}

template <class Rng>
SuperposCoeffs random_coeffs(Rng& rng) {
  std::uniform_real_distribution<double> theta_dist(0.0, std::numbers::pi / 2);
  std::uniform_real_distribution<double> chi_dist(0.0, 2 * std::numbers::pi);
  const double theta = theta_dist(rng);
  const double chi = chi_dist(rng);
  return SuperposCoeffs(std::cos(theta), std::polar(std::sin(theta), chi));
}

}  // namespace supent
