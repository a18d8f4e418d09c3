#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace cb {

using ComplexF = std::complex<double>;

struct PoleAt : std::runtime_error {
  long n;
  explicit PoleAt(long pole) : std::runtime_error("Gamma pole at " + std::to_string(pole)), n(pole) {}
};

// log Gamma continued analytically from the positive real axis
ComplexF log_gamma(ComplexF z);
ComplexF gamma(ComplexF z);

struct StirlingResult {
  ComplexF value;
  double error_bound;
};
// asymptotic series; valid for Re z > 0 and large |z|
StirlingResult log_gamma_stirling(ComplexF z, int terms = 10);

// log sin(pi z), stable for large |Im z|
ComplexF log_sin_pi(ComplexF z);
double log_cosh(double x);
// log|sinh(x)| for x != 0
double log_abs_sinh(double x);
// sinh(pi x)/x, continuous at 0
double sinhc_pi(double x);

std::pair<ComplexF, ComplexF> reflection_check(double sigma);
std::pair<ComplexF, ComplexF> sinh_identity_check(double delta);

}  // namespace cb
