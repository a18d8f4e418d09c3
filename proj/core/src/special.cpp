#include "cb/special.hpp"

#include <cmath>
#include <numbers>

namespace cb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kLogPi = 1.14472988584940017414;

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// B_{2k} / (2k (2k-1))
constexpr double kStirling[] = {1.0 / 12,          -1.0 / 360,          1.0 / 1260,          -1.0 / 1680,
                                1.0 / 1188,        -691.0 / 360360,     1.0 / 156,           -3617.0 / 122400,
                                43867.0 / 244188,  -174611.0 / 125400,  77683.0 / 5796,      -236364091.0 / 1506960};

ComplexF lanczos(ComplexF z) {
  z -= 1.0;
  ComplexF x = kLanczos[0];
  for (int k = 1; k < 9; ++k) x += kLanczos[k] / (z + double(k));
  ComplexF t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

void check_pole(ComplexF z) {
  if (z.real() <= 0.5 && std::abs(z.imag()) < 1e-12) {
    double r = std::round(z.real());
    if (r <= 0 && std::abs(z.real() - r) < 1e-12) throw PoleAt(static_cast<long>(r));
  }
}

}  // namespace

StirlingResult log_gamma_stirling(ComplexF z, int terms) {
  ComplexF r = (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
  ComplexF zi = 1.0 / z, z2 = zi * zi, p = zi;
  int n = std::min<int>(terms, std::size(kStirling) - 1);
  for (int k = 0; k < n; ++k) {
    r += kStirling[k] * p;
    p *= z2;
  }
  // first omitted term, inflated for sectors away from the real axis
  double theta = std::abs(std::arg(z));
  double sector = theta < kPi / 2 ? 1.0 : 1.0 / std::pow(std::cos(theta / 2), 2 * n + 2);
  return {r, std::abs(kStirling[n] * p) * sector};
}

ComplexF log_sin_pi(ComplexF z) {
  const ComplexF I(0, 1);
  if (std::abs(z.imag()) < 1.0) return std::log(std::sin(kPi * z));
  if (z.imag() > 0) return -I * kPi * z + std::log(ComplexF(0, 0.5)) + std::log(1.0 - std::exp(2.0 * I * kPi * z));
  return I * kPi * z + std::log(ComplexF(0, -0.5)) + std::log(1.0 - std::exp(-2.0 * I * kPi * z));
}

ComplexF log_gamma(ComplexF z) {
  check_pole(z);
  if (z.real() < 0.5) return kLogPi - log_sin_pi(z) - log_gamma(1.0 - z);
  if (std::abs(z.imag()) > 30.0) {
    // shift up so the asymptotic series is accurate, then recur down
    ComplexF acc = 0;
    while (std::abs(z) < 40.0) {
      acc -= std::log(z);
      z += 1.0;
    }
    return log_gamma_stirling(z).value + acc;
  }
  return lanczos(z);
}

ComplexF gamma(ComplexF z) { return std::exp(log_gamma(z)); }

double log_cosh(double x) {
  double a = std::abs(x);
  return a + std::log1p(std::exp(-2 * a)) - std::log(2.0);
}

double log_abs_sinh(double x) {
  double a = std::abs(x);
  return a + std::log1p(-std::exp(-2 * a)) - std::log(2.0);
}

double sinhc_pi(double x) {
  double y = kPi * x;
  if (std::abs(x) < 1e-4) {
    double y2 = y * y;
    return kPi * (1 + y2 / 6 * (1 + y2 / 20 * (1 + y2 / 42)));
  }
  return std::sinh(y) / x;
}

std::pair<ComplexF, ComplexF> reflection_check(double sigma) {
  ComplexF lhs = std::exp(log_gamma({0.5, sigma}) + log_gamma({0.5, -sigma}));
  return {lhs, ComplexF(kPi / std::cosh(kPi * sigma), 0)};
}

std::pair<ComplexF, ComplexF> sinh_identity_check(double delta) {
  ComplexF lhs = std::exp(log_gamma({1, delta}) + log_gamma({1, -delta}));
  return {lhs, ComplexF(kPi / sinhc_pi(delta), 0)};
}

}  // namespace cb
