#pragma once

#include <vector>

#include "cb/special.hpp"

// Direct pointwise evaluation of words of X, P, Xt, Pt on |1> of (C*, C)^n,
// one shift at a time with log_gamma at the shifted arguments. Shares no code with apply_word.
namespace oracle {

using cb::ComplexF;

enum class G { X, P, Xt, Pt };

struct Letter {
  G g;
  int k;
};

inline ComplexF one(const std::vector<ComplexF>& s, const std::vector<int>& b) {
  ComplexF lg = 0;
  for (size_t k = 0; k < s.size(); ++k) {
    if (b[k] != 0) return 0;
    lg += cb::log_gamma(0.5 - ComplexF(0, 1) * s[k]);
  }
  return std::exp(lg);
}

// (w[from] w[from+1] ... w.back() |1>)(s, b), the last letter acting first
inline ComplexF eval(const std::vector<Letter>& w, size_t from, std::vector<ComplexF> s, std::vector<int> b) {
  if (from == w.size()) return one(s, b);
  const Letter& L = w[from];
  const ComplexF I(0, 1);
  ComplexF sk = s[L.k];
  double bk = b[L.k];
  ComplexF f = 1;
  switch (L.g) {
    case G::X:  // psi(s + i/2, b - 1)
      s[L.k] += 0.5 * I;
      b[L.k] -= 1;
      break;
    case G::P:  // (1/2 + i s + b/2) psi(s - i/2, b + 1)
      f = 0.5 + I * sk + 0.5 * bk;
      s[L.k] -= 0.5 * I;
      b[L.k] += 1;
      break;
    case G::Xt:  // (1/2 + i s - b/2) psi(s - i/2, b - 1)
      f = 0.5 + I * sk - 0.5 * bk;
      s[L.k] -= 0.5 * I;
      b[L.k] -= 1;
      break;
    case G::Pt:  // psi(s + i/2, b + 1)
      s[L.k] += 0.5 * I;
      b[L.k] += 1;
      break;
  }
  if (f == ComplexF(0)) return 0;
  return f * eval(w, from + 1, std::move(s), std::move(b));
}

}  // namespace oracle
