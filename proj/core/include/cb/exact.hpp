#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cb {

// mpq_class whose (num, den) constructor reduces
class Q : public mpq_class {
 public:
  using mpq_class::mpq_class;
  using mpq_class::operator=;
  Q() = default;
  Q(const Q&) = default;
  Q(Q&&) = default;
  Q& operator=(const Q&) = default;
  Q& operator=(Q&&) = default;
  Q(const mpq_class& q) : mpq_class(q) {}
  Q(mpq_class&& q) : mpq_class(std::move(q)) {}
  Q(const mpz_class& num, const mpz_class& den) : mpq_class(num, den) { canonicalize(); }
};
using cplx = std::complex<double>;

Q parse_rational(const std::string& text);
std::string rational_str(const Q& q);

// Gaussian rational re + i*im, always reduced.
struct GQ {
  Q re, im;

  GQ() = default;
  GQ(long v) : re(v), im(0) {}
  GQ(Q r) : re(std::move(r)), im(0) {}
  GQ(Q r, Q i) : re(std::move(r)), im(std::move(i)) {}

  static GQ I() { return GQ(Q(0), Q(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GQ conj() const { return GQ(re, -im); }
  GQ inv() const;
  cplx to_complex() const { return {re.get_d(), im.get_d()}; }
  std::string str() const;

  GQ& operator+=(const GQ& o);
  GQ& operator-=(const GQ& o);
  GQ& operator*=(const GQ& o);
  GQ& operator/=(const GQ& o);
  GQ operator-() const { return GQ(-re, -im); }

  friend GQ operator+(GQ a, const GQ& b) { return a += b; }
  friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
  friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
  friend GQ operator/(GQ a, const GQ& b) { return a /= b; }
  friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }
  // total order: by real part, then imaginary part
  friend bool operator<(const GQ& a, const GQ& b) {
    int c = cmp(a.re, b.re);
    return c != 0 ? c < 0 : a.im < b.im;
  }
};

using Monomial = std::vector<int>;

// graded lexicographic: higher total degree is "larger"
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct DivisibilityFailure : std::runtime_error {
  std::string remainder;
  explicit DivisibilityFailure(std::string rem)
      : std::runtime_error("polynomial division leaves remainder " + rem), remainder(std::move(rem)) {}
};

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, GQ, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const GQ& c);
  static MultiPoly var(int nvars, int k);
  static MultiPoly monomial(int nvars, Monomial m, const GQ& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GQ constant_term() const;
  int degree() const;
  int degree_in(int k) const;
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const GQ& leading_coeff() const { return terms_.rbegin()->second; }

  void add_term(const Monomial& m, const GQ& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly operator-() const;
  MultiPoly scaled(const GQ& c) const;
  MultiPoly pow(int e) const;
  MultiPoly conj() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
  friend bool operator<(const MultiPoly& a, const MultiPoly& b);

  GQ eval(const std::vector<GQ>& x) const;
  cplx eval(const std::vector<cplx>& x) const;

  // x_k -> x_k + s
  MultiPoly shifted(int k, const GQ& s) const;
  MultiPoly shifted(const std::vector<GQ>& s) const;
  // x_k -> images[k]; images share a common variable count
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;
  // keep the first `keep` variables, fixing the rest to the given values
  MultiPoly fix_tail(int keep, const std::vector<GQ>& values) const;
  MultiPoly extended(int nvars) const;

  // coefficient of x_k^e, as a polynomial not involving x_k
  MultiPoly coeff_in(int k, int e) const;

  std::string str(const std::vector<std::string>& names) const;
  std::string str() const;

 private:
  int nvars_ = 0;
  TermMap terms_;
};

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, char op);
MultiPoly poly_divexact(const MultiPoly& n, const MultiPoly& d);
// returns true and sets q when d divides n exactly
bool poly_divides(const MultiPoly& n, const MultiPoly& d, MultiPoly* q = nullptr);
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly make_monic(const MultiPoly& p);

std::vector<std::string> default_names(int nvars);

class AffineForm {
 public:
  AffineForm() = default;
  explicit AffineForm(int n) : gradient_(n) {}
  AffineForm(GQ c, std::vector<GQ> g) : constant_(std::move(c)), gradient_(std::move(g)) {}

  static AffineForm coordinate(int n, int k, const GQ& scale = GQ(1));

  int dim() const { return static_cast<int>(gradient_.size()); }
  const GQ& constant() const { return constant_; }
  const std::vector<GQ>& gradient() const { return gradient_; }
  GQ& constant() { return constant_; }
  std::vector<GQ>& gradient() { return gradient_; }

  bool is_zero() const;
  bool is_constant() const;
  AffineForm shifted(const std::vector<GQ>& s) const;
  AffineForm conj() const;
  AffineForm scaled(const GQ& c) const;
  AffineForm operator+(const AffineForm& o) const;
  AffineForm operator-(const AffineForm& o) const;
  AffineForm operator+(const GQ& c) const;

  MultiPoly to_poly() const;
  // true when the form vanishes at some real point
  bool vanishes_on_reals() const;

  friend bool operator==(const AffineForm& a, const AffineForm& b) {
    return a.constant_ == b.constant_ && a.gradient_ == b.gradient_;
  }
  friend bool operator<(const AffineForm& a, const AffineForm& b);

  std::string str(const std::vector<std::string>& names) const;

 private:
  GQ constant_;
  std::vector<GQ> gradient_;
};

GQ eval_affine(const AffineForm& f, const std::vector<GQ>& point);
cplx eval_affine(const AffineForm& f, const std::vector<cplx>& point);

class RationalFunction {
 public:
  RationalFunction() : RationalFunction(0) {}
  explicit RationalFunction(int nvars);
  explicit RationalFunction(MultiPoly num);
  RationalFunction(MultiPoly num, MultiPoly den);

  int nvars() const { return num_.nvars(); }
  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  RationalFunction operator-() const;
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction mul_poly(const MultiPoly& p) const;
  RationalFunction div_poly(const MultiPoly& p) const;
  RationalFunction shifted(const std::vector<GQ>& s) const;
  RationalFunction conj() const;
  RationalFunction reduced() const;

  cplx eval(const std::vector<cplx>& x) const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  void reduce();
  MultiPoly num_, den_;
};

}  // namespace cb
