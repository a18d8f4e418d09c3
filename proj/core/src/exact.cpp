#include "cb/exact.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cb {

Q parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.empty()) throw std::invalid_argument("empty rational");
  if (t.find_first_of(".eE") != std::string::npos)
    throw std::invalid_argument("floating-point literal not accepted: " + text);
  size_t start = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  auto slash = t.find('/');
  auto digits = [&](size_t a, size_t b) {
    if (a >= b) return false;
    for (size_t i = a; i < b; ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (slash == std::string::npos ? !digits(start, t.size())
                                 : !(digits(start, slash) && digits(slash + 1, t.size())))
    throw std::invalid_argument("malformed rational: " + text);
  if (t[0] == '+') t.erase(0, 1);
  Q q;
  q.set_str(t, 10);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string rational_str(const Q& q) { return q.get_str(); }

GQ GQ::inv() const {
  Q n = re * re + im * im;
  if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
  return GQ(re / n, -im / n);
}

GQ& GQ::operator+=(const GQ& o) {
  re += o.re;
  im += o.im;
  return *this;
}
GQ& GQ::operator-=(const GQ& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
GQ& GQ::operator*=(const GQ& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Q r = re * o.re - im * o.im;
  Q i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}
GQ& GQ::operator/=(const GQ& o) {
  if (sgn(o.im) == 0) {
    if (sgn(o.re) == 0) throw std::domain_error("division by zero Gaussian rational");
    re /= o.re;
    im /= o.re;
    return *this;
  }
  return *this *= o.inv();
}

std::string GQ::str() const {
  if (sgn(im) == 0) return re.get_str();
  std::string ims;
  if (im == 1)
    ims = "i";
  else if (im == -1)
    ims = "-i";
  else
    ims = im.get_str() + "*i";
  if (sgn(re) == 0) return ims;
  std::string s = "(" + re.get_str();
  if (sgn(im) > 0) s += "+";
  return s + ims + ")";
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  // lex with x1 > x2 > ...: larger exponent in earlier variable is larger
  for (size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() < b.size();
}

MultiPoly MultiPoly::constant(int nvars, const GQ& c) {
  MultiPoly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::var(int nvars, int k) {
  Monomial m(nvars, 0);
  m.at(k) = 1;
  return monomial(nvars, std::move(m), GQ(1));
}

MultiPoly MultiPoly::monomial(int nvars, Monomial m, const GQ& c) {
  MultiPoly p(nvars);
  p.add_term(m, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree() == 0);
}

GQ MultiPoly::constant_term() const {
  auto it = terms_.find(Monomial(nvars_, 0));
  return it == terms_.end() ? GQ(0) : it->second;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  const auto& m = terms_.rbegin()->first;
  return std::accumulate(m.begin(), m.end(), 0);
}

int MultiPoly::degree_in(int k) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[k]);
  return d;
}

void MultiPoly::add_term(const Monomial& m, const GQ& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(m.size()) != nvars_) throw std::invalid_argument("monomial size mismatch");
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

static void check_same(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("polynomials over different variable lists (" + std::to_string(a.nvars()) +
                                " vs " + std::to_string(b.nvars()) + ")");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_same(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_same(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::scaled(const GQ& c) const {
  if (c.is_zero()) return MultiPoly(nvars_);
  MultiPoly r(*this);
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  MultiPoly r = constant(nvars_, GQ(1)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

MultiPoly MultiPoly::conj() const {
  MultiPoly r(*this);
  for (auto& [m, c] : r.terms_) c = c.conj();
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_same(a, b);
  MultiPoly r(a.nvars());
  Monomial m(a.nvars());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

bool operator<(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
  auto ia = a.terms_.rbegin(), ib = b.terms_.rbegin();
  GrlexLess lt;
  for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return lt(ia->first, ib->first);
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ib != b.terms_.rend();
}

GQ MultiPoly::eval(const std::vector<GQ>& x) const {
  if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("evaluation point dimension mismatch");
  GQ s(0);
  for (const auto& [m, c] : terms_) {
    GQ t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) t *= x[i];
    s += t;
  }
  return s;
}

cplx MultiPoly::eval(const std::vector<cplx>& x) const {
  if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("evaluation point dimension mismatch");
  cplx s(0);
  for (const auto& [m, c] : terms_) {
    cplx t = c.to_complex();
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) t *= x[i];
    s += t;
  }
  return s;
}

static Q binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Q(r);
}

MultiPoly MultiPoly::shifted(int k, const GQ& s) const {
  if (s.is_zero()) return *this;
  MultiPoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    int e = m[k];
    if (e == 0) {
      r.add_term(m, c);
      continue;
    }
    Monomial mm = m;
    GQ sp(1);
    for (int j = e; j >= 0; --j) {
      mm[k] = j;
      r.add_term(mm, c * GQ(binom(e, j)) * sp);
      sp *= s;
    }
  }
  return r;
}

MultiPoly MultiPoly::shifted(const std::vector<GQ>& s) const {
  MultiPoly r = *this;
  for (size_t k = 0; k < s.size(); ++k) r = r.shifted(static_cast<int>(k), s[k]);
  return r;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (static_cast<int>(images.size()) != nvars_) throw std::invalid_argument("substitution size mismatch");
  int n = images.empty() ? 0 : images[0].nvars();
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  MultiPoly r(n);
  for (const auto& [m, c] : terms_) {
    MultiPoly t = constant(n, c);
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(n, GQ(1)));
      while (static_cast<int>(pw.size()) <= m[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[m[i]];
    }
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::fix_tail(int keep, const std::vector<GQ>& values) const {
  MultiPoly r(keep);
  Monomial mm(keep);
  for (const auto& [m, c] : terms_) {
    GQ t = c;
    for (int i = keep; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) t *= values.at(i - keep);
    std::copy(m.begin(), m.begin() + keep, mm.begin());
    r.add_term(mm, t);
  }
  return r;
}

MultiPoly MultiPoly::extended(int nvars) const {
  if (nvars < nvars_) throw std::invalid_argument("cannot shrink variable list");
  MultiPoly r(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial mm(nvars, 0);
    std::copy(m.begin(), m.end(), mm.begin());
    r.add_term(mm, c);
  }
  return r;
}

MultiPoly MultiPoly::coeff_in(int k, int e) const {
  MultiPoly r(nvars_);
  for (const auto& [m, c] : terms_)
    if (m[k] == e) {
      Monomial mm = m;
      mm[k] = 0;
      r.add_term(mm, c);
    }
  return r;
}

std::vector<std::string> default_names(int nvars) {
  std::vector<std::string> v;
  for (int i = 0; i < nvars; ++i) v.push_back("s" + std::to_string(i + 1));
  return v;
}

std::string MultiPoly::str() const { return str(default_names(nvars_)); }

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mon;
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (!mon.empty()) mon += "*";
      mon += names.at(i);
      if (m[i] > 1) mon += "^" + std::to_string(m[i]);
    }
    GQ cc = c;
    bool neg = false;
    if (cc.is_real() && sgn(cc.re) < 0) neg = true;
    if (sgn(cc.re) == 0 && sgn(cc.im) < 0) neg = true;
    if (neg) cc = -cc;
    std::string cs = cc.str();
    std::string piece;
    if (mon.empty())
      piece = cs;
    else if (cc == GQ(1))
      piece = mon;
    else
      piece = cs + "*" + mon;
    if (first)
      out += neg ? "-" + piece : piece;
    else
      out += neg ? " - " + piece : " + " + piece;
    first = false;
  }
  return out;
}

static bool monomial_divides(const Monomial& d, const Monomial& m) {
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

static bool divide(const MultiPoly& n, const MultiPoly& d, MultiPoly& q, MultiPoly& rem) {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  check_same(n, d);
  int nv = n.nvars();
  q = MultiPoly(nv);
  rem = MultiPoly(nv);
  MultiPoly p = n;
  const Monomial& ld = d.leading_monomial();
  GQ lcinv = d.leading_coeff().inv();
  while (!p.is_zero()) {
    Monomial lm = p.leading_monomial();
    GQ lc = p.leading_coeff();
    if (monomial_divides(ld, lm)) {
      Monomial qm(nv);
      for (int i = 0; i < nv; ++i) qm[i] = lm[i] - ld[i];
      MultiPoly t = MultiPoly::monomial(nv, qm, lc * lcinv);
      q += t;
      p -= t * d;
    } else {
      MultiPoly t = MultiPoly::monomial(nv, lm, lc);
      rem += t;
      p -= t;
    }
  }
  return rem.is_zero();
}

bool poly_divides(const MultiPoly& n, const MultiPoly& d, MultiPoly* q) {
  if (n.is_zero()) {
    if (q) *q = MultiPoly(n.nvars());
    return true;
  }
  if (d.is_constant()) {
    if (q) *q = n.scaled(d.constant_term().inv());
    return true;
  }
  if (n.degree() < d.degree()) return false;
  for (int k = 0; k < n.nvars(); ++k)
    if (d.degree_in(k) > n.degree_in(k)) return false;
  MultiPoly qq, rr;
  bool ok = divide(n, d, qq, rr);
  if (ok && q) *q = std::move(qq);
  return ok;
}

MultiPoly poly_divexact(const MultiPoly& n, const MultiPoly& d) {
  MultiPoly q, r;
  if (n.is_zero()) return MultiPoly(n.nvars());
  if (divide(n, d, q, r)) return q;
  throw DivisibilityFailure(r.str());
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, char op) {
  switch (op) {
    case '+':
      return a + b;
    case '-':
      return a - b;
    case '*':
      return a * b;
    default:
      throw std::invalid_argument(std::string("unknown polynomial op ") + op);
  }
}

MultiPoly make_monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.leading_coeff().inv());
}

namespace {

int main_variable(const MultiPoly& a) {
  for (int k = a.nvars() - 1; k >= 0; --k)
    if (a.degree_in(k) > 0) return k;
  return -1;
}

MultiPoly content_in(const MultiPoly& a, int v) {
  int d = a.degree_in(v);
  MultiPoly g(a.nvars());
  for (int e = 0; e <= d; ++e) {
    MultiPoly c = a.coeff_in(v, e);
    if (c.is_zero()) continue;
    g = g.is_zero() ? make_monic(c) : poly_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MultiPoly primitive_in(const MultiPoly& a, int v) {
  if (a.is_zero()) return a;
  return poly_divexact(a, content_in(a, v));
}

MultiPoly x_pow(int nv, int v, int e) {
  Monomial m(nv, 0);
  m[v] = e;
  return MultiPoly::monomial(nv, m, GQ(1));
}

MultiPoly prem(MultiPoly A, const MultiPoly& B, int v) {
  int db = B.degree_in(v);
  MultiPoly lb = B.coeff_in(v, db);
  int nv = A.nvars();
  while (!A.is_zero() && A.degree_in(v) >= db) {
    int da = A.degree_in(v);
    MultiPoly la = A.coeff_in(v, da);
    A = lb * A - la * x_pow(nv, v, da - db) * B;
  }
  return A;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  check_same(a, b);
  int nv = a.nvars();
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(nv, GQ(1));
  if (poly_divides(a, b)) return make_monic(b);
  if (poly_divides(b, a)) return make_monic(a);
  int v = std::max(main_variable(a), main_variable(b));
  MultiPoly ca = a.degree_in(v) > 0 ? content_in(a, v) : make_monic(a);
  MultiPoly cbb = b.degree_in(v) > 0 ? content_in(b, v) : make_monic(b);
  MultiPoly c = poly_gcd(ca, cbb);
  if (a.degree_in(v) == 0 || b.degree_in(v) == 0) return c;
  MultiPoly A = poly_divexact(a, ca), B = poly_divexact(b, cbb);
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  while (true) {
    if (B.degree_in(v) == 0) return c;
    MultiPoly R = prem(A, B, v);
    if (R.is_zero()) return make_monic(c * B);
    A = std::move(B);
    B = primitive_in(R, v);
  }
}

AffineForm AffineForm::coordinate(int n, int k, const GQ& scale) {
  AffineForm f(n);
  f.gradient_.at(k) = scale;
  return f;
}

bool AffineForm::is_zero() const { return constant_.is_zero() && is_constant(); }

bool AffineForm::is_constant() const {
  return std::all_of(gradient_.begin(), gradient_.end(), [](const GQ& g) { return g.is_zero(); });
}

AffineForm AffineForm::shifted(const std::vector<GQ>& s) const {
  AffineForm r(*this);
  for (size_t k = 0; k < gradient_.size() && k < s.size(); ++k)
    if (!gradient_[k].is_zero() && !s[k].is_zero()) r.constant_ += gradient_[k] * s[k];
  return r;
}

AffineForm AffineForm::conj() const {
  AffineForm r(constant_.conj(), {});
  for (const auto& g : gradient_) r.gradient_.push_back(g.conj());
  return r;
}

AffineForm AffineForm::scaled(const GQ& c) const {
  AffineForm r(constant_ * c, gradient_);
  for (auto& g : r.gradient_) g *= c;
  return r;
}

AffineForm AffineForm::operator+(const AffineForm& o) const {
  if (o.dim() != dim()) throw std::invalid_argument("affine dimension mismatch");
  AffineForm r(*this);
  r.constant_ += o.constant_;
  for (int k = 0; k < dim(); ++k) r.gradient_[k] += o.gradient_[k];
  return r;
}

AffineForm AffineForm::operator-(const AffineForm& o) const { return *this + o.scaled(GQ(-1)); }

AffineForm AffineForm::operator+(const GQ& c) const {
  AffineForm r(*this);
  r.constant_ += c;
  return r;
}

MultiPoly AffineForm::to_poly() const {
  int n = dim();
  MultiPoly p = MultiPoly::constant(n, constant_);
  for (int k = 0; k < n; ++k) p += MultiPoly::var(n, k).scaled(gradient_[k]);
  return p;
}

bool AffineForm::vanishes_on_reals() const {
  // rows: real and imaginary parts of  constant + gradient . x = 0
  std::vector<std::vector<Q>> rows(2, std::vector<Q>(dim() + 1));
  for (int k = 0; k < dim(); ++k) {
    rows[0][k] = gradient_[k].re;
    rows[1][k] = gradient_[k].im;
  }
  rows[0][dim()] = -constant_.re;
  rows[1][dim()] = -constant_.im;
  // eliminate and look for an inconsistent row 0 = c != 0
  int r = 0;
  for (int c = 0; c < dim() && r < 2; ++c) {
    int p = -1;
    for (int i = r; i < 2; ++i)
      if (sgn(rows[i][c]) != 0) p = i;
    if (p < 0) continue;
    std::swap(rows[r], rows[p]);
    for (int i = 0; i < 2; ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Q f = rows[i][c] / rows[r][c];
      for (int j = 0; j <= dim(); ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  for (int i = r; i < 2; ++i)
    if (sgn(rows[i][dim()]) != 0) return false;
  return true;
}

bool operator<(const AffineForm& a, const AffineForm& b) {
  if (a.gradient_ != b.gradient_)
    return std::lexicographical_compare(a.gradient_.begin(), a.gradient_.end(), b.gradient_.begin(),
                                        b.gradient_.end());
  return a.constant_ < b.constant_;
}

std::string AffineForm::str(const std::vector<std::string>& names) const { return to_poly().str(names); }

GQ eval_affine(const AffineForm& f, const std::vector<GQ>& point) {
  if (static_cast<int>(point.size()) != f.dim()) throw std::invalid_argument("point dimension mismatch");
  GQ s = f.constant();
  for (int k = 0; k < f.dim(); ++k) s += f.gradient()[k] * point[k];
  return s;
}

cplx eval_affine(const AffineForm& f, const std::vector<cplx>& point) {
  if (static_cast<int>(point.size()) != f.dim()) throw std::invalid_argument("point dimension mismatch");
  cplx s = f.constant().to_complex();
  for (int k = 0; k < f.dim(); ++k) s += f.gradient()[k].to_complex() * point[k];
  return s;
}

RationalFunction::RationalFunction(int nvars) : num_(nvars), den_(MultiPoly::constant(nvars, GQ(1))) {}

RationalFunction::RationalFunction(MultiPoly num)
    : num_(std::move(num)), den_(MultiPoly::constant(num_.nvars(), GQ(1))) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  check_same(num_, den_);
  reduce();
}

void RationalFunction::reduce() {
  int nv = num_.nvars();
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(nv, GQ(1));
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = poly_divexact(num_, g);
      den_ = poly_divexact(den_, g);
    }
  }
  GQ lc = den_.leading_coeff();
  if (lc != GQ(1)) {
    GQ li = lc.inv();
    num_ = num_.scaled(li);
    den_ = den_.scaled(li);
  }
}

RationalFunction RationalFunction::reduced() const {
  RationalFunction r(*this);
  r.reduce();
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  reduce();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  reduce();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  reduce();
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(*this);
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::mul_poly(const MultiPoly& p) const {
  RationalFunction r(*this);
  r.num_ = r.num_ * p;
  if (!r.den_.is_constant()) r.reduce();
  return r;
}

RationalFunction RationalFunction::div_poly(const MultiPoly& p) const {
  RationalFunction r(*this);
  r.den_ = r.den_ * p;
  r.reduce();
  return r;
}

RationalFunction RationalFunction::shifted(const std::vector<GQ>& s) const {
  RationalFunction r(*this);
  r.num_ = num_.shifted(s);
  if (!den_.is_constant()) {
    r.den_ = den_.shifted(s);
    r.reduce();
  }
  return r;
}

RationalFunction RationalFunction::conj() const {
  RationalFunction r(*this);
  r.num_ = num_.conj();
  r.den_ = den_.conj();
  r.reduce();
  return r;
}

cplx RationalFunction::eval(const std::vector<cplx>& x) const { return num_.eval(x) / den_.eval(x); }

std::string RationalFunction::str(const std::vector<std::string>& names) const {
  std::string n = num_.str(names);
  if (den_.is_constant() && den_.constant_term() == GQ(1)) return n;
  return "(" + n + ")/(" + den_.str(names) + ")";
}

}  // namespace cb
