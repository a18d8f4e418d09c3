#include "parse.hpp"

#include <cctype>

#include "cb/shift.hpp"

namespace cb {

namespace {

class Cursor {
 public:
  Cursor(const std::string& s, size_t base) : s_(s), base_(base) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  size_t pos() const { return base_ + i_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(base_ + i_, what); }

  std::string ident() {
    skip();
    size_t st = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    return s_.substr(st, i_ - st);
  }
  bool digit_next() {
    skip();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }
  long integer() {
    skip();
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = s_[i_++] == '-';
    size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected an integer");
    long v = std::stol(s_.substr(st, i_ - st));
    return neg ? -v : v;
  }
  // p or p/q, no sign
  Q rational() {
    skip();
    size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ < s_.size() && (s_[i_] == '.' || s_[i_] == 'e' || s_[i_] == 'E')) fail("decimal literals are not accepted; write p/q");
    if (i_ < s_.size() && s_[i_] == '/' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
      ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    try {
      return parse_rational(s_.substr(st, i_ - st));
    } catch (const std::exception& e) {
      i_ = st;
      fail(e.what());
    }
  }
  // raw text up to the brace matching an already consumed '{'
  std::pair<std::string, size_t> braced() {
    size_t st = i_;
    int depth = 1;
    while (i_ < s_.size()) {
      if (s_[i_] == '{') ++depth;
      if (s_[i_] == '}' && --depth == 0) break;
      ++i_;
    }
    if (i_ >= s_.size()) {
      i_ = st;
      fail("unterminated '{'");
    }
    std::string inner = s_.substr(st, i_ - st);
    ++i_;
    return {inner, base_ + st};
  }
  std::vector<long> coweight() {
    expect('[');
    std::vector<long> v;
    if (!eat(']')) {
      do v.push_back(integer());
      while (eat(','));
      expect(']');
    }
    return v;
  }

 private:
  const std::string& s_;
  size_t base_;
  size_t i_ = 0;
};

bool starts_primary(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '('; }

class PolyParser {
 public:
  PolyParser(const std::string& s, size_t base, int rank) : c_(s, base), n_(rank) {}

  MultiPoly parse() {
    MultiPoly p = sum();
    if (!c_.done()) c_.fail(std::string("unexpected '") + c_.peek() + "'");
    return p;
  }

 private:
  MultiPoly sum() {
    MultiPoly acc(2 * n_);
    bool neg = false;
    if (c_.eat('-'))
      neg = true;
    else
      c_.eat('+');
    MultiPoly t = prod();
    acc = neg ? -t : t;
    while (true) {
      if (c_.eat('+'))
        acc += prod();
      else if (c_.eat('-'))
        acc -= prod();
      else
        break;
    }
    return acc;
  }
  MultiPoly prod() {
    MultiPoly acc = power();
    while (true) {
      if (c_.eat('*')) {
        acc = acc * power();
      } else if (starts_primary(c_.peek())) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }
  MultiPoly power() {
    MultiPoly b = primary();
    if (c_.eat('^')) {
      c_.skip();
      size_t at = c_.pos();
      long e = c_.integer();
      if (e < 0) throw ParseError(at, "negative exponent");
      b = b.pow(static_cast<int>(e));
    }
    return b;
  }
  MultiPoly primary() {
    char ch = c_.peek();
    if (ch == '(') {
      c_.eat('(');
      MultiPoly p = sum();
      c_.expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return MultiPoly::constant(2 * n_, GQ(c_.rational()));
    size_t at = c_.pos();
    std::string id = c_.ident();
    if (id.empty()) c_.fail("expected a number, variable or '('");
    if (id == "i") return MultiPoly::constant(2 * n_, GQ::I());
    if (!c_.digit_next()) throw ParseError(at, "variable '" + id + "' needs a coordinate index");
    long k = c_.integer();
    if (k < 1 || k > n_) throw ParseError(at, "coordinate index " + std::to_string(k) + " out of range 1.." + std::to_string(n_));
    int j = static_cast<int>(k - 1);
    if (id == "s") return cartan_sigma(n_, j);
    if (id == "b") return cartan_b(n_, j);
    if (id == "z") return cartan_z(n_, j);
    if (id == "zt") return cartan_zt(n_, j);
    if (id == "u") return cartan_u(n_, j);
    throw ParseError(at, "unknown variable '" + id + "'");
  }

  Cursor c_;
  int n_;
};

class ExprParser {
 public:
  ExprParser(const std::string& s, int rank) : s_(s), c_(s, 0), n_(rank) {}

  OpExpr parse() {
    if (c_.done()) c_.fail("empty expression");
    OpExpr e = sum();
    if (!c_.done()) c_.fail(std::string("unexpected '") + c_.peek() + "'");
    return e;
  }

 private:
  OpExpr sum() {
    bool neg = false;
    if (c_.eat('-'))
      neg = true;
    else
      c_.eat('+');
    OpExpr acc = prod();
    if (neg) acc = acc.scaled(GQ(-1));
    while (true) {
      if (c_.eat('+'))
        acc = acc + prod();
      else if (c_.eat('-'))
        acc = acc + prod().scaled(GQ(-1));
      else
        break;
    }
    return acc;
  }
  OpExpr prod() {
    OpExpr acc = power();
    while (true) {
      if (c_.eat('*'))
        acc = acc * power();
      else if (starts_primary(c_.peek()))
        acc = acc * power();
      else
        break;
    }
    return acc;
  }
  OpExpr power() {
    OpExpr b = primary();
    if (c_.eat('^')) {
      c_.skip();
      size_t at = c_.pos();
      long e = c_.integer();
      if (e < 0) throw ParseError(at, "negative exponent");
      b = b.pow(static_cast<int>(e));
    }
    return b;
  }
  void check_len(size_t at, const std::vector<long>& l) {
    if (static_cast<int>(l.size()) != n_)
      throw ParseError(at, "coweight has " + std::to_string(l.size()) + " entries, rank is " + std::to_string(n_));
  }
  OpExpr primary() {
    char ch = c_.peek();
    if (ch == '(') {
      c_.eat('(');
      OpExpr e = sum();
      c_.expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return OpExpr::scalar(GQ(c_.rational()));
    size_t at = c_.pos();
    std::string id = c_.ident();
    if (id.empty()) c_.fail("expected an operator, number or '('");
    if (id == "i") return OpExpr::scalar(GQ::I());
    if (id == "r" || id == "rb" || id == "V" || id == "Vb") {
      auto l = c_.coweight();
      check_len(at, l);
      bool holo = id.size() == 1;
      return OpExpr::atom(id[0] == 'r' ? Atom::r(l, holo) : Atom::V(l, holo));
    }
    if (id == "poly") {
      c_.expect('{');
      auto [inner, base] = c_.braced();
      return OpExpr::atom(Atom::of(Generator::mult(PolyParser(inner, base, n_).parse())));
    }
    if (id == "X" || id == "P" || id == "Xt" || id == "Pt") {
      if (!c_.digit_next()) throw ParseError(at, "generator '" + id + "' needs a coordinate index");
      long k = c_.integer();
      if (k < 1 || k > n_)
        throw ParseError(at, "coordinate index " + std::to_string(k) + " out of range 1.." + std::to_string(n_));
      int j = static_cast<int>(k - 1);
      Generator g = id == "X" ? Generator::X(j) : id == "P" ? Generator::P(j) : id == "Xt" ? Generator::Xt(j) : Generator::Pt(j);
      return OpExpr::atom(Atom::of(g));
    }
    throw ParseError(at, "unknown atom '" + id + "'");
  }

  const std::string& s_;
  Cursor c_;
  int n_;
};

}  // namespace

OpExpr parse_expr(const std::string& text, int rank) { return ExprParser(text, rank).parse(); }

MultiPoly parse_poly(const std::string& text, int rank) { return PolyParser(text, 0, rank).parse(); }

}  // namespace cb
