#include "cb/theory.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>

namespace cb {

long RootSystem::weyl_order() const {
  long o = 1;
  for (int d : weyl_factors)
    for (int k = 2; k <= d; ++k) o *= k;
  return o;
}

std::vector<AffineForm> RootSystem::positive_forms(int n) const {
  std::vector<AffineForm> out;
  for (const auto& r : positive) {
    AffineForm f(n);
    f.gradient()[r.r] = GQ(1);
    f.gradient()[r.s] = GQ(-1);
    out.push_back(f);
  }
  return out;
}

int TheoryConfig::rank() const { return std::accumulate(gauge_dims.begin(), gauge_dims.end(), 0); }

bool TheoryConfig::abelian() const {
  return std::all_of(gauge_dims.begin(), gauge_dims.end(), [](int d) { return d <= 1; });
}

std::vector<int> TheoryConfig::block_of() const {
  std::vector<int> b;
  for (size_t i = 0; i < gauge_dims.size(); ++i)
    for (int k = 0; k < gauge_dims[i]; ++k) b.push_back(static_cast<int>(i));
  return b;
}

RootSystem TheoryConfig::roots() const {
  RootSystem rs;
  int off = 0;
  for (int d : gauge_dims) {
    rs.block_sizes.push_back(d);
    rs.weyl_factors.push_back(d);
    for (int r = 0; r < d; ++r)
      for (int s = r + 1; s < d; ++s) rs.positive.push_back({off + r, off + s});
    off += d;
  }
  return rs;
}

std::vector<long> TheoryConfig::gauge_weight(int j) const {
  const auto& w = weights.at(j);
  return std::vector<long>(w.begin(), w.begin() + rank());
}

AffineForm TheoryConfig::weight_form(int j) const {
  int n = rank();
  const auto& w = weights.at(j);
  AffineForm f(n);
  for (int k = 0; k < n; ++k) f.gradient()[k] = GQ(w[k]);
  Q c(0);
  for (int a = 0; a < flavor_dim; ++a) c += Q(w[n + a]) * mass[a];
  f.constant() = GQ(c);
  return f;
}

AffineForm TheoryConfig::fi_form() const {
  int n = rank();
  AffineForm f(n);
  int k = 0;
  // zeta pairs with the trace of each GL block
  for (size_t i = 0; i < gauge_dims.size(); ++i)
    for (int r = 0; r < gauge_dims[i]; ++r) f.gradient()[k++] = GQ(fi.empty() ? Q(0) : fi.at(i));
  return f;
}

void TheoryConfig::validate() const {
  if (gauge_dims.empty()) throw SchemaError("/gauge_dims", "must be a non-empty list");
  for (size_t i = 0; i < gauge_dims.size(); ++i)
    if (gauge_dims[i] < 1) throw SchemaError("/gauge_dims/" + std::to_string(i), "must be a positive integer");
  if (flavor_dim < 0) throw SchemaError("/flavor_dim", "must be non-negative");
  int cols = rank() + flavor_dim;
  for (size_t j = 0; j < weights.size(); ++j) {
    if (static_cast<int>(weights[j].size()) != cols)
      throw SchemaError("/weights/" + std::to_string(j),
                        "row length " + std::to_string(weights[j].size()) + " != " + std::to_string(cols));
    if (std::all_of(weights[j].begin(), weights[j].end(), [](long v) { return v == 0; }))
      throw SchemaError("/weights/" + std::to_string(j), "zero weight row");
  }
  if (static_cast<int>(mass.size()) != flavor_dim)
    throw SchemaError("/mass", "length " + std::to_string(mass.size()) + " != flavor_dim " + std::to_string(flavor_dim));
  if (!fi.empty() && fi.size() != gauge_dims.size())
    throw SchemaError("/fi", "length must equal the number of gauge factors");
}

namespace {

Q rational_at(const nlohmann::json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw SchemaError(path, e.what());
  }
}

long int_at(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<long>();
}

}  // namespace

TheoryConfig build_theory(const nlohmann::json& cfg) {
  if (!cfg.is_object()) throw SchemaError("/", "config must be an object");
  static const std::set<std::string> known = {"label", "gauge_dims", "flavor_dim", "weights", "mass", "fi", "root_gamma"};
  for (auto it = cfg.begin(); it != cfg.end(); ++it)
    if (!known.count(it.key())) throw SchemaError("/" + it.key(), "unknown field");
  TheoryConfig t;
  if (cfg.contains("label")) {
    if (!cfg["label"].is_string()) throw SchemaError("/label", "expected a string");
    t.label = cfg["label"];
  }
  if (!cfg.contains("gauge_dims") || !cfg["gauge_dims"].is_array()) throw SchemaError("/gauge_dims", "required list");
  for (size_t i = 0; i < cfg["gauge_dims"].size(); ++i)
    t.gauge_dims.push_back(static_cast<int>(int_at(cfg["gauge_dims"][i], "/gauge_dims/" + std::to_string(i))));
  t.flavor_dim = cfg.contains("flavor_dim") ? static_cast<int>(int_at(cfg["flavor_dim"], "/flavor_dim")) : 0;
  if (cfg.contains("weights")) {
    if (!cfg["weights"].is_array()) throw SchemaError("/weights", "expected a list of rows");
    for (size_t j = 0; j < cfg["weights"].size(); ++j) {
      const auto& row = cfg["weights"][j];
      std::string p = "/weights/" + std::to_string(j);
      if (!row.is_array()) throw SchemaError(p, "expected a list");
      std::vector<long> r;
      for (size_t k = 0; k < row.size(); ++k) r.push_back(int_at(row[k], p + "/" + std::to_string(k)));
      t.weights.push_back(r);
    }
  }
  auto rationals = [&](const char* key, std::vector<Q>& out) {
    if (!cfg.contains(key)) return;
    std::string p = std::string("/") + key;
    if (!cfg[key].is_array()) throw SchemaError(p, "expected a list of rational strings");
    for (size_t i = 0; i < cfg[key].size(); ++i) out.push_back(rational_at(cfg[key][i], p + "/" + std::to_string(i)));
  };
  rationals("mass", t.mass);
  rationals("fi", t.fi);
  if (cfg.contains("root_gamma")) {
    std::string rg = cfg["root_gamma"].is_string() ? cfg["root_gamma"].get<std::string>() : "";
    if (rg == "symmetric")
      t.root_gamma = RootGamma::Symmetric;
    else if (rg == "squared")
      t.root_gamma = RootGamma::Squared;
    else
      throw SchemaError("/root_gamma", "expected \"symmetric\" or \"squared\"");
  }
  t.validate();
  return t;
}

TheoryConfig load_theory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("/", "cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("/", std::string("JSON parse error: ") + e.what());
  }
  return build_theory(j);
}

nlohmann::json theory_to_json(const TheoryConfig& t) {
  nlohmann::json j;
  j["label"] = t.label;
  j["gauge_dims"] = t.gauge_dims;
  j["flavor_dim"] = t.flavor_dim;
  j["weights"] = t.weights;
  j["mass"] = nlohmann::json::array();
  for (const auto& m : t.mass) j["mass"].push_back(m.get_str());
  j["fi"] = nlohmann::json::array();
  for (const auto& z : t.fi) j["fi"].push_back(z.get_str());
  j["root_gamma"] = t.root_gamma == RootGamma::Symmetric ? "symmetric" : "squared";
  return j;
}

TheoryConfig a_type_quiver(const std::vector<int>& dims, const std::vector<int>& framing, const std::vector<Q>& mass,
                           const std::vector<Q>& fi) {
  if (framing.size() != dims.size()) throw SchemaError("/framing", "length must match the number of nodes");
  TheoryConfig t;
  t.label = "A" + std::to_string(dims.size()) + " quiver";
  t.gauge_dims = dims;
  t.flavor_dim = std::accumulate(framing.begin(), framing.end(), 0);
  int n = t.rank();
  std::vector<int> off(dims.size(), 0);
  for (size_t i = 1; i < dims.size(); ++i) off[i] = off[i - 1] + dims[i - 1];
  int f = 0;
  for (size_t i = 0; i < dims.size(); ++i) {
    for (int a = 0; a < framing[i]; ++a, ++f)
      for (int r = 0; r < dims[i]; ++r) {
        std::vector<long> w(n + t.flavor_dim, 0);
        w[off[i] + r] = 1;
        w[n + f] = 1;
        t.weights.push_back(w);
      }
    if (i + 1 < dims.size())
      for (int r = 0; r < dims[i]; ++r)
        for (int s = 0; s < dims[i + 1]; ++s) {
          std::vector<long> w(n + t.flavor_dim, 0);
          w[off[i] + r] = 1;
          w[off[i + 1] + s] = -1;
          t.weights.push_back(w);
        }
  }
  t.mass = mass.empty() ? std::vector<Q>(t.flavor_dim, Q(0)) : mass;
  t.fi = fi;
  t.validate();
  return t;
}

namespace {

using QVec = std::vector<Q>;

Q dot(const std::vector<long>& a, const QVec& b) {
  Q s(0);
  for (size_t i = 0; i < b.size(); ++i) s += Q(a[i]) * b[i];
  return s;
}

// null space direction of the given rows (n-1 rows, n columns); empty if rank deficient
QVec null_direction(std::vector<QVec> rows, int n) {
  int r = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < n && r < static_cast<int>(rows.size()); ++c) {
    int p = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (sgn(rows[i][c]) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[r], rows[p]);
    Q inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Q f = rows[i][c];
      for (int j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r != n - 1) return {};
  int free = -1;
  for (int c = 0; c < n; ++c)
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) free = c;
  QVec x(n, Q(0));
  x[free] = 1;
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = -rows[i][free];
  return x;
}

std::vector<long> primitive_integer(const QVec& x) {
  mpz_class l = 1;
  for (const auto& v : x) l = lcm(l, v.get_den());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& v : x) {
    mpz_class zi = v.get_num() * (l / v.get_den());
    z.push_back(zi);
    g = gcd(g, zi);
  }
  std::vector<long> out;
  for (auto& zi : z) out.push_back(mpz_class(zi / g).get_si());
  for (long v : out) {
    if (v == 0) continue;
    if (v < 0)
      for (auto& w : out) w = -w;
    break;
  }
  return out;
}

}  // namespace

ConicalResult check_conical(const TheoryConfig& t) {
  int n = t.rank();
  std::vector<std::vector<long>> wts, rts;
  for (size_t j = 0; j < t.weights.size(); ++j) {
    auto g = t.gauge_weight(static_cast<int>(j));
    if (std::any_of(g.begin(), g.end(), [](long v) { return v != 0; })) wts.push_back(g);
  }
  for (const auto& r : t.roots().positive) {
    std::vector<long> a(n, 0);
    a[r.r] = 1;
    a[r.s] = -1;
    rts.push_back(a);
  }
  // hyperplane arrangement: weights, roots and coordinate hyperplanes (faces of the l1 sphere)
  std::set<std::vector<long>> forms;
  auto add = [&](std::vector<long> f) { forms.insert(primitive_integer(QVec(f.begin(), f.end()))); };
  for (auto& w : wts) add(w);
  for (auto& a : rts) add(a);
  for (int k = 0; k < n; ++k) {
    std::vector<long> e(n, 0);
    e[k] = 1;
    add(e);
    // |beta_k| = |beta_l|: vertices of the max-norm sphere, used to pick the witness
    for (int l = k + 1; l < n; ++l) {
      std::vector<long> p(n, 0), m(n, 0);
      p[k] = m[k] = 1;
      p[l] = 1;
      m[l] = -1;
      add(p);
      add(m);
    }
  }
  std::vector<std::vector<long>> F(forms.begin(), forms.end());

  auto f_at = [&](const QVec& b) {
    Q s(0);
    for (auto& w : wts) s += abs(dot(w, b));
    for (auto& a : rts) s -= 2 * abs(dot(a, b));
    return s;
  };
  auto l1 = [](const QVec& b) {
    Q s(0);
    for (auto& v : b) s += abs(v);
    return s;
  };

  ConicalResult res;
  bool have = false;
  Q best_ratio;
  std::vector<long> best;
  std::vector<int> pick(std::max(n - 1, 0));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n - 1) {
      std::vector<QVec> rows;
      for (int i : pick) rows.emplace_back(F[i].begin(), F[i].end());
      QVec d = n == 1 ? QVec{Q(1)} : null_direction(rows, n);
      if (d.empty()) return;
      Q norm = l1(d);
      for (auto& v : d) v /= norm;
      Q val = f_at(d);  // f is even, so one sign suffices
      if (!have || val < res.margin) res.margin = val;
      have = true;
      if (sgn(val) <= 0) {
        auto w = primitive_integer(d);
        QVec wq(w.begin(), w.end());
        Q inf(0);
        for (long v : w) inf = std::max(inf, Q(std::labs(v)));
        Q ratio = -f_at(wq) / inf;
        if (best.empty() || ratio > best_ratio || (ratio == best_ratio && w > best)) {
          best_ratio = ratio;
          best = w;
        }
      }
      return;
    }
    for (int i = start; i < static_cast<int>(F.size()); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  res.conical = best.empty();
  res.witness = best;
  return res;
}

std::vector<long> minus_w0(const std::vector<long>& lambda, const TheoryConfig& t) {
  std::vector<long> out(lambda.size());
  int off = 0;
  for (int d : t.gauge_dims) {
    for (int k = 0; k < d; ++k) out[off + k] = -lambda[off + d - 1 - k];
    off += d;
  }
  return out;
}

bool minuscule(const std::vector<long>& lambda, const TheoryConfig& t) {
  int off = 0;
  for (int d : t.gauge_dims) {
    auto [lo, hi] = std::minmax_element(lambda.begin() + off, lambda.begin() + off + d);
    if (*hi - *lo > 1) return false;
    off += d;
  }
  return true;
}

std::vector<OrbitEntry> weyl_orbit(const std::vector<long>& lambda, const TheoryConfig& t) {
  int n = t.rank();
  if (static_cast<int>(lambda.size()) != n)
    throw std::invalid_argument("coweight length " + std::to_string(lambda.size()) + " != rank " + std::to_string(n));
  auto rs = t.roots();
  // distinct permutations per block
  std::vector<std::vector<std::vector<long>>> per_block;
  int off = 0;
  for (int d : t.gauge_dims) {
    std::vector<long> blk(lambda.begin() + off, lambda.begin() + off + d);
    std::vector<long> s = blk;
    std::sort(s.begin(), s.end(), std::greater<>());
    std::vector<std::vector<long>> perms;
    perms.push_back(blk);
    do {
      if (s != blk) perms.push_back(s);
    } while (std::prev_permutation(s.begin(), s.end()));
    per_block.push_back(perms);
    off += d;
  }
  std::vector<OrbitEntry> out;
  std::vector<size_t> idx(per_block.size(), 0);
  while (true) {
    OrbitEntry e;
    e.wlambda.reserve(n);
    for (size_t b = 0; b < per_block.size(); ++b)
      e.wlambda.insert(e.wlambda.end(), per_block[b][idx[b]].begin(), per_block[b][idx[b]].end());
    // w maps position r to a position holding lambda_r, matching equal values in order
    e.perm.assign(n, -1);
    int o = 0;
    for (int d : t.gauge_dims) {
      std::vector<bool> used(d, false);
      for (int r = 0; r < d; ++r)
        for (int q = 0; q < d; ++q)
          if (!used[q] && e.wlambda[o + q] == lambda[o + r]) {
            used[q] = true;
            e.perm[o + r] = o + q;
            break;
          }
      o += d;
    }
    e.denominator_sigma = MultiPoly::constant(n, GQ(1));
    for (const auto& r : rs.positive) {
      if (lambda[r.r] == lambda[r.s]) continue;
      int a = e.perm[r.r], b = e.perm[r.s];
      e.denominator.emplace_back(a, b);
      e.denominator_sigma = e.denominator_sigma * (MultiPoly::var(n, a) - MultiPoly::var(n, b));
    }
    out.push_back(std::move(e));
    size_t b = 0;
    for (; b < per_block.size(); ++b) {
      if (++idx[b] < per_block[b].size()) break;
      idx[b] = 0;
    }
    if (b == per_block.size()) break;
  }
  return out;
}

}  // namespace cb
