#include "cb/quad.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace cb {

ComplexF pairwise_sum(const ComplexF* v, size_t n) {
  if (n <= 8) {
    ComplexF s = 0;
    for (size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

namespace {

struct Axis {
  std::vector<double> x, w;  // index k + K
  long K = 0;
};

Axis make_axis(double h, double tmax) {
  Axis a;
  a.K = static_cast<long>(std::ceil(tmax / h));
  for (long k = -a.K; k <= a.K; ++k) {
    double t = k * h;
    double u = M_PI / 2 * std::sinh(t);
    a.x.push_back(std::sinh(u));
    a.w.push_back(h * M_PI / 2 * std::cosh(t) * std::cosh(u));
  }
  return a;
}

}  // namespace

QuadResult integrate(const Integrand& f, int dim, const QuadOptions& opt) {
  QuadResult res;
  if (dim <= 0) {
    double none = 0;
    res.value = f(&none);
    res.l1 = std::abs(res.value);
    res.converged = true;
    res.evaluations = 1;
    return res;
  }
  double tmax = std::asinh(2.0 / M_PI * std::asinh(opt.x_max));
  unsigned nthreads = opt.threads > 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());

  ComplexF prev = 0;
  double prev_l1 = 0;
  bool have_prev = false;
  for (int level = 0; level <= opt.max_level; ++level) {
    double h = opt.h0 / std::ldexp(1.0, level);
    Axis ax = make_axis(h, tmax);
    long N = 2 * ax.K + 1;
    // enumerate the points new at this level: some coordinate index odd
    long total = 1;
    for (int d = 0; d < dim; ++d) total *= N;
    std::vector<long> flat;
    flat.reserve(level == 0 ? total : total - total / (1L << dim));
    for (long p = 0; p < total; ++p) {
      long r = p;
      bool fresh = level == 0;
      for (int d = 0; d < dim; ++d) {
        long k = r % N - ax.K;
        r /= N;
        if (k % 2 != 0) fresh = true;
      }
      if (fresh) flat.push_back(p);
    }
    std::vector<ComplexF> vals(flat.size());
    std::vector<ComplexF> absv(flat.size());
    auto work = [&](size_t lo, size_t hi) {
      std::vector<double> x(dim);
      for (size_t i = lo; i < hi; ++i) {
        long r = flat[i];
        double w = 1;
        for (int d = 0; d < dim; ++d) {
          long k = r % N;
          r /= N;
          x[d] = ax.x[k];
          w *= ax.w[k];
        }
        ComplexF v = f(x.data());
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) v = ComplexF(NAN, NAN);
        vals[i] = w * v;
        absv[i] = w * std::abs(v);
      }
    };
    if (nthreads > 1 && flat.size() > 4096) {
      std::vector<std::thread> th;
      size_t chunk = (flat.size() + nthreads - 1) / nthreads;
      for (unsigned t = 0; t < nthreads; ++t) {
        size_t lo = t * chunk, hi = std::min(flat.size(), lo + chunk);
        if (lo < hi) th.emplace_back(work, lo, hi);
      }
      for (auto& t : th) t.join();
    } else {
      work(0, flat.size());
    }
    res.evaluations += static_cast<long>(flat.size());
    double scale = level == 0 ? 0.0 : std::ldexp(1.0, -dim);
    ComplexF I = prev * scale + pairwise_sum(vals.data(), vals.size());
    double l1 = prev_l1 * scale + pairwise_sum(absv.data(), absv.size()).real();
    res.subdivisions = level;
    res.value = I;
    res.l1 = l1;
    if (!std::isfinite(I.real()) || !std::isfinite(I.imag())) {
      res.abs_error = INFINITY;
      res.converged = false;
      return res;
    }
    if (have_prev) {
      res.abs_error = std::abs(I - prev);
      if (level >= opt.min_level && res.abs_error <= opt.tol * std::max(l1, 1e-300)) {
        res.converged = true;
        return res;
      }
    }
    prev = I;
    prev_l1 = l1;
    have_prev = true;
  }
  return res;
}

}  // namespace cb
