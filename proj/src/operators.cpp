#include "grandmorrey/operators.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "grandmorrey/errors.hpp"
#include "grandmorrey/parallel.hpp"
#include "grandmorrey/rng.hpp"

namespace grandmorrey {

namespace {

void check_function(const Space& s, const GridFunction& f) {
  if (f.size() != static_cast<std::size_t>(s.n()))
    throw InvalidSpec("function length does not match the space");
  for (double v : f)
    if (!std::isfinite(v)) throw InvalidSpec("function has a non-finite value");
}

void check_kernel(const Space& s, const KernelSpec& kernel) {
  if (kernel.n != s.n() || kernel.k.size() != static_cast<std::size_t>(s.n()) * s.n())
    throw InvalidSpec("kernel table does not match the space");
}

}  // namespace

Omega Omega::power(double s) {
  if (!(s > 0.0)) throw AdmissibilityError("modulus exponent must be positive");
  Omega o;
  o.is_power_ = true;
  o.s_ = s;
  return o;
}

Omega Omega::table(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() != values.size() || knots.empty())
    throw AdmissibilityError("modulus table needs matching nonempty knots/values");
  double prev_t = 0.0, prev_v = 0.0;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i] > prev_t) || knots[i] > 1.0)
      throw AdmissibilityError("modulus knots must increase strictly inside (0,1]");
    if (!(values[i] > 0.0) || values[i] < prev_v)
      throw AdmissibilityError("modulus values must be positive and nondecreasing");
    prev_t = knots[i];
    prev_v = values[i];
  }
  Omega o;
  o.is_power_ = false;
  o.s_ = 0.0;
  o.knots_ = std::move(knots);
  o.values_ = std::move(values);
  return o;
}

double Omega::operator()(double t) const {
  if (!(t > 0.0)) return 0.0;
  if (is_power_) return std::pow(std::min(t, 1.0), s_);
  double tc = std::min(t, 1.0);
  auto it = std::lower_bound(knots_.begin(), knots_.end(), tc);
  if (it == knots_.end()) return values_.back();
  std::size_t i = it - knots_.begin();
  double t1 = knots_[i], v1 = values_[i];
  double t0 = (i == 0) ? 0.0 : knots_[i - 1];
  double v0 = (i == 0) ? 0.0 : values_[i - 1];
  return v0 + (v1 - v0) * (tc - t0) / (t1 - t0);
}

double Omega::dini_integral() const {
  // substitute t = e^u: integral of omega(e^u) du over [log(tmin), 0]
  const double lo = std::log(1e-12);
  const int N = 1 << 15;  // Simpson intervals (even)
  const double h = -lo / N;
  double sum = (*this)(std::exp(lo)) + (*this)(1.0);
  for (int i = 1; i < N; ++i) {
    double w = (i & 1) ? 4.0 : 2.0;
    sum += w * (*this)(std::exp(lo + h * i));
  }
  return sum * h / 3.0;
}

double Omega::doubling_constant() const {
  if (is_power_) return std::pow(2.0, s_);
  double best = 0.0;
  for (double t : knots_) {
    if (2.0 * t > 1.0) continue;
    double r = (*this)(2.0 * t) / (*this)(t);
    if (r > best) best = r;
  }
  if (best == 0.0) best = values_.back() / values_.front();
  return best;
}

KernelSpec hilbert_kernel(const Space& s) {
  if (!s.has_coords() || s.coord_dim() != 1)
    throw InvalidSpec("the 1/(x-y) kernel needs one-dimensional coordinates");
  KernelSpec ks;
  ks.n = s.n();
  ks.k.assign(static_cast<std::size_t>(s.n()) * s.n(), 0.0);
  for (int i = 0; i < s.n(); ++i)
    for (int j = 0; j < s.n(); ++j)
      if (i != j) ks.k[static_cast<std::size_t>(i) * s.n() + j] = 1.0 / (s.coord(i) - s.coord(j));
  ks.omega = Omega::power(1.0);
  ks.c_triple = 2.0 * s.a1();
  return ks;
}

KernelSpec load_kernel(const Space& s, std::istream& in) {
  KernelSpec ks;
  ks.n = s.n();
  ks.k.resize(static_cast<std::size_t>(s.n()) * s.n());
  for (auto& v : ks.k)
    if (!(in >> v)) throw IoError("kernel table: truncated entries");
  ks.c_triple = 2.0 * s.a1();
  return ks;
}

GridFunction maximal(const Space& s, const GridFunction& f) {
  check_function(s, f);
  const int n = s.n();
  std::vector<double> af(n);
  for (int y = 0; y < n; ++y) af[y] = std::fabs(f[y]) * s.weight(y);
  GridFunction out(n, 0.0);
  parallel_for(n, [&](int x) {
    const auto& sd = s.sorted_dist(x);
    const auto& ord = s.order(x);
    double best = 0.0, sum = 0.0, mu = 0.0;
    int j = 0;
    while (j < n) {
      const double t = sd[j];
      while (j < n && sd[j] == t) {
        sum += af[ord[j]];
        mu += s.weight(ord[j]);
        ++j;
      }
      double v = sum / mu;
      if (v > best) best = v;
    }
    out[x] = best;
  });
  return out;
}

GridFunction fractional_maximal(const Space& s, const GridFunction& f, double gamma) {
  check_function(s, f);
  if (!(gamma > 0.0)) throw AdmissibilityError("fractional maximal requires gamma > 0");
  const int n = s.n();
  std::vector<double> af(n);
  for (int y = 0; y < n; ++y) af[y] = std::fabs(f[y]) * s.weight(y);
  GridFunction out(n, 0.0);
  parallel_for(n, [&](int x) {
    const auto& sd = s.sorted_dist(x);
    const auto& ord = s.order(x);
    double best = 0.0, sum = 0.0;
    int j = 0;
    while (j < n) {
      const double t = sd[j];
      while (j < n && sd[j] == t) {
        sum += af[ord[j]];
        ++j;
      }
      if (t >= s.r_min()) {
        double v = sum * std::pow(t, -gamma);
        if (v > best) best = v;
      }
    }
    out[x] = best;
  });
  return out;
}

GridFunction potential_I(const Space& s, const GridFunction& f, double alpha, double gamma) {
  check_function(s, f);
  if (!(gamma > 0.0) || !(alpha > 0.0) || !(alpha < gamma))
    throw AdmissibilityError("potential_I requires 0 < alpha < gamma");
  const int n = s.n();
  GridFunction out(n, 0.0);
  parallel_for(n, [&](int x) {
    double cell = std::pow(s.weight(x), 1.0 / gamma);
    double sum = f[x] * s.weight(x) * std::pow(cell, alpha - gamma);
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      sum += f[y] * s.weight(y) * std::pow(s.dist(x, y), alpha - gamma);
    }
    out[x] = sum;
  });
  return out;
}

GridFunction potential_T(const Space& s, const GridFunction& f, double alpha) {
  check_function(s, f);
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw AdmissibilityError("potential_T requires 0 < alpha < 1");
  const int n = s.n();
  GridFunction out(n, 0.0);
  parallel_for(n, [&](int x) {
    double sum = f[x] * std::pow(s.weight(x), alpha);
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      sum += f[y] * s.weight(y) * std::pow(s.kernel_ball(x, y), alpha - 1.0);
    }
    out[x] = sum;
  });
  return out;
}

OperatorResult cz_apply(const Space& s, const GridFunction& f, const KernelSpec& kernel,
                        double delta) {
  check_function(s, f);
  check_kernel(s, kernel);
  if (delta < 0.0) throw AdmissibilityError("truncation radius must be nonnegative");
  const int n = s.n();
  OperatorResult res;
  res.delta = delta;
  res.values.assign(n, 0.0);
  parallel_for(n, [&](int x) {
    double sum = 0.0;
    for (int y = 0; y < n; ++y) {
      if (s.dist(x, y) > delta) sum += kernel.at(x, y) * f[y] * s.weight(y);
    }
    res.values[x] = sum;
  });
  if (delta >= s.diam()) res.note = "truncation removed every pair";
  return res;
}

KernelCheck kernel_check(const Space& s, const KernelSpec& kernel) {
  check_kernel(s, kernel);
  const int n = s.n();
  const double c_triple = kernel.c_triple > 0.0 ? kernel.c_triple : 2.0 * s.a1();

  KernelCheck out;
  out.dini_value = kernel.omega.dini_integral();
  out.omega_doubling = kernel.omega.doubling_constant();

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      double v = std::fabs(kernel.at(x, y)) * s.kernel_ball(x, y);
      if (v > out.c_size) out.c_size = v;
    }

  const bool exhaustive = n <= 96;
  const long total = exhaustive ? static_cast<long>(n) * n * n : (1L << 20);
  Rng rng(0x7215e5);
  double smooth = 0.0;
  long gates = 0;
  for (long idx = 0; idx < total; ++idx) {
    int x1, x2, y;
    if (exhaustive) {
      x1 = static_cast<int>(idx / (static_cast<long>(n) * n));
      x2 = static_cast<int>((idx / n) % n);
      y = static_cast<int>(idx % n);
    } else {
      x1 = rng.index(n);
      x2 = rng.index(n);
      y = rng.index(n);
    }
    if (x1 == x2 || y == x1 || y == x2) continue;
    double d12 = s.dist(x1, x2);
    double d2y = s.dist(x2, y);
    if (!(d2y > c_triple * d12)) continue;
    ++gates;
    double diff = std::fabs(kernel.at(x1, y) - kernel.at(x2, y)) +
                  std::fabs(kernel.at(y, x1) - kernel.at(y, x2));
    double w = kernel.omega(d12 / d2y);
    double v = diff * s.ball_measure(x2, d2y) / w;
    if (v > smooth) smooth = v;
  }
  if (gates == 0) throw EmptyGate("no triple passes the smoothness gate");
  out.c_smooth = smooth;
  out.gate_count = gates;
  return out;
}

}  // namespace grandmorrey
