#include "grandmorrey/norms.hpp"

#include <algorithm>
#include <cmath>

#include "grandmorrey/errors.hpp"
#include "grandmorrey/parallel.hpp"

namespace grandmorrey {

namespace {

void check_function(const Space& s, const GridFunction& f) {
  if (f.size() != static_cast<std::size_t>(s.n()))
    throw InvalidSpec("function length does not match the space");
  for (double v : f)
    if (!std::isfinite(v)) throw InvalidSpec("function has a non-finite value");
}

double denom_factor(const Space& s, const MorreyParams& mp, double mu, double t) {
  if (mp.lambda == 0.0) return 1.0;
  double base = (mp.mode == Denominator::Measure)
                    ? mu
                    : std::pow(std::max(t, s.r_min()), mp.gamma);
  return std::pow(base, -mp.lambda);
}

}  // namespace

void MorreyParams::validate() const {
  if (mode == Denominator::Measure) {
    if (lambda < 0.0 || lambda >= 1.0)
      throw AdmissibilityError("measure-mode norms require 0 <= lambda < 1");
  } else {
    if (!(gamma > 0.0)) throw AdmissibilityError("radius-mode norms require gamma > 0");
    if (lambda < 0.0 || lambda * gamma >= 1.0)
      throw AdmissibilityError("radius-mode norms require 0 <= lambda < 1/gamma");
  }
}

Gauge Gauge::power(double theta) {
  if (!(theta > 0.0)) throw AdmissibilityError("gauge exponent must be positive");
  Gauge g;
  g.is_power_ = true;
  g.theta_ = theta;
  return g;
}

Gauge Gauge::table(std::function<double(double)> fn) {
  if (!fn) throw AdmissibilityError("gauge table requires a callable");
  Gauge g;
  g.is_power_ = false;
  g.theta_ = 0.0;
  g.fn_ = std::move(fn);
  return g;
}

double Gauge::operator()(double eps) const {
  double v = is_power_ ? std::pow(eps, theta_) : fn_(eps);
  if (!(v > 0.0) || !std::isfinite(v))
    throw AdmissibilityError("gauge must be positive and finite on the grid");
  return v;
}

std::vector<double> epsilon_grid(double p, int K) {
  if (!(p > 1.0)) throw AdmissibilityError("grid requires p > 1");
  if (K < 2) throw AdmissibilityError("grid requires at least 2 points");
  const double lo = 1e-3 * (p - 1.0);
  const double hi = (1.0 - 1e-3) * (p - 1.0);
  std::vector<double> eps(K);
  const double lr = std::log(hi / lo);
  for (int i = 0; i < K; ++i) eps[i] = lo * std::exp(lr * i / (K - 1));
  eps.front() = lo;
  eps.back() = hi;
  return eps;
}

GrandParams GrandParams::power(double p, double theta, MorreyParams m, int K) {
  GrandParams gp;
  gp.p = p;
  gp.phi = Gauge::power(theta);
  gp.morrey = m;
  gp.eps = epsilon_grid(p, K);
  return gp;
}

void GrandParams::validate() const {
  if (!(p > 1.0)) throw AdmissibilityError("grand norms require p > 1");
  morrey.validate();
  if (eps.empty()) throw AdmissibilityError("grand norms require a nonempty grid");
  double prev = 0.0;
  for (double e : eps) {
    if (!(e > prev) || !(e < p - 1.0))
      throw AdmissibilityError("grid must increase strictly inside (0, p-1)");
    prev = e;
  }
}

double lp_norm(const Space& s, const GridFunction& f, double p) {
  check_function(s, f);
  if (!(p >= 1.0)) throw AdmissibilityError("lp_norm requires p >= 1");
  double sum = 0.0;
  for (int i = 0; i < s.n(); ++i) sum += std::pow(std::fabs(f[i]), p) * s.weight(i);
  return std::pow(sum, 1.0 / p);
}

double lp_ball_norm(const Space& s, const GridFunction& f, double p_eff, int x, double t,
                    const MorreyParams& mp) {
  check_function(s, f);
  mp.validate();
  if (!(p_eff >= 1.0)) throw AdmissibilityError("ball norms require p_eff >= 1");
  if (x < 0 || x >= s.n()) throw InvalidSpec("center index out of range");
  const auto& sd = s.sorted_dist(x);
  const auto& ord = s.order(x);
  const std::size_t m = std::upper_bound(sd.begin(), sd.end(), t) - sd.begin();
  double sum = 0.0, mu = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    int y = ord[i];
    sum += std::pow(std::fabs(f[y]), p_eff) * s.weight(y);
    mu += s.weight(y);
  }
  if (m == 0) return 0.0;
  return std::pow(denom_factor(s, mp, mu, t) * sum, 1.0 / p_eff);
}

double morrey_norm(const Space& s, const GridFunction& f, double p_eff, const MorreyParams& mp) {
  check_function(s, f);
  mp.validate();
  if (!(p_eff >= 1.0)) throw AdmissibilityError("ball norms require p_eff >= 1");
  const int n = s.n();
  std::vector<double> pf(n);
  for (int y = 0; y < n; ++y) pf[y] = std::pow(std::fabs(f[y]), p_eff) * s.weight(y);

  std::vector<double> per_x(n, 0.0);
  parallel_for(n, [&](int x) {
    const auto& sd = s.sorted_dist(x);
    const auto& ord = s.order(x);
    double best = 0.0, sum = 0.0, mu = 0.0;
    int j = 0;
    while (j < n) {
      const double t = sd[j];
      while (j < n && sd[j] == t) {
        sum += pf[ord[j]];
        mu += s.weight(ord[j]);
        ++j;
      }
      double v = denom_factor(s, mp, mu, t) * sum;
      if (v > best) best = v;
    }
    per_x[x] = best;
  });
  double best = 0.0;
  for (double v : per_x)
    if (v > best) best = v;
  return std::pow(best, 1.0 / p_eff);
}

std::vector<double> morrey_profile(const Space& s, const GridFunction& f, double p,
                                   const std::vector<double>& eps, const MorreyParams& mp) {
  std::vector<double> out(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) out[i] = morrey_norm(s, f, p - eps[i], mp);
  return out;
}

GrandNorm grand_from_profile(const std::vector<double>& profile, const GrandParams& gp) {
  gp.validate();
  if (profile.size() != gp.eps.size())
    throw InvalidSpec("profile length does not match the grid");
  GrandNorm best{0.0, gp.eps.front()};
  for (std::size_t i = 0; i < gp.eps.size(); ++i) {
    double e = gp.eps[i];
    double v = std::pow(gp.phi(e), 1.0 / (gp.p - e)) * profile[i];
    if (v > best.value) {
      best.value = v;
      best.eps_star = e;
    }
  }
  return best;
}

GrandNorm grand_morrey_norm(const Space& s, const GridFunction& f, const GrandParams& gp) {
  gp.validate();
  return grand_from_profile(morrey_profile(s, f, gp.p, gp.eps, gp.morrey), gp);
}

}  // namespace grandmorrey
