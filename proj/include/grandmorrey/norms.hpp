#pragma once

#include <functional>
#include <vector>

#include "grandmorrey/space.hpp"

namespace grandmorrey {

// function on the points of a space, indexed like the space
using GridFunction = std::vector<double>;

// denominator entering a ball norm: the ball's measure raised to lambda, or
// the radius raised to gamma*lambda
enum class Denominator { Measure, Radius };

struct MorreyParams {
  double lambda = 0.0;
  Denominator mode = Denominator::Measure;
  double gamma = 1.0;  // radius-mode scaling exponent

  void validate() const;
};

// gauge weighting the exponent-drop eps in a grand norm
class Gauge {
 public:
  static Gauge power(double theta);
  static Gauge table(std::function<double(double)> fn);

  double operator()(double eps) const;
  bool is_power() const { return is_power_; }
  double theta() const { return theta_; }

 private:
  Gauge() = default;
  bool is_power_ = true;
  double theta_ = 1.0;
  std::function<double(double)> fn_;
};

// K log-spaced points covering (0, p-1): from 1e-3*(p-1) to (1-1e-3)*(p-1)
// inclusive, strictly increasing
std::vector<double> epsilon_grid(double p, int K);

struct GrandParams {
  double p = 2.0;
  Gauge phi = Gauge::power(1.0);
  MorreyParams morrey;
  std::vector<double> eps;

  static GrandParams power(double p, double theta, MorreyParams m = {}, int K = 64);
  void validate() const;
};

// whole-space Lebesgue norm (sum over all points)
double lp_norm(const Space& s, const GridFunction& f, double p);

// one ball's contribution: [D(x,t)^{-lambda} * sum_{d(x,y)<=t} |f|^p_eff w_y]^{1/p_eff};
// radius mode floors t at r_min in the denominator only
double lp_ball_norm(const Space& s, const GridFunction& f, double p_eff, int x, double t,
                    const MorreyParams& mp);

// sup of lp_ball_norm over all centers and breakpoint radii
double morrey_norm(const Space& s, const GridFunction& f, double p_eff, const MorreyParams& mp);

// morrey_norm at exponent p - eps[i] for every grid point, in grid order
std::vector<double> morrey_profile(const Space& s, const GridFunction& f, double p,
                                   const std::vector<double>& eps, const MorreyParams& mp);

struct GrandNorm {
  double value = 0.0;
  double eps_star = 0.0;  // first grid point attaining the sup
};

// sup over the grid of phi(eps)^{1/(p-eps)} * morrey_norm(f, p-eps)
GrandNorm grand_morrey_norm(const Space& s, const GridFunction& f, const GrandParams& gp);

// grand norm assembled from a precomputed morrey_profile (same grid order)
GrandNorm grand_from_profile(const std::vector<double>& profile, const GrandParams& gp);

}  // namespace grandmorrey
