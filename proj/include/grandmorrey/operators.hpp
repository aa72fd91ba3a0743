#pragma once

#include <limits>
#include <string>
#include <vector>

#include "grandmorrey/norms.hpp"
#include "grandmorrey/space.hpp"

namespace grandmorrey {

// modulus of continuity on (0,1], vanishing at 0
class Omega {
 public:
  static Omega power(double s);
  // piecewise-linear through (t_i, v_i) with omega(0) = 0; knots strictly
  // increasing in (0,1], values positive and nondecreasing
  static Omega table(std::vector<double> knots, std::vector<double> values);

  double operator()(double t) const;
  bool is_power() const { return is_power_; }
  double exponent() const { return s_; }

  // integral of omega(t)/t over (0,1], Simpson on a log grid; equals 1/s for
  // the power modulus up to quadrature error well below 1e-6
  double dini_integral() const;

  // sup of omega(2t)/omega(t): exactly 2^s for the power modulus, otherwise
  // measured on the knot grid
  double doubling_constant() const;

 private:
  Omega() = default;
  bool is_power_ = true;
  double s_ = 1.0;
  std::vector<double> knots_, values_;
};

struct KernelSpec {
  int n = 0;
  std::vector<double> k;  // row-major, diagonal unused
  Omega omega = Omega::power(1.0);
  // empirical operator bound on L2, filled by the caller (e.g. from a dense
  // decomposition); NaN when unknown
  double assumed_p0_bound = std::numeric_limits<double>::quiet_NaN();
  // smoothness gate multiplier; 0 means "use 2*a1 of the space"
  double c_triple = 0.0;

  double at(int x, int y) const { return k[static_cast<std::size_t>(x) * n + y]; }
};

// k(x,y) = 1/(x - y) on spaces with one-dimensional coordinates
KernelSpec hilbert_kernel(const Space& s);

// plain-text n x n table, same layout as a distance block
KernelSpec load_kernel(const Space& s, std::istream& in);

// ball average of |f|, sup over breakpoint radii
GridFunction maximal(const Space& s, const GridFunction& f);

// sup over breakpoint radii t >= r_min of t^{-gamma} * integral of |f| over B(x,t)
GridFunction fractional_maximal(const Space& s, const GridFunction& f, double gamma);

// integral of f(y) d(x,y)^{alpha-gamma}; the diagonal uses the cell radius
// w_x^{1/gamma} in place of the distance
GridFunction potential_I(const Space& s, const GridFunction& f, double alpha, double gamma);

// integral of f(y) [mu B(x, d(x,y)) - w_y]^{alpha-1}; the diagonal contributes
// f(x) w_x^alpha
GridFunction potential_T(const Space& s, const GridFunction& f, double alpha);

struct OperatorResult {
  GridFunction values;
  double delta = 0.0;
  std::string note;
};

// truncated singular sum: Tf(x) = sum over d(x,y) > delta of k(x,y) f(y) w_y
OperatorResult cz_apply(const Space& s, const GridFunction& f, const KernelSpec& kernel,
                        double delta);

struct KernelCheck {
  double c_size = 0.0;       // sup |k(x,y)| * kernel_ball(x,y)
  double c_smooth = 0.0;     // gated difference quotient against omega
  double dini_value = 0.0;   // integral of omega(t)/t over (0,1]
  double omega_doubling = 0.0;
  long gate_count = 0;       // triples passing d(x2,y) > c_triple * d(x1,x2)
};

// size/smoothness/Dini diagnostics; triples are enumerated exhaustively for
// n <= 96 and sampled with a fixed seed beyond that
KernelCheck kernel_check(const Space& s, const KernelSpec& kernel);

}  // namespace grandmorrey
