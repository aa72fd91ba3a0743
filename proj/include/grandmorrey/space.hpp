#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace grandmorrey {

// Finite quasi-metric measure space: n points, an n x n distance table and a
// positive weight per point. Balls are closed, B(x,t) = {y : d(x,y) <= t}, and
// every ball query resolves through per-point sorted distance lists with
// weight prefix sums, so sups over radii reduce to finitely many breakpoints.
class Space {
 public:
  // Validates the table and computes the derived constants. dist is row-major
  // n x n; coords (optional) is row-major n x coord_dim.
  static Space build(std::vector<double> dist, std::vector<double> weights,
                     std::vector<double> coords = {}, int coord_dim = 0);

  int n() const { return n_; }
  double dist(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
  double weight(int i) const { return w_[i]; }
  double total_measure() const { return total_; }

  // tightest constants satisfied by the data:
  //   d(x,y) <= a0 * d(y,x)            (symmetry defect)
  //   d(x,y) <= a1 * (d(x,z) + d(z,y)) (quasi-triangle)
  double a0() const { return a0_; }
  double a1() const { return a1_; }

  // smallest positive distance; radius floor for scale-sensitive quantities
  double r_min() const { return r_min_; }
  double diam() const { return diam_; }

  // measure of the closed ball around x of radius t (t may be any real)
  double ball_measure(int x, double t) const;

  // sorted distinct distances from x, always containing 0 and diam
  const std::vector<double>& radius_set(int x) const { return radii_[x]; }

  // measure of the closed ball around x through y, minus y's own weight;
  // shared convention for kernel-size quantities
  double kernel_ball(int x, int y) const;

  // neighbor sweep support: point indices sorted by distance from x, the
  // matching sorted distances, and weight prefix sums over that order
  const std::vector<int>& order(int x) const { return order_[x]; }
  const std::vector<double>& sorted_dist(int x) const { return sdist_[x]; }
  const std::vector<double>& weight_prefix(int x) const { return wpre_[x]; }

  bool has_coords() const { return dim_ > 0; }
  int coord_dim() const { return dim_; }
  double coord(int i, int k = 0) const { return coords_[static_cast<std::size_t>(i) * dim_ + k]; }

 private:
  Space() = default;

  int n_ = 0;
  std::vector<double> dist_;
  std::vector<double> w_;
  std::vector<double> coords_;
  int dim_ = 0;
  double total_ = 0, a0_ = 1, a1_ = 1, r_min_ = 0, diam_ = 0;
  std::vector<std::vector<int>> order_;
  std::vector<std::vector<double>> sdist_;
  std::vector<std::vector<double>> wpre_;
  std::vector<std::vector<double>> radii_;
};

// Recomputes the tightest symmetry / quasi-triangle constants from the table.
// Exhaustive for n <= 512; beyond that the triangle scan samples a fixed-seed
// subset of triples (documented estimate, not a certificate).
std::pair<double, double> verify_quasimetric(const Space& s);

// Tightest constant with mu B(x, factor*t) <= c * mu B(x, t) over all real
// radii at or above the cell scale. Radii sweep the breakpoints and their
// factor-preimages, which makes the sup exact for the piecewise-constant
// ball measure.
double estimate_dilation_doubling(const Space& s, double factor);

// estimate_dilation_doubling at factor 2
double estimate_doubling(const Space& s);

// {b_upper, c_lower}: envelope constants of mu B(x,t) / t^gamma over
// t in radius_set(x) within [r_min, diam]
std::pair<double, double> estimate_ahlfors(const Space& s, double gamma);

// max of mu B(x, alpha_bar*t) / mu B(x,t) over t in radius_set(x) with
// alpha_bar*t >= r_min; throws DegenerateScale if no radius qualifies
double estimate_reverse_doubling(const Space& s, double alpha_bar);

// a1*(a1*(a0+1)+1): the dilation factor tying a doubled quasi-ball back to
// its center under the space's constants
double a_bar(const Space& s);

// fraction of sampled (x, r < R) pairs whose closed annulus holds a point
double annuli_nonempty_fraction(const Space& s, int samples, std::uint64_t seed);

struct RegularityReport {
  double a0 = 0, a1 = 0, a_bar = 0;
  double r_min = 0, diam = 0, total_measure = 0;
  double b_doubling = 0;
  double gamma = 0, b_upper = 0, c_lower = 0;
  double lower_exponent = 0;  // exponent used for the lower envelope
  double alpha_bar = 0, beta = 0;  // beta is NaN when the scale degenerates
  double annuli_fraction = 0;
};

RegularityReport regularity_report(const Space& s, double gamma, double alpha_bar,
                                   int annuli_samples = 200, std::uint64_t seed = 1);

// generators; every generator normalizes total measure to 1 and attaches
// point coordinates
Space gen_interval(int n);
Space gen_cube(int n, int dim);   // n^dim grid points, max-coordinate distance
Space gen_cantor(int k);          // 2^k left endpoints of the level-k construction
Space gen_random(int n, std::uint64_t seed);

// distance^exponent, 0 < exponent <= 1; constants are recomputed
Space snowflake(const Space& s, double exponent);

// plain-text table: first line n, then n weight lines, then n distance rows
void save_space(const Space& s, std::ostream& out);
Space load_space(std::istream& in);
Space load_space_file(const std::string& path);

}  // namespace grandmorrey
