#include "grandmorrey/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "grandmorrey/errors.hpp"
#include "grandmorrey/parallel.hpp"
#include "grandmorrey/rng.hpp"

namespace grandmorrey {

namespace {

constexpr int kMaxPoints = 4096;
// beyond this the quasi-triangle scan samples instead of enumerating
constexpr int kExhaustiveTriples = 512;

std::pair<double, double> quasimetric_constants(const Space& s) {
  const int n = s.n();
  double a0 = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double r = s.dist(i, j) / s.dist(j, i);
      if (r > a0) a0 = r;
    }

  double a1 = 0.0;
  if (n <= kExhaustiveTriples) {
    std::vector<double> per_i(n, 0.0);
    parallel_for(n, [&](int i) {
      double best = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        double dik = s.dist(i, k);
        for (int j = 0; j < n; ++j) {
          if (j == i || j == k) continue;
          double r = s.dist(i, j) / (dik + s.dist(k, j));
          if (r > best) best = r;
        }
      }
      per_i[i] = best;
    });
    for (double v : per_i)
      if (v > a1) a1 = v;
  } else {
    Rng rng(0x51ab5eed);
    for (long t = 0; t < (1L << 24); ++t) {
      int i = rng.index(n), k = rng.index(n), j = rng.index(n);
      if (i == j || i == k || k == j) continue;
      double r = s.dist(i, j) / (s.dist(i, k) + s.dist(k, j));
      if (r > a1) a1 = r;
    }
  }
  if (a1 == 0.0) a1 = 1.0;  // fewer than three points: vacuous constraint
  return {a0, a1};
}

}  // namespace

Space Space::build(std::vector<double> dist, std::vector<double> weights,
                   std::vector<double> coords, int coord_dim) {
  const std::size_t n = weights.size();
  if (n < 2) throw InvalidSpec("space needs at least 2 points");
  if (dist.size() != n * n) throw InvalidSpec("distance table is not n x n");
  if (coord_dim > 0 && coords.size() != n * static_cast<std::size_t>(coord_dim))
    throw InvalidSpec("coordinate table is not n x coord_dim");

  for (std::size_t i = 0; i < n; ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw NonPositiveWeight("weight " + std::to_string(i) + " is not positive");
    for (std::size_t j = 0; j < n; ++j) {
      double d = dist[i * n + j];
      if (!std::isfinite(d)) throw NegativeDistance("distance (" + std::to_string(i) + "," + std::to_string(j) + ") is not finite");
      if (d < 0.0) throw NegativeDistance("distance (" + std::to_string(i) + "," + std::to_string(j) + ") is negative");
      if (i == j && d != 0.0) throw NonZeroDiagonal("diagonal entry " + std::to_string(i) + " is nonzero");
      if (i != j && d == 0.0)
        throw ZeroDistanceDistinctPair("distinct points " + std::to_string(i) + "," + std::to_string(j) + " at distance 0");
    }
  }

  Space s;
  s.n_ = static_cast<int>(n);
  s.dist_ = std::move(dist);
  s.w_ = std::move(weights);
  s.coords_ = std::move(coords);
  s.dim_ = coord_dim;
  s.total_ = std::accumulate(s.w_.begin(), s.w_.end(), 0.0);

  s.r_min_ = std::numeric_limits<double>::infinity();
  s.diam_ = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double d = s.dist_[i * n + j];
      if (i != j && d < s.r_min_) s.r_min_ = d;
      if (d > s.diam_) s.diam_ = d;
    }

  s.order_.resize(n);
  s.sdist_.resize(n);
  s.wpre_.resize(n);
  s.radii_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& ord = s.order_[i];
    ord.resize(n);
    std::iota(ord.begin(), ord.end(), 0);
    const double* row = &s.dist_[i * n];
    std::stable_sort(ord.begin(), ord.end(), [row](int a, int b) { return row[a] < row[b]; });

    auto& sd = s.sdist_[i];
    auto& wp = s.wpre_[i];
    sd.resize(n);
    wp.resize(n + 1);
    wp[0] = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      sd[m] = row[ord[m]];
      wp[m + 1] = wp[m] + s.w_[ord[m]];
    }

    auto& rs = s.radii_[i];
    for (std::size_t m = 0; m < n; ++m)
      if (m == 0 || sd[m] != sd[m - 1]) rs.push_back(sd[m]);
    if (rs.back() < s.diam_) rs.push_back(s.diam_);
  }

  auto [a0, a1] = quasimetric_constants(s);
  s.a0_ = a0;
  s.a1_ = a1;
  return s;
}

double Space::ball_measure(int x, double t) const {
  const auto& sd = sdist_[x];
  auto it = std::upper_bound(sd.begin(), sd.end(), t);
  return wpre_[x][static_cast<std::size_t>(it - sd.begin())];
}

double Space::kernel_ball(int x, int y) const {
  return ball_measure(x, dist(x, y)) - w_[y];
}

std::pair<double, double> verify_quasimetric(const Space& s) {
  return quasimetric_constants(s);
}

double estimate_dilation_doubling(const Space& s, double factor) {
  if (!(factor > 0.0)) throw InvalidSpec("dilation factor must be positive");
  double best = 0.0;
  for (int x = 0; x < s.n(); ++x) {
    for (double g : s.radius_set(x)) {
      for (double t : {g, g / factor}) {
        if (factor * t < s.r_min()) continue;
        double ratio = s.ball_measure(x, factor * t) / s.ball_measure(x, t);
        if (ratio > best) best = ratio;
      }
    }
  }
  return best;
}

double estimate_doubling(const Space& s) { return estimate_dilation_doubling(s, 2.0); }

std::pair<double, double> estimate_ahlfors(const Space& s, double gamma) {
  if (!(gamma > 0.0)) throw InvalidSpec("exponent must be positive");
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  for (int x = 0; x < s.n(); ++x)
    for (double t : s.radius_set(x)) {
      if (t < s.r_min() || t > s.diam()) continue;
      double r = s.ball_measure(x, t) / std::pow(t, gamma);
      if (r > hi) hi = r;
      if (r < lo) lo = r;
    }
  return {hi, lo};
}

double estimate_reverse_doubling(const Space& s, double alpha_bar) {
  if (!(alpha_bar > 0.0)) throw InvalidSpec("contraction factor must be positive");
  double best = -1.0;
  for (int x = 0; x < s.n(); ++x)
    for (double t : s.radius_set(x)) {
      if (alpha_bar * t < s.r_min()) continue;
      double r = s.ball_measure(x, alpha_bar * t) / s.ball_measure(x, t);
      if (r > best) best = r;
    }
  if (best < 0.0) throw DegenerateScale("no radius satisfies alpha_bar*t >= r_min");
  return best;
}

double a_bar(const Space& s) { return s.a1() * (s.a1() * (s.a0() + 1.0) + 1.0); }

double annuli_nonempty_fraction(const Space& s, int samples, std::uint64_t seed) {
  if (samples <= 0) throw InvalidSpec("sample count must be positive");
  Rng rng(seed);
  int hit = 0;
  for (int k = 0; k < samples; ++k) {
    int x = rng.index(s.n());
    double r = rng.uniform(0.0, s.diam());
    double R = rng.uniform(0.0, s.diam());
    if (r > R) std::swap(r, R);
    if (s.ball_measure(x, R) - s.ball_measure(x, r) > 0.0) ++hit;
  }
  return static_cast<double>(hit) / samples;
}

RegularityReport regularity_report(const Space& s, double gamma, double alpha_bar,
                                   int annuli_samples, std::uint64_t seed) {
  RegularityReport r;
  r.a0 = s.a0();
  r.a1 = s.a1();
  r.a_bar = a_bar(s);
  r.r_min = s.r_min();
  r.diam = s.diam();
  r.total_measure = s.total_measure();
  r.b_doubling = estimate_doubling(s);
  r.gamma = gamma;
  auto [hi, lo] = estimate_ahlfors(s, gamma);
  r.b_upper = hi;
  r.c_lower = lo;
  r.lower_exponent = gamma;
  r.alpha_bar = alpha_bar;
  try {
    r.beta = estimate_reverse_doubling(s, alpha_bar);
  } catch (const DegenerateScale&) {
    r.beta = std::numeric_limits<double>::quiet_NaN();
  }
  r.annuli_fraction = annuli_nonempty_fraction(s, annuli_samples, seed);
  return r;
}

Space gen_interval(int n) {
  if (n < 2 || n > kMaxPoints) throw InvalidSpec("interval point count out of range");
  std::vector<double> pts(n), w(n, 1.0 / n);
  for (int i = 0; i < n; ++i) pts[i] = (i + 0.5) / n;
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(i) * n + j] = std::fabs(pts[i] - pts[j]);
  return Space::build(std::move(d), std::move(w), std::move(pts), 1);
}

Space gen_cube(int n, int dim) {
  if (n < 2 || dim < 1) throw InvalidSpec("cube needs n >= 2 and dim >= 1");
  long long total = 1;
  for (int k = 0; k < dim; ++k) {
    total *= n;
    if (total > kMaxPoints) throw InvalidSpec("cube point count out of range");
  }
  const int N = static_cast<int>(total);
  std::vector<double> coords(static_cast<std::size_t>(N) * dim);
  for (int i = 0; i < N; ++i) {
    int rest = i;
    for (int k = 0; k < dim; ++k) {
      coords[static_cast<std::size_t>(i) * dim + k] = ((rest % n) + 0.5) / n;
      rest /= n;
    }
  }
  std::vector<double> d(static_cast<std::size_t>(N) * N, 0.0);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double m = 0.0;
      for (int k = 0; k < dim; ++k) {
        double dk = std::fabs(coords[static_cast<std::size_t>(i) * dim + k] -
                              coords[static_cast<std::size_t>(j) * dim + k]);
        if (dk > m) m = dk;
      }
      d[static_cast<std::size_t>(i) * N + j] = m;
    }
  std::vector<double> w(N, 1.0 / N);
  return Space::build(std::move(d), std::move(w), std::move(coords), dim);
}

Space gen_cantor(int k) {
  if (k < 1 || k > 12) throw InvalidSpec("cantor level out of range");
  const int N = 1 << k;
  std::vector<double> pts(N);
  for (int i = 0; i < N; ++i) {
    double v = 0.0, scale = 1.0;
    for (int j = 0; j < k; ++j) {
      scale /= 3.0;
      if ((i >> (k - 1 - j)) & 1) v += 2.0 * scale;
    }
    pts[i] = v;
  }
  std::vector<double> d(static_cast<std::size_t>(N) * N, 0.0);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) d[static_cast<std::size_t>(i) * N + j] = std::fabs(pts[i] - pts[j]);
  std::vector<double> w(N, std::ldexp(1.0, -k));
  return Space::build(std::move(d), std::move(w), std::move(pts), 1);
}

Space gen_random(int n, std::uint64_t seed) {
  if (n < 2 || n > kMaxPoints) throw InvalidSpec("random point count out of range");
  Rng rng(seed);
  std::vector<double> pts(n);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (int i = 0; i < n; ++i) pts[i] = rng.uniform();
    std::sort(pts.begin(), pts.end());
    bool distinct = true;
    for (int i = 0; i + 1 < n; ++i)
      if (pts[i + 1] == pts[i]) distinct = false;
    if (distinct) break;
  }
  // midpoint cells inside [pts.front(), pts.back()], then normalized
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    double left = (i == 0) ? pts[0] : (pts[i - 1] + pts[i]) / 2.0;
    double right = (i == n - 1) ? pts[n - 1] : (pts[i] + pts[i + 1]) / 2.0;
    w[i] = right - left;
  }
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= sum;
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(i) * n + j] = std::fabs(pts[i] - pts[j]);
  return Space::build(std::move(d), std::move(w), std::move(pts), 1);
}

Space snowflake(const Space& s, double exponent) {
  if (!(exponent > 0.0) || exponent > 1.0) throw InvalidSpec("snowflake exponent must lie in (0,1]");
  const int n = s.n();
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) d[static_cast<std::size_t>(i) * n + j] = std::pow(s.dist(i, j), exponent);
  std::vector<double> w(n), coords;
  for (int i = 0; i < n; ++i) w[i] = s.weight(i);
  if (s.has_coords()) {
    coords.resize(static_cast<std::size_t>(n) * s.coord_dim());
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < s.coord_dim(); ++k)
        coords[static_cast<std::size_t>(i) * s.coord_dim() + k] = s.coord(i, k);
  }
  return Space::build(std::move(d), std::move(w), std::move(coords), s.has_coords() ? s.coord_dim() : 0);
}

void save_space(const Space& s, std::ostream& out) {
  char buf[40];
  out << s.n() << "\n";
  for (int i = 0; i < s.n(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", s.weight(i));
    out << buf << "\n";
  }
  for (int i = 0; i < s.n(); ++i) {
    for (int j = 0; j < s.n(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", s.dist(i, j));
      out << buf << (j + 1 == s.n() ? "" : " ");
    }
    out << "\n";
  }
}

Space load_space(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n < 2 || n > kMaxPoints) throw IoError("space table: bad point count");
  std::vector<double> w(n), d(static_cast<std::size_t>(n) * n);
  for (auto& v : w)
    if (!(in >> v)) throw IoError("space table: truncated weights");
  for (auto& v : d)
    if (!(in >> v)) throw IoError("space table: truncated distances");
  return Space::build(std::move(d), std::move(w));
}

Space load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open space table: " + path);
  return load_space(in);
}

}  // namespace grandmorrey
