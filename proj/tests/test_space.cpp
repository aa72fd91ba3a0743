#include <cmath>
#include <sstream>

#include "doctest.h"
#include "grandmorrey/errors.hpp"
#include "grandmorrey/space.hpp"

using namespace grandmorrey;

namespace {

// two points, asymmetric distances: d(0,1) = 1, d(1,0) = 1/2
Space two_point_asym() {
  return Space::build({0.0, 1.0, 0.5, 0.0}, {0.5, 0.5});
}

}  // namespace

TEST_CASE("two-point space derived constants") {
  Space s = two_point_asym();
  CHECK(s.n() == 2);
  CHECK(s.a0() == 2.0);
  CHECK(s.a1() == 1.0);  // no third point, the triangle constraint is vacuous
  CHECK(s.r_min() == 0.5);
  CHECK(s.diam() == 1.0);
  CHECK(s.total_measure() == 1.0);

  CHECK(s.ball_measure(0, 0.4) == 0.5);
  CHECK(s.ball_measure(0, 1.0) == 1.0);
  CHECK(s.ball_measure(1, 0.5) == 1.0);  // balls are closed
  CHECK(s.ball_measure(1, 0.49) == 0.5);
  CHECK(s.ball_measure(0, -1.0) == 0.0);

  CHECK(s.kernel_ball(0, 1) == 0.5);
  CHECK(s.kernel_ball(1, 0) == 0.5);

  auto [a0, a1] = verify_quasimetric(s);
  CHECK(a0 == s.a0());
  CHECK(a1 == s.a1());

  CHECK(estimate_doubling(s) == 2.0);
}

TEST_CASE("table validation rejects malformed input") {
  CHECK_THROWS_AS(Space::build({0, 0, 0, 0}, {1, 1}), ZeroDistanceDistinctPair);
  CHECK_THROWS_AS(Space::build({0, -1, 1, 0}, {1, 1}), NegativeDistance);
  CHECK_THROWS_AS(Space::build({0, 1, 1, 0.5}, {1, 1}), NonZeroDiagonal);
  CHECK_THROWS_AS(Space::build({0, 1, 1, 0}, {1, 0}), NonPositiveWeight);
  CHECK_THROWS_AS(Space::build({0, 1, 1, 0}, {1, -2}), NonPositiveWeight);
  CHECK_THROWS_AS(Space::build({0, 1, 1}, {1, 1}), InvalidSpec);
  CHECK_THROWS_AS(Space::build({0}, {1}), InvalidSpec);
  double nan = std::nan("");
  CHECK_THROWS_AS(Space::build({0, nan, 1, 0}, {1, 1}), NegativeDistance);
  CHECK_THROWS_AS(Space::build({0, 1, 1, 0}, {1, nan}), NonPositiveWeight);
  // coords must be n x coord_dim when given
  CHECK_THROWS_AS(Space::build({0, 1, 1, 0}, {1, 1}, {0.0}, 2), InvalidSpec);
}

TEST_CASE("interval generator layout") {
  Space s = gen_interval(4);
  CHECK(s.n() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(s.weight(i) == 0.25);
    CHECK(s.coord(i) == (i + 0.5) / 4.0);
  }
  CHECK(s.total_measure() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.r_min() == 0.25);
  CHECK(s.diam() == 0.75);
  CHECK(s.a0() == 1.0);
  CHECK(s.a1() == 1.0);
  CHECK(s.dist(0, 3) == s.dist(3, 0));

  // radius sets start at 0 and end at the diameter
  for (int x = 0; x < s.n(); ++x) {
    const auto& rs = s.radius_set(x);
    CHECK(rs.front() == 0.0);
    CHECK(rs.back() == s.diam());
    for (std::size_t m = 1; m < rs.size(); ++m) CHECK(rs[m] > rs[m - 1]);
  }

  CHECK_THROWS_AS(gen_interval(1), InvalidSpec);
  CHECK_THROWS_AS(gen_interval(5000), InvalidSpec);
}

TEST_CASE("cube generator uses the max metric") {
  Space s = gen_cube(3, 2);
  CHECK(s.n() == 9);
  CHECK(s.coord_dim() == 2);
  CHECK(s.total_measure() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.diam() == doctest::Approx(2.0 / 3.0));
  CHECK(s.r_min() == doctest::Approx(1.0 / 3.0));
  // corner to corner: both coordinates differ by 2/3, max picks 2/3
  int far = -1;
  for (int j = 0; j < 9; ++j)
    if (s.dist(0, j) == s.diam()) far = j;
  CHECK(far >= 0);
  CHECK_THROWS_AS(gen_cube(2, 13), InvalidSpec);
  CHECK_THROWS_AS(gen_cube(1, 2), InvalidSpec);
}

TEST_CASE("cantor generator endpoints") {
  Space s = gen_cantor(4);
  CHECK(s.n() == 16);
  for (int i = 0; i < 16; ++i) CHECK(s.weight(i) == std::ldexp(1.0, -4));
  CHECK(s.total_measure() == 1.0);
  CHECK(s.diam() == doctest::Approx(80.0 / 81.0).epsilon(1e-15));
  CHECK(s.r_min() == doctest::Approx(2.0 / 81.0).epsilon(1e-15));
  CHECK_THROWS_AS(gen_cantor(0), InvalidSpec);
  CHECK_THROWS_AS(gen_cantor(13), InvalidSpec);
}

TEST_CASE("random generator is deterministic in the seed") {
  Space a = gen_random(24, 3);
  Space b = gen_random(24, 3);
  REQUIRE(a.n() == b.n());
  for (int i = 0; i < a.n(); ++i) {
    CHECK(a.weight(i) == b.weight(i));
    for (int j = 0; j < a.n(); ++j) CHECK(a.dist(i, j) == b.dist(i, j));
  }
  Space c = gen_random(24, 4);
  bool same = true;
  for (int i = 0; i < a.n() && same; ++i)
    if (a.weight(i) != c.weight(i)) same = false;
  CHECK_FALSE(same);
  CHECK(a.total_measure() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(gen_random(1, 7), InvalidSpec);
}

TEST_CASE("doubling and regularity envelopes on the interval") {
  Space s = gen_interval(64);
  // the half-step dilation t = r_min/2 turns a single cell into three
  CHECK(estimate_doubling(s) == 3.0);
  CHECK_THROWS_AS(estimate_dilation_doubling(s, 0.0), InvalidSpec);

  auto [hi, lo] = estimate_ahlfors(s, 1.0);
  CHECK(hi == 3.0);  // three cells inside radius 1/64 around interior points
  CHECK(lo == doctest::Approx(64.0 / 63.0).epsilon(1e-15));
  CHECK_THROWS_AS(estimate_ahlfors(s, 0.0), InvalidSpec);
}

TEST_CASE("reverse doubling contraction") {
  Space s = gen_interval(16);
  double beta = estimate_reverse_doubling(s, 0.5);
  CHECK(beta == doctest::Approx(15.0 / 16.0).epsilon(1e-15));
  CHECK(beta <= 1.0);
  // shrinking every radius below the cell scale leaves nothing to measure
  CHECK_THROWS_AS(estimate_reverse_doubling(s, 0.01), DegenerateScale);
  CHECK_THROWS_AS(estimate_reverse_doubling(s, -1.0), InvalidSpec);
}

TEST_CASE("regularity report aggregates the estimators") {
  Space s = gen_interval(16);
  RegularityReport r = regularity_report(s, 1.0, 0.5, 200, 1);
  CHECK(r.a0 == 1.0);
  CHECK(r.a1 == 1.0);
  CHECK(r.a_bar == 3.0);  // a1*(a1*(a0+1)+1)
  CHECK(r.r_min == s.r_min());
  CHECK(r.diam == s.diam());
  CHECK(r.total_measure == 1.0);
  CHECK(r.b_doubling == 3.0);
  CHECK(r.gamma == 1.0);
  CHECK(r.b_upper == estimate_ahlfors(s, 1.0).first);
  CHECK(r.c_lower == estimate_ahlfors(s, 1.0).second);
  CHECK(r.beta == doctest::Approx(15.0 / 16.0));
  CHECK(r.annuli_fraction > 0.0);
  CHECK(r.annuli_fraction <= 1.0);

  RegularityReport degenerate = regularity_report(s, 1.0, 0.01);
  CHECK(std::isnan(degenerate.beta));
  CHECK_THROWS_AS(annuli_nonempty_fraction(s, 0, 1), InvalidSpec);
}

TEST_CASE("snowflake rescales the regularity exponent") {
  Space s = gen_interval(16);
  Space s2 = snowflake(s, 0.5);
  CHECK(s2.n() == s.n());
  CHECK(s2.dist(0, 5) == doctest::Approx(std::sqrt(s.dist(0, 5))));
  // ball contents are order-preserved, so the gamma=1 envelope of s matches
  // the gamma=2 envelope of the square-root metric
  auto base = estimate_ahlfors(s, 1.0);
  auto snow = estimate_ahlfors(s2, 2.0);
  CHECK(snow.first == doctest::Approx(base.first).epsilon(1e-12));
  CHECK(snow.second == doctest::Approx(base.second).epsilon(1e-12));
  CHECK_THROWS_AS(snowflake(s, 0.0), InvalidSpec);
  CHECK_THROWS_AS(snowflake(s, 1.5), InvalidSpec);
}

TEST_CASE("plain-text round trip preserves the table") {
  Space s = gen_random(10, 99);
  std::ostringstream out;
  save_space(s, out);
  std::istringstream in(out.str());
  Space t = load_space(in);
  REQUIRE(t.n() == s.n());
  for (int i = 0; i < s.n(); ++i) {
    CHECK(t.weight(i) == s.weight(i));  // 17 digits round-trip doubles exactly
    for (int j = 0; j < s.n(); ++j) CHECK(t.dist(i, j) == s.dist(i, j));
  }
  CHECK(t.a0() == s.a0());
  CHECK(t.a1() == s.a1());

  std::string text = out.str();
  std::istringstream cut(text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(load_space(cut), IoError);
  std::istringstream bad("1\n0.5\n0\n");
  CHECK_THROWS_AS(load_space(bad), IoError);
  CHECK_THROWS_AS(load_space_file("/nonexistent/gm-space"), IoError);
}

TEST_CASE("ball measure is monotone and saturates") {
  Space s = gen_cantor(3);
  for (int x = 0; x < s.n(); ++x) {
    double prev = -1.0;
    for (double t : s.radius_set(x)) {
      double m = s.ball_measure(x, t);
      CHECK(m >= prev);
      prev = m;
    }
    CHECK(s.ball_measure(x, s.diam()) == s.total_measure());
    CHECK(s.ball_measure(x, 2.0 * s.diam()) == s.total_measure());
  }
}
