#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "grandmorrey/analysis.hpp"
#include "grandmorrey/errors.hpp"

using namespace grandmorrey;

namespace {

using Params = std::map<std::string, double>;

GridFunction ripple(const Space& s) {
  GridFunction f(s.n());
  for (int i = 0; i < s.n(); ++i) f[i] = 1.0 + 0.8 * std::sin(5.0 * i + 1.0);
  return f;
}

}  // namespace

TEST_CASE("constant lookup frozen values") {
  CHECK(explicit_constant("cz_lp", {{"p", 1.5}}) == 6.0);
  CHECK(explicit_constant("cz_lp", {{"p", 3.0}}) == 6.0);
  CHECK_THROWS_AS(explicit_constant("cz_lp", {{"p", 2.0}}), DomainError);
  CHECK_THROWS_AS(explicit_constant("cz_lp", {{"p", 1.0}}), DomainError);
  CHECK(explicit_constant("cz_lp", {{"p", 1.5}, {"c", 2.0}}) == 12.0);

  CHECK(explicit_constant("S_sigma", {{"p", 2.0}, {"theta", 1.0}, {"sigma", 0.5}}) ==
        doctest::Approx(12.699208415745595).epsilon(1e-14));
  CHECK_THROWS_AS(explicit_constant("S_sigma", {{"p", 2.0}, {"theta", 1.0}, {"sigma", 1.5}}),
                  DomainError);

  CHECK(explicit_constant("maximal_lp", {{"p", 2.0}}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(explicit_constant("maximal_morrey", {{"p", 2.0}, {"lambda", 0.5}, {"b", 2.0}}) ==
        doctest::Approx(2.681792830507429).epsilon(1e-14));

  CHECK(explicit_constant("cz_morrey", {{"p", 1.5}, {"lambda", 0.25}}) == 9.0);
  CHECK(explicit_constant("cz_grand_Cple", {{"p", 1.5}, {"eps", 0.1}, {"lambda", 0.0}}) ==
        doctest::Approx(8.233333333333333).epsilon(1e-12));
  CHECK(explicit_constant("cz_grand_Cple", {{"p", 3.0}, {"eps", 0.5}, {"lambda", 0.0}}) ==
        doctest::Approx(11.0).epsilon(1e-12));
  // on the p > 2 branch the drop may not cross p - 2
  CHECK_THROWS_AS(explicit_constant("cz_grand_Cple", {{"p", 3.0}, {"eps", 1.5}, {"lambda", 0.0}}),
                  DomainError);

  Params riesz{{"p", 2.0}, {"alpha", 0.25}, {"lambda", 0.0}, {"gamma", 1.0}};
  CHECK(explicit_constant("lemma41", riesz) ==
        doctest::Approx(17.513656920021769).epsilon(1e-14));
  CHECK(explicit_constant("hedberg_I", riesz) == 16.0);

  Params ball{{"p", 2.0}, {"alpha", 0.25}, {"lambda", 0.0}};
  CHECK(explicit_constant("lemma51", ball) == doctest::Approx(43.78414230005442).epsilon(1e-14));
  CHECK(explicit_constant("hedberg_T", ball) == 20.0);  // C_alpha defaults to 4/alpha
  CHECK(explicit_constant("hedberg_T", {{"p", 2.0}, {"alpha", 0.25}, {"lambda", 0.0},
                                        {"C_alpha", 1.0}}) == 5.0);

  Params t2{{"p", 2.0}, {"alpha", 0.25}, {"lambda", 0.0}, {"gamma", 1.0}, {"theta1", 1.0}};
  CHECK(explicit_constant("theta2_I", t2) == 2.0);
  CHECK(explicit_constant("theta2_T", t2) == 2.0);

  CHECK_THROWS_AS(explicit_constant("no_such_constant", {}), UnknownConstant);
  CHECK_THROWS_AS(explicit_constant("maximal_lp", {}), DomainError);
}

TEST_CASE("target exponent degenerates continuously") {
  Params t2{{"p", 2.0}, {"alpha", 1e-8}, {"lambda", 0.0}, {"gamma", 1.0}, {"theta1", 1.0}};
  CHECK(explicit_constant("theta2_I", t2) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("target gauge interpolates between the endpoints") {
  Params at = {{"p", 2.0}, {"alpha", 0.25}, {"lambda", 0.0}, {"gamma", 1.0}, {"u", 4.0}};
  CHECK(explicit_constant("phi_u", at) == 2.0);  // u = q collapses the bracket

  // near 0 the gauge behaves like u^{1+alpha*q/dim} = u^2
  auto phi = [](double u) {
    return explicit_constant(
        "phi_u", {{"p", 2.0}, {"alpha", 0.25}, {"lambda", 0.0}, {"gamma", 1.0}, {"u", u}});
  };
  double r3 = phi(1e-3) / 1e-6;
  double r4 = phi(1e-4) / 1e-8;
  CHECK(r3 / r4 < 1.05);
  CHECK(r4 / r3 < 1.05);
  CHECK_THROWS_AS(phi(0.0), DomainError);  // the bracket hits zero exactly
}

TEST_CASE("sobolev parameter factories") {
  SobolevParams sp = SobolevParams::riesz(2.0, 0.25, 0.0, 1.0);
  CHECK(sp.q == 4.0);
  CHECK(sp.theta2 == 2.0);
  CHECK(sp.dim() == 1.0);
  CHECK_NOTHROW(sp.validate());

  SobolevParams sb = SobolevParams::ball(2.0, 0.25, 0.0);
  CHECK(sb.q == 4.0);
  CHECK(sb.theta2 == 2.0);

  // alpha*p reaches the effective dimension
  CHECK_THROWS_AS(SobolevParams::riesz(2.0, 0.5, 0.0, 1.0), AdmissibilityError);
  CHECK_THROWS_AS(SobolevParams::ball(2.0, 0.6, 0.0), AdmissibilityError);

  SobolevParams broken = sp;
  broken.q = 5.0;
  CHECK_THROWS_AS(broken.validate(), InadmissibleParams);
  broken = sp;
  broken.q = 1.5;
  CHECK_THROWS_AS(broken.validate(), InadmissibleParams);
  broken = sp;
  broken.theta2 = 3.0;
  CHECK_THROWS_AS(broken.validate(), InadmissibleParams);
  broken = sb;
  broken.alpha = 1.2;
  CHECK_THROWS_AS(broken.validate(), InadmissibleParams);
}

TEST_CASE("sigma split on the constant function") {
  Space s = gen_interval(16);
  GridFunction g(s.n(), 1.0);
  CheckResult r = check_sigma_split(s, g, 2.0, 1.0, {}, 0.5);
  CHECK(r.name == "sigma_split");
  CHECK(r.pass);
  // unit profile: both sides reduce to pure gauge factors and the snapped
  // split makes the bound an identity
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.lhs == doctest::Approx(0.999001).epsilon(1e-5));
  CHECK(r.witness.substr(0, 4) == "eps=");

  CHECK_THROWS_AS(check_sigma_split(s, g, 2.0, 1.0, {}, 1.5), AdmissibilityError);
  CHECK_THROWS_AS(check_sigma_split(s, g, 2.0, 1.0, {}, 5e-4), GridTooCoarse);
  CHECK_THROWS_AS(check_sigma_split(s, g, 2.0, 1.0, {}, 0.9995), GridTooCoarse);
  Space heavy = Space::build({0, 1, 1, 0}, {1.0, 1.0});
  CHECK_THROWS_AS(check_sigma_split(heavy, {1.0, 1.0}, 2.0, 1.0, {}, 0.5), AdmissibilityError);
}

TEST_CASE("sigma split holds across parameters") {
  Space interval = gen_interval(16);
  Space cantor = gen_cantor(3);
  for (const Space* sp : {&interval, &cantor}) {
    GridFunction f = ripple(*sp);
    GridFunction mf = maximal(*sp, f);
    for (double p : {1.5, 2.0, 3.0})
      for (double lambda : {0.0, 0.3})
        for (double frac : {0.01, 0.2, 0.7}) {
          MorreyParams mp{lambda, Denominator::Measure, 1.0};
          CheckResult a = check_sigma_split(*sp, f, p, 1.0, mp, frac * (p - 1.0));
          CheckResult b = check_sigma_split(*sp, mf, p, 2.0, mp, frac * (p - 1.0));
          CHECK(a.pass);
          CHECK(b.pass);
        }
  }
}

TEST_CASE("embedding chain between the scales") {
  Space s = gen_interval(16);
  GridFunction one(s.n(), 1.0);
  auto rs = check_embeddings(s, one, 2.0, 0.5, 1.0);
  REQUIRE(rs.size() == 3);
  CHECK(rs[0].name == "embed_theta_monotone");
  CHECK(rs[1].name == "embed_grand_under_lp");
  CHECK(rs[2].name == "embed_small_lp_recovery");
  for (const auto& r : rs) CHECK(r.pass);
  CHECK(rs[1].rhs == 1.0);  // (p-1)^theta1 caps at 1 and the norm of 1 is 1

  GridFunction f = ripple(s);
  for (int i = 0; i < s.n(); ++i) f[i] *= (i % 2) ? -1.0 : 1.0;
  for (double p : {1.5, 2.0, 3.0})
    for (auto [t1, t2] : std::vector<std::pair<double, double>>{{0.5, 1.0}, {1.0, 2.5}})
      for (const auto& r : check_embeddings(s, f, p, t1, t2)) CHECK(r.pass);

  GridFunction zero(s.n(), 0.0);
  for (const auto& r : check_embeddings(s, zero, 2.0, 0.5, 1.0)) {
    CHECK(r.pass);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
  }
  CHECK_THROWS_AS(check_embeddings(s, one, 2.0, 1.0, 1.0), AdmissibilityError);
  CHECK_THROWS_AS(check_embeddings(s, one, 2.0, 2.0, 1.0), AdmissibilityError);
}

TEST_CASE("pointwise potential bound") {
  Space s = gen_interval(16);
  GridFunction one(s.n(), 1.0);
  SobolevParams riesz = SobolevParams::riesz(2.0, 0.25, 0.0, 1.0);
  CheckResult r = check_hedberg(s, one, riesz);
  CHECK(r.name == "hedberg_riesz");
  CHECK(r.pass);
  CHECK(r.kappa == 4.0);
  CHECK(r.witness.substr(0, 2) == "x=");

  Space c = gen_cantor(4);
  GridFunction f = ripple(c);
  SobolevParams ball = SobolevParams::ball(2.0, 0.2, 0.3);
  CheckResult rb = check_hedberg(c, f, ball);
  CHECK(rb.name == "hedberg_ball");
  CHECK(rb.pass);

  GridFunction zero(s.n(), 0.0);
  CHECK_THROWS_AS(check_hedberg(s, zero, riesz), ZeroFunction);
}

TEST_CASE("operator norm estimation bookkeeping") {
  Space s = gen_interval(16);
  auto fam = gen_test_family(s, FamilyKind::Mixed, 9, 31);
  NormFn l2 = [&s](const GridFunction& f) { return lp_norm(s, f, 2.0); };

  OperatorFn id = [](const GridFunction& f) { return f; };
  OperatorNormEstimate e = estimate_operator_norm(id, l2, l2, fam);
  CHECK(e.sup_ratio == 1.0);
  CHECK(e.argmax == 0);
  CHECK(e.stability == 1.0);

  OperatorFn mx = [&s](const GridFunction& f) { return maximal(s, f); };
  NormFn l1 = [&s](const GridFunction& f) { return lp_norm(s, f, 1.0); };
  OperatorNormEstimate em = estimate_operator_norm(mx, l1, l1, fam);
  CHECK(em.sup_ratio >= 1.0 - 1e-12);  // the maximal function dominates |f|
  CHECK(em.stability >= 1.0);
  CHECK(em.argmax >= 0);

  GridFunction f3(fam[0].size());
  for (std::size_t i = 0; i < f3.size(); ++i) f3[i] = 3.0 * fam[0][i];
  OperatorNormEstimate one = estimate_operator_norm(mx, l1, l1, {fam[0]});
  OperatorNormEstimate scaled = estimate_operator_norm(mx, l1, l1, {f3});
  CHECK(scaled.sup_ratio == doctest::Approx(one.sup_ratio).epsilon(1e-12));
  CHECK(one.stability == 1.0);

  CHECK_THROWS_AS(estimate_operator_norm(id, l2, l2, {}), EmptyFamily);
  GridFunction zero(s.n(), 0.0);
  CHECK_THROWS_AS(estimate_operator_norm(id, l2, l2, {zero}), ZeroFunction);
}

TEST_CASE("test family generation") {
  Space s = gen_cantor(4);
  auto a = gen_test_family(s, FamilyKind::Mixed, 12, 55);
  auto b = gen_test_family(s, FamilyKind::Mixed, 12, 55);
  REQUIRE(a.size() == 12);
  CHECK(a == b);
  auto c = gen_test_family(s, FamilyKind::Mixed, 12, 56);
  CHECK(a != c);

  // mixed cycles indicator, power, sign members
  for (std::size_t i = 0; i < a.size(); i += 3) {
    bool indicator = true;
    double mass = 0.0;
    for (double v : a[i]) {
      if (v != 0.0 && v != 1.0) indicator = false;
      mass += v;
    }
    CHECK(indicator);
    CHECK(mass > 0.0);  // the center always lies in its own ball
  }
  for (std::size_t i = 2; i < a.size(); i += 3)
    for (double v : a[i]) CHECK(std::fabs(v) == 1.0);
  for (std::size_t i = 1; i < a.size(); i += 3)
    for (double v : a[i]) {
      CHECK(v > 0.0);
      CHECK(std::isfinite(v));
    }

  CHECK(parse_family_kind("mixed") == FamilyKind::Mixed);
  CHECK(parse_family_kind("indicators") == FamilyKind::Indicators);
  CHECK(parse_family_kind("powers") == FamilyKind::Powers);
  CHECK(parse_family_kind("rademacher") == FamilyKind::Rademacher);
  CHECK_THROWS_AS(parse_family_kind("nope"), InvalidSpec);
  CHECK_THROWS_AS(gen_test_family(s, FamilyKind::Mixed, 0, 1), InvalidSpec);
  FamilyShape bad;
  bad.lambda = 1.0;
  CHECK_THROWS_AS(gen_test_family(s, FamilyKind::Powers, 3, 1, bad), InvalidSpec);
}

TEST_CASE("covering constant calibration is cached") {
  double c1 = calibrate_c0();
  double c2 = calibrate_c0();
  CHECK(c1 == c2);
  CHECK(c1 > 0.8);
  CHECK(c1 < 2.0);
}

TEST_CASE("maximal-operator scenario") {
  Space s = gen_interval(16);
  auto fam = gen_test_family(s, FamilyKind::Mixed, 10, 7);
  TheoremParams tp;
  tp.p = 2.0;
  tp.theta = 1.0;
  tp.lambda = 0.3;
  Report rep = verify_theorem(s, "2.1", tp, fam);
  CHECK(rep.all_pass());
  auto scalar = [&rep](const std::string& k) {
    for (const auto& [name, v] : rep.scalars)
      if (name == k) return v;
    return std::nan("");
  };
  CHECK(scalar("b") == 3.0);
  CHECK(scalar("c0") == calibrate_c0());
  CHECK(scalar("inf_S") > 0.0);
  CHECK(scalar("sup_ratio") > 0.0);
  CHECK(scalar("sup_ratio") <= scalar("inf_S"));
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == "maximal_grand_bound") found = true;
  CHECK(found);

  CHECK_THROWS_AS(verify_theorem(s, "9.9", tp, fam), InvalidSpec);
  CHECK_THROWS_AS(verify_theorem(s, "2.1", tp, {}), EmptyFamily);
  TheoremParams bad = tp;
  bad.p = 1.0;
  CHECK_THROWS_AS(verify_theorem(s, "2.1", bad, fam), InadmissibleParams);
}

TEST_CASE("singular-kernel scenario") {
  Space s = gen_interval(16);
  KernelSpec k = hilbert_kernel(s);
  auto fam = gen_test_family(s, FamilyKind::Mixed, 6, 3);
  TheoremParams tp;
  tp.p = 1.5;
  Report rep = verify_theorem(s, "3.1", tp, fam, &k);
  CHECK(rep.all_pass());
  bool have_prefactor = false;
  for (const auto& [name, v] : rep.scalars)
    if (name == "grand_prefactor") have_prefactor = v > 0.0;
  CHECK(have_prefactor);

  TheoremParams even = tp;
  even.p = 2.0;
  CHECK_THROWS_AS(verify_theorem(s, "3.1", even, fam, &k), InadmissibleParams);
  CHECK_THROWS_AS(verify_theorem(s, "3.1", tp, fam, nullptr), InadmissibleParams);
}

TEST_CASE("potential scenarios") {
  Space s = gen_interval(16);
  auto fam = gen_test_family(s, FamilyKind::Mixed, 6, 9);
  TheoremParams tp;
  tp.p = 2.0;
  tp.alpha = 0.25;
  tp.gamma = 1.0;
  Report r4 = verify_theorem(s, "4.1", tp, fam);
  CHECK(r4.all_pass());
  auto scalar = [](const Report& rep, const std::string& k) {
    for (const auto& [name, v] : rep.scalars)
      if (name == k) return v;
    return std::nan("");
  };
  CHECK(scalar(r4, "q") == 4.0);
  CHECK(scalar(r4, "theta2") == 2.0);
  CHECK(scalar(r4, "bound_prefactor") == doctest::Approx(17.513656920021769));
  CHECK(scalar(r4, "eta_skipped") >= 0.0);
  bool flat = false, floor = false;
  for (const auto& c : r4.checks) {
    if (c.name == "phi_asymptotic_flat") flat = c.pass;
    if (c.name == "theta2_sensitivity_floor") floor = c.pass;
  }
  CHECK(flat);
  CHECK(floor);

  TheoremParams tb = tp;
  tb.alpha = 0.2;
  tb.lambda = 0.3;
  Report r5 = verify_theorem(s, "5.1", tb, fam);
  CHECK(r5.all_pass());
  CHECK(scalar(r5, "C_alpha") == doctest::Approx(20.0));  // 4/alpha
  CHECK(scalar(r5, "q") > tb.p);
}
