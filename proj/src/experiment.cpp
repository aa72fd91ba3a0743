#include "grandmorrey/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "grandmorrey/analysis.hpp"
#include "grandmorrey/errors.hpp"
#include "grandmorrey/norms.hpp"
#include "grandmorrey/operators.hpp"
#include "grandmorrey/version.hpp"

namespace grandmorrey {

namespace {

void put_finite(Report& rep, const std::string& name, double v) {
  if (std::isfinite(v)) rep.put(name, v);
}

GridFunction load_function(const Space& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open function file: " + path);
  GridFunction f(s.n());
  for (auto& v : f)
    if (!(in >> v)) throw IoError("function file: truncated values");
  return f;
}

std::vector<GridFunction> build_family(const Config& cfg, const Space& s,
                                       const FamilyShape& shape) {
  FamilyKind kind = parse_family_kind(cfg.get("family.kind", "mixed"));
  int m = static_cast<int>(cfg.get_int("family.m", 50));
  // randomized source, so the seed must be spelled out
  std::uint64_t seed = cfg.get_seed("family.seed");
  return gen_test_family(s, kind, m, seed, shape);
}

GridFunction build_function(const Config& cfg, const Space& s, const FamilyShape& shape) {
  std::string kind = cfg.get("function.kind", "const");
  if (kind == "const") {
    double v = cfg.get_num("function.value", 1.0);
    return GridFunction(s.n(), v);
  }
  if (kind == "file") return load_function(s, cfg.get("function.path"));
  if (kind == "family") {
    auto fam = build_family(cfg, s, shape);
    long idx = cfg.get_int("function.index", 0);
    if (idx < 0 || idx >= static_cast<long>(fam.size()))
      throw ConfigParseError("function.index out of range");
    return fam[idx];
  }
  throw ConfigParseError("unknown function.kind: " + kind);
}

KernelSpec build_kernel(const Config& cfg, const Space& s) {
  std::string kind = cfg.get("kernel.kind", "hilbert");
  KernelSpec ks;
  if (kind == "hilbert") {
    ks = hilbert_kernel(s);
  } else if (kind == "file") {
    std::string path = cfg.get("kernel.path");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open kernel file: " + path);
    ks = load_kernel(s, in);
  } else {
    throw ConfigParseError("unknown kernel.kind: " + kind);
  }
  ks.omega = Omega::power(cfg.get_num("kernel.omega", 1.0));
  double ct = cfg.get_num("kernel.c_triple", 0.0);
  if (ct != 0.0) ks.c_triple = ct;
  return ks;
}

Denominator parse_mode(const std::string& name) {
  if (name == "measure") return Denominator::Measure;
  if (name == "radius") return Denominator::Radius;
  throw ConfigParseError("unknown mode: " + name);
}

void task_regularity(const Config& cfg, const Space& s, Report& rep) {
  double gamma = cfg.get_num("gamma", 1.0);
  double alpha_bar = cfg.get_num("alpha_bar", 0.5);
  int samples = static_cast<int>(cfg.get_int("annuli_samples", 200));
  RegularityReport rr = regularity_report(s, gamma, alpha_bar, samples, 1);
  rep.put("a0", rr.a0);
  rep.put("a1", rr.a1);
  rep.put("a_bar", rr.a_bar);
  rep.put("r_min", rr.r_min);
  rep.put("diam", rr.diam);
  rep.put("total_measure", rr.total_measure);
  rep.put("b_doubling", rr.b_doubling);
  rep.put("gamma", rr.gamma);
  rep.put("b_upper", rr.b_upper);
  rep.put("c_lower", rr.c_lower);
  rep.put("alpha_bar", rr.alpha_bar);
  put_finite(rep, "beta", rr.beta);
  rep.put("annuli_fraction", rr.annuli_fraction);
  double worst = std::max({rr.a0, rr.a1, rr.b_doubling, rr.b_upper});
  rep.checks.push_back(make_check("constants_finite", worst, 1e300, 1.0));
}

void task_norms(const Config& cfg, const Space& s, Report& rep) {
  double p = cfg.get_num("p", 2.0);
  double theta = cfg.get_num("theta", 1.0);
  double lambda = cfg.get_num("lambda", 0.0);
  double gamma = cfg.get_num("gamma", 1.0);
  int K = static_cast<int>(cfg.get_int("eps_grid", 64));
  MorreyParams mp{lambda, parse_mode(cfg.get("mode", "measure")), gamma};
  GridFunction f = build_function(cfg, s, FamilyShape{p, gamma, lambda});
  GrandParams gp = GrandParams::power(p, theta, mp, K);
  GrandNorm gn = grand_morrey_norm(s, f, gp);
  rep.put("lp_norm", lp_norm(s, f, p));
  rep.put("morrey_norm", morrey_norm(s, f, p, mp));
  rep.put("grand_norm", gn.value);
  rep.put("grand_eps_star", gn.eps_star);
  rep.checks.push_back(make_check("norm_finite", gn.value, 1e300, 1.0));
}

void task_apply(const Config& cfg, const Space& s, Report& rep) {
  std::string opname = cfg.get("operator");
  double gamma = cfg.get_num("gamma", 1.0);
  GridFunction f = build_function(cfg, s, FamilyShape{cfg.get_num("p", 2.0), gamma,
                                                      cfg.get_num("lambda", 0.0)});
  GridFunction out;
  if (opname == "maximal") {
    out = maximal(s, f);
  } else if (opname == "fractional") {
    out = fractional_maximal(s, f, gamma);
  } else if (opname == "potential_I") {
    out = potential_I(s, f, cfg.get_num("alpha"), gamma);
  } else if (opname == "potential_T") {
    out = potential_T(s, f, cfg.get_num("alpha"));
  } else if (opname == "cz") {
    KernelSpec ks = build_kernel(cfg, s);
    out = cz_apply(s, f, ks, cfg.get_num("delta", 0.0)).values;
    KernelCheck kc = kernel_check(s, ks);
    rep.put("c_size", kc.c_size);
    rep.put("c_smooth", kc.c_smooth);
    rep.put("dini_value", kc.dini_value);
    rep.put("omega_doubling", kc.omega_doubling);
    rep.put("gate_count", static_cast<double>(kc.gate_count));
  } else {
    throw ConfigParseError("unknown operator: " + opname);
  }
  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::fabs(v));
  rep.put("in_l2", lp_norm(s, f, 2.0));
  rep.put("out_l2", lp_norm(s, out, 2.0));
  rep.put("out_max", peak);
  rep.checks.push_back(make_check("output_finite", peak, 1e300, 1.0));
}

void task_verify(const Config& cfg, const Space& s, Report& rep) {
  std::string id = cfg.get("theorem_id");
  if (id != "2.1" && id != "3.1" && id != "4.1" && id != "5.1")
    throw ConfigParseError("unknown theorem_id: " + id);

  TheoremParams tp;
  tp.p = cfg.get_num("p", 2.0);
  tp.theta = cfg.get_num("theta", 1.0);
  tp.lambda = cfg.get_num("lambda", 0.0);
  tp.kappa = cfg.get_num("kappa", 1.0);
  tp.eps_K = static_cast<int>(cfg.get_int("eps_grid", 64));
  if (id == "4.1" || id == "5.1") tp.alpha = cfg.get_num("alpha");
  if (id == "4.1") tp.gamma = cfg.get_num("gamma", 1.0);
  tp.c0 = cfg.get_num("c0", tp.c0);
  tp.C_alpha = cfg.get_num("C_alpha", tp.C_alpha);
  tp.theta2_alt = cfg.get_num("theta2_alt", tp.theta2_alt);
  tp.delta = cfg.get_num("delta", 0.0);

  FamilyShape shape{tp.p, tp.gamma, tp.lambda};
  std::vector<GridFunction> family = build_family(cfg, s, shape);

  Report inner;
  if (id == "3.1") {
    KernelSpec ks = build_kernel(cfg, s);
    inner = verify_theorem(s, id, tp, family, &ks);
  } else {
    inner = verify_theorem(s, id, tp, family);
  }
  rep.scalars = std::move(inner.scalars);
  rep.checks = std::move(inner.checks);
}

}  // namespace

Space build_space(const Config& cfg) {
  std::string kind = cfg.get("space.kind");
  Space s = [&] {
    if (kind == "interval") return gen_interval(static_cast<int>(cfg.get_int("space.n")));
    if (kind == "cube")
      return gen_cube(static_cast<int>(cfg.get_int("space.n")),
                      static_cast<int>(cfg.get_int("space.dim", 2)));
    if (kind == "cantor") return gen_cantor(static_cast<int>(cfg.get_int("space.k")));
    if (kind == "random")
      return gen_random(static_cast<int>(cfg.get_int("space.n")), cfg.get_seed("space.seed"));
    if (kind == "file") return load_space_file(cfg.get("space.path"));
    throw ConfigParseError("unknown space.kind: " + kind);
  }();
  if (cfg.has("space.snowflake")) s = snowflake(s, cfg.get_num("space.snowflake"));
  return s;
}

RunResult run_experiment(const Config& cfg) {
  auto start = std::chrono::steady_clock::now();

  RunResult rr;
  rr.format = parse_format(cfg.get("output.format", "json"));
  rr.out_path = cfg.get("output.path", "");

  Report& rep = rr.report;
  rep.version = kVersion;
  for (const auto& kv : cfg.items()) rep.put_config(kv.first, kv.second);

  std::string task = cfg.get("task");
  Space s = build_space(cfg);
  if (task == "regularity")
    task_regularity(cfg, s, rep);
  else if (task == "norms")
    task_norms(cfg, s, rep);
  else if (task == "apply")
    task_apply(cfg, s, rep);
  else if (task == "verify")
    task_verify(cfg, s, rep);
  else
    throw ConfigParseError("unknown task: " + task);

  std::vector<std::string> stray = cfg.unused();
  if (!stray.empty()) throw ConfigParseError("unknown config key: " + stray.front());

  rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return rr;
}

}  // namespace grandmorrey
