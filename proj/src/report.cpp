#include "grandmorrey/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

#include "grandmorrey/errors.hpp"

namespace grandmorrey {

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CheckResult make_check(std::string name, double lhs, double rhs, double kappa,
                       std::string witness) {
  CheckResult c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.kappa = kappa;
  c.pass = lhs <= kappa * rhs + 1e-12;
  if (rhs > 0.0)
    c.kappa_needed = lhs / rhs;
  else
    c.kappa_needed = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  c.witness = std::move(witness);
  return c;
}

void Report::put(const std::string& name, double value) {
  for (auto& kv : scalars)
    if (kv.first == name) {
      kv.second = value;
      return;
    }
  scalars.emplace_back(name, value);
}

void Report::put_config(const std::string& key, const std::string& value) {
  for (auto& kv : config)
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  config.emplace_back(key, value);
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw UnsupportedFormat("unsupported report format: " + name);
}

std::string emit_report(const Report& r, Format fmt) {
  if (fmt == Format::Csv) {
    std::string out = "name,lhs,rhs,kappa,pass\n";
    for (const auto& c : r.checks) {
      out += c.name;
      out += ',';
      out += num17(c.lhs);
      out += ',';
      out += num17(c.rhs);
      out += ',';
      out += num17(c.kappa);
      out += ',';
      out += c.pass ? '1' : '0';
      out += '\n';
    }
    return out;
  }

  nlohmann::ordered_json j;
  j["version"] = r.version;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& kv : r.config) cfg[kv.first] = kv.second;
  j["config"] = cfg;
  nlohmann::ordered_json sc = nlohmann::ordered_json::object();
  for (const auto& kv : r.scalars) sc[kv.first] = kv.second;
  j["scalars"] = sc;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    e["kappa"] = c.kappa;
    e["kappa_needed"] = c.kappa_needed;
    e["pass"] = c.pass;
    e["witness"] = c.witness;
    arr.push_back(e);
  }
  j["checks"] = arr;
  j["all_pass"] = r.all_pass();
  j["wall_time_ms"] = r.wall_time_ms;
  return j.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("report parse: ") + e.what());
  }
  Report r;
  try {
    r.version = j.at("version").get<std::string>();
    for (const auto& kv : j.at("config").items())
      r.config.emplace_back(kv.key(), kv.value().get<std::string>());
    for (const auto& kv : j.at("scalars").items())
      r.scalars.emplace_back(kv.key(), kv.value().get<double>());
    for (const auto& e : j.at("checks")) {
      CheckResult c;
      c.name = e.at("name").get<std::string>();
      c.lhs = e.at("lhs").get<double>();
      c.rhs = e.at("rhs").get<double>();
      c.kappa = e.at("kappa").get<double>();
      c.kappa_needed = e.at("kappa_needed").get<double>();
      c.pass = e.at("pass").get<bool>();
      c.witness = e.at("witness").get<std::string>();
      r.checks.push_back(std::move(c));
    }
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("report parse: ") + e.what());
  }
  return r;
}

}  // namespace grandmorrey
