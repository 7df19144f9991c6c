#include "innerlab/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "innerlab/error.hpp"
#include "json.hpp"

namespace innerlab {

using nlohmann::json;

namespace {

json parse_or_throw(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::ConfigInvalid, std::string(what) + " must be a number");
  return j.get<double>();
}

std::pair<double, double> number_pair(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::ConfigInvalid, std::string(what) + " entries must be [x, y] pairs");
  }
  return {number(j[0], what), number(j[1], what)};
}

const json& array_field(const json& j, const char* key) {
  static const json empty = json::array();
  if (!j.contains(key)) return empty;
  if (!j[key].is_array()) throw Error(ErrorCode::ConfigInvalid, std::string(key) + " must be an array");
  return j[key];
}

// library preconditions on the parsed values surface as config errors
template <class F>
auto rethrow_as_config(F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PreconditionFailed) throw Error(ErrorCode::ConfigInvalid, e.what());
    throw;
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_json(const InnerFunction& f) {
  json j;
  j["zeros"] = json::array();
  for (const auto& z : f.zeros()) j["zeros"].push_back({z.real(), z.imag()});
  j["singular_atoms"] = json::array();
  for (const auto& a : f.atoms()) j["singular_atoms"].push_back({a.angle, a.mass});
  j["front_factor_angle"] = f.front_angle();
  if (f.outer()) {
    const Complex c = f.outer()->center();
    j["outer"] = {{"center", {c.real(), c.imag()}}, {"rotation", f.outer()->rotation()}};
  }
  return j.dump();
}

InnerFunction inner_function_from_json(std::string_view text) {
  const json j = parse_or_throw(text);
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "inner function must be a JSON object");
  std::vector<Complex> zeros;
  for (const auto& z : array_field(j, "zeros")) {
    const auto [re, im] = number_pair(z, "zeros");
    zeros.emplace_back(re, im);
  }
  std::vector<SingularAtom> atoms;
  for (const auto& a : array_field(j, "singular_atoms")) {
    const auto [angle, mass] = number_pair(a, "singular_atoms");
    atoms.push_back({angle, mass});
  }
  const double front = j.contains("front_factor_angle") ? number(j["front_factor_angle"], "front_factor_angle") : 0.0;
  std::optional<DiskAutomorphism> outer;
  if (j.contains("outer") && !j["outer"].is_null()) {
    const json& o = j["outer"];
    if (!o.is_object() || !o.contains("center")) throw Error(ErrorCode::ConfigInvalid, "outer needs a center");
    const auto [re, im] = number_pair(o["center"], "outer.center");
    const double rot = o.contains("rotation") ? number(o["rotation"], "outer.rotation") : 0.0;
    outer = rethrow_as_config([&] { return DiskAutomorphism(Complex(re, im), rot); });
  }
  return rethrow_as_config([&] { return InnerFunction(std::move(zeros), std::move(atoms), front, outer); });
}

std::string to_json(const IntervalSingularMeasure& nu) {
  json j;
  j["atoms"] = json::array();
  for (const auto& a : nu.atoms()) j["atoms"].push_back({a.position, a.mass});
  return j.dump();
}

IntervalSingularMeasure measure_from_json(std::string_view text) {
  const json j = parse_or_throw(text);
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "measure must be a JSON object");
  std::vector<IntervalAtom> atoms;
  for (const auto& a : array_field(j, "atoms")) {
    const auto [s, m] = number_pair(a, "atoms");
    atoms.push_back({s, m});
  }
  return rethrow_as_config([&] { return IntervalSingularMeasure(std::move(atoms)); });
}

IntervalSingularMeasure parse_measure_spec(std::string_view spec) {
  std::vector<IntervalAtom> atoms;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', pos), spec.size());
    const std::string item(spec.substr(pos, comma - pos));
    double s = 0.0, m = 0.0;
    char tail = 0;
    if (std::sscanf(item.c_str(), "%lf:%lf%c", &s, &m, &tail) != 2) {
      throw Error(ErrorCode::ConfigInvalid, "measure atoms must be written position:mass, got '" + item + "'");
    }
    atoms.push_back({s, m});
    pos = comma + 1;
  }
  return rethrow_as_config([&] { return IntervalSingularMeasure(std::move(atoms)); });
}

Verdict verdict_from_string(std::string_view s) {
  for (Verdict v : {Verdict::Complete, Verdict::NotCertified, Verdict::DegreeTooSmall}) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown verdict '" + std::string(s) + "'");
}

std::string to_json(const Certificate& c) {
  json j;
  j["verdict"] = to_string(c.verdict);
  if (c.arc_found) {
    j["arc"] = {{"start", c.arc_found->start()}, {"length", c.arc_found->length()}, {"end", c.arc_found->end()}};
  } else {
    j["arc"] = nullptr;
  }
  j["checks"] = json::array();
  for (const auto& ch : c.checks) {
    // JSON has no infinities; infinite degree margins are written as strings
    const json m = std::isinf(ch.margin) ? json(ch.margin > 0 ? "inf" : "-inf") : json(ch.margin);
    j["checks"].push_back({{"name", ch.name}, {"pass", ch.pass}, {"margin", m}});
  }
  j["lambda_prime_at_1"] = c.lambda_prime_at_1 ? json(*c.lambda_prime_at_1) : json(nullptr);
  j["flags"] = c.flags;
  j["alternative_verdict"] = c.alternative_verdict ? json(to_string(*c.alternative_verdict)) : json(nullptr);
  j["note"] = c.note;
  return j.dump(2);
}

Certificate certificate_from_json(std::string_view text) {
  const json j = parse_or_throw(text);
  try {
    Certificate c;
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    if (!j.at("arc").is_null()) c.arc_found = Arc(j["arc"].at("start").get<double>(), j["arc"].at("length").get<double>());
    for (const auto& ch : j.at("checks")) {
      const json& mj = ch.at("margin");
      double m = std::numeric_limits<double>::quiet_NaN();
      if (mj.is_number()) m = mj.get<double>();
      else if (mj == "inf") m = std::numeric_limits<double>::infinity();
      else if (mj == "-inf") m = -std::numeric_limits<double>::infinity();
      c.checks.push_back({ch.at("name").get<std::string>(), ch.at("pass").get<bool>(), m});
    }
    if (!j.at("lambda_prime_at_1").is_null()) c.lambda_prime_at_1 = j["lambda_prime_at_1"].get<double>();
    c.flags = j.at("flags").get<std::vector<std::string>>();
    if (!j.at("alternative_verdict").is_null()) {
      c.alternative_verdict = verdict_from_string(j["alternative_verdict"].get<std::string>());
    }
    c.note = j.at("note").get<std::string>();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace innerlab
