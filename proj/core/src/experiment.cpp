#include "innerlab/experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "innerlab/boundary_maps.hpp"
#include "innerlab/certify.hpp"
#include "innerlab/clark.hpp"
#include "innerlab/counting.hpp"
#include "innerlab/error.hpp"
#include "innerlab/fixtures.hpp"
#include "innerlab/serialization.hpp"
#include "innerlab/transfer.hpp"
#include "json.hpp"

namespace innerlab {

using nlohmann::json;

namespace {

const std::vector<std::string>& known_subcommands() {
  static const std::vector<std::string> s{"certify", "clark",    "counting", "transfer-iterate",
                                          "cesaro",  "dynamics", "hup",      "fixtures"};
  return s;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// name(arg, arg, ...) -> name and raw args; false when the text is not a call
bool split_call(const std::string& text, std::string& name, std::vector<std::string>& args) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') return false;
  name = trim(text.substr(0, open));
  if (name.empty()) return false;
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  args.clear();
  const std::string inner = text.substr(open + 1, text.size() - open - 2);
  if (trim(inner).empty()) return true;
  std::size_t pos = 0;
  while (pos <= inner.size()) {
    const std::size_t comma = std::min(inner.find(',', pos), inner.size());
    args.push_back(trim(inner.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return true;
}

void expect_args(const std::string& name, const std::vector<std::string>& args, std::size_t n) {
  if (args.size() != n) {
    throw Error(ErrorCode::ConfigInvalid, name + " takes " + std::to_string(n) + " argument(s)");
  }
}

int parse_int(const std::string& s) {
  const double v = parse_real(s);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw Error(ErrorCode::ConfigInvalid, "expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& s) {
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || errno != 0 || s[0] == '-') {
    throw Error(ErrorCode::ConfigInvalid, "expected an unsigned integer, got '" + s + "'");
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <class F>
auto config_errors(F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PreconditionFailed) throw Error(ErrorCode::ConfigInvalid, e.what());
    throw;
  }
}

json arcset_json(const ArcSet& s) {
  json a = json::array();
  for (const auto& iv : s.intervals()) a.push_back({iv.lo, iv.hi});
  return a;
}

double bump(double t, double c, double w) {
  const double x = (t - c) / w;
  return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
}

std::vector<double> config_alphas(const ExperimentConfig& c) {
  if (!c.alphas.empty()) return c.alphas;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::vector<double> a(c.samples);
  for (auto& x : a) x = u(rng);
  return a;
}

std::vector<Complex> config_points(const ExperimentConfig& c) {
  if (!c.points.empty()) return c.points;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> ang(-kPi, kPi), rad(0.0, 1.0);
  std::vector<Complex> p(c.samples);
  for (auto& z : p) z = std::polar(0.9 * std::sqrt(rad(rng)), ang(rng));
  return p;
}

RunResult run_certify(const ExperimentConfig& c) {
  const auto theta = resolve_inner_function(c.theta);
  const auto phi = resolve_inner_function(c.phi);
  const Certificate cert = certify_pair(theta, phi, c.grid);
  RunResult r;
  r.exit_code = cert.verdict == Verdict::Complete       ? kExitOk
                : cert.verdict == Verdict::NotCertified ? kExitNotCertified
                                                        : kExitDegreeTooSmall;
  r.summary = to_json(cert);
  r.artifacts.push_back({"certificate.json", r.summary + "\n"});
  return r;
}

RunResult run_clark(const ExperimentConfig& c) {
  const auto f = resolve_inner_function(c.function);
  const auto alphas = config_alphas(c);
  RunResult r;
  r.artifacts.push_back({"clark.csv", clark_csv(f, alphas, c.tail_tol)});
  r.summary = json{{"subcommand", "clark"}, {"alphas", alphas.size()}, {"artifact", "clark.csv"}}.dump(2);
  return r;
}

RunResult run_counting(const ExperimentConfig& c) {
  const auto f = resolve_inner_function(c.function);
  const auto pts = config_points(c);
  RunResult r;
  r.artifacts.push_back({"counting.csv", counting_csv(f, pts)});
  r.summary = json{{"subcommand", "counting"}, {"points", pts.size()}, {"artifact", "counting.csv"}}.dump(2);
  return r;
}

RunResult run_transfer_iterate(const ExperimentConfig& c) {
  const auto theta = resolve_inner_function(c.theta);
  const auto phi = resolve_inner_function(c.phi);
  const auto u = ulam_matrix(theta, phi, c.grid, 64, c.endpoint_exclusion, c.workers);
  const auto d = invariant_density(u, 5000, 1e-10);
  RunResult r;
  r.artifacts.push_back({"density.csv", d.to_csv()});
  r.summary = json{{"subcommand", "transfer-iterate"},
                   {"grid", c.grid},
                   {"residual", d.residual},
                   {"growth", d.growth},
                   {"leak_per_iterate", d.leak_per_iterate},
                   {"iterations", d.iterations},
                   {"artifact", "density.csv"}}
                  .dump(2);
  return r;
}

RunResult run_cesaro(const ExperimentConfig& c) {
  const auto theta = resolve_inner_function(c.theta);
  const auto phi = resolve_inner_function(c.phi);
  const double cen = c.test_center, w = c.test_width;
  const auto a = cesaro_sequence(theta, phi, [&](double t) { return bump(t, cen, w); }, c.iterations, c.grid);
  RunResult r;
  r.artifacts.push_back({"cesaro.csv", cesaro_csv(a)});
  r.summary = json{{"subcommand", "cesaro"},
                   {"first", a.front()},
                   {"last", a.back()},
                   {"ratio", a.front() != 0.0 ? a.back() / a.front() : 0.0},
                   {"artifact", "cesaro.csv"}}
                  .dump(2);
  return r;
}

RunResult run_dynamics(const ExperimentConfig& c) {
  const auto theta = resolve_inner_function(c.theta);
  const auto phi = resolve_inner_function(c.phi);
  if (atoms_on_split_points(theta, phi)) {
    throw Error(ErrorCode::SingularityTooClose, "a singular atom sits at +1 or -1; use a normalized pair");
  }
  double t = c.start_angle;
  if (t < 0.0) {
    std::mt19937_64 rng(c.seed);
    t = std::uniform_real_distribution<double>(0.0, kPi)(rng);
  }
  std::ostringstream orbit;
  orbit << "step,angle\n" << "0," << format_double(t) << "\n";
  std::string stop;
  std::size_t steps = 0;
  for (; steps < c.iterations; ++steps) {
    try {
      t = dynamics_step(theta, phi, t);
    } catch (const Error& e) {
      stop = e.what();
      break;
    }
    orbit << steps + 1 << "," << format_double(t) << "\n";
  }
  // Lambda(T+) deficit, as arcs and as measure
  const ArcSet lam = lambda_set(theta, phi, ArcSet::from_arc(Arc::upper_half()), c.lambda_exclusion);
  ArcSet deficit;
  {
    double prev = 0.0;
    for (const auto& iv : lam.intervals()) {
      if (iv.lo > prev) deficit.add_range(prev, std::min(iv.lo, kPi));
      prev = std::max(prev, iv.hi);
    }
    if (prev < kPi) deficit.add_range(prev, kPi);
  }
  json lj{{"lambda_upper_half", arcset_json(lam)},
          {"lambda_measure", lam.measure()},
          {"deficit_arcs", arcset_json(deficit)},
          {"deficit_measure", deficit.measure()},
          {"exclusion", c.lambda_exclusion}};
  RunResult r;
  r.artifacts.push_back({"orbit.csv", orbit.str()});
  r.artifacts.push_back({"lambda.json", lj.dump(2) + "\n"});
  json s{{"subcommand", "dynamics"}, {"steps", steps}, {"deficit_measure", deficit.measure()}};
  if (!stop.empty()) s["stopped"] = stop;
  r.summary = s.dump(2);
  return r;
}

RunResult run_hup(const ExperimentConfig& c) {
  const auto nu = resolve_measure(c.measure);
  const auto crit = hup_criterion(nu);
  json s{{"criterion", crit.value},
         {"verdict", std::string(to_string(crit.verdict))},
         {"endpoint_gap", endpoint_gap(nu)},
         {"looks_absolutely_continuous", nu.looks_absolutely_continuous()}};
  if (crit.verdict == HupVerdict::FailsAndNecessaryIfEven) s["y_star"] = necessity_scan(nu);
  RunResult r;
  r.summary = s.dump(2);
  r.artifacts.push_back({"hup.json", r.summary + "\n"});
  if (c.moment_max > 0) {
    const auto curve = sample_curve(nu, c.moment_window, c.grid * 64);
    const double cen = c.test_center, w = c.test_width;
    auto f = [&](double t) { return std::exp(-0.5 * (t - cen) * (t - cen) / (w * w)); };
    std::ostringstream os;
    os << "m,n,abs_moment\n";
    for (int m = 0; m <= c.moment_max; ++m) {
      for (int n = 0; n <= c.moment_max; ++n) {
        os << m << "," << n << "," << format_double(std::abs(fourier_moment(curve, f, m, n).value)) << "\n";
      }
    }
    r.artifacts.push_back({"moments.csv", os.str()});
  }
  return r;
}

RunResult run_fixtures(const ExperimentConfig& c) {
  RunResult r;
  r.artifacts = fixture_artifacts(c.fixture);
  json names = json::array();
  for (const auto& a : r.artifacts) names.push_back(a.name);
  r.summary = json{{"fixture", c.fixture}, {"artifacts", names}}.dump(2);
  return r;
}

}  // namespace

double parse_real(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw Error(ErrorCode::ConfigInvalid, "empty number");
  double value = 1.0;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t star = std::min(s.find('*', pos), s.size());
    std::string tok = trim(std::string_view(s).substr(pos, star - pos));
    double factor = 1.0;
    // trailing pi or pi^k
    const auto p = tok.find("pi");
    if (p != std::string::npos) {
      int power = 1;
      const std::string after = tok.substr(p + 2);
      if (!after.empty()) {
        if (after.size() != 2 || after[0] != '^' || !std::isdigit(static_cast<unsigned char>(after[1]))) {
          throw Error(ErrorCode::ConfigInvalid, "cannot parse number '" + s + "'");
        }
        power = after[1] - '0';
      }
      factor = std::pow(kPi, power);
      tok = trim(tok.substr(0, p));
    }
    if (!tok.empty()) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (*end != '\0') throw Error(ErrorCode::ConfigInvalid, "cannot parse number '" + s + "'");
      factor *= v;
    } else if (p == std::string::npos) {
      throw Error(ErrorCode::ConfigInvalid, "cannot parse number '" + s + "'");
    }
    value *= factor;
    pos = star + 1;
  }
  if (!std::isfinite(value)) throw Error(ErrorCode::ConfigInvalid, "number is not finite: '" + s + "'");
  return value;
}

InnerFunction resolve_inner_function(const std::string& raw) {
  const std::string spec = trim(raw);
  if (spec.empty()) throw Error(ErrorCode::ConfigInvalid, "missing inner function");
  if (spec.front() == '{') return inner_function_from_json(spec);
  std::string name;
  std::vector<std::string> args;
  if (!split_call(spec, name, args)) return inner_function_from_json(read_file(spec));
  return config_errors([&]() -> InnerFunction {
    if (name == "hmr_phi1") return expect_args(name, args, 1), fixtures::hmr_phi1(parse_real(args[0]));
    if (name == "hmr_phi2") return expect_args(name, args, 1), fixtures::hmr_phi2(parse_real(args[0]));
    if (name == "normalized_hmr_theta" || name == "normalized_hmr_phi") {
      expect_args(name, args, 2);
      const auto p = fixtures::normalized_hmr_pair(parse_real(args[0]), parse_real(args[1]));
      return name == "normalized_hmr_theta" ? p.theta : p.phi;
    }
    if (name == "blaschke_random") {
      if (args.size() != 2 && args.size() != 3) throw Error(ErrorCode::ConfigInvalid, "blaschke_random takes 2 or 3 arguments");
      const double r = args.size() == 3 ? parse_real(args[2]) : 0.9;
      return fixtures::blaschke_random(parse_int(args[0]), parse_u64(args[1]), r);
    }
    if (name == "monomial") return expect_args(name, args, 1), InnerFunction::monomial(parse_int(args[0]));
    if (name == "single_atom") {
      expect_args(name, args, 2);
      return InnerFunction::single_atom(parse_real(args[0]), parse_real(args[1]));
    }
    if (name == "balanced_cubic") return expect_args(name, args, 0), fixtures::balanced_cubic();
    if (name == "univalent_quartic") return expect_args(name, args, 0), fixtures::univalent_quartic();
    throw Error(ErrorCode::UnknownFixture, "unknown inner function '" + name + "'");
  });
}

IntervalSingularMeasure resolve_measure(const std::string& raw) {
  const std::string spec = trim(raw);
  if (spec.empty()) throw Error(ErrorCode::ConfigInvalid, "missing measure");
  if (spec.front() == '{') return measure_from_json(spec);
  std::string name;
  std::vector<std::string> args;
  if (split_call(spec, name, args)) {
    if (name != "cantor") throw Error(ErrorCode::UnknownFixture, "unknown measure '" + name + "'");
    expect_args(name, args, 2);
    return fixtures::cantor(parse_int(args[0]), parse_real(args[1]));
  }
  if (spec.find(':') != std::string::npos) return parse_measure_spec(spec);
  return measure_from_json(read_file(spec));
}

std::vector<Artifact> fixture_artifacts(const std::string& raw) {
  const std::string spec = trim(raw);
  std::string name;
  std::vector<std::string> args;
  if (!split_call(spec, name, args)) throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + spec + "'");
  return config_errors([&]() -> std::vector<Artifact> {
    if (name == "hmr") {
      expect_args(name, args, 2);
      const auto p = fixtures::hmr_pair(parse_real(args[0]), parse_real(args[1]));
      return {{"hmr_theta.json", to_json(p.theta) + "\n"}, {"hmr_phi.json", to_json(p.phi) + "\n"}};
    }
    if (name == "blaschke_random") {
      expect_args(name, args, 2);
      return {{"blaschke_random.json",
               to_json(fixtures::blaschke_random(parse_int(args[0]), parse_u64(args[1]))) + "\n"}};
    }
    if (name == "cantor") {
      expect_args(name, args, 2);
      return {{"cantor.json", to_json(fixtures::cantor(parse_int(args[0]), parse_real(args[1]))) + "\n"}};
    }
    throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + name + "'");
  });
}

void ExperimentConfig::validate() const {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::ConfigInvalid, m); };
  if (subcommand.empty()) bad("no subcommand given");
  bool known = false;
  for (const auto& s : known_subcommands()) known |= s == subcommand;
  if (!known) bad("unknown subcommand '" + subcommand + "'");
  for (double tol : {tail_tol, quadrature_tol, endpoint_exclusion, lambda_exclusion, test_width}) {
    if (!(tol > 0.0) || !std::isfinite(tol)) bad("tolerances must be positive");
  }
  if (grid < 4) bad("grid must be at least 4");
  if (samples == 0 || iterations == 0) bad("samples and iterations must be positive");
  if (moment_max < 0 || !(moment_window > 0.0)) bad("moment settings must be nonnegative");
  const bool pair = subcommand == "certify" || subcommand == "transfer-iterate" || subcommand == "cesaro" ||
                    subcommand == "dynamics";
  if (pair && (theta.empty() || phi.empty())) bad(subcommand + " needs theta and phi");
  if ((subcommand == "clark" || subcommand == "counting") && function.empty()) bad(subcommand + " needs function");
  if (subcommand == "hup" && measure.empty()) bad("hup needs measure");
  if (subcommand == "fixtures" && fixture.empty()) bad("fixtures needs a fixture name");
}

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("malformed config: ") + e.what());
  }
  if (!j.is_object() || j.empty()) throw Error(ErrorCode::ConfigInvalid, "config must be a non-empty object");
  ExperimentConfig c;
  auto str = [&](const json& v, const std::string& k) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object() && (k == "theta" || k == "phi" || k == "function" || k == "measure")) return v.dump();
    throw Error(ErrorCode::ConfigInvalid, k + " must be a string");
  };
  auto real = [&](const json& v, const std::string& k) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_real(v.get<std::string>());
    throw Error(ErrorCode::ConfigInvalid, k + " must be a number");
  };
  auto count = [&](const json& v, const std::string& k) -> std::uint64_t {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
    if (v.is_string()) return parse_u64(v.get<std::string>());
    throw Error(ErrorCode::ConfigInvalid, k + " must be a nonnegative integer");
  };
  for (const auto& [k, v] : j.items()) {
    if (k == "subcommand") c.subcommand = str(v, k);
    else if (k == "theta") c.theta = str(v, k);
    else if (k == "phi") c.phi = str(v, k);
    else if (k == "function") c.function = str(v, k);
    else if (k == "measure") c.measure = str(v, k);
    else if (k == "fixture") c.fixture = str(v, k);
    else if (k == "grid" || k == "grid_size") c.grid = count(v, k);
    else if (k == "tail_tol") c.tail_tol = real(v, k);
    else if (k == "quadrature_tol") c.quadrature_tol = real(v, k);
    else if (k == "endpoint_exclusion") c.endpoint_exclusion = real(v, k);
    else if (k == "lambda_exclusion") c.lambda_exclusion = real(v, k);
    else if (k == "out_dir") c.out_dir = str(v, k);
    else if (k == "seed") c.seed = count(v, k);
    else if (k == "workers") c.workers = static_cast<unsigned>(count(v, k));
    else if (k == "samples") c.samples = count(v, k);
    else if (k == "iterations") c.iterations = count(v, k);
    else if (k == "start_angle") c.start_angle = real(v, k);
    else if (k == "test_center") c.test_center = real(v, k);
    else if (k == "test_width") c.test_width = real(v, k);
    else if (k == "moment_max") c.moment_max = static_cast<int>(count(v, k));
    else if (k == "moment_window") c.moment_window = real(v, k);
    else if (k == "alphas") {
      if (!v.is_array()) throw Error(ErrorCode::ConfigInvalid, "alphas must be an array");
      for (const auto& a : v) c.alphas.push_back(real(a, k));
    } else if (k == "points") {
      if (!v.is_array()) throw Error(ErrorCode::ConfigInvalid, "points must be an array");
      for (const auto& p : v) {
        if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::ConfigInvalid, "points are [re, im] pairs");
        c.points.emplace_back(real(p[0], k), real(p[1], k));
      }
    } else {
      throw Error(ErrorCode::ConfigInvalid, "unknown config key '" + k + "'");
    }
  }
  return c;
}

RunResult run(const ExperimentConfig& config) {
  auto failure = [](int code, const Error& e) {
    RunResult r;
    r.exit_code = code;
    r.summary = json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2);
    r.artifacts.push_back({"diagnostic.json", r.summary + "\n"});
    return r;
  };
  try {
    config.validate();
    const std::string& s = config.subcommand;
    if (s == "certify") return run_certify(config);
    if (s == "clark") return run_clark(config);
    if (s == "counting") return run_counting(config);
    if (s == "transfer-iterate") return run_transfer_iterate(config);
    if (s == "cesaro") return run_cesaro(config);
    if (s == "dynamics") return run_dynamics(config);
    if (s == "hup") return run_hup(config);
    return run_fixtures(config);
  } catch (const Error& e) {
    const bool cfg = e.code() == ErrorCode::ConfigInvalid || e.code() == ErrorCode::UnknownFixture;
    return failure(cfg ? kExitConfigInvalid : kExitNumericalFailure, e);
  }
}

RunResult run_and_write(const ExperimentConfig& config) {
  RunResult r = run(config);
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  for (const auto& a : r.artifacts) {
    const auto path = std::filesystem::path(config.out_dir) / a.name;
    std::ofstream out(path, std::ios::binary);
    out << a.content;
    if (!out) throw Error(ErrorCode::ConfigInvalid, "cannot write '" + path.string() + "'");
  }
  return r;
}

}  // namespace innerlab
