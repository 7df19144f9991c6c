// innerlab command line: one subcommand per experiment, summary JSON on
// stdout, artifacts in --out.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "innerlab/error.hpp"
#include "innerlab/experiment.hpp"
#include "json.hpp"

namespace {

int log_level() {
  const char* v = std::getenv("INNERLAB_LOG");
  if (!v) return 0;
  const std::string s(v);
  if (s == "debug" || s == "2") return 2;
  if (s == "info" || s == "1") return 1;
  return 0;
}

void log(int level, const std::string& msg) {
  if (log_level() >= level) std::cerr << "innerlab: " << msg << "\n";
}

struct Overrides {
  std::string config_path, out_dir, theta, phi, function, measure, fixture;
  unsigned workers = 0;
  std::uint64_t seed = 0;
  std::size_t grid = 0, iterations = 0, samples = 0;
  double tail_tol = 0.0, start_angle = 0.0;
  int moment_max = 0;
  std::vector<double> alphas;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace innerlab;
  CLI::App app{"innerlab: inner functions, Clark measures, transfer operators and completeness certificates"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Overrides o;
  auto* opt_config = app.add_option("--config", o.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  auto* opt_out = app.add_option("--out", o.out_dir, "output directory for artifacts");
  auto* opt_workers = app.add_option("--workers", o.workers, "worker threads (0 = all cores)");
  auto* opt_seed = app.add_option("--seed", o.seed, "RNG seed for random samples");
  auto* opt_grid = app.add_option("--grid", o.grid, "grid size");
  auto* opt_tail = app.add_option("--tail-tol", o.tail_tol, "Clark tail tolerance");

  struct Sub {
    CLI::App* app;
    CLI::Option* theta = nullptr;
    CLI::Option* phi = nullptr;
    CLI::Option* function = nullptr;
    CLI::Option* iterations = nullptr;
  };
  std::vector<Sub> subs;
  auto pair_sub = [&](const char* name, const char* help) {
    Sub s{app.add_subcommand(name, help)};
    s.theta = s.app->add_option("--theta", o.theta, "inner function spec, fixture call or JSON file");
    s.phi = s.app->add_option("--phi", o.phi, "inner function spec, fixture call or JSON file");
    subs.push_back(s);
    return s;
  };
  pair_sub("certify", "completeness certificate for a pair (theta, phi)");
  auto clark = Sub{app.add_subcommand("clark", "Clark measures of one inner function")};
  clark.function = clark.app->add_option("--function", o.function, "inner function spec");
  auto* opt_alpha = clark.app->add_option("--alpha", o.alphas, "alpha angles (random when omitted)");
  auto* opt_samples_c = clark.app->add_option("--samples", o.samples, "number of random alphas");
  subs.push_back(clark);
  auto counting = Sub{app.add_subcommand("counting", "Nevanlinna counting function and Littlewood gap")};
  counting.function = counting.app->add_option("--function", o.function, "inner function spec");
  auto* opt_samples_n = counting.app->add_option("--samples", o.samples, "number of random interior points");
  subs.push_back(counting);
  pair_sub("transfer-iterate", "Ulam matrix and invariant density of the circle dynamics");
  auto ces = pair_sub("cesaro", "Cesaro averages of the transfer operator");
  ces.iterations = ces.app->add_option("--iterations", o.iterations, "largest N");
  subs.back() = ces;
  auto dyn = pair_sub("dynamics", "orbit of the circle dynamics and the Lambda(T+) deficit");
  dyn.iterations = dyn.app->add_option("--iterations", o.iterations, "orbit length");
  auto* opt_start = dyn.app->add_option("--start", o.start_angle, "start angle in (0, pi)");
  subs.back() = dyn;
  auto hup = Sub{app.add_subcommand("hup", "Heisenberg uniqueness criterion for an atomic measure")};
  auto* opt_measure = hup.app->add_option("--measure", o.measure, "\"s:m,...\", cantor(depth, mass) or JSON file");
  auto* opt_moments = hup.app->add_option("--moments", o.moment_max, "emit |mu-hat(m, n)| for m, n <= K");
  subs.push_back(hup);
  auto fix = Sub{app.add_subcommand("fixtures", "write fixture JSON files")};
  auto* opt_fixture = fix.app->add_option("name", o.fixture, "hmr(l1, l2), blaschke_random(d, seed), cantor(depth, mass)");
  subs.push_back(fix);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigInvalid;
  }

  ExperimentConfig cfg;
  try {
    if (*opt_config) {
      std::ifstream in(o.config_path, std::ios::binary);
      std::ostringstream text;
      text << in.rdbuf();
      cfg = parse_config(text.str());
    }
  } catch (const Error& e) {
    std::cout << nlohmann::json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2) << "\n";
    return kExitConfigInvalid;
  }
  if (!app.get_subcommands().empty()) cfg.subcommand = app.get_subcommands().front()->get_name();
  if (*opt_out) cfg.out_dir = o.out_dir;
  if (*opt_workers) cfg.workers = o.workers;
  if (*opt_seed) cfg.seed = o.seed;
  if (*opt_grid) cfg.grid = o.grid;
  if (*opt_tail) cfg.tail_tol = o.tail_tol;
  for (const auto& s : subs) {
    if (s.theta && *s.theta) cfg.theta = o.theta;
    if (s.phi && *s.phi) cfg.phi = o.phi;
    if (s.function && *s.function) cfg.function = o.function;
    if (s.iterations && *s.iterations) cfg.iterations = o.iterations;
  }
  if (*opt_alpha) cfg.alphas = o.alphas;
  if (*opt_samples_c || *opt_samples_n) cfg.samples = o.samples;
  if (*opt_start) cfg.start_angle = o.start_angle;
  if (*opt_measure) cfg.measure = o.measure;
  if (*opt_moments) cfg.moment_max = o.moment_max;
  if (*opt_fixture) cfg.fixture = o.fixture;

  log(1, "running " + (cfg.subcommand.empty() ? std::string("<none>") : cfg.subcommand));
  RunResult r;
  try {
    r = run_and_write(cfg);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigInvalid;
  }
  for (const auto& a : r.artifacts) log(1, "wrote " + cfg.out_dir + "/" + a.name);
  log(2, "exit code " + std::to_string(r.exit_code));
  std::cout << r.summary << "\n";
  return r.exit_code;
}
