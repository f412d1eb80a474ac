#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hippo/approx.hpp"
#include "hippo/bench.hpp"
#include "hippo/checks.hpp"
#include "hippo/discretize.hpp"
#include "hippo/errors.hpp"
#include "hippo/operators.hpp"
#include "hippo/serialize.hpp"

namespace hippo::cli {

namespace {

using json = nlohmann::json;

constexpr long kMinBenchSteps = 10000;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FamilyOpts {
  std::string name;
  double theta = 1.0;
  std::string scaling = "orthonormal";
  double lagt_alpha = 0.0;
  double beta = 1.0;
  std::vector<int> freqs;

  Family make() const {
    Family f;
    if (name == "legt")
      f = LegT{theta, scaling == "lmu" ? LegtScaling::lmu : LegtScaling::orthonormal};
    else if (name == "lagt")
      f = LagT{lagt_alpha, beta};
    else if (name == "legs")
      f = LegS{};
    else if (name == "fourt")
      f = FourT{theta};
    else if (name == "fru")
      f = Fru{theta, freqs.empty() ? std::vector<int>{0} : freqs};
    else
      f = ChebT{theta};
    validate(f);
    return f;
  }
};

const std::vector<std::string> kFamilies = {"legt", "lagt", "legs", "fourt", "fru", "chebt"};

void add_family_opts(CLI::App* app, FamilyOpts& o, const std::string& lagt_alpha_flag) {
  app->add_option("--family", o.name, "measure family")->required()->check(CLI::IsMember(kFamilies));
  app->add_option("--theta", o.theta, "window length (legt, fourt, fru, chebt)");
  app->add_option("--scaling", o.scaling, "legt basis scaling")->check(CLI::IsMember({"orthonormal", "lmu"}));
  app->add_option(lagt_alpha_flag, o.lagt_alpha, "lagt alpha in (-1, 1)");
  app->add_option("--beta", o.beta, "lagt beta > 0");
  app->add_option("--freqs", o.freqs, "fru frequency list")->delimiter(',');
}

struct StreamOpts {
  FamilyOpts family;
  int N = 0;
  std::string scheme = "gbt";
  double alpha = 0.5;
  std::optional<double> dt;
  bool timestamped = false;
  bool indexed = false;
  std::string input;
};

void add_stream_opts(CLI::App* app, StreamOpts& o) {
  add_family_opts(app, o.family, "--lagt-alpha");
  app->add_option("--n", o.N, "state dimension (ignored by fru)")->required()->check(CLI::PositiveNumber);
  app->add_option("--scheme", o.scheme, "discretization")->check(CLI::IsMember({"gbt", "zoh"}));
  app->add_option("--alpha", o.alpha, "gbt weight: 0 forward Euler, 1 backward Euler, 0.5 bilinear")
      ->check(CLI::Range(0.0, 1.0));
  auto* dt = app->add_option("--dt", o.dt, "fixed step size")->check(CLI::PositiveNumber);
  auto* ts = app->add_flag("--timestamped", o.timestamped, "take steps from a t column");
  auto* ix = app->add_flag("--indexed", o.indexed, "legs index-based steps");
  dt->excludes(ts)->excludes(ix);
  ts->excludes(ix);
  app->add_option("--input", o.input, "signal CSV (value or t,value)")->required();
}

Signal load_signal(const StreamOpts& o, std::ostream& err) {
  std::ifstream in(o.input);
  if (!in) throw UsageError("cannot open input file " + o.input);
  const SignalTable table = read_signal_csv(in);
  if (o.timestamped) {
    if (!table.has_time) throw SemanticError("--timestamped needs a t,value input");
    return Signal::timestamped(table.t, table.value);
  }
  if (table.has_time) err << "warning: ignoring the t column; steps come from "
                          << (o.indexed ? "--indexed" : "--dt") << '\n';
  return Signal::uniform(o.dt.value_or(1.0), table.value);
}

SchemeSpec make_scheme(const StreamOpts& o) {
  SchemeSpec s;
  s.method = o.scheme == "zoh" ? Method::zoh : Method::gbt;
  s.alpha = o.alpha;
  if (o.timestamped) {
    s.policy = StepPolicy::timestamped;
  } else if (o.indexed) {
    s.policy = StepPolicy::index_based;
  } else {
    if (!o.dt) throw UsageError("one of --dt, --timestamped, --indexed is required");
    s.policy = StepPolicy::fixed;
    s.dt = *o.dt;
  }
  if (o.family.name == "fru" && s.method == Method::gbt) s.alpha = 0.0;
  return s;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HIPPO_SEED")) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("HIPPO_SEED must be a nonnegative integer");
  }
  return 0;
}

// Writes to the path, or to `out` when the path is empty or "-".
void with_output(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot open output file " + path);
  fn(f);
}

// ---- commands ----

int cmd_gen_matrices(const FamilyOpts& fo, int N, std::ostream& out) {
  const Family fam = fo.make();
  const int dim = std::holds_alternative<Fru>(fam) ? static_cast<int>(std::get<Fru>(fam).freqs.size()) : N;
  out << generator_json(build(fam, dim)).dump(2) << '\n';
  return ok;
}

int cmd_compress(const StreamOpts& o, const std::string& output, const std::string& record,
                 const std::string& score_path, std::ostream& out, std::ostream& err) {
  const Family fam = o.family.make();
  const SchemeSpec scheme = make_scheme(o);
  const Signal signal = load_signal(o, err);
  const Record rec = record == "all" ? Record::all : Record::final_only;
  double seconds = 0.0;
  std::visit(
      [&](const auto& gen) {
        const auto start = std::chrono::steady_clock::now();
        const auto states = run_stream(gen, scheme, signal, rec);
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        with_output(output, out, [&](std::ostream& os) { write_trajectory_csv(os, states); });
      },
      build(fam, o.N));
  const double sps = seconds > 0.0 ? static_cast<double>(signal.size()) / seconds : 0.0;
  err << "steps/second: " << sps << '\n';
  if (!score_path.empty()) {
    const Score sc = compress_and_score(fam, scheme, signal, o.N);
    const json j = {{"family", describe(fam)},
                    {"scheme", scheme_name(scheme)},
                    {"N", sc.final_c.size()},
                    {"length", signal.size()},
                    {"mse", sc.mse},
                    {"wall_seconds", sc.wall_seconds},
                    {"steps_per_second", sc.steps_per_second}};
    with_output(score_path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }
  return ok;
}

// Linear interpolation of the signal (placed on the stream grid) at x.
double interpolate(const std::vector<double>& grid, const std::vector<double>& v, double x) {
  if (x <= grid.front()) return v.front();
  if (x >= grid.back()) return v.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - grid.begin());
  const double w = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
  return (1.0 - w) * v[i - 1] + w * v[i];
}

int cmd_reconstruct(const StreamOpts& o, const std::string& grid_path, const std::string& output, std::ostream& out,
                    std::ostream& err) {
  const Family fam = o.family.make();
  const SchemeSpec scheme = make_scheme(o);
  const Signal signal = load_signal(o, err);
  const Score sc = compress_and_score(fam, scheme, signal, o.N);
  std::vector<double> xs = sc.grid, truth = sc.truth;
  Eigen::VectorXd approx = sc.recon.values;
  std::size_t flagged = sc.recon.outside_count();
  if (!grid_path.empty()) {
    std::ifstream in(grid_path);
    if (!in) throw UsageError("cannot open grid file " + grid_path);
    xs = read_signal_csv(in).value;
    truth.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) truth[i] = interpolate(sc.grid, sc.truth, xs[i]);
    const Reconstruction r = reconstruct(fam, sc.final_c, sc.t, xs);
    approx = r.values;
    flagged = r.outside_count();
  }
  with_output(output, out, [&](std::ostream& os) { write_reconstruction_csv(os, xs, truth, approx); });
  err << "mse: " << sc.mse << '\n';
  if (flagged) err << "warning: " << flagged << " query points lie outside the measure support (reported as 0)\n";
  return ok;
}

using CheckFn = std::function<CheckReport(std::uint64_t)>;

const std::map<std::string, CheckFn>& check_table() {
  static const std::map<std::string, CheckFn> table = {
      {"equivariance",
       [](std::uint64_t) { return check_equivariance_refinement(sine_mix, 100.0, 4096, 2, 16); }},
      {"gradient-norm", [](std::uint64_t) { return check_gradient_norm(32, 50, {100, 300, 1000, 3000, 10000}); }},
      {"discretization", [](std::uint64_t) { return compare_discretizations(gen_sine_mix(1000, 100.0), 64); }},
      {"discretization-noise",
       [](std::uint64_t seed) {
         CheckReport r = compare_discretizations(gen_whitenoise(100000, 1e-4, 1.0, seed), 128);
         r.name = "discretization_noise";
         return r;
       }},
      {"error-decay-lipschitz",
       [](std::uint64_t) {
         return check_error_decay("error_decay_lipschitz", [](double x) { return std::abs(std::sin(x)); }, 50.0,
                                  {8, 16, 32}, 4, 1.6, 3.0);
       }},
      {"error-decay-smooth",
       [](std::uint64_t) {
         return check_error_decay("error_decay_smooth", sine_mix, 100.0, {4, 8, 16}, 2, 2.0,
                                  std::numeric_limits<double>::infinity());
       }},
      {"window", [](std::uint64_t) { return check_window_sensitivity(1000, 100.0, 0.1, 64, 5.0); }},
  };
  return table;
}

const std::vector<std::string> kDefaultChecks = {"equivariance", "gradient-norm", "discretization",
                                                 "discretization-noise"};

int cmd_validate(bool all, std::vector<std::string> names, int jobs, std::uint64_t seed, std::ostream& out) {
  if (all) names = kDefaultChecks;
  if (names.empty()) throw UsageError("validate needs --all or at least one --check");
  std::vector<CheckReport> reports(names.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < names.size(); ++i) reports[i] = check_table().at(names[i])(seed);
  } else {
    for (std::size_t start = 0; start < names.size(); start += static_cast<std::size_t>(jobs)) {
      std::vector<std::future<CheckReport>> fut;
      const std::size_t stop = std::min(names.size(), start + static_cast<std::size_t>(jobs));
      for (std::size_t i = start; i < stop; ++i)
        fut.push_back(std::async(std::launch::async, check_table().at(names[i]), seed));
      for (std::size_t i = start; i < stop; ++i) reports[i] = fut[i - start].get();
    }
  }
  bool pass = true;
  json arr = json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass;
    arr.push_back(report_json(r));
  }
  out << json{{"seed", seed}, {"pass", pass}, {"reports", arr}}.dump(2) << '\n';
  return pass ? ok : checks_failed;
}

int cmd_bench(const std::vector<int>& Ns, long steps, const std::string& impl, int jobs, std::uint64_t seed,
              std::ostream& out) {
  if (steps < kMinBenchSteps)
    throw UsageError("--steps must be at least " + std::to_string(kMinBenchSteps) + " for stable timing");
  std::vector<std::pair<int, StepImpl>> configs;
  for (int N : Ns) {
    if (N < 1) throw UsageError("--n entries must be positive");
    if (impl != "dense") configs.emplace_back(N, StepImpl::fast);
    if (impl != "fast") configs.emplace_back(N, StepImpl::dense);
  }
  std::vector<BenchResult> results(configs.size());
  // Each configuration itself is timed on one thread; --jobs only overlaps configurations.
  if (jobs <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i)
      results[i] = bench_legs_step(configs[i].first, steps, configs[i].second, seed);
  } else {
    std::vector<std::future<BenchResult>> fut;
    for (const auto& [N, im] : configs) fut.push_back(std::async(std::launch::async, bench_legs_step, N, steps, im, seed));
    for (std::size_t i = 0; i < fut.size(); ++i) results[i] = fut[i].get();
  }
  json arr = json::array();
  std::map<int, std::map<StepImpl, double>> sps;
  for (const auto& r : results) {
    arr.push_back({{"N", r.N},
                   {"impl", std::string(impl_name(r.impl))},
                   {"steps", r.steps},
                   {"seconds", r.seconds},
                   {"steps_per_second", r.steps_per_second}});
    sps[r.N][r.impl] = r.steps_per_second;
  }
  json speedup = json::object();
  for (const auto& [N, m] : sps)
    if (m.count(StepImpl::fast) && m.count(StepImpl::dense) && m.at(StepImpl::dense) > 0.0)
      speedup[std::to_string(N)] = m.at(StepImpl::fast) / m.at(StepImpl::dense);
  out << json{{"seed", seed}, {"threads_per_config", 1}, {"results", arr}, {"speedup", speedup}}.dump(2) << '\n';
  return ok;
}

int cmd_gen_signal(const std::string& kind, std::size_t length, double dt, double band, double rms, double x_max,
                   std::uint64_t seed, const std::string& output, std::ostream& out, std::ostream& err) {
  const Signal s = kind == "whitenoise" ? gen_whitenoise(length, dt, band, seed, rms) : gen_sine_mix(length, x_max);
  with_output(output, out, [&](std::ostream& os) {
    os << "# seed=" << seed << " dt=" << std::setprecision(17) << s.dt() << '\n';
    write_signal_csv(os, s);
  });
  err << "seed: " << seed << ", dt: " << s.dt() << '\n';
  return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"HiPPO online function approximation"};
  app.name("hippo");
  app.require_subcommand(1);

  FamilyOpts gm_family;
  int gm_n = 1;
  auto* gm = app.add_subcommand("gen-matrices", "print the (F, G) generator as JSON");
  add_family_opts(gm, gm_family, "--alpha");
  gm->add_option("--n", gm_n, "state dimension")->required()->check(CLI::PositiveNumber);

  StreamOpts cp_opts;
  std::string cp_output, cp_record = "final", cp_score;
  auto* cp = app.add_subcommand("compress", "stream a signal into coefficients");
  add_stream_opts(cp, cp_opts);
  cp->add_option("--output", cp_output, "coefficient CSV (default stdout)");
  cp->add_option("--record", cp_record, "final state or every state")->check(CLI::IsMember({"final", "all"}));
  cp->add_option("--score", cp_score, "also write a reconstruction score JSON here");

  StreamOpts rc_opts;
  std::string rc_grid, rc_output;
  auto* rc = app.add_subcommand("reconstruct", "stream a signal and reconstruct it from the final state");
  add_stream_opts(rc, rc_opts);
  rc->add_option("--grid", rc_grid, "CSV of query points (default: the signal's own grid)");
  rc->add_option("--output", rc_output, "reconstruction CSV (default stdout)");

  bool va_all = false;
  std::vector<std::string> va_checks;
  int va_jobs = 1;
  std::optional<std::uint64_t> va_seed;
  auto* va = app.add_subcommand("validate", "run property checks, JSON report");
  std::vector<std::string> check_names;
  for (const auto& [k, v] : check_table()) check_names.push_back(k);
  auto* va_all_opt = va->add_flag("--all", va_all, "run the core checks");
  va->add_option("--check", va_checks, "check to run (repeatable)")->check(CLI::IsMember(check_names))->excludes(va_all_opt);
  va->add_option("--jobs", va_jobs, "checks to run concurrently")->check(CLI::PositiveNumber);
  va->add_option("--seed", va_seed, "random seed");

  std::vector<int> be_n = {256, 4096};
  long be_steps = 100000;
  std::string be_impl = "both";
  int be_jobs = 1;
  std::optional<std::uint64_t> be_seed;
  auto* be = app.add_subcommand("bench", "time the LegS step, JSON report");
  be->add_option("--n", be_n, "dimensions")->delimiter(',');
  be->add_option("--steps", be_steps, "timed steps per configuration");
  be->add_option("--impl", be_impl, "implementation")->check(CLI::IsMember({"fast", "dense", "both"}));
  be->add_option("--jobs", be_jobs, "configurations to time concurrently")->check(CLI::PositiveNumber);
  be->add_option("--seed", be_seed, "random seed");

  std::string gs_kind = "sinemix", gs_output;
  std::size_t gs_length = 1000;
  double gs_dt = 1e-4, gs_band = 1.0, gs_rms = 1.0, gs_xmax = 100.0;
  std::optional<std::uint64_t> gs_seed;
  auto* gs = app.add_subcommand("gen-signal", "write a test signal CSV");
  gs->add_option("--kind", gs_kind, "signal kind")->check(CLI::IsMember({"whitenoise", "sinemix"}));
  gs->add_option("--length", gs_length, "number of samples")->check(CLI::PositiveNumber);
  gs->add_option("--dt", gs_dt, "white noise sample spacing")->check(CLI::PositiveNumber);
  gs->add_option("--band", gs_band, "white noise band limit in Hz")->check(CLI::PositiveNumber);
  gs->add_option("--rms", gs_rms, "white noise standard deviation")->check(CLI::PositiveNumber);
  gs->add_option("--x-max", gs_xmax, "sine mixture range [0, x-max]")->check(CLI::PositiveNumber);
  gs->add_option("--seed", gs_seed, "random seed");
  gs->add_option("--output", gs_output, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*gm) return cmd_gen_matrices(gm_family, gm_n, out);
    if (*cp) return cmd_compress(cp_opts, cp_output, cp_record, cp_score, out, err);
    if (*rc) return cmd_reconstruct(rc_opts, rc_grid, rc_output, out, err);
    if (*va) return cmd_validate(va_all, va_checks, va_jobs, resolve_seed(va_seed), out);
    if (*be) return cmd_bench(be_n, be_steps, be_impl, be_jobs, resolve_seed(be_seed), out);
    if (*gs)
      return cmd_gen_signal(gs_kind, gs_length, gs_dt, gs_band, gs_rms, gs_xmax, resolve_seed(gs_seed), gs_output, out,
                            err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return parse_error;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << '\n';
    return semantic_error;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return numerical_error;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return semantic_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace hippo::cli
