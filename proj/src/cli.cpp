#include "qcf/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "qcf/errors.hpp"

namespace qcf {

namespace {

void add_common(CLI::App* sub, RunConfig& cfg, bool with_trials = true) {
  sub->add_option_function<std::string>(
         "--mode", [&cfg](const std::string& m) { cfg.mode = m == "sample" ? RunMode::Sampled : RunMode::Exact; },
         "exact (branch enumeration) or sample (Monte Carlo)")
      ->check(CLI::IsMember({"exact", "sample"}));
  if (with_trials) sub->add_option("--trials", cfg.trials, "histories to sample in sample mode")->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "random seed (default: $QCF_SEED, else entropy)");
  auto* json = sub->add_flag_callback("--json", [&cfg] { cfg.format = Format::Json; }, "emit JSON");
  auto* csv = sub->add_flag_callback("--csv", [&cfg] { cfg.format = Format::Csv; }, "emit CSV");
  auto* text = sub->add_flag_callback("--text", [&cfg] { cfg.format = Format::Text; }, "emit a text table (default)");
  json->excludes(csv)->excludes(text);
  csv->excludes(text);
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("QCF_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw UsageError("QCF_SEED is not an unsigned integer: '" + std::string(text) + "'");
    }
    return value;
  }
  return entropy_seed();
}

std::string execute(const RunConfig& cfg) {
  const std::uint64_t seed = resolve_seed(cfg);
  RunOptions options{cfg.mode, seed, cfg.trials, cfg.restart_cap};
  if (cfg.subcommand == "mz") return emit_report(run_mach_zehnder(cfg.detector, options), cfg.format);
  if (cfg.subcommand == "basic") return emit_report(run_basic(ComputerModel{cfg.r, cfg.duration}, options), cfg.format);
  if (cfg.subcommand == "zeno") {
    const ZenoConfig zeno = cfg.stages ? ZenoConfig::with_stages(*cfg.stages) : ZenoConfig::for_epsilon(*cfg.epsilon);
    return emit_report(run_zeno(ComputerModel{cfg.r, cfg.duration}, zeno, options), cfg.format);
  }
  if (cfg.subcommand == "qft-verify") {
    return emit_report(run_qft_verify(cfg.qft_n, static_cast<int>(cfg.trials), seed), cfg.format);
  }
  if (cfg.subcommand == "bench") {
    BenchConfig bench;
    bench.n_max = cfg.n_max;
    bench.k_max = cfg.k_max;
    bench.reps = cfg.reps;
    bench.seed = seed;
    bench.timing = cfg.timing;
    return emit_report(bench_local_vs_dense(bench), cfg.format);
  }
  throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Counterfactual computation and state-vector simulation experiments", "qcf"};
  app.require_subcommand(1);

  auto* mz = app.add_subcommand("mz", "Mach-Zehnder interferometer");
  mz->add_flag("--detector", cfg.detector, "place the detector in the lower arm");
  add_common(mz, cfg);

  auto* basic = app.add_subcommand("basic", "basic counterfactual computation");
  basic->add_option("--r", cfg.r, "result of the decision problem")->required()->check(CLI::Range(0, 1));
  basic->add_option("--T", cfg.duration, "nominal computation time (metadata)")->check(CLI::NonNegativeNumber);
  add_common(basic, cfg);

  auto* zeno = app.add_subcommand("zeno", "Zeno-improved counterfactual computation");
  zeno->add_option("--r", cfg.r, "result of the decision problem")->required()->check(CLI::Range(0, 1));
  auto* stages = zeno->add_option("--N", cfg.stages, "number of stages")->check(CLI::Range(1, 100000));
  auto* eps = zeno->add_option("--epsilon", cfg.epsilon, "target failure probability in (0,1)")
                  ->check(CLI::Range(0.0, 1.0))
                  ->check([](const std::string& s) {
                    const double v = std::stod(s);
                    return v > 0.0 && v < 1.0 ? std::string() : std::string("epsilon must lie strictly in (0,1)");
                  });
  stages->excludes(eps);
  zeno->add_option("--T", cfg.duration, "nominal computation time (metadata)")->check(CLI::NonNegativeNumber);
  zeno->add_option("--restart-cap", cfg.restart_cap, "max restarts per trial in sample mode");
  add_common(zeno, cfg);

  auto* qft = app.add_subcommand("qft-verify", "check the QFT circuit against a classical FFT");
  qft->add_option("--n", cfg.qft_n, "qubit count")->required()->check(CLI::Range(1, kDenseLimit));
  add_common(qft, cfg);

  auto* bench = app.add_subcommand("bench", "local kernel versus dense matrix multiplication counts");
  bench->add_option("--n-max", cfg.n_max, "largest qubit count")->check(CLI::Range(1, kMaxQubits));
  bench->add_option("--k-max", cfg.k_max, "largest gate arity")->check(CLI::Range(1, 12));
  bench->add_option("--reps", cfg.reps, "repetitions per row (>= 3)")->check(CLI::Range(3, 1000000));
  bench->add_flag_callback("--no-timing", [&cfg] { cfg.timing = false; }, "report wall_nanos as 0");
  add_common(bench, cfg, false);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  // qft-verify defaults to 20 trials rather than the protocol default.
  bool trials_given = false;
  for (const auto& a : args) trials_given = trials_given || a == "--trials" || a.starts_with("--trials=");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qcf: " << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front()) {
      err << "run '" << sub->get_name() << " --help' for usage\n";
    }
    return kExitUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.subcommand == "zeno" && !cfg.stages && !cfg.epsilon) {
    err << "qcf: zeno needs exactly one of --N or --epsilon\n";
    return kExitUsage;
  }
  if (cfg.subcommand == "qft-verify" && !trials_given) cfg.trials = 20;

  try {
    out << execute(cfg);
  } catch (const UsageError& e) {
    err << "qcf: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigurationError& e) {
    err << "qcf: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qcf: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace qcf
