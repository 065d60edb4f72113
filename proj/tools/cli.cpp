#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "htaac/baselines.hpp"
#include "htaac/cnf.hpp"
#include "htaac/error.hpp"
#include "htaac/serialize.hpp"
#include "htaac/sos.hpp"
#include "htaac/train.hpp"

namespace htaac::cli {

namespace {

using nlohmann::json;

// Config files are either JSON objects or key=value lines. Nested JSON
// objects become dotted sections, arrays become repeated inputs. Keys
// outside any section belong to the subcommand being run.
class JsonOrKeyValueConfig : public CLI::ConfigBase {
 public:
  explicit JsonOrKeyValueConfig(std::string section) : section_(std::move(section)) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    std::vector<CLI::ConfigItem> items;
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream again(text);
      items = CLI::ConfigBase::from_config(again);
    } else {
      json j;
      try {
        j = json::parse(text);
      } catch (const json::parse_error& e) {
        throw CLI::ConversionError("config", e.what());
      }
      flatten(j, {}, items);
    }
    for (auto& item : items)
      if (!section_.empty() && (item.parents.empty() || item.parents.front() != section_))
        item.parents.insert(item.parents.begin(), section_);
    return items;
  }

 private:
  std::string section_;

  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }

  static void flatten(const json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        flatten(value, next, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array())
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      else
        item.inputs.push_back(scalar(value));
      items.push_back(std::move(item));
    }
  }
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file " + path);
  f << text;
  if (!f) throw IoError("failed writing " + path);
}

CnfInstance load(const std::string& path) {
  try {
    return read_dimacs_file(path);
  } catch (const std::ios_base::failure& e) {
    throw IoError(e.what());
  }
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  int vars = 20;
  int clauses = 80;
  int k = 3;
  std::uint64_t seed = 0;
  std::string out;
};

void setup_generate(CLI::App& app, GenerateArgs& a) {
  auto* sub = app.add_subcommand("generate", "Random k-SAT instance in DIMACS form");
  sub->add_option("--vars", a.vars, "Number of variables")->check(CLI::PositiveNumber);
  sub->add_option("--clauses", a.clauses, "Number of clauses")->check(CLI::NonNegativeNumber);
  sub->add_option("--k", a.k, "Literals per clause")->check(CLI::PositiveNumber);
  sub->add_option("--seed", a.seed, "Generator seed");
  sub->add_option("--out", a.out, "Output path (default stdout)");
}

void run_generate(const GenerateArgs& a, std::ostream& out) {
  emit(a.out, to_dimacs(generate_random(a.vars, a.clauses, a.k, a.seed)), out);
}

// ---- shared training flags ---------------------------------------------------

struct TrainArgs {
  TrainConfig cfg;
  double beta = 0.0;  // 0 means alpha
  std::string mode = "exact";
  std::string penalty = "squared";
  std::string gradient = "shift";
  bool no_population = false;

  TrainConfig resolve() const {
    TrainConfig c = cfg;
    if (beta > 0.0) c.beta = beta;
    c.mode = mode == "hadamard" ? EstimatorMode::TaylorUnitary : EstimatorMode::Exact;
    c.penalty = penalty == "signed" ? PenaltyForm::SignedSum : PenaltyForm::Squared;
    c.gradient = gradient == "fd" ? GradientMethod::FiniteDifference : GradientMethod::ParameterShift;
    c.population_balance = !no_population;
    return c;
  }
};

void add_train_flags(CLI::App* sub, TrainArgs& a, bool with_lambda) {
  if (with_lambda) sub->add_option("--lambda", a.cfg.lambda, "Constraint weight")->check(CLI::NonNegativeNumber);
  sub->add_option("--epochs", a.cfg.epochs, "Training epochs")->check(CLI::PositiveNumber);
  sub->add_option("--alpha", a.cfg.alpha, "Hadamard-test angle")->check(CLI::PositiveNumber);
  sub->add_option("--beta", a.beta, "Population-balance scale (default alpha)")->check(CLI::PositiveNumber);
  sub->add_option("--layers", a.cfg.layers, "Ansatz layers (0 means 2n)")->check(CLI::NonNegativeNumber);
  sub->add_option("--lr", a.cfg.learning_rate, "Adam learning rate")->check(CLI::PositiveNumber);
  sub->add_option("--seed", a.cfg.seed, "Initial-angle seed");
  sub->add_option("--mode", a.mode, "Estimator")->check(CLI::IsMember({"exact", "hadamard"}));
  sub->add_option("--penalty", a.penalty, "Pauli-string penalty")->check(CLI::IsMember({"squared", "signed"}));
  sub->add_option("--gradient", a.gradient, "Gradient rule")->check(CLI::IsMember({"shift", "fd"}));
  sub->add_option("--fd-step", a.cfg.fd_step, "Finite-difference step")->check(CLI::PositiveNumber);
  sub->add_option("--taylor-order", a.cfg.taylor_order, "Taylor terms for exp(i alpha W)");
  sub->add_flag("--no-population-balance", a.no_population, "Drop the population-balance term");
}

json config_json(const TrainConfig& c) {
  return {{"lambda", c.lambda},
          {"alpha", c.alpha},
          {"beta", c.effective_beta()},
          {"layers", c.layers},
          {"epochs", c.epochs},
          {"learning_rate", c.learning_rate},
          {"mode", c.mode == EstimatorMode::Exact ? "exact" : "hadamard"},
          {"penalty", c.penalty == PenaltyForm::Squared ? "squared" : "signed"},
          {"gradient", c.gradient == GradientMethod::ParameterShift ? "shift" : "fd"},
          {"fd_step", c.fd_step},
          {"taylor_order", c.taylor_order},
          {"population_balance", c.population_balance},
          {"seed", c.seed}};
}

// ---- baselines ----------------------------------------------------------------

struct SosArgs {
  int samples = 1000;
  std::uint64_t seed = 0;
  double tol = SdpOptions{}.tol;
  int max_iter = SdpOptions{}.max_iter;
  int max_num_y = SosOptions{}.max_num_y;
  std::string basis = "splits";
  bool allow_unconverged = false;

  SosOptions options() const {
    SosOptions o;
    o.max_num_y = max_num_y;
    o.basis = basis == "consecutive" ? BasisChoice::Consecutive
              : basis == "full"      ? BasisChoice::Full
                                     : BasisChoice::AllSplits;
    return o;
  }
  SdpOptions sdp() const {
    SdpOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    o.throw_on_failure = !allow_unconverged;
    return o;
  }
};

void add_sos_flags(CLI::App* sub, SosArgs& a, const std::string& prefix) {
  sub->add_option("--" + prefix + "samples", a.samples, "Null-space rounding draws")->check(CLI::PositiveNumber);
  sub->add_option("--" + prefix + "tol", a.tol, "SDP residual tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--" + prefix + "max-iter", a.max_iter, "SDP iteration limit")->check(CLI::PositiveNumber);
  sub->add_option("--" + prefix + "max-n", a.max_num_y, "Largest spin count N accepted");
  sub->add_option("--" + prefix + "basis", a.basis, "Degree-2 basis entries")
      ->check(CLI::IsMember({"consecutive", "splits", "full"}));
  sub->add_flag("--" + prefix + "allow-unconverged", a.allow_unconverged,
                "Report the certified bound even if the tolerance is not met");
}

struct LocalArgs {
  LocalSearchConfig cfg;
};

void add_local_flags(CLI::App* sub, LocalArgs& a, const std::string& prefix) {
  sub->add_option("--" + prefix + "restarts", a.cfg.restarts, "WalkSAT restarts")->check(CLI::PositiveNumber);
  sub->add_option("--" + prefix + "flips", a.cfg.flips, "Flips per restart (0: 50 v sqrt(c))")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--" + prefix + "noise", a.cfg.noise, "Random-walk probability")->check(CLI::Range(0.0, 1.0));
}

struct SosRun {
  SdpSolution sol;
  SosResult round;
};

SosRun run_sos_baseline(const CnfInstance& inst, const SosArgs& a, std::uint64_t seed) {
  const SosRelaxation relax = build_relaxation(build_objective(inst), a.options());
  SosRun r;
  r.sol = solve_sdp(relax, a.sdp());
  r.round = sos_round(relax, r.sol, a.samples, seed);
  return r;
}

// Baseline value of an instance; the name picks the solver.
double baseline_value(const CnfInstance& inst, const std::string& name, const SosArgs& sos,
                      const LocalArgs& local, std::uint64_t seed) {
  if (name == "brute") return brute_force(inst).optimum;
  if (name == "local-search") {
    LocalSearchConfig c = local.cfg;
    c.seed = seed;
    return local_search(inst, c).best;
  }
  return run_sos_baseline(inst, sos, seed).round.rounded_value;
}

// ---- solve ------------------------------------------------------------------------

struct SolveArgs {
  std::string cnf;
  TrainArgs train;
  std::string baseline = "none";
  SosArgs sos;
  LocalArgs local;
  std::string out;
  std::string trajectory;
};

void setup_solve(CLI::App& app, SolveArgs& a) {
  auto* sub = app.add_subcommand("solve", "Train the variational solver on one instance");
  sub->add_option("--cnf", a.cnf, "DIMACS instance")->required();
  add_train_flags(sub, a.train, true);
  sub->add_option("--baseline", a.baseline, "Reference solver for the observed-performance ratio")
      ->check(CLI::IsMember({"none", "brute", "local-search", "sos"}));
  add_sos_flags(sub, a.sos, "sos-");
  add_local_flags(sub, a.local, "ls-");
  sub->add_option("--out", a.out, "Report JSON path (default stdout)");
  sub->add_option("--trajectory", a.trajectory, "Per-epoch CSV path");
}

void run_solve(const SolveArgs& a, std::ostream& out) {
  const CnfInstance inst = load(a.cnf);
  const TrainConfig cfg = a.train.resolve();
  const PolynomialObjective obj = build_objective(inst);
  const TrainResult result = train(obj, cfg);

  json report;
  report["instance"] = {{"path", a.cnf}, {"vars", inst.num_vars()}, {"clauses", inst.num_clauses()}};
  report["config"] = config_json(cfg);
  report["train"] = to_json(result);
  if (a.baseline == "none") {
    report["solution"] = {{"see_value", result.best_see},
                          {"fst_value", result.best_fst},
                          {"fst_assignment", to_json(result.best_assignment)}};
  } else {
    const double base = baseline_value(inst, a.baseline, a.sos, a.local, cfg.seed);
    report["solution"] =
        to_json(make_report(inst, result.best_see, result.best_assignment, a.baseline, base));
  }
  if (!a.trajectory.empty()) emit(a.trajectory, trajectory_csv(result), out);
  emit(a.out, dump(report), out);
}

// ---- bench --------------------------------------------------------------------------

struct BenchArgs {
  int vars = 20;
  std::vector<std::string> clauses{"80"};
  int instances = 5;
  int k = 3;
  std::uint64_t instance_seed = 0;
  std::vector<std::string> lambdas{"0.1", "0.3", "1", "3", "10"};
  int seeds = 1;
  std::string baseline = "brute";
  TrainArgs train;
  SosArgs sos;
  LocalArgs local;
  unsigned jobs = 1;
  std::string out;
};

void setup_bench(CLI::App& app, BenchArgs& a) {
  auto* sub = app.add_subcommand("bench", "Observed-performance sweep over instances and lambda");
  sub->add_option("--vars", a.vars, "Variables per instance")->check(CLI::PositiveNumber);
  sub->add_option("--clauses", a.clauses, "Clause counts to sweep")->expected(0, -1);
  sub->add_option("--instances", a.instances, "Instances per clause count")->check(CLI::PositiveNumber);
  sub->add_option("--k", a.k, "Literals per clause")->check(CLI::PositiveNumber);
  sub->add_option("--instance-seed", a.instance_seed, "Base seed for instance generation");
  sub->add_option("--lambda", a.lambdas, "Constraint-weight grid")->expected(0, -1);
  sub->add_option("--seeds", a.seeds, "Training seeds per (instance, lambda)")->check(CLI::PositiveNumber);
  sub->add_option("--baseline", a.baseline, "Reference solver")
      ->check(CLI::IsMember({"brute", "local-search", "sos"}));
  add_train_flags(sub, a.train, false);
  add_sos_flags(sub, a.sos, "sos-");
  add_local_flags(sub, a.local, "ls-");
  sub->add_option("--jobs", a.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", a.out, "CSV path (default stdout)");
}

// Instance seed for (clause count, index); independent of the sweep order.
std::uint64_t instance_seed(std::uint64_t base, int clauses, int index) {
  return base + 1000003ULL * static_cast<std::uint64_t>(clauses) + static_cast<std::uint64_t>(index);
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Stats {
  double mean = 0.0;
  double best = 0.0;
};

Stats stats(const std::vector<double>& v) {
  Stats s;
  s.best = *std::max_element(v.begin(), v.end());
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  return s;
}

// A bare list flag yields one empty token; treat that as an empty list.
template <typename T>
std::vector<T> parse_list(const std::vector<std::string>& tokens, const std::string& flag) {
  std::vector<T> out;
  for (const std::string& t : tokens) {
    if (t.empty()) continue;
    T v{};
    if (!CLI::detail::lexical_conversion<T, T>({t}, v))
      throw ArgumentError("invalid value '" + t + "' for " + flag);
    out.push_back(v);
  }
  return out;
}

void run_bench(const BenchArgs& a, std::ostream& out) {
  const std::vector<int> clauses = parse_list<int>(a.clauses, "--clauses");
  const std::vector<double> lambdas = parse_list<double>(a.lambdas, "--lambda");
  if (clauses.empty()) throw ArgumentError("bench needs at least one clause count");
  if (lambdas.empty()) throw ArgumentError("bench needs a non-empty lambda grid");
  for (double l : lambdas)
    if (l < 0.0) throw ArgumentError("lambda values must be >= 0");
  for (int c : clauses)
    if (c < 0) throw ArgumentError("clause counts must be >= 0");

  struct Instance {
    int clauses;
    CnfInstance cnf;
    PolynomialObjective obj;
    double baseline = 0.0;
  };
  std::vector<Instance> insts;
  for (int c : clauses)
    for (int i = 0; i < a.instances; ++i) {
      CnfInstance cnf = generate_random(a.vars, c, a.k, instance_seed(a.instance_seed, c, i));
      PolynomialObjective obj = build_objective(cnf);
      insts.push_back({c, std::move(cnf), std::move(obj)});
    }
  parallel_for(insts.size(), a.jobs, [&](std::size_t i) {
    insts[i].baseline = baseline_value(insts[i].cnf, a.baseline, a.sos, a.local, i);
    if (!(insts[i].baseline > 0.0))
      throw ArgumentError("baseline value must be positive for the observed-performance ratio");
  });

  // Job (instance, lambda, seed); results land at a fixed index.
  const std::size_t nl = lambdas.size(), ns = static_cast<std::size_t>(a.seeds);
  struct Outcome {
    double fst = 0.0, see = 0.0;
  };
  std::vector<Outcome> outcomes(insts.size() * nl * ns);
  parallel_for(outcomes.size(), a.jobs, [&](std::size_t j) {
    const std::size_t inst = j / (nl * ns), l = (j / ns) % nl, s = j % ns;
    TrainConfig cfg = a.train.resolve();
    cfg.lambda = lambdas[l];
    cfg.seed = a.train.cfg.seed + s;
    const TrainResult r = train(insts[inst].obj, cfg);
    outcomes[j] = {static_cast<double>(r.best_fst), r.best_see};
  });

  std::ostringstream csv;
  csv << std::setprecision(10);
  csv << "vars,clauses,lambda,baseline,runs,mean_baseline,mean_fst,mean_see,"
         "mean_fst_ratio,best_fst_ratio,mean_see_ratio,best_see_ratio\n";
  for (int c : clauses) {
    // Per-instance best over the whole grid, for the "best" summary row.
    std::map<std::size_t, std::pair<double, double>> grid_best;
    auto row = [&](const std::string& lambda, const std::vector<double>& base, const std::vector<double>& fst,
                   const std::vector<double>& see) {
      std::vector<double> fr, sr;
      for (std::size_t i = 0; i < fst.size(); ++i) {
        fr.push_back(observed_performance(fst[i], base[i]));
        sr.push_back(observed_performance(see[i], base[i]));
      }
      const Stats f = stats(fr), s = stats(sr);
      csv << a.vars << ',' << c << ',' << lambda << ',' << a.baseline << ',' << fst.size() << ','
          << stats(base).mean << ',' << stats(fst).mean << ',' << stats(see).mean << ',' << f.mean << ','
          << f.best << ',' << s.mean << ',' << s.best << '\n';
    };
    for (std::size_t l = 0; l < nl; ++l) {
      std::vector<double> base, fst, see;
      for (std::size_t i = 0; i < insts.size(); ++i) {
        if (insts[i].clauses != c) continue;
        for (std::size_t s = 0; s < ns; ++s) {
          const Outcome& o = outcomes[(i * nl + l) * ns + s];
          base.push_back(insts[i].baseline);
          fst.push_back(o.fst);
          see.push_back(o.see);
          auto [it, fresh] = grid_best.try_emplace(i, o.fst, o.see);
          if (!fresh && o.fst > it->second.first) it->second = {o.fst, o.see};
        }
      }
      std::ostringstream name;
      name << lambdas[l];
      row(name.str(), base, fst, see);
    }
    std::vector<double> base, fst, see;
    for (const auto& [i, best] : grid_best) {
      base.push_back(insts[i].baseline);
      fst.push_back(best.first);
      see.push_back(best.second);
    }
    row("best", base, fst, see);
  }
  emit(a.out, csv.str(), out);
}

// ---- thin baseline wrappers -------------------------------------------------------

struct BruteArgs {
  std::string cnf, out;
};

struct SosCmdArgs {
  std::string cnf, out, relaxation_out;
  SosArgs sos;
};

struct RandomArgs {
  std::string cnf, out;
  int trials = 10000;
  std::uint64_t seed = 0;
};

struct LocalCmdArgs {
  std::string cnf, out;
  LocalArgs local;
};

json instance_json(const std::string& path, const CnfInstance& inst) {
  return {{"path", path}, {"vars", inst.num_vars()}, {"clauses", inst.num_clauses()}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational Max-kSAT solver with classical baselines", "htaac"};
  app.require_subcommand(1);

  GenerateArgs gen;
  SolveArgs solve;
  BenchArgs bench;
  BruteArgs brute;
  SosCmdArgs sos;
  RandomArgs random;
  LocalCmdArgs local;
  setup_generate(app, gen);
  setup_solve(app, solve);
  setup_bench(app, bench);

  auto* brute_cmd = app.add_subcommand("brute", "Exact optimum by enumeration");
  brute_cmd->add_option("--cnf", brute.cnf, "DIMACS instance")->required();
  brute_cmd->add_option("--out", brute.out, "JSON path (default stdout)");

  auto* sos_cmd = app.add_subcommand("sos", "Sum-of-squares upper bound and null-space rounding");
  sos_cmd->add_option("--cnf", sos.cnf, "DIMACS instance")->required();
  add_sos_flags(sos_cmd, sos.sos, "");
  sos_cmd->add_option("--seed", sos.sos.seed, "Rounding seed");
  sos_cmd->add_option("--out", sos.out, "JSON path (default stdout)");
  sos_cmd->add_option("--relaxation-out", sos.relaxation_out, "Dump the SDP data as JSON");

  auto* random_cmd = app.add_subcommand("random", "Uniform random assignments");
  random_cmd->add_option("--cnf", random.cnf, "DIMACS instance")->required();
  random_cmd->add_option("--trials", random.trials, "Number of guesses")->check(CLI::PositiveNumber);
  random_cmd->add_option("--seed", random.seed, "Sampling seed");
  random_cmd->add_option("--out", random.out, "JSON path (default stdout)");

  auto* local_cmd = app.add_subcommand("localsearch", "WalkSAT local search");
  local_cmd->add_option("--cnf", local.cnf, "DIMACS instance")->required();
  add_local_flags(local_cmd, local.local, "");
  local_cmd->add_option("--seed", local.local.cfg.seed, "Search seed");
  local_cmd->add_option("--out", local.out, "JSON path (default stdout)");

  // The config file maps onto the first subcommand named on the line.
  std::string section;
  for (const std::string& a : args)
    if (app.get_subcommand_no_throw(a) != nullptr) {
      section = a;
      break;
    }
  app.set_config("--config", "", "key=value or JSON file mirroring the flags (flags win)");
  app.config_formatter(std::make_shared<JsonOrKeyValueConfig>(section));
  app.allow_config_extras(CLI::config_extras_mode::error);
  for (CLI::App* sub : app.get_subcommands({})) {
    sub->fallthrough();
    sub->allow_config_extras(CLI::config_extras_mode::error);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (app.got_subcommand("generate")) {
      run_generate(gen, out);
    } else if (app.got_subcommand("solve")) {
      run_solve(solve, out);
    } else if (app.got_subcommand("bench")) {
      run_bench(bench, out);
    } else if (app.got_subcommand("brute")) {
      const CnfInstance inst = load(brute.cnf);
      const BruteForceResult r = brute_force(inst);
      emit(brute.out,
           dump({{"instance", instance_json(brute.cnf, inst)},
                 {"optimum", r.optimum},
                 {"witness", to_json(r.witness)}}),
           out);
    } else if (app.got_subcommand("sos")) {
      const CnfInstance inst = load(sos.cnf);
      const SosRelaxation relax = build_relaxation(build_objective(inst), sos.sos.options());
      if (!sos.relaxation_out.empty()) emit(sos.relaxation_out, dump(to_json(relax)), out);
      const SdpSolution sol = solve_sdp(relax, sos.sos.sdp());
      const SosResult round = sos_round(relax, sol, sos.sos.samples, sos.sos.seed);
      json j = to_json(sol, round);
      j["instance"] = instance_json(sos.cnf, inst);
      j["basis_size"] = relax.dim();
      emit(sos.out, dump(j), out);
    } else if (app.got_subcommand("random")) {
      const CnfInstance inst = load(random.cnf);
      const RandomGuessResult r = random_guess(inst, random.trials, random.seed);
      const double fraction = inst.num_clauses() ? r.mean / static_cast<double>(inst.num_clauses()) : 0.0;
      emit(random.out,
           dump({{"instance", instance_json(random.cnf, inst)},
                 {"trials", random.trials},
                 {"mean", r.mean},
                 {"mean_fraction", fraction},
                 {"best", r.best}}),
           out);
    } else if (app.got_subcommand("localsearch")) {
      const CnfInstance inst = load(local.cnf);
      const LocalSearchResult r = local_search(inst, local.local.cfg);
      emit(local.out,
           dump({{"instance", instance_json(local.cnf, inst)},
                 {"best", r.best},
                 {"witness", to_json(r.witness)},
                 {"flips", local.local.cfg.effective_flips(inst)},
                 {"restarts", local.local.cfg.restarts},
                 {"noise", local.local.cfg.noise}}),
           out);
    }
  } catch (const ConvergenceError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const htaac::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kIo;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace htaac::cli
