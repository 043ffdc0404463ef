// hjcheck: config-driven front end for axiom checks, exact verification,
// proof replays, Monte Carlo runs, fuzzing and parameter sweeps.
//
// Exit codes: 0 all checks passed, 1 a mathematical check failed,
// 2 invalid config or hypothesis, 3 enumeration budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hj/hj.hpp"

using namespace hj;

namespace {

enum Exit { Pass = 0, MathFailure = 1, BadInput = 2, OverBudget = 3 };

struct Options {
  std::string mode;
  std::string config_path;
  std::optional<std::string> variant;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> count;
  std::optional<std::size_t> max_n;
  std::optional<std::size_t> max_support;
  std::string out;
  std::string format = "json";
};

// The outcome of one mode: a report plus whether every check passed.
struct RunResult {
  json report;
  bool passed = true;
  std::string csv; // sweep only
  std::string failure; // first failure witness, for stderr
};

json load_config(const std::string& path)
{
  if (path.empty())
    return json::object();
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot read config file " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
}

template <class T>
T setting(const std::optional<T>& flag, const json& cfg, const char* key, T fallback)
{
  if (flag)
    return *flag;
  if (!cfg.contains(key))
    return fallback;
  const auto& v = cfg.at(key);
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_unsigned())
      throw ParseError(std::string("'") + key + "' must be a non-negative integer");
  } else if constexpr (std::is_same_v<T, double>) {
    if (!v.is_number())
      throw ParseError(std::string("'") + key + "' must be a number");
  } else {
    if (!v.is_string())
      throw ParseError(std::string("'") + key + "' must be a string");
  }
  return v.get<T>();
}

std::vector<TailVariant> variants_for(const Options& opt, const json& cfg)
{
  const auto name = setting<std::string>(opt.variant, cfg, "variant", "both");
  if (name == "both")
    return {TailVariant::MaxIncrement, TailVariant::OrderStatistic};
  return {parse_variant(name)};
}

std::string scenario_id(const json& cfg) { return cfg.contains("id") ? cfg.at("id").get<std::string>() : "scenario"; }

// Calls `f` with the parsed family, restricted by the predicate `Allowed`.
template <template <class> class Allowed, class F>
RunResult with_family(const json& cfg, const char* mode, F&& f)
{
  auto family = parse_family(require_key(cfg, "semigroup"));
  return std::visit(
      [&](const auto& sg) -> RunResult {
        using G = std::decay_t<decltype(sg)>;
        if constexpr (Allowed<G>::value)
          return f(sg);
        else
          throw ParseError(std::string("family ") + sg.name() + " is not available in " + mode + " mode");
      },
      family);
}

template <class G>
struct ExactOnly : std::bool_constant<ExactSemigroup<G> && !std::is_same_v<G, testing::BrokenSquare>> {};
template <class G>
struct NotTestDouble : std::bool_constant<!std::is_same_v<G, testing::BrokenSquare>> {};
template <class G>
struct AnyOf : std::true_type {};

// ---------------------------------------------------------------------------
// Modes

RunResult run_axioms(const Options& opt, const json& cfg)
{
  const auto trials = setting<std::uint64_t>(std::nullopt, cfg, "trials", 1000);
  const auto seed = setting<std::uint64_t>(opt.seed, cfg, "seed", 0);
  return with_family<AnyOf>(cfg, "axioms", [&](const auto& sg) {
    auto rep = check_axioms(sg, trials, seed);
    RunResult r;
    r.passed = rep.all_passed();
    r.report = {{"mode", "axioms"}, {"id", scenario_id(cfg)}, {"semigroup", family_to_json(sg)},
                {"axioms", to_json(rep)}, {"passed", r.passed}};
    for (const auto& a : rep.results)
      if (!a.passed)
        r.failure += (r.failure.empty() ? "" : "; ") + a.axiom + " fails: " + a.witness;
    return r;
  });
}

RunResult run_evaluate(const Options& opt, const json& cfg)
{
  const auto budget = setting<std::uint64_t>(opt.budget, cfg, "budget", default_budget);
  const auto variants = variants_for(opt, cfg);
  return with_family<ExactOnly>(cfg, "evaluate", [&](const auto& sg) {
    auto sc = scenario_from_json(sg, cfg);
    auto p = params_from_json<Rational>(require_key(cfg, "params"));
    p.require_applicable(sc.n());
    RunResult r;
    json results = json::array();
    for (auto v : variants) {
      auto rep = evaluate_hj(sc, p, v, budget);
      results.push_back(to_json(rep));
      if (!rep.holds) {
        r.passed = false;
        r.failure = to_string(v) + " variant: lhs " + to_string(rep.lhs) + " > rhs " + to_string(rep.rhs);
      }
    }
    r.report = {{"mode", "evaluate"}, {"id", scenario_id(cfg)}, {"scenario", scenario_to_json(sc)},
                {"params", params_to_json(p)}, {"budget", budget},  {"results", results},
                {"passed", r.passed}};
    return r;
  });
}

RunResult run_proof_check(const Options& opt, const json& cfg)
{
  const auto budget = setting<std::uint64_t>(opt.budget, cfg, "budget", default_budget);
  return with_family<ExactOnly>(cfg, "proof-check", [&](const auto& sg) {
    auto sc = scenario_from_json(sg, cfg);
    auto p = params_from_json<Rational>(require_key(cfg, "params"));
    p.require_applicable(sc.n());
    RunResult r;
    auto dec = verify_decomposition(sc, p, budget);
    json passage_bounds = json::array();
    for (const auto& t : p.t_vec()) {
      const auto tally = tally_passages(sc, t, budget);
      const bool anchor_ok = sc.sg.dist(sc.z1, sc.z0) <= t;
      for (std::size_t g = 1; g <= sc.n(); ++g)
        for (std::size_t a = 0; a < g; ++a)
          for (const auto& c : detail::passage_bound_checks(tally, a, g, anchor_ok)) {
            passage_bounds.push_back(to_json(c));
            if (c.applicable && !c.passed && r.failure.empty())
              r.failure = c.name + ": " + c.detail;
          }
    }
    for (const auto& c : dec.checks)
      if (c.applicable && !c.passed && r.failure.empty())
        r.failure = c.name + ": " + c.detail + (c.witness.empty() ? "" : " (" + c.witness + ")");
    r.passed = r.failure.empty();
    r.report = {{"mode", "proof-check"}, {"id", scenario_id(cfg)}, {"scenario", scenario_to_json(sc)},
                {"params", params_to_json(p)}, {"budget", budget},  {"decomposition", to_json(dec)},
                {"passage_bounds", passage_bounds},          {"passed", r.passed}};
    return r;
  });
}

RunResult run_mc(const Options& opt, const json& cfg)
{
  const auto seed = setting<std::uint64_t>(opt.seed, cfg, "seed", 0);
  const auto samples = setting<std::uint64_t>(opt.samples, cfg, "samples", 100000);
  const auto level = setting<double>(std::nullopt, cfg, "level", 0.99);
  return with_family<NotTestDouble>(cfg, "mc", [&](const auto& sg) {
    using G = std::decay_t<decltype(sg)>;
    auto sc = sampled_scenario_from_json(sg, cfg);
    auto p = params_from_json<scalar_t<G>>(require_key(cfg, "params"));
    p.require_applicable(sc.n());
    auto rep = mc_estimate(sc, p, samples, seed, level);
    RunResult r;
    for (const auto& v : rep.variants)
      if (v.verdict == Verdict::ViolatesWithMargin) {
        r.passed = false;
        r.failure = to_string(v.variant) + " variant: estimated lhs exceeds rhs beyond both intervals";
      }
    json scenario = json::object();
    for (const char* key : {"semigroup", "n", "law", "laws", "z0", "z1"})
      if (cfg.contains(key))
        scenario[key] = cfg.at(key);
    r.report = {{"mode", "mc"},          {"id", scenario_id(cfg)},  {"scenario", scenario},
                {"params", params_to_json(p)}, {"estimate", to_json(rep)}, {"passed", r.passed}};
    return r;
  });
}

RunResult run_fuzz_mode(const Options& opt, const json& cfg)
{
  const auto seed = setting<std::uint64_t>(opt.seed, cfg, "seed", 7);
  const auto count = setting<std::uint64_t>(opt.count, cfg, "count", 500);
  const auto budget = setting<std::uint64_t>(opt.budget, cfg, "budget", default_budget);
  FuzzLimits lim;
  lim.max_n = setting<std::size_t>(opt.max_n, cfg, "max_n", lim.max_n);
  lim.max_support = setting<std::size_t>(opt.max_support, cfg, "max_support", lim.max_support);
  lim.max_k = setting<std::size_t>(std::nullopt, cfg, "max_k", lim.max_k);
  if (lim.max_n < 2 || lim.max_support < 1 || lim.max_k < 1)
    throw HypothesisViolated("fuzz limits need max_n >= 2, max_support >= 1 and max_k >= 1");
  auto summary = run_fuzz(seed, count, lim, budget);
  RunResult r;
  r.passed = summary.all_passed();
  if (!r.passed)
    r.failure = "case " + std::to_string(summary.failures.front().index) + ": " + summary.failures.front().what;
  r.report = to_json(summary);
  r.report["mode"] = "fuzz";
  r.report["passed"] = r.passed;
  return r;
}

// One grid point of a sweep: t_vec and s for fixed n_vec.
struct SweepRow {
  std::string variant;
  std::string lhs, rhs, slack;
  bool holds = false;
};

std::string join(const std::vector<std::string>& parts)
{
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    out += (i ? ";" : "") + parts[i];
  return out;
}

std::string csv_quote(const std::string& s) { return s.find_first_of(",\"") == std::string::npos ? s : "\"" + s + "\""; }

RunResult run_sweep(const Options& opt, const json& cfg)
{
  const auto budget = setting<std::uint64_t>(opt.budget, cfg, "budget", default_budget);
  const auto& grid = require_key(cfg, "grid");
  const auto& t_grid = require_key(grid, "t_vec");
  const auto& s_grid = require_key(grid, "s");
  if (!t_grid.is_array() || t_grid.empty() || !s_grid.is_array() || s_grid.empty())
    throw ParseError("grid t_vec and s must be non-empty lists");
  // validate every grid point before computing anything
  std::vector<BoundParams<Rational>> points;
  for (const auto& tv : t_grid)
    for (const auto& s : s_grid)
      points.push_back(params_from_json<Rational>({{"n_vec", require_key(grid, "n_vec")}, {"t_vec", tv}, {"s", s}}));
  const auto id = scenario_id(cfg);

  return with_family<ExactOnly>(cfg, "sweep", [&](const auto& sg) {
    auto sc = scenario_from_json(sg, cfg);
    for (const auto& p : points)
      p.require_applicable(sc.n());
    RunResult r;
    std::ostringstream csv;
    csv << "scenario-id,k,n_vec,t_vec,s,variant,lhs,rhs,slack,holds\n";
    json rows = json::array();
    for (std::size_t g = 0; g < points.size(); ++g) {
      const auto& p = points[g];
      std::vector<std::string> nv, tv;
      for (auto n : p.n_vec())
        nv.push_back(std::to_string(n));
      for (const auto& t : p.t_vec())
        tv.push_back(to_string(t));
      std::vector<SweepRow> out;
      auto [mx, ord] = evaluate_hj_both(sc, p, budget);
      for (const auto* rep : {&mx, &ord})
        out.push_back({to_string(rep->variant), to_string(rep->lhs), to_string(rep->rhs), to_string(rep->slack),
                       rep->holds});
      // prior bounds at the first threshold
      auto prior_row = [&](const char* name, const PriorBoundReport& pb) {
        SweepRow row{name, to_string(pb.lhs), pb.rhs ? to_string(*pb.rhs) : "inf", "inf", pb.holds};
        if (pb.rhs) {
          Rational slack = *pb.rhs - pb.lhs;
          row.slack = to_string(slack);
        }
        out.push_back(row);
      };
      prior_row("LT", lt_bound(sc, p.t(0), p.s(), budget));
      prior_row("HM", hm_bound(sc, p.K(), p.t(0), p.s(), budget));
      for (const auto& row : out) {
        csv << csv_quote(id) << ',' << p.k() << ',' << join(nv) << ',' << join(tv) << ',' << to_string(p.s()) << ','
            << row.variant << ',' << row.lhs << ',' << row.rhs << ',' << row.slack << ','
            << (row.holds ? "true" : "false") << '\n';
        rows.push_back({{"grid_index", g},   {"k", p.k()},         {"params", params_to_json(p)},
                        {"variant", row.variant}, {"lhs", row.lhs}, {"rhs", row.rhs},
                        {"slack", row.slack}, {"holds", row.holds}});
        if (!row.holds && r.failure.empty()) {
          r.passed = false;
          r.failure = "grid point " + std::to_string(g) + ", " + row.variant + ": lhs " + row.lhs + " > rhs " + row.rhs;
        }
      }
    }
    r.csv = csv.str();
    r.report = {{"mode", "sweep"}, {"id", id}, {"scenario", scenario_to_json(sc)}, {"budget", budget},
                {"rows", rows},    {"passed", r.passed}};
    return r;
  });
}

RunResult dispatch(const Options& opt)
{
  const json cfg = load_config(opt.config_path);
  if (!cfg.is_object())
    throw ParseError("config must be a JSON object");
  if (cfg.contains("mode") && cfg.at("mode") != opt.mode)
    throw ParseError("config is for mode '" + cfg.at("mode").dump() + "', not '" + opt.mode + "'");
  if (opt.format != "json" && opt.format != "csv")
    throw ParseError("format must be json or csv");
  if (opt.format == "csv" && opt.mode != "sweep")
    throw ParseError("csv output is only available in sweep mode");
  if (opt.mode != "fuzz" && opt.config_path.empty())
    throw ParseError(opt.mode + " mode needs --config");
  if (opt.mode == "axioms")
    return run_axioms(opt, cfg);
  if (opt.mode == "evaluate")
    return run_evaluate(opt, cfg);
  if (opt.mode == "proof-check")
    return run_proof_check(opt, cfg);
  if (opt.mode == "mc")
    return run_mc(opt, cfg);
  if (opt.mode == "fuzz")
    return run_fuzz_mode(opt, cfg);
  return run_sweep(opt, cfg);
}

void write_output(const Options& opt, const RunResult& r)
{
  const std::string text = opt.format == "csv" ? r.csv : r.report.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out, std::ios::binary);
  if (!out)
    throw ParseError("cannot write " + opt.out);
  out << text;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Exact and Monte Carlo checks of maximal tail inequalities on metric semigroups"};
  app.require_subcommand(1, 1);
  Options opt;

  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config_path, "JSON config file");
    if (needs_config)
      c->required();
    sub->add_option("--out", opt.out, "write the report here instead of stdout");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto* ax = app.add_subcommand("axioms", "check the metric semigroup axioms on sampled tuples");
  common(ax, true);
  ax->add_option("--seed", opt.seed, "sampling seed");
  auto* ev = app.add_subcommand("evaluate", "evaluate the bound exactly");
  common(ev, true);
  ev->add_option("--variant", opt.variant, "tail variant: max or order (default both)");
  ev->add_option("--budget", opt.budget, "maximum number of enumerated outcomes");
  auto* pc = app.add_subcommand("proof-check", "replay the proof's constructions exactly");
  common(pc, true);
  pc->add_option("--budget", opt.budget, "maximum number of enumerated outcomes");
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate with Wilson intervals");
  common(mc, true);
  mc->add_option("--seed", opt.seed, "generator seed");
  mc->add_option("--samples", opt.samples, "number of sampled paths");
  auto* fz = app.add_subcommand("fuzz", "evaluate randomly generated exact scenarios");
  common(fz, false);
  fz->add_option("--seed", opt.seed, "case stream seed");
  fz->add_option("--count", opt.count, "number of cases");
  fz->add_option("--max-n", opt.max_n, "largest number of variables");
  fz->add_option("--max-support", opt.max_support, "largest support size per law");
  fz->add_option("--budget", opt.budget, "maximum number of enumerated outcomes per case");
  auto* sw = app.add_subcommand("sweep", "evaluate a grid of thresholds against both prior bounds");
  common(sw, true);
  sw->add_option("--budget", opt.budget, "maximum number of enumerated outcomes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Pass : BadInput;
  }
  opt.mode = app.get_subcommands().front()->get_name();

  try {
    auto result = dispatch(opt);
    write_output(opt, result);
    if (!result.passed) {
      std::cerr << "hjcheck: check failed: " << result.failure << "\n";
      return MathFailure;
    }
    return Pass;
  } catch (const BudgetExceeded& e) {
    std::cerr << "hjcheck: budget exceeded: " << e.what() << "\n";
    return OverBudget;
  } catch (const HypothesisViolated& e) {
    std::cerr << "hjcheck: hypothesis violated: " << e.what() << "\n";
    return BadInput;
  } catch (const Error& e) {
    std::cerr << "hjcheck: invalid input: " << e.what() << "\n";
    return BadInput;
  } catch (const json::exception& e) {
    std::cerr << "hjcheck: invalid config: " << e.what() << "\n";
    return BadInput;
  }
}
