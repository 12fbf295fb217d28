#include "randpoly/cli.hpp"

#include "randpoly/anticoncentration.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/experiments.hpp"
#include "randpoly/mixture.hpp"
#include "randpoly/parallel.hpp"
#include "randpoly/polyalg.hpp"
#include "randpoly/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

namespace randpoly::cli {

using json = nlohmann::json;

IntegerDistribution parse_distribution(const std::string& spec)
{
    if (spec.empty())
        throw PreconditionError("empty distribution spec");
    if (spec.front() == '{' || spec.front() == '[')
        return distribution_from_json(json::parse(spec));
    if (spec == "rademacher")
        return IntegerDistribution::rademacher();
    static const std::regex uniform(R"(uniform(-?\d+)\.\.(-?\d+))");
    static const std::regex signed_uniform(R"(signed-uniform(\d+))");
    std::smatch m;
    if (std::regex_match(spec, m, uniform))
        return IntegerDistribution::uniform(std::stoll(m[1]), std::stoll(m[2]));
    if (std::regex_match(spec, m, signed_uniform))
        return IntegerDistribution::signed_uniform(std::stoll(m[1]));
    std::ifstream file(spec);
    if (!file)
        throw PreconditionError("distribution spec '" + spec + "' is neither JSON, a known name, nor a readable file");
    return distribution_from_json(json::parse(file));
}

IntPolynomial parse_polynomial(const std::string& spec)
{
    std::vector<Integer> coeffs;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        coeffs.push_back(parse_integer(first == std::string::npos ? "" : item.substr(first, last - first + 1)));
    }
    if (coeffs.empty())
        throw PreconditionError("empty polynomial spec");
    return IntPolynomial(std::move(coeffs));
}

namespace {

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <class T>
std::string str(const T& v)
{
    if constexpr (std::is_same_v<T, std::string>)
        return v;
    else if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, Integer>)
        return to_string(v);
    else if constexpr (std::is_floating_point_v<T>)
        return fmt(v);
    else if constexpr (std::is_same_v<T, bool>)
        return v ? "true" : "false";
    else
        return std::to_string(v);
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    template <class... T>
    void add(const T&... cells)
    {
        rows.push_back({str(cells)...});
    }
};

struct Output {
    json result;
    Table table;
};

// Every option any subcommand may use; each subcommand binds a subset.
struct Args {
    std::string dist = "rademacher";
    std::string poly;
    int n = 10;
    int n_lo = -1;
    int n_hi = -1;
    long a = 2;
    std::uint64_t trials = 100000;
    std::uint64_t count = 10;
    std::uint64_t samples = 0;
    std::vector<int> degrees;
    int n_max = 15;
    std::vector<std::int64_t> ks{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<std::int64_t> b_list;
    std::vector<std::int64_t> d_list;
    int k = 0;
    std::size_t grid = 99;
    double C = 2.0;
    int census_d = 4;
    long census_a = 1;
    double census_b = 1.0 / 6.0;
    double tol = kDefaultRootTolerance;

    std::string out_path;
    std::string format = "json";
    unsigned workers = default_workers();
    std::size_t budget = 0;
    std::uint64_t seed = 1;
    bool deterministic = false;
};

std::size_t resolve_budget(const CLI::App& sub, const Args& args, std::size_t fallback)
{
    if (sub.count("--budget"))
        return args.budget;
    if (const char* env = std::getenv("RANDPOLY_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw PreconditionError(std::string("RANDPOLY_BUDGET is not a positive integer: ") + env);
        return static_cast<std::size_t>(v);
    }
    return fallback;
}

std::pair<int, int> degree_range(const Args& args)
{
    if (args.n_lo >= 0 || args.n_hi >= 0) {
        if (args.n_lo < 0 || args.n_hi < 0)
            throw PreconditionError("--n-lo and --n-hi go together");
        return {args.n_lo, args.n_hi};
    }
    return {args.n, args.n};
}

json events_json(const DoubleRootEvents<double>& e)
{
    return {{"any", e.any},
            {"at_0", e.at_0},
            {"at_plus1", e.at_plus1},
            {"at_minus1", e.at_minus1},
            {"at_pm1_or_0", e.at_pm1_or_0}};
}

Output double_root_output(const DoubleRootReport& r)
{
    Output o;
    o.result["mode"] = to_string(r.mode);
    o.result["n"] = r.n;
    o.table.columns = {"event", "probability", "std_error"};
    const auto est = r.estimate();
    const auto se = r.std_error();
    if (r.exact) {
        const auto& e = *r.exact;
        o.result["tuples"] = r.trials;
        o.result["probability"] = {{"any", to_string(e.any)},
                                   {"at_0", to_string(e.at_0)},
                                   {"at_plus1", to_string(e.at_plus1)},
                                   {"at_minus1", to_string(e.at_minus1)},
                                   {"at_pm1_or_0", to_string(e.at_pm1_or_0)}};
        o.table.add(std::string("any"), e.any, 0.0);
        o.table.add(std::string("at_0"), e.at_0, 0.0);
        o.table.add(std::string("at_plus1"), e.at_plus1, 0.0);
        o.table.add(std::string("at_minus1"), e.at_minus1, 0.0);
        o.table.add(std::string("at_pm1_or_0"), e.at_pm1_or_0, 0.0);
    } else {
        const auto& c = *r.counts;
        o.result["trials"] = r.trials;
        o.result["seed"] = r.seed;
        o.result["counts"] = {{"any", c.any},
                              {"at_0", c.at_0},
                              {"at_plus1", c.at_plus1},
                              {"at_minus1", c.at_minus1},
                              {"at_pm1_or_0", c.at_pm1_or_0}};
        o.result["estimate"] = events_json(est);
        o.result["std_error"] = events_json(se);
        o.table.add(std::string("any"), est.any, se.any);
        o.table.add(std::string("at_0"), est.at_0, se.at_0);
        o.table.add(std::string("at_plus1"), est.at_plus1, se.at_plus1);
        o.table.add(std::string("at_minus1"), est.at_minus1, se.at_minus1);
        o.table.add(std::string("at_pm1_or_0"), est.at_pm1_or_0, se.at_pm1_or_0);
    }
    return o;
}

void write_csv(std::ostream& os, const json& header, const Table& t)
{
    os << "# " << header.dump() << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << row[i];
        os << '\n';
    }
}

struct Command {
    std::function<json()> config;
    std::function<Output()> body;
};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    auto fail = [&err](int code, const std::string& kind, const std::string& message) {
        err << json{{"error", kind}, {"exit_code", code}, {"message", message}}.dump() << '\n';
        return code;
    };

    Args args;
    CLI::App app{"Exact and Monte Carlo experiments on random integer polynomials"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1, 1);
    std::map<std::string, Command> commands;

    auto add_common = [&](CLI::App* sub, bool random, bool budget) {
        sub->add_option("--out", args.out_path, "write the report here instead of stdout");
        sub->add_option("--format", args.format, "report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--workers", args.workers, "worker threads")->check(CLI::Range(1u, 1024u));
        sub->add_flag("--deterministic", args.deterministic,
                      "omit the run block (workers, wall-clock) so reports are byte-identical across runs");
        if (random)
            sub->add_option("--seed", args.seed, "64-bit master seed");
        if (budget)
            sub->add_option("--budget", args.budget,
                            "work cap (entries, tuples or nodes); env RANDPOLY_BUDGET also sets it")
                ->default_str("per command");
    };
    auto dist_option = [&](CLI::App* sub) {
        sub->add_option("--dist", args.dist, "coefficient law: JSON, rademacher, uniformLO..HI, signed-uniformM or a file");
    };
    auto range_options = [&](CLI::App* sub) {
        sub->add_option("--n", args.n, "degree");
        sub->add_option("--n-lo", args.n_lo, "first degree of a range (overrides --n)")->default_str("unset");
        sub->add_option("--n-hi", args.n_hi, "last degree of a range")->default_str("unset");
    };
    auto register_command = [&](CLI::App* sub, Command cmd) { commands[sub->get_name()] = std::move(cmd); };

    {
        auto* sub = app.add_subcommand("decompose", "Bernoulli mixture decomposition of a law with max atom <= 1/2");
        dist_option(sub);
        add_common(sub, false, false);
        register_command(sub, {[&] { return json{{"dist", to_json(parse_distribution(args.dist))}}; },
                               [&] {
                                   const auto d = decompose(parse_distribution(args.dist));
                                   Output o;
                                   o.result["components"] = to_json(d);
                                   o.result["reconstructs"] = reconstruct(d) == parse_distribution(args.dist);
                                   o.table.columns = {"t", "a", "b"};
                                   for (const auto& c : d.components())
                                       o.table.add(c.t, c.a, c.b);
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("sample", "draw coefficients through the mixture sampler");
        dist_option(sub);
        sub->add_option("--count", args.count, "number of draws");
        add_common(sub, true, false);
        register_command(sub, {[&] {
                                   return json{{"dist", to_json(parse_distribution(args.dist))},
                                               {"count", args.count},
                                               {"seed", args.seed}};
                               },
                               [&] {
                                   const auto dist = parse_distribution(args.dist);
                                   const CoefficientSampler sampler(dist);
                                   std::mt19937_64 rng(block_seed(args.seed, 0));
                                   std::map<std::int64_t, std::uint64_t> freq;
                                   json draws = json::array();
                                   for (std::uint64_t i = 0; i < args.count; ++i) {
                                       const auto x = sampler.draw(rng);
                                       ++freq[x];
                                       if (i < 1000)
                                           draws.push_back(x);
                                   }
                                   Output o;
                                   o.result["uses_mixture"] = sampler.uses_mixture();
                                   o.result["draws"] = draws;
                                   o.table.columns = {"value", "count", "frequency", "weight"};
                                   json f = json::array();
                                   for (const auto& atom : dist.atoms()) {
                                       const auto c = freq[atom.value];
                                       f.push_back({atom.value, c});
                                       o.table.add(atom.value, c, static_cast<double>(c) / static_cast<double>(args.count),
                                                   atom.weight);
                                   }
                                   o.result["counts"] = f;
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("pmax", "exact largest point mass of P(a) and eps_n per degree");
        dist_option(sub);
        range_options(sub);
        sub->add_option("--a", args.a, "evaluation point");
        add_common(sub, false, true);
        register_command(sub, {[&, sub] {
                                   const auto [lo, hi] = degree_range(args);
                                   return json{{"dist", to_json(parse_distribution(args.dist))},
                                               {"n_lo", lo},
                                               {"n_hi", hi},
                                               {"a", args.a},
                                               {"budget", resolve_budget(*sub, args, kDefaultEntryBudget)}};
                               },
                               [&, sub] {
                                   const auto [lo, hi] = degree_range(args);
                                   const auto profile = epsilon_profile(parse_distribution(args.dist), lo, hi, args.a,
                                                                        resolve_budget(*sub, args, kDefaultEntryBudget));
                                   Output o;
                                   o.table.columns = {"n", "p_max_num", "p_max_den", "argmax", "eps_n"};
                                   json rows = json::array();
                                   for (const auto& r : profile.rows) {
                                       rows.push_back({{"n", r.n},
                                                       {"p_max", to_string(r.p_max)},
                                                       {"argmax", r.argmax.get_str()},
                                                       {"eps_n", r.eps}});
                                       o.table.add(r.n, Integer(r.p_max.get_num()), Integer(r.p_max.get_den()), r.argmax,
                                                   r.eps);
                                   }
                                   o.result["rows"] = rows;
                                   o.result["non_positive"] = profile.non_positive;
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("lambda", "growth rate -ln(p_max)/(n+1) and submultiplicativity");
        dist_option(sub);
        sub->add_option("--n-lo", args.n_lo, "first degree")->default_str("0");
        sub->add_option("--n-hi", args.n_hi, "last degree")->default_str("12");
        sub->add_option("--a", args.a, "evaluation point");
        add_common(sub, false, true);
        auto bounds = [&] { return std::pair{args.n_lo < 0 ? 0 : args.n_lo, args.n_hi < 0 ? 12 : args.n_hi}; };
        register_command(sub, {[&, sub, bounds] {
                                   const auto [lo, hi] = bounds();
                                   return json{{"dist", to_json(parse_distribution(args.dist))},
                                               {"n_lo", lo},
                                               {"n_hi", hi},
                                               {"a", args.a},
                                               {"budget", resolve_budget(*sub, args, kDefaultEntryBudget)}};
                               },
                               [&, sub, bounds] {
                                   const auto [lo, hi] = bounds();
                                   const auto t = estimate_lambda(parse_distribution(args.dist), lo, hi, args.a,
                                                                  resolve_budget(*sub, args, kDefaultEntryBudget));
                                   Output o;
                                   o.table.columns = {"n", "p_max", "rate"};
                                   json rows = json::array();
                                   for (const auto& r : t.rows) {
                                       rows.push_back({{"n", r.n}, {"p_max", to_string(r.p_max)}, {"rate", r.rate}});
                                       o.table.add(r.n, r.p_max, r.rate);
                                   }
                                   o.result["rows"] = rows;
                                   o.result["submultiplicative_checked"] = t.submultiplicative_checked;
                                   o.result["submultiplicative_violations"] = t.submultiplicative_violations;
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("coins", "max point mass of sum b_i + d_i B_i against 2^-|{L(d_i)}|");
        sub->add_option("--b", args.b_list, "offsets b_i")->delimiter(',')->required();
        sub->add_option("--d", args.d_list, "steps d_i")->delimiter(',')->required();
        add_common(sub, false, false);
        register_command(sub, {[&] { return json{{"b", args.b_list}, {"d", args.d_list}}; },
                               [&] {
                                   const auto c = coins_bound_check(args.b_list, args.d_list);
                                   Output o;
                                   o.result = {{"max_mass", to_string(c.max_mass)},
                                               {"bound", to_string(c.bound)},
                                               {"distinct_levels", c.distinct_levels},
                                               {"pass", c.pass}};
                                   o.table.columns = {"max_mass", "bound", "distinct_levels", "pass"};
                                   o.table.add(c.max_mass, c.bound, c.distinct_levels, c.pass);
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("wstat", "exact law of W = |{i + w_i}| and its bounds");
        sub->add_option("--dist", args.dist, "law of w_1 on non-negative integers")->default_str("uniform0..1");
        sub->add_option("--n", args.n, "number of indices");
        sub->add_option("--samples", args.samples, "Monte Carlo samples of W (0 skips)");
        add_common(sub, true, true);
        auto law = [&, sub] { return sub->count("--dist") ? args.dist : std::string("uniform0..1"); };
        register_command(
            sub, {[&, sub, law] {
                      return json{{"dist", to_json(parse_distribution(law()))},
                                  {"n", args.n},
                                  {"samples", args.samples},
                                  {"seed", args.seed},
                                  {"budget", resolve_budget(*sub, args, kDefaultEnumerationBudget)}};
                  },
                  [&, sub, law] {
                      const WModel model(parse_distribution(law()), args.n);
                      const auto pmf =
                          w_exact_pmf(model, resolve_budget(*sub, args, kDefaultEnumerationBudget), args.workers);
                      Output o;
                      o.result["pmf"] = to_json(pmf);
                      o.table.columns = {"w", "probability", "binomial_bound", "smooth_bound", "holds"};
                      json checks = json::array();
                      bool all = true;
                      for (int m = 1; m < model.n(); ++m) {
                          const Rational alpha(m, model.n());
                          const auto bb = w_binomial_bound(model.n(), alpha);
                          const Rational p = pmf.probability(Integer(m));
                          const bool holds = p <= bb.exact && bb.chain_holds;
                          all = all && holds;
                          checks.push_back({{"w", m},
                                            {"probability", to_string(p)},
                                            {"binomial_bound", to_string(bb.exact)},
                                            {"smooth_bound", bb.smooth},
                                            {"holds", holds}});
                          o.table.add(m, p, bb.exact, bb.smooth, holds);
                      }
                      o.result["alpha_checks"] = checks;
                      o.result["all_hold"] = all;
                      const auto lb = expected_w_lower_bound(model);
                      o.result["expected_lower_bound"] = to_string(lb.bound);
                      o.result["eta"] = to_string(lb.eta);
                      if (args.samples > 0) {
                          const auto s = sample_w_mean(model, args.samples, args.seed);
                          o.result["sample_mean"] = s.mean;
                          o.result["sample_std_error"] = s.std_error;
                      }
                      return o;
                  }});
    }
    {
        auto* sub = app.add_subcommand("fn", "f_n(alpha) on a grid and the root c0 of g'");
        sub->add_option("--n", args.n, "exponent n")->default_val(1);
        sub->add_option("--grid", args.grid, "interior grid points of (0, 1)");
        add_common(sub, false, false);
        register_command(sub, {[&] { return json{{"n", args.n}, {"grid", args.grid}}; },
                               [&] {
                                   const auto f = f_n_analysis(args.n, args.grid);
                                   Output o;
                                   o.result["c0"] = f.c0;
                                   o.result["increasing_below_c0"] = f.increasing_below_c0;
                                   o.result["alpha"] = f.alpha;
                                   o.result["value"] = f.value;
                                   o.table.columns = {"alpha", "f_n"};
                                   for (std::size_t i = 0; i < f.alpha.size(); ++i)
                                       o.table.add(f.alpha[i], f.value[i]);
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("doubleroot-exact", "exact double-root probabilities by enumeration");
        dist_option(sub);
        sub->add_option("--n", args.n, "degree");
        add_common(sub, false, true);
        register_command(sub, {[&, sub] {
                                   return json{{"dist", to_json(parse_distribution(args.dist))},
                                               {"n", args.n},
                                               {"mode", "exact"},
                                               {"budget", resolve_budget(*sub, args, kDefaultEnumerationBudget)}};
                               },
                               [&, sub] {
                                   return double_root_output(exact_double_root(
                                       parse_distribution(args.dist), args.n,
                                       resolve_budget(*sub, args, kDefaultEnumerationBudget), args.workers));
                               }});
    }
    {
        auto* sub = app.add_subcommand("doubleroot-mc", "Monte Carlo double-root probabilities");
        dist_option(sub);
        sub->add_option("--n", args.n, "degree");
        sub->add_option("--trials", args.trials, "number of random polynomials")->check(CLI::PositiveNumber);
        add_common(sub, true, false);
        register_command(sub, {[&] {
                                   return json{{"dist", to_json(parse_distribution(args.dist))},
                                               {"n", args.n},
                                               {"mode", "monte-carlo"},
                                               {"trials", args.trials},
                                               {"seed", args.seed},
                                               {"block", kDefaultTrialBlock}};
                               },
                               [&] {
                                   return double_root_output(mc_double_root(parse_distribution(args.dist), args.n,
                                                                            args.trials, args.seed, args.workers));
                               }});
    }
    {
        auto* sub = app.add_subcommand("scaling", "n^2 times the double-root probability across degrees");
        dist_option(sub);
        sub->add_option("--degrees", args.degrees, "degrees to tabulate")->delimiter(',')->default_str("see --n-max");
        sub->add_option("--n-max", args.n_max, "largest default degree (n = 3 mod 4 for rademacher)");
        sub->add_option("--trials", args.trials, "Monte Carlo trials for rows past the budget");
        add_common(sub, true, true);
        auto degrees = [&, sub] {
            return sub->count("--degrees") ? args.degrees
                                           : default_scaling_degrees(parse_distribution(args.dist), args.n_max);
        };
        register_command(sub, {[&, sub, degrees] {
                                   return json{{"dist", to_json(parse_distribution(args.dist))},
                                               {"degrees", degrees()},
                                               {"trials", args.trials},
                                               {"seed", args.seed},
                                               {"budget", resolve_budget(*sub, args, kDefaultEnumerationBudget)}};
                               },
                               [&, sub, degrees] {
                                   const auto rows = scaling_table(parse_distribution(args.dist), degrees(),
                                                                   resolve_budget(*sub, args, kDefaultEnumerationBudget),
                                                                   args.trials, args.seed, args.workers);
                                   Output o;
                                   o.table.columns = {"n", "mode", "p_any", "p_pm1_or_0", "n2_p_any", "std_error"};
                                   json out = json::array();
                                   for (const auto& r : rows) {
                                       json row{{"n", r.n},
                                                {"mode", to_string(r.mode)},
                                                {"p_any", r.p_any},
                                                {"p_pm1_or_0", r.p_pm1_or_0},
                                                {"n2_p_any", r.n2_p_any},
                                                {"std_error", r.std_error}};
                                       if (r.p_any_exact)
                                           row["p_any_exact"] = to_string(*r.p_any_exact);
                                       out.push_back(row);
                                       o.table.add(r.n, std::string(to_string(r.mode)), r.p_any, r.p_pm1_or_0,
                                                   r.n2_p_any, r.std_error);
                                   }
                                   o.result["rows"] = out;
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("divisibility", "frequency of k^2 | P(a) with a log-log fit");
        dist_option(sub);
        sub->add_option("--n", args.n, "degree");
        sub->add_option("--a", args.a, "evaluation point, 2 or -2");
        sub->add_option("--k", args.ks, "values of k")->delimiter(',');
        sub->add_option("--trials", args.trials, "number of random polynomials")->check(CLI::PositiveNumber);
        add_common(sub, true, false);
        register_command(sub, {[&] {
                                   return json{{"dist", to_json(parse_distribution(args.dist))},
                                               {"n", args.n},
                                               {"a", args.a},
                                               {"k", args.ks},
                                               {"trials", args.trials},
                                               {"seed", args.seed}};
                               },
                               [&] {
                                   const auto r = divisibility_experiment(parse_distribution(args.dist), args.n, args.a,
                                                                          args.ks, args.trials, args.seed, args.workers);
                                   Output o;
                                   o.table.columns = {"k", "hits", "frequency", "std_error", "fitted"};
                                   json rows = json::array();
                                   for (const auto& row : r.rows) {
                                       rows.push_back({{"k", row.k},
                                                       {"hits", row.hits},
                                                       {"frequency", row.frequency},
                                                       {"std_error", row.std_error},
                                                       {"fitted", row.fitted}});
                                       o.table.add(row.k, row.hits, row.frequency, row.std_error, row.fitted);
                                   }
                                   o.result["rows"] = rows;
                                   o.result["fit"] = {{"valid", r.fit_valid}, {"c", r.fit_c}, {"eps", r.fit_eps}};
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("tail2", "frequency of |P(2)| <= n^-C 2^n");
        dist_option(sub);
        sub->add_option("--n", args.n, "degree");
        sub->add_option("--C", args.C, "exponent C");
        sub->add_option("--trials", args.trials, "number of random polynomials")->check(CLI::PositiveNumber);
        add_common(sub, true, false);
        register_command(sub, {[&] {
                                   return json{{"dist", to_json(parse_distribution(args.dist))},
                                               {"n", args.n},
                                               {"C", args.C},
                                               {"trials", args.trials},
                                               {"seed", args.seed}};
                               },
                               [&] {
                                   const auto r = tail_near_two_check(parse_distribution(args.dist), args.n, args.trials,
                                                                      args.seed, args.C, args.workers);
                                   Output o;
                                   o.result = {{"hits", r.hits}, {"frequency", r.frequency}, {"std_error", r.std_error}};
                                   o.table.columns = {"hits", "frequency", "std_error"};
                                   o.table.add(r.hits, r.frequency, r.std_error);
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("house", "largest root modulus and the roots");
        sub->add_option("--poly", args.poly, "coefficients, constant term first (use --poly=-1,... for a leading minus)")
            ->required();
        sub->add_option("--tol", args.tol, "residual tolerance of the root finder");
        add_common(sub, false, false);
        register_command(sub, {[&] { return json{{"poly", to_json(parse_polynomial(args.poly))}, {"tol", args.tol}}; },
                               [&] {
                                   const auto p = parse_polynomial(args.poly);
                                   const double h = house(p, args.tol);
                                   const auto roots = roots_complex(p, args.tol);
                                   Output o;
                                   o.result["house"] = h;
                                   o.result["residual"] = roots.residual;
                                   o.result["iterations"] = roots.iterations;
                                   json list = json::array();
                                   o.table.columns = {"re", "im", "modulus", "multiplicity"};
                                   for (const auto& r : roots.roots) {
                                       list.push_back({{"re", r.value.real()},
                                                       {"im", r.value.imag()},
                                                       {"multiplicity", r.multiplicity}});
                                       o.table.add(r.value.real(), r.value.imag(), std::abs(r.value), r.multiplicity);
                                   }
                                   o.result["roots"] = list;
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("census", "integer polynomials with small house against exp((ad)^(2/3+b))");
        sub->add_option("--d", args.census_d, "degree");
        sub->add_option("--a", args.census_a, "leading coefficient");
        sub->add_option("--b", args.census_b, "parameter b");
        sub->add_option("--tol", args.tol, "residual tolerance of the root finder");
        add_common(sub, false, true);
        register_command(sub, {[&, sub] {
                                   return json{{"d", args.census_d},
                                               {"a", args.census_a},
                                               {"b", args.census_b},
                                               {"tol", args.tol},
                                               {"budget", resolve_budget(*sub, args, kDefaultCensusBudget)}};
                               },
                               [&, sub] {
                                   const auto r = small_house_census(args.census_d, args.census_a, args.census_b,
                                                                     args.tol,
                                                                     resolve_budget(*sub, args, kDefaultCensusBudget),
                                                                     args.workers);
                                   Output o;
                                   json polys = json::array();
                                   o.table.columns = {"polynomial"};
                                   for (const auto& p : r.matching) {
                                       polys.push_back(to_json(p));
                                       o.table.rows.push_back({"\"" + to_string(p) + "\""});
                                   }
                                   o.result = {{"threshold", r.threshold},
                                               {"bound", r.bound},
                                               {"box_size", r.box_size.get_str()},
                                               {"nodes", r.nodes},
                                               {"scanned", r.scanned},
                                               {"count", r.matching.size()},
                                               {"pass", r.pass},
                                               {"matching", polys}};
                                   return o;
                               }});
    }
    {
        auto* sub = app.add_subcommand("power-sums", "exact power sums S_1..S_k by Newton's identities");
        sub->add_option("--poly", args.poly, "coefficients, constant term first")->required();
        sub->add_option("--k", args.k, "number of power sums")->default_str("degree");
        add_common(sub, false, false);
        auto upto = [&] { return args.k > 0 ? args.k : parse_polynomial(args.poly).degree(); };
        register_command(sub, {[&, upto] { return json{{"poly", to_json(parse_polynomial(args.poly))}, {"k", upto()}}; },
                               [&, upto] {
                                   const auto s = power_sums(parse_polynomial(args.poly), upto());
                                   Output o;
                                   json list = json::array();
                                   o.table.columns = {"k", "S_k"};
                                   for (std::size_t i = 0; i < s.size(); ++i) {
                                       list.push_back(to_string(s[i]));
                                       o.table.add(i + 1, s[i]);
                                   }
                                   o.result["S"] = list;
                                   return o;
                               }});
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        std::string message = e.what();
        std::replace(message.begin(), message.end(), '\n', ' ');
        return fail(kUsage, "usage", message);
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    try {
        const Command& cmd = commands.at(name);
        json header{{"command", name}, {"config", cmd.config()}};
        const auto start = std::chrono::steady_clock::now();
        Output o = cmd.body();
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!args.deterministic)
            header["run"] = {{"workers", args.workers}, {"elapsed_seconds", elapsed}};

        std::ofstream file;
        if (!args.out_path.empty()) {
            file.open(args.out_path);
            if (!file)
                return fail(kUsage, "usage", "cannot open --out " + args.out_path);
        }
        std::ostream& os = args.out_path.empty() ? out : file;
        if (args.format == "csv") {
            write_csv(os, header, o.table);
        } else {
            header["result"] = std::move(o.result);
            os << header.dump(2) << '\n';
        }
        return kOk;
    } catch (const BudgetExceeded& e) {
        return fail(kBudget, "budget_exceeded", e.what());
    } catch (const NonConverged& e) {
        return fail(kNonConverged, "non_converged", e.what());
    } catch (const MaxAtomTooLarge& e) {
        return fail(kUsage, "max_atom_too_large", e.what());
    } catch (const PreconditionError& e) {
        return fail(kUsage, "precondition", e.what());
    } catch (const DomainError& e) {
        return fail(kUsage, "domain", e.what());
    } catch (const json::exception& e) {
        return fail(kUsage, "bad_json", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kUsage, "invalid_argument", e.what());
    } catch (const std::exception& e) {
        return fail(kFailure, "internal", e.what());
    }
}

} // namespace randpoly::cli
