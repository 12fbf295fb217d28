#include "randpoly/experiments.hpp"

#include "randpoly/errors.hpp"
#include "randpoly/mixture.hpp"
#include "randpoly/parallel.hpp"
#include "randpoly/polyalg.hpp"

#include <cmath>
#include <random>

namespace randpoly {

const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "monte-carlo"; }

namespace {

struct Flags {
    bool any, at_0, at_plus1, at_minus1;
};

Flags classify(std::span<const std::int64_t> xi)
{
    bool zero = true;
    for (auto c : xi)
        zero = zero && c == 0;
    if (zero)
        return {true, true, false, false};

    __int128 sum = 0, slope = 0, alt = 0, alt_slope = 0;
    for (std::size_t j = 0; j < xi.size(); ++j) {
        const __int128 c = xi[j];
        const __int128 sign = (j % 2 == 0) ? 1 : -1;
        sum += c;
        slope += c * static_cast<__int128>(j);
        alt += sign * c;
        alt_slope -= sign * c * static_cast<__int128>(j);
    }
    Flags f{};
    f.at_0 = xi[0] == 0 && (xi.size() < 2 || xi[1] == 0);
    f.at_plus1 = sum == 0 && slope == 0;
    f.at_minus1 = alt == 0 && alt_slope == 0;
    f.any = f.at_0 || f.at_plus1 || f.at_minus1 || has_multiple_root(xi);
    return f;
}

template <class T, class W>
void tally(DoubleRootEvents<T>& e, const Flags& f, const W& weight)
{
    if (f.any)
        e.any += weight;
    if (f.at_0)
        e.at_0 += weight;
    if (f.at_plus1)
        e.at_plus1 += weight;
    if (f.at_minus1)
        e.at_minus1 += weight;
    if (f.at_0 || f.at_plus1 || f.at_minus1)
        e.at_pm1_or_0 += weight;
}

template <class T>
void merge(DoubleRootEvents<T>& into, const DoubleRootEvents<T>& part)
{
    into.any += part.any;
    into.at_0 += part.at_0;
    into.at_plus1 += part.at_plus1;
    into.at_minus1 += part.at_minus1;
    into.at_pm1_or_0 += part.at_pm1_or_0;
}

template <class In, class Fn>
auto map_events(const DoubleRootEvents<In>& e, Fn fn)
{
    using Out = decltype(fn(e.any));
    return DoubleRootEvents<Out>{fn(e.any), fn(e.at_0), fn(e.at_plus1), fn(e.at_minus1), fn(e.at_pm1_or_0)};
}

class TupleWalker {
public:
    TupleWalker(const IntegerDistribution& dist, int n, const std::vector<Integer>& numerators)
        : numerators_(numerators), xi_(static_cast<std::size_t>(n) + 1), prefix_(static_cast<std::size_t>(n) + 2)
    {
        for (const auto& a : dist.atoms())
            values_.push_back(a.value);
    }

    DoubleRootEvents<Integer> run_from(std::size_t first)
    {
        DoubleRootEvents<Integer> out;
        xi_[0] = values_[first];
        prefix_[1] = numerators_[first];
        descend(1, out);
        return out;
    }

private:
    void descend(std::size_t pos, DoubleRootEvents<Integer>& out)
    {
        if (pos == xi_.size()) {
            tally(out, classify(xi_), prefix_[pos]);
            return;
        }
        for (std::size_t t = 0; t < values_.size(); ++t) {
            xi_[pos] = values_[t];
            prefix_[pos + 1] = prefix_[pos] * numerators_[t];
            descend(pos + 1, out);
        }
    }

    const std::vector<Integer>& numerators_;
    std::vector<std::int64_t> values_;
    std::vector<std::int64_t> xi_;
    std::vector<Integer> prefix_;
};

} // namespace

DoubleRootEvents<double> DoubleRootReport::estimate() const
{
    if (exact)
        return map_events(*exact, [](const Rational& p) { return to_double(p); });
    const double t = static_cast<double>(trials);
    return map_events(*counts, [t](std::uint64_t c) { return static_cast<double>(c) / t; });
}

DoubleRootEvents<double> DoubleRootReport::std_error() const
{
    if (exact)
        return {};
    const double t = static_cast<double>(trials);
    return map_events(estimate(), [t](double p) { return std::sqrt(p * (1.0 - p) / t); });
}

DoubleRootReport exact_double_root(const IntegerDistribution& dist, int n, std::size_t budget, unsigned workers)
{
    if (n < 0)
        throw PreconditionError("degree must be non-negative");
    Integer tuples;
    mpz_ui_pow_ui(tuples.get_mpz_t(), dist.support_size(), static_cast<unsigned long>(n) + 1);
    if (tuples > Integer(static_cast<unsigned long>(budget)))
        throw BudgetExceeded("exact double-root enumeration needs " + tuples.get_str() + " tuples, budget " +
                                 std::to_string(budget),
                             tuples.get_d(), static_cast<double>(budget));

    const Integer den = dist.common_denominator();
    std::vector<Integer> numerators;
    for (const auto& a : dist.atoms())
        numerators.push_back(a.weight.get_num() * (den / a.weight.get_den()));

    std::vector<DoubleRootEvents<Integer>> partial(dist.support_size());
    run_shards(workers, partial.size(), [&](std::size_t shard) {
        TupleWalker walker(dist, n, numerators);
        partial[shard] = walker.run_from(shard);
    });
    DoubleRootEvents<Integer> total;
    for (const auto& p : partial)
        merge(total, p);

    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n) + 1);
    DoubleRootReport report;
    report.n = n;
    report.mode = Mode::exact;
    report.exact = map_events(total, [&](const Integer& c) {
        Rational p(c, scale);
        p.canonicalize();
        return p;
    });
    report.trials = tuples.get_ui();
    return report;
}

DoubleRootReport mc_double_root(const IntegerDistribution& dist, int n, std::uint64_t trials, std::uint64_t seed,
                                unsigned workers)
{
    if (n < 0)
        throw PreconditionError("degree must be non-negative");
    if (trials == 0)
        throw PreconditionError("Monte Carlo needs at least one trial");
    const CoefficientSampler sampler(dist);
    const std::size_t blocks = (trials + kDefaultTrialBlock - 1) / kDefaultTrialBlock;
    std::vector<DoubleRootEvents<std::uint64_t>> partial(blocks);
    run_shards(workers, blocks, [&](std::size_t b) {
        std::mt19937_64 rng(block_seed(seed, b));
        const std::uint64_t begin = b * kDefaultTrialBlock;
        const std::uint64_t end = std::min<std::uint64_t>(trials, begin + kDefaultTrialBlock);
        std::vector<std::int64_t> xi(static_cast<std::size_t>(n) + 1);
        for (std::uint64_t t = begin; t < end; ++t) {
            for (auto& c : xi)
                c = sampler.draw(rng);
            tally(partial[b], classify(xi), std::uint64_t{1});
        }
    });
    DoubleRootEvents<std::uint64_t> total;
    for (const auto& p : partial)
        merge(total, p);

    DoubleRootReport report;
    report.n = n;
    report.mode = Mode::monte_carlo;
    report.counts = total;
    report.trials = trials;
    report.seed = seed;
    return report;
}

std::vector<int> default_scaling_degrees(const IntegerDistribution& dist, int n_max)
{
    const bool rademacher = dist == IntegerDistribution::rademacher();
    std::vector<int> out;
    for (int n = 1; n <= n_max; ++n)
        if (!rademacher || n % 4 == 3)
            out.push_back(n);
    return out;
}

std::vector<ScalingRow> scaling_table(const IntegerDistribution& dist, const std::vector<int>& degrees,
                                      std::size_t budget, std::uint64_t mc_trials, std::uint64_t seed,
                                      unsigned workers)
{
    std::vector<ScalingRow> rows;
    for (int n : degrees) {
        Integer tuples;
        mpz_ui_pow_ui(tuples.get_mpz_t(), dist.support_size(), static_cast<unsigned long>(std::max(n, 0)) + 1);
        const bool exact = tuples <= Integer(static_cast<unsigned long>(budget));
        const DoubleRootReport r =
            exact ? exact_double_root(dist, n, budget, workers) : mc_double_root(dist, n, mc_trials, seed, workers);
        const auto est = r.estimate();
        ScalingRow row{n, r.mode, std::nullopt, est.any, est.at_pm1_or_0,
                       static_cast<double>(n) * n * est.any, r.std_error().any};
        if (exact)
            row.p_any_exact = r.exact->any;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace randpoly
