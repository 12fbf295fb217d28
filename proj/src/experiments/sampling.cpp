#include "randpoly/experiments.hpp"

#include "randpoly/errors.hpp"
#include "randpoly/mixture.hpp"
#include "randpoly/parallel.hpp"

#include <cmath>
#include <random>

namespace randpoly {

namespace {

// Runs `trial(rng, xi)` over seeded blocks and sums the per-block hit vectors.
template <class Trial>
std::vector<std::uint64_t> run_trials(const IntegerDistribution& dist, int n, std::uint64_t trials,
                                      std::uint64_t seed, std::size_t outcomes, unsigned workers, Trial trial)
{
    const CoefficientSampler sampler(dist);
    const std::size_t blocks = (trials + kDefaultTrialBlock - 1) / kDefaultTrialBlock;
    std::vector<std::vector<std::uint64_t>> partial(blocks, std::vector<std::uint64_t>(outcomes, 0));
    run_shards(workers, blocks, [&](std::size_t b) {
        std::mt19937_64 rng(block_seed(seed, b));
        const std::uint64_t begin = b * kDefaultTrialBlock;
        const std::uint64_t end = std::min<std::uint64_t>(trials, begin + kDefaultTrialBlock);
        std::vector<std::int64_t> xi(static_cast<std::size_t>(n) + 1);
        for (std::uint64_t t = begin; t < end; ++t) {
            for (auto& c : xi)
                c = sampler.draw(rng);
            trial(xi, partial[b]);
        }
    });
    std::vector<std::uint64_t> total(outcomes, 0);
    for (const auto& p : partial)
        for (std::size_t i = 0; i < outcomes; ++i)
            total[i] += p[i];
    return total;
}

double std_error(double p, std::uint64_t trials) { return std::sqrt(p * (1.0 - p) / static_cast<double>(trials)); }

} // namespace

DivisibilityReport divisibility_experiment(const IntegerDistribution& dist, int n, long a,
                                           const std::vector<std::int64_t>& ks, std::uint64_t trials,
                                           std::uint64_t seed, unsigned workers)
{
    if (trials == 0)
        throw PreconditionError("divisibility experiment needs at least one trial");
    if (a != 2 && a != -2)
        throw PreconditionError("divisibility experiment evaluates at a = 2 or a = -2");
    if (n < 0)
        throw PreconditionError("degree must be non-negative");
    std::vector<__int128> moduli;
    for (auto k : ks) {
        if (k < 1 || k >= (std::int64_t{1} << 31))
            throw PreconditionError("k = " + std::to_string(k) + " outside [1, 2^31)");
        moduli.push_back(static_cast<__int128>(k) * k);
    }

    const auto hits = run_trials(dist, n, trials, seed, ks.size(), workers,
                                 [&](const std::vector<std::int64_t>& xi, std::vector<std::uint64_t>& out) {
                                     for (std::size_t i = 0; i < moduli.size(); ++i) {
                                         const __int128 m = moduli[i];
                                         __int128 v = 0;
                                         for (std::size_t j = xi.size(); j-- > 0;)
                                             v = (v * a + xi[j]) % m;
                                         if (v == 0)
                                             ++out[i];
                                     }
                                 });

    DivisibilityReport report{a, n, trials, seed, {}};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t points = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double f = static_cast<double>(hits[i]) / static_cast<double>(trials);
        report.rows.push_back({ks[i], hits[i], f, std_error(f, trials), 0.0});
        if (ks[i] >= 2 && f > 0) {
            const double x = std::log(static_cast<double>(ks[i]));
            const double y = std::log(f);
            sx += x, sy += y, sxx += x * x, sxy += x * y;
            ++points;
        }
    }
    const double m = static_cast<double>(points);
    const double denom = m * sxx - sx * sx;
    if (points >= 2 && denom > 1e-12) {
        const double slope = (m * sxy - sx * sy) / denom;
        report.fit_c = std::exp((sy - slope * sx) / m);
        report.fit_eps = -slope - 1.0;
        report.fit_valid = true;
        for (auto& row : report.rows)
            row.fitted = report.fit_c * std::pow(static_cast<double>(row.k), slope);
    }
    return report;
}

TailReport tail_near_two_check(const IntegerDistribution& dist, int n, std::uint64_t trials, std::uint64_t seed,
                               double C, unsigned workers)
{
    if (trials == 0)
        throw PreconditionError("tail check needs at least one trial");
    if (n < 1)
        throw PreconditionError("tail check needs n >= 1");
    // |P(2)| <= n^-C 2^n  <=>  log2 |P(2)| <= n - C log2 n
    const double limit = static_cast<double>(n) - C * std::log2(static_cast<double>(n));
    const auto hits = run_trials(dist, n, trials, seed, 1, workers,
                                 [&](const std::vector<std::int64_t>& xi, std::vector<std::uint64_t>& out) {
                                     Integer v = 0;
                                     for (std::size_t j = xi.size(); j-- > 0;) {
                                         v *= 2;
                                         v += static_cast<long>(xi[j]);
                                     }
                                     if (v == 0 || log2_of(Integer(abs(v))) <= limit)
                                         ++out[0];
                                 });
    const double f = static_cast<double>(hits[0]) / static_cast<double>(trials);
    return {n, C, trials, seed, hits[0], f, std_error(f, trials)};
}

} // namespace randpoly
