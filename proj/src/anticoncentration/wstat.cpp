#include "randpoly/anticoncentration.hpp"

#include "randpoly/errors.hpp"
#include "randpoly/mixture.hpp"
#include "randpoly/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace randpoly {

WModel::WModel(IntegerDistribution law, int n) : law_(std::move(law)), n_(n)
{
    if (n_ < 1)
        throw PreconditionError("W model needs n >= 1");
    if (law_.min_value() < 0)
        throw PreconditionError("W model law must live on non-negative integers");
}

int w_statistic(std::span<const std::int64_t> w)
{
    std::vector<std::int64_t> sums;
    sums.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        sums.push_back(static_cast<std::int64_t>(i + 1) + w[i]);
    std::sort(sums.begin(), sums.end());
    return static_cast<int>(std::unique(sums.begin(), sums.end()) - sums.begin());
}

namespace {

// Depth-first enumeration of w-vectors with an occupancy table for i + w_i.
class WEnumerator {
public:
    WEnumerator(const WModel& model, std::vector<Integer> numerators)
        : n_(model.n()), numerators_(std::move(numerators)), acc_(static_cast<std::size_t>(model.n()) + 1)
    {
        for (const auto& a : model.law().atoms())
            values_.push_back(a.value);
        occupancy_.assign(static_cast<std::size_t>(n_ + model.law().max_value() + 2), 0);
    }

    void run_from(std::size_t first_atom)
    {
        place(1, first_atom);
        descend(2, numerators_[first_atom]);
        remove(1, first_atom);
    }

    std::vector<Integer>& accumulated() { return acc_; }

private:
    void place(int i, std::size_t atom)
    {
        if (occupancy_[static_cast<std::size_t>(i + values_[atom])]++ == 0)
            ++distinct_;
    }

    void remove(int i, std::size_t atom)
    {
        if (--occupancy_[static_cast<std::size_t>(i + values_[atom])] == 0)
            --distinct_;
    }

    void descend(int i, const Integer& weight)
    {
        if (i > n_) {
            acc_[static_cast<std::size_t>(distinct_)] += weight;
            return;
        }
        for (std::size_t t = 0; t < values_.size(); ++t) {
            place(i, t);
            descend(i + 1, weight * numerators_[t]);
            remove(i, t);
        }
    }

    int n_;
    std::vector<std::int64_t> values_;
    std::vector<Integer> numerators_;
    std::vector<int> occupancy_;
    int distinct_ = 0;
    std::vector<Integer> acc_;
};

} // namespace

SparsePMF w_exact_pmf(const WModel& model, std::size_t budget, unsigned workers)
{
    const std::size_t support = model.law().support_size();
    Integer leaves;
    mpz_ui_pow_ui(leaves.get_mpz_t(), support, static_cast<unsigned long>(model.n()));
    if (leaves > Integer(static_cast<unsigned long>(budget)))
        throw BudgetExceeded("W enumeration needs " + leaves.get_str() + " vectors, budget " +
                                 std::to_string(budget),
                             leaves.get_d(), static_cast<double>(budget));

    const Integer den = model.law().common_denominator();
    std::vector<Integer> numerators;
    for (const auto& a : model.law().atoms())
        numerators.push_back(a.weight.get_num() * (den / a.weight.get_den()));

    std::vector<std::vector<Integer>> partial(support);
    run_shards(workers, support, [&](std::size_t shard) {
        WEnumerator e(model, numerators);
        e.run_from(shard);
        partial[shard] = std::move(e.accumulated());
    });

    Integer total_den;
    mpz_pow_ui(total_den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(model.n()));
    std::vector<PmfEntry> entries;
    for (int w = 0; w <= model.n(); ++w) {
        Integer count = 0;
        for (const auto& part : partial)
            count += part[static_cast<std::size_t>(w)];
        if (count == 0)
            continue;
        Rational p(count, total_den);
        p.canonicalize();
        entries.push_back({Integer(w), std::move(p)});
    }
    return SparsePMF::from_sorted(std::move(entries));
}

BinomialBound w_binomial_bound(int n, const Rational& alpha)
{
    if (n < 1 || alpha <= 0 || alpha >= 1)
        throw PreconditionError("w_binomial_bound needs n >= 1 and 0 < alpha < 1");
    const Rational k = alpha * n;
    if (k.get_den() != 1)
        throw PreconditionError("alpha * n = " + to_string(k) + " is not an integer");

    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), k.get_num().get_ui());
    Rational power;
    mpz_pow_ui(power.get_num_mpz_t(), alpha.get_num_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(power.get_den_mpz_t(), alpha.get_den_mpz_t(), static_cast<unsigned long>(n));
    power.canonicalize();
    const Rational exact = power * binom;

    const double a = to_double(alpha);
    const double smooth = std::pow(a / (1.0 - a), n * (1.0 - a));
    return {exact, smooth, to_double(exact) <= smooth * (1.0 + 1e-12)};
}

UVector u_vector_and_U(std::span<const int> subset, const WModel& model)
{
    const int n = model.n();
    std::vector<char> in_set(static_cast<std::size_t>(n), 0);
    for (int x : subset) {
        if (x < 0 || x >= n)
            throw PreconditionError("subset element " + std::to_string(x) + " outside Z_n");
        if (in_set[static_cast<std::size_t>(x)])
            throw PreconditionError("subset element " + std::to_string(x) + " repeated");
        in_set[static_cast<std::size_t>(x)] = 1;
    }

    UVector out;
    out.product = 1;
    Rational sum = 0;
    for (int i = 1; i <= n; ++i) {
        Rational u = 0;
        for (const auto& a : model.law().atoms())
            if (in_set[static_cast<std::size_t>((i + a.value) % n)])
                u += a.weight;
        sum += u;
        out.product *= u;
        out.u.push_back(std::move(u));
    }
    out.balance_holds = (sum == static_cast<long>(subset.size()));

    Rational ratio(static_cast<long>(subset.size()), n);
    Rational bound;
    mpz_pow_ui(bound.get_num_mpz_t(), ratio.get_num_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(bound.get_den_mpz_t(), ratio.get_den_mpz_t(), static_cast<unsigned long>(n));
    bound.canonicalize();
    out.product_bound_holds = out.product <= bound;
    return out;
}

WLowerBound expected_w_lower_bound(const WModel& model)
{
    Rational squares = 0;
    for (const auto& a : model.law().atoms())
        squares += a.weight * a.weight;
    return {Rational(model.n()) / 2 * (1 + squares), squares / 2};
}

WSampleStats sample_w_mean(const WModel& model, std::size_t samples, std::uint64_t seed)
{
    if (samples < 2)
        throw PreconditionError("sample_w_mean needs at least 2 samples");
    const CoefficientSampler sampler(model.law());
    std::mt19937_64 rng(block_seed(seed, 0));
    std::vector<std::int64_t> w(static_cast<std::size_t>(model.n()));
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& x : w)
            x = sampler.draw(rng);
        const double value = w_statistic(w);
        const double delta = value - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (value - mean);
    }
    const double variance = m2 / static_cast<double>(samples - 1);
    return {mean, std::sqrt(variance / static_cast<double>(samples)), samples};
}

// ---------------------------------------------------------------------------

CoinsCheck coins_bound_check(std::span<const std::int64_t> b, std::span<const std::int64_t> d)
{
    if (b.size() != d.size())
        throw PreconditionError("coins: b and d differ in length");
    if (d.size() > 20)
        throw PreconditionError("coins: at most 20 coins");
    std::vector<unsigned> levels;
    for (auto di : d) {
        if (di == 0)
            throw PreconditionError("coins: zero step d_i");
        levels.push_back(leading_power_two(Integer(static_cast<long>(di))));
    }
    std::sort(levels.begin(), levels.end());
    const auto distinct = static_cast<unsigned>(std::unique(levels.begin(), levels.end()) - levels.begin());

    // Gray-code walk over {0,1}^n; the shift by sum b_i does not change masses.
    const std::size_t n = d.size();
    const std::size_t total = std::size_t{1} << n;
    std::vector<__int128> sums(total);
    __int128 current = 0;
    std::uint64_t state = 0;
    sums[0] = 0;
    for (std::size_t step = 1; step < total; ++step) {
        const unsigned bit = static_cast<unsigned>(__builtin_ctzll(step));
        state ^= std::uint64_t{1} << bit;
        if (state & (std::uint64_t{1} << bit))
            current += d[bit];
        else
            current -= d[bit];
        sums[step] = current;
    }
    std::sort(sums.begin(), sums.end());
    std::size_t best = 1;
    for (std::size_t i = 0, j = 0; i < total; i = j) {
        while (j < total && sums[j] == sums[i])
            ++j;
        best = std::max(best, j - i);
    }

    Rational max_mass(static_cast<unsigned long>(best), static_cast<unsigned long>(total));
    max_mass.canonicalize();
    Rational bound;
    mpz_ui_pow_ui(bound.get_den_mpz_t(), 2, distinct);
    bound.get_num() = 1;
    bound.canonicalize();
    return {max_mass, bound, distinct, max_mass <= bound};
}

// ---------------------------------------------------------------------------

double g_log_f1(double alpha)
{
    return (1.0 - alpha) * (std::log(alpha) - std::log1p(-alpha)) + (0.5 - alpha) * std::log(2.0);
}

double g_prime(double alpha)
{
    return -std::log(alpha) + std::log1p(-alpha) + 1.0 / alpha - std::log(2.0);
}

double f_n(int n, double alpha) { return std::exp(n * g_log_f1(alpha)); }

double locate_c0(double lo, double hi, double tol)
{
    if (!(g_prime(lo) > 0.0) || !(g_prime(hi) < 0.0))
        throw DomainError("g' does not change sign on the bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (g_prime(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

FnAnalysis f_n_analysis(int n, std::size_t grid_points)
{
    if (n < 1)
        throw PreconditionError("f_n analysis needs n >= 1");
    FnAnalysis out{n, {}, {}, locate_c0(), true};
    double previous = 0.0;
    bool have_previous = false;
    for (std::size_t i = 1; i <= grid_points; ++i) {
        const double alpha = static_cast<double>(i) / static_cast<double>(grid_points + 1);
        const double log_value = n * g_log_f1(alpha);
        out.alpha.push_back(alpha);
        out.value.push_back(std::exp(log_value));
        if (alpha < out.c0) {
            if (have_previous && !(log_value > previous))
                out.increasing_below_c0 = false;
            previous = log_value;
            have_previous = true;
        }
    }
    return out;
}

} // namespace randpoly
