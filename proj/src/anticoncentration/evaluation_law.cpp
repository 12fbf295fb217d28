#include "randpoly/anticoncentration.hpp"

#include "randpoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

namespace randpoly {

namespace {

using u128 = unsigned __int128;

Integer to_integer(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

Integer to_integer(u128 v)
{
    Integer hi = to_integer(static_cast<std::uint64_t>(v >> 64));
    hi <<= 64;
    return hi + to_integer(static_cast<std::uint64_t>(v));
}

const Integer& to_integer(const Integer& v) { return v; }

template <class Count>
Count from_integer(const Integer& z)
{
    if constexpr (std::is_same_v<Count, Integer>) {
        return z;
    } else {
        Integer lo = z;
        Count out = 0;
        for (int shift = 0; lo != 0; shift += 32) {
            const Integer limb = lo & 0xffffffffUL;
            out |= static_cast<Count>(limb.get_ui()) << shift;
            lo >>= 32;
        }
        return out;
    }
}

// Dense law of S_k = sum_{j<k} xi_j a^j: counts[i] / D^k is the probability
// of the value lo + i, where D is the common denominator of the atom weights.
template <class Count>
class DenseLaw {
public:
    DenseLaw(const IntegerDistribution& dist, long a) : a_(a)
    {
        const Integer den = dist.common_denominator();
        for (const auto& atom : dist.atoms()) {
            values_.push_back(atom.value);
            weights_.push_back(from_integer<Count>(atom.weight.get_num() * (den / atom.weight.get_den())));
        }
        counts_.push_back(Count(1));
        lo_ = 0;
        scale_ = 1;
        denominator_ = 1;
        den_ = den;
    }

    // Adds the next coefficient xi_k a^k.
    void step()
    {
        const Integer& s = scale_;
        Integer min_term = s * values_.front();
        Integer max_term = s * values_.back();
        if (min_term > max_term)
            std::swap(min_term, max_term);
        const Integer spread = max_term - min_term;
        const std::size_t width = counts_.size();
        std::vector<Count> next(width + spread.get_ui(), Count(0));
        for (std::size_t t = 0; t < values_.size(); ++t) {
            const std::size_t shift = Integer(s * values_[t] - min_term).get_ui();
            const Count& w = weights_[t];
            Count* dst = next.data() + shift;
            for (std::size_t i = 0; i < width; ++i)
                dst[i] += counts_[i] * w;
        }
        counts_ = std::move(next);
        lo_ += min_term;
        scale_ *= a_;
        denominator_ *= den_;
    }

    PointMass max_mass() const
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < counts_.size(); ++i)
            if (counts_[i] > counts_[best])
                best = i;
        Rational p(to_integer(counts_[best]), denominator_);
        p.canonicalize();
        return {lo_ + static_cast<unsigned long>(best), p};
    }

    SparsePMF to_pmf() const
    {
        std::vector<PmfEntry> entries;
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            if (counts_[i] == Count(0))
                continue;
            Rational p(to_integer(counts_[i]), denominator_);
            p.canonicalize();
            entries.push_back({lo_ + static_cast<unsigned long>(i), std::move(p)});
        }
        return SparsePMF::from_sorted(std::move(entries));
    }

private:
    long a_;
    std::vector<std::int64_t> values_;
    std::vector<Count> weights_;
    std::vector<Count> counts_;
    Integer lo_;
    Integer scale_;
    Integer denominator_;
    Integer den_;
};

void check_budget(const IntegerDistribution& dist, int n, long a, std::size_t budget)
{
    if (n < 0)
        throw PreconditionError("degree must be non-negative");
    const Integer entries = evaluation_range_entries(dist, n, a);
    if (entries > Integer(static_cast<unsigned long>(budget)))
        throw BudgetExceeded("value range of P(" + std::to_string(a) + ") at degree " + std::to_string(n) +
                                 " needs " + entries.get_str() + " entries, budget " + std::to_string(budget),
                             entries.get_d(), static_cast<double>(budget));
}

// Picks the narrowest exact count type: every count, and every product
// count * weight, is at most D^(n+1).
template <class Fn>
auto with_count_type(const IntegerDistribution& dist, int n, Fn&& fn)
{
    Integer top;
    mpz_pow_ui(top.get_mpz_t(), dist.common_denominator().get_mpz_t(), static_cast<unsigned long>(n) + 1);
    const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
    if (bits <= 64)
        return fn(std::type_identity<std::uint64_t>{});
    if (bits <= 128)
        return fn(std::type_identity<u128>{});
    return fn(std::type_identity<Integer>{});
}

} // namespace

unsigned leading_power_two(const Integer& k)
{
    if (k == 0)
        throw DomainError("leading power of two is undefined for 0");
    return static_cast<unsigned>(mpz_scan1(k.get_mpz_t(), 0));
}

Integer evaluation_range_entries(const IntegerDistribution& dist, int n, long a)
{
    Integer geometric = 0;
    Integer term = 1;
    const long mag = std::abs(a);
    for (int j = 0; j <= n; ++j) {
        geometric += term;
        term *= mag;
    }
    const Integer spread = Integer(static_cast<long>(dist.max_value())) - static_cast<long>(dist.min_value());
    return spread * geometric + 1;
}

SparsePMF exact_pmf_of_evaluation(const IntegerDistribution& dist, int n, long a, std::size_t budget)
{
    check_budget(dist, n, a, budget);
    return with_count_type(dist, n, [&](auto tag) {
        DenseLaw<typename decltype(tag)::type> law(dist, a);
        for (int j = 0; j <= n; ++j)
            law.step();
        return law.to_pmf();
    });
}

PointMass max_point_mass(const SparsePMF& pmf)
{
    const auto entries = pmf.entries();
    const PmfEntry* best = &entries.front();
    for (const auto& e : entries)
        if (e.prob > best->prob)
            best = &e;
    return {best->value, best->prob};
}

std::vector<PointMass> max_point_mass_by_degree(const IntegerDistribution& dist, int n_max, long a,
                                                std::size_t budget)
{
    check_budget(dist, n_max, a, budget);
    return with_count_type(dist, n_max, [&](auto tag) {
        DenseLaw<typename decltype(tag)::type> law(dist, a);
        std::vector<PointMass> out;
        out.reserve(static_cast<std::size_t>(n_max) + 1);
        for (int j = 0; j <= n_max; ++j) {
            law.step();
            out.push_back(law.max_mass());
        }
        return out;
    });
}

EpsilonProfile epsilon_profile(const IntegerDistribution& dist, int n_lo, int n_hi, long a, std::size_t budget)
{
    if (max_atom(dist) * 2 > 1)
        throw MaxAtomTooLarge("epsilon_profile requires max atom <= 1/2, got " + to_string(max_atom(dist)));
    if (n_lo < 1)
        throw PreconditionError("epsilon_profile: degrees start at 1");
    EpsilonProfile profile{a, {}, {}};
    if (n_lo > n_hi)
        return profile;
    const auto masses = max_point_mass_by_degree(dist, n_hi, a, budget);
    for (int n = n_lo; n <= n_hi; ++n) {
        const PointMass& pm = masses[static_cast<std::size_t>(n)];
        const double eps = -log2_of(pm.prob) / n - 0.5;
        profile.rows.push_back({n, pm.prob, pm.value, eps});
        if (!(eps > 0))
            profile.non_positive.push_back(n);
    }
    return profile;
}

LambdaTable estimate_lambda(const IntegerDistribution& dist, int n_lo, int n_hi, long a, std::size_t budget)
{
    LambdaTable table;
    if (n_lo > n_hi)
        return table;
    if (n_lo < 0)
        throw PreconditionError("estimate_lambda: negative degree");
    const auto masses = max_point_mass_by_degree(dist, n_hi, a, budget);
    for (int n = n_lo; n <= n_hi; ++n) {
        const Rational& p = masses[static_cast<std::size_t>(n)].prob;
        table.rows.push_back({n, p, -log2_of(p) * std::log(2.0) / (n + 1)});
    }
    // masses[k - 1] is p for k coefficients.
    const int kmax = n_hi + 1;
    for (int k1 = 1; k1 < kmax; ++k1) {
        for (int k2 = k1; k1 + k2 <= kmax; ++k2) {
            ++table.submultiplicative_checked;
            const Rational& joint = masses[static_cast<std::size_t>(k1 + k2 - 1)].prob;
            if (joint < masses[static_cast<std::size_t>(k1 - 1)].prob * masses[static_cast<std::size_t>(k2 - 1)].prob)
                ++table.submultiplicative_violations;
        }
    }
    return table;
}

} // namespace randpoly
