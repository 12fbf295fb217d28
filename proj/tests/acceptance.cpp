// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion also has a wall-clock limit.

#include "randpoly/anticoncentration.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/experiments.hpp"
#include "randpoly/mixture.hpp"
#include "randpoly/parallel.hpp"
#include "randpoly/polyalg.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace randpoly;

namespace {

struct Verdict {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            if (!ok)
                note << "; ";
            ok = false;
            note << what;
        }
    }
};

Rational q(long n, long d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Rational two_pow(int e)
{
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(std::abs(e)));
    return e >= 0 ? Rational(p) : Rational(1, p);
}

const unsigned kWorkers = default_workers();

void decomposition_exactness(Verdict& v)
{
    std::mt19937_64 rng(1001);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto support = static_cast<std::size_t>(testing::uniform_int(rng, 2, 12));
        const auto dist = testing::random_distribution(rng, support, 40, 30, true);
        if (reconstruct(decompose(dist)) != dist)
            ++bad;
    }
    v.require(bad == 0, std::to_string(bad) + " of 1000 balanced laws did not reconstruct");

    int accepted = 0;
    for (int i = 0; i < 100; ++i) {
        const auto support = static_cast<std::size_t>(testing::uniform_int(rng, 1, 12));
        auto base = testing::random_distribution(rng, support, 40, 30, false);
        // Push the first atom above one half.
        std::vector<Atom> atoms(base.atoms().begin(), base.atoms().end());
        const Rational extra = q(1, 2) + q(1, 2 * (i + 2));
        for (std::size_t j = 0; j < atoms.size(); ++j)
            atoms[j].weight = j == 0 ? extra : atoms[j].weight * (1 - extra) / (1 - base.atoms()[0].weight);
        const auto heavy = support == 1 ? IntegerDistribution::point_mass(atoms[0].value)
                                        : IntegerDistribution(std::move(atoms));
        try {
            decompose(heavy);
            ++accepted;
        } catch (const MaxAtomTooLarge&) {
        }
    }
    v.require(accepted == 0, std::to_string(accepted) + " of 100 heavy laws were accepted");
}

void anticoncentration_at_two(Verdict& v)
{
    const auto rows = max_point_mass_by_degree(IntegerDistribution::rademacher(), 20, 2);
    for (int n = 0; n <= 20; ++n)
        v.require(rows[static_cast<std::size_t>(n)].prob == two_pow(-(n + 1)),
                  "Rademacher p_max at n=" + std::to_string(n) + " is " + to_string(rows[static_cast<std::size_t>(n)].prob));

    const std::vector<std::pair<std::string, IntegerDistribution>> laws{
        {"uniform0..3", IntegerDistribution::uniform(0, 3)},
        {"uniform-1..1", IntegerDistribution::uniform(-1, 1)},
        {"uniform-1..2", IntegerDistribution::uniform(-1, 2)},
        {"uniform-1..3", IntegerDistribution::uniform(-1, 3)},
    };
    for (const auto& [name, dist] : laws)
        for (long a : {2L, -2L}) {
            const auto profile = epsilon_profile(dist, 10, 20, a, kDefaultEntryBudget);
            std::string worst;
            for (int n : profile.non_positive)
                worst += " " + std::to_string(n);
            v.require(profile.non_positive.empty(), name + " a=" + std::to_string(a) + " eps_n <= 0 at n =" + worst);
        }
}

void coins_claim(Verdict& v)
{
    std::mt19937_64 rng(1003);
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
        const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 14));
        std::vector<std::int64_t> b, d;
        for (std::size_t j = 0; j < n; ++j) {
            b.push_back(testing::uniform_int(rng, -50, 50));
            std::int64_t step = 0;
            while (step == 0)
                step = testing::uniform_int(rng, -256, 256);
            d.push_back(step);
        }
        if (!coins_bound_check(b, d).pass)
            ++failures;
    }
    v.require(failures == 0, std::to_string(failures) + " of 500 instances exceed the bound");

    std::vector<std::int64_t> zeros(14, 0), powers;
    for (int i = 0; i < 14; ++i)
        powers.push_back(std::int64_t{1} << i);
    const auto tight = coins_bound_check(zeros, powers);
    v.require(tight.max_mass == tight.bound && tight.bound == two_pow(-14), "powers of two do not attain the bound");
}

void w_tail(Verdict& v)
{
    for (const auto& law : {IntegerDistribution::uniform(0, 1), IntegerDistribution::uniform(0, 2)})
        for (int n = 1; n <= 12; ++n) {
            const auto pmf = w_exact_pmf(WModel(law, n), kDefaultEnumerationBudget, kWorkers);
            for (int k = 1; k < n; ++k) {
                const auto bound = w_binomial_bound(n, q(k, n));
                v.require(pmf.probability(k) <= bound.exact,
                          "P(W=" + std::to_string(k) + ") above the binomial bound at n=" + std::to_string(n));
                v.require(bound.chain_holds, "binomial chain fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
            }
        }
}

void w_mean(Verdict& v)
{
    const auto s = sample_w_mean(WModel(IntegerDistribution::uniform(0, 1), 100), 100'000, 1005);
    std::ostringstream msg;
    msg << "mean " << s.mean << " below 75 - 5 SE (SE " << s.std_error << ")";
    v.require(s.mean >= 75.0 - 5 * s.std_error, msg.str());
}

void fn_shape(Verdict& v)
{
    v.require(std::abs(f_n(1, 0.5) - 1.0) <= 1e-12, "f_1(1/2) != 1");
    const double c0 = locate_c0(0.5, 0.99, 1e-9);
    v.require(c0 > 0.68 && c0 < 0.69, "c0 = " + std::to_string(c0) + " outside (0.68, 0.69)");
    const double top = c0 - 1e-3;
    double prev = f_n(1, top / 10'000);
    for (int i = 2; i <= 10'000; ++i) {
        const double cur = f_n(1, top * i / 10'000);
        if (!(cur > prev)) {
            v.require(false, "f_1 not increasing at grid point " + std::to_string(i));
            break;
        }
        prev = cur;
    }
}

void double_root_census(Verdict& v)
{
    // Oracle: all 16 sign tuples through the gcd detector.
    int multiple = 0;
    for (int mask = 0; mask < 16; ++mask) {
        std::vector<Integer> c;
        for (int j = 0; j < 4; ++j)
            c.emplace_back((mask >> j) & 1 ? 1 : -1);
        if (has_multiple_root(IntPolynomial(std::move(c))))
            ++multiple;
    }
    const auto r3 = exact_double_root(IntegerDistribution::rademacher(), 3, 20'000'000, kWorkers);
    v.require(q(multiple, 16) == q(1, 4), "oracle count " + std::to_string(multiple) + "/16");
    v.require(r3.exact->any == q(1, 4) && r3.exact->at_pm1_or_0 == q(1, 4), "n=3 probabilities differ from 1/4");

    for (int n = 1; n <= 15; ++n) {
        const auto r = exact_double_root(IntegerDistribution::rademacher(), n, 20'000'000, kWorkers);
        const double scaled = n * n * to_double(r.exact->any);
        v.require(scaled <= 16.0, "n^2 p_any = " + std::to_string(scaled) + " at n=" + std::to_string(n));
        v.require(r.exact->at_pm1_or_0 <= r.exact->any, "located events exceed p_any at n=" + std::to_string(n));
    }
}

void mc_agreement(Verdict& v)
{
    const auto dist = IntegerDistribution::rademacher();
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto r = mc_double_root(dist, 3, 1'000'000, seed, kWorkers);
        const double p = r.estimate().any;
        const double sigma = std::sqrt(0.25 * 0.75 / 1e6);
        v.require(std::abs(p - 0.25) <= 5 * sigma, "seed " + std::to_string(seed) + " estimate " + std::to_string(p));
    }
    const auto one = mc_double_root(dist, 3, 1'000'000, 42, 1);
    for (unsigned w : {2u, 4u, 7u})
        v.require(*mc_double_root(dist, 3, 1'000'000, 42, w).counts == *one.counts,
                  "counts change with " + std::to_string(w) + " workers");
}

void root_geometry(Verdict& v)
{
    v.require(std::abs(house(IntPolynomial{3, -1, 3}) - 1.0) <= 1e-10, "house(3x^2 - x + 3) != 1");

    std::mt19937_64 rng(1009);
    int newton_bad = 0;
    for (int i = 0; i < 200; ++i) {
        const auto p = testing::random_polynomial(rng, static_cast<int>(testing::uniform_int(rng, 1, 10)), 100);
        for (const auto& r : newton_residuals(p, power_sums(p, p.degree())))
            if (r != 0)
                ++newton_bad;
    }
    v.require(newton_bad == 0, std::to_string(newton_bad) + " nonzero Newton residuals");

    int jensen_bad = 0;
    int worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const long M = testing::uniform_int(rng, 1, 5);
        const auto p = testing::random_polynomial(rng, static_cast<int>(testing::uniform_int(rng, 1, 50)), M);
        const auto j = jensen_check(p, M);
        worst = std::max(worst, j.count);
        if (!j.pass)
            ++jensen_bad;
    }
    v.require(jensen_bad == 0, std::to_string(jensen_bad) + " Jensen failures (largest count " + std::to_string(worst) + ")");
}

void census_bound(Verdict& v)
{
    std::string over;
    for (long a = 1; a <= 3; ++a)
        for (int d = 1; d <= 8; ++d) {
            const auto r = small_house_census(d, a, 1.0 / 6, 1e-10, kDefaultCensusBudget, kWorkers);
            const auto again = small_house_census(d, a, 1.0 / 6, 1e-10, kDefaultCensusBudget, kWorkers);
            v.require(again.matching == r.matching,
                      "repeat differs at d=" + std::to_string(d) + " a=" + std::to_string(a));
            if (static_cast<double>(r.matching.size()) > r.bound) {
                std::ostringstream item;
                item << " (d=" << d << ",a=" << a << ": " << r.matching.size() << " > " << r.bound << ")";
                over += item.str();
            }
        }
    v.require(over.empty(), "count above exp((ad)^(2/3+b)) at" + over);
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Verdict&)> body;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "decomposition exactness", 10, decomposition_exactness},
        {2, "point mass of P(+-2)", 300, anticoncentration_at_two},
        {3, "fair-coin sums", 60, coins_claim},
        {4, "W tail against the binomial bound", 60, w_tail},
        {5, "mean of W", 10, w_mean},
        {6, "f_n shape and c0", 1, fn_shape},
        {7, "exact double-root census", 300, double_root_census},
        {8, "Monte Carlo against exact", 60, mc_agreement},
        {9, "root geometry", 120, root_geometry},
        {10, "small-house census bound", 600, census_bound},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > c.limit_seconds) {
            std::ostringstream msg;
            msg << "took " << elapsed << " s, limit " << c.limit_seconds << " s";
            v.require(false, msg.str());
        }
        std::printf("%s criterion %2d  %-36s %8.2f s%s%s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, elapsed,
                    v.ok ? "" : "  ", v.note.str().c_str());
        std::fflush(stdout);
        if (!v.ok)
            ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
