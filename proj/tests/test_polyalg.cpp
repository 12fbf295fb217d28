#include "randpoly/errors.hpp"
#include "randpoly/polyalg.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace randpoly;

namespace {

using cplx = std::complex<double>;

Rational q(long n, long d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::vector<double> moduli(const RootSet& s)
{
    std::vector<double> out;
    for (const auto& r : s.roots)
        out.push_back(std::abs(r.value));
    return out;
}

// Nearest root to z, by distance.
double distance_to_roots(const RootSet& s, cplx z)
{
    double best = INFINITY;
    for (const auto& r : s.roots)
        best = std::min(best, std::abs(r.value - z));
    return best;
}

double min_pairwise_distance(const RootSet& s)
{
    double best = INFINITY;
    for (std::size_t i = 0; i < s.roots.size(); ++i)
        for (std::size_t j = i + 1; j < s.roots.size(); ++j)
            best = std::min(best, std::abs(s.roots[i].value - s.roots[j].value));
    return best;
}

} // namespace

TEST_CASE("multiple root examples")
{
    CHECK(has_multiple_root(IntPolynomial{1, -1, -1, 1}));
    CHECK_FALSE(has_multiple_root(IntPolynomial{1, 0, 1}));
    CHECK(has_multiple_root(IntPolynomial{1, 1, -1, -1}));
    CHECK(multiple_part_degree(IntPolynomial{1, -1, -1, 1}) == 1);
    CHECK(multiple_part_degree(IntPolynomial{0, 0, 0, 5}) == 2);
    CHECK_FALSE(has_multiple_root(IntPolynomial{7}));
    CHECK_THROWS_AS(has_multiple_root(IntPolynomial{}), PreconditionError);

    const std::vector<std::int64_t> raw{1, 1, -1, -1, 0, 0};
    CHECK(has_multiple_root(std::span<const std::int64_t>(raw)));
    CHECK(multiple_part_degree(std::span<const std::int64_t>(raw)) == 1);
    const std::vector<std::int64_t> zero{0, 0};
    CHECK_THROWS_AS(has_multiple_root(std::span<const std::int64_t>(zero)), PreconditionError);

    CHECK(squarefree_part(IntPolynomial{1, -1, -1, 1}) == IntPolynomial{-1, 0, 1});
}

TEST_CASE("double root at a located point")
{
    const IntPolynomial p{1, 1, -1, -1};
    CHECK(double_root_at(p, -1));
    CHECK_FALSE(double_root_at(p, 1));
    CHECK_FALSE(double_root_at(p, 0));
    CHECK(double_root_at(IntPolynomial{0, 0, 1, 1}, 0));
    CHECK_FALSE(double_root_at(IntPolynomial{1, 1}, 1));
    CHECK(double_root_at(IntPolynomial{1, -2, 1}, 1));
}

TEST_CASE("squares are always detected")
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const auto p = testing::random_polynomial(rng, static_cast<int>(testing::uniform_int(rng, 0, 8)), 20);
        const auto r = testing::random_polynomial(rng, static_cast<int>(testing::uniform_int(rng, 1, 8)), 20);
        const auto f = p * r * r;
        CHECK(has_multiple_root(f));
        CHECK(multiple_part_degree(f) >= r.degree());
    }
}

TEST_CASE("products of distinct linear factors are square-free")
{
    std::mt19937_64 rng(32);
    for (int i = 0; i < 100; ++i) {
        const auto k = testing::uniform_int(rng, 1, 8);
        std::set<Rational> used;
        IntPolynomial f{1};
        while (static_cast<long>(used.size()) < k) {
            const long a = testing::uniform_int(rng, 1, 6);
            const long b = testing::uniform_int(rng, -9, 9);
            if (!used.insert(q(b, a)).second)
                continue;
            f = f * IntPolynomial{-b, a};
        }
        // x^2 + 1 has no rational roots, so it stays coprime to the rest.
        if (i % 2)
            f = f * IntPolynomial{1, 0, 1};
        CHECK_FALSE(has_multiple_root(f));
        CHECK(squarefree_part(f).degree() == f.degree());
    }
}

TEST_CASE("exact detection agrees with a floating point oracle")
{
    std::mt19937_64 rng(33);
    int compared = 0;
    for (int i = 0; i < 1000; ++i) {
        const int deg = static_cast<int>(testing::uniform_int(rng, 2, 10));
        auto f = testing::random_polynomial(rng, deg, 6);
        // A third of the cases carry a planted square.
        if (i % 3 == 0)
            f = testing::random_polynomial(rng, deg / 2, 6) *
                IntPolynomial{testing::uniform_int(rng, -3, 3), 1} * IntPolynomial{testing::uniform_int(rng, -3, 3), 1};
        RootSet s;
        try {
            s = roots_complex(f, 1e-6);
        } catch (const NonConverged&) {
            continue;
        }
        const double gap = min_pairwise_distance(s);
        // Multiple roots come back smeared to about sqrt(eps); in between is
        // too close to call.
        if (gap > 1e-6 && gap < 1e-3)
            continue;
        CHECK(has_multiple_root(f) == (gap <= 1e-6));
        ++compared;
    }
    CHECK(compared > 950);
}

TEST_CASE("root finder examples")
{
    auto s = roots_complex(IntPolynomial{2, -3, 1});
    REQUIRE(s.roots.size() == 2);
    CHECK(s.converged);
    CHECK(distance_to_roots(s, 1.0) < 1e-10);
    CHECK(distance_to_roots(s, 2.0) < 1e-10);

    s = roots_complex(IntPolynomial{3, -1, 3});
    const double im = std::sqrt(35.0) / 6;
    CHECK(distance_to_roots(s, {1.0 / 6, im}) < 1e-10);
    CHECK(distance_to_roots(s, {1.0 / 6, -im}) < 1e-10);
    for (double m : moduli(s))
        CHECK(std::abs(m - 1.0) < 1e-10);

    s = roots_complex(IntPolynomial{1, 0, 0, 0, 1});
    REQUIRE(s.roots.size() == 4);
    for (int k : {1, 3, 5, 7})
        CHECK(distance_to_roots(s, std::polar(1.0, k * std::numbers::pi / 4)) < 1e-10);

    s = roots_complex(IntPolynomial{0, 0, 1, 1});
    REQUIRE(s.roots.size() == 3);
    CHECK(distance_to_roots(s, 0.0) == 0.0);
    CHECK(distance_to_roots(s, -1.0) < 1e-10);

    s = roots_complex(IntPolynomial{1, -2, 1});
    CHECK(s.roots[0].multiplicity == 2);
    CHECK_THROWS_AS(roots_complex(IntPolynomial{5}), PreconditionError);
}

TEST_CASE("house examples")
{
    CHECK(std::abs(house(IntPolynomial{3, -1, 3}) - 1.0) < 1e-10);
    CHECK(house(IntPolynomial{-4, 2}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(house(IntPolynomial{1, 0, 1}) == doctest::Approx(1.0).epsilon(1e-12));
    // A fourfold root at 1 still has house 1.
    CHECK(house(IntPolynomial{1, -4, 6, -4, 1}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("roots rebuild the coefficients")
{
    std::mt19937_64 rng(34);
    for (int i = 0; i < 100; ++i) {
        const auto p = testing::random_polynomial(rng, static_cast<int>(testing::uniform_int(rng, 1, 20)), 10);
        if (has_multiple_root(p))
            continue;
        const auto s = roots_complex(p);
        REQUIRE(static_cast<int>(s.roots.size()) == p.degree());
        std::vector<cplx> c{p.coeff(p.degree()).get_d()};
        for (const auto& r : s.roots) {
            c.push_back(0.0);
            for (std::size_t j = c.size() - 1; j > 0; --j)
                c[j] -= r.value * c[j - 1];
        }
        // c now runs from the leading coefficient down.
        double scale = 0.0;
        for (const auto& x : p.coeffs())
            scale = std::max(scale, std::abs(x.get_d()));
        for (int j = 0; j <= p.degree(); ++j)
            CHECK(std::abs(c[static_cast<std::size_t>(p.degree() - j)] - p.coeff(j).get_d()) <= 1e-8 * scale);
    }
}

TEST_CASE("self-reciprocal polynomials with a dominant middle lie on the circle")
{
    std::mt19937_64 rng(35);
    for (int i = 0; i < 50; ++i) {
        const int m = static_cast<int>(testing::uniform_int(rng, 1, 8));
        std::vector<long> b(static_cast<std::size_t>(m) + 1);
        long sum = 0;
        for (int k = 1; k < m; ++k) {
            b[static_cast<std::size_t>(k)] = testing::uniform_int(rng, -5, 5);
            sum += std::abs(b[static_cast<std::size_t>(k)]);
        }
        // b_0 = b_m with |b_m| > sum / 2.
        const long lead = sum / 2 + 1 + testing::uniform_int(rng, 0, 3);
        b[0] = b[static_cast<std::size_t>(m)] = testing::uniform_int(rng, 0, 1) ? lead : -lead;
        std::vector<Integer> c;
        for (int k = 0; k <= m; ++k)
            c.emplace_back(b[static_cast<std::size_t>(k)]);
        // Mirror so that c_k = c_{m-k}.
        for (int k = 1; k < m; ++k)
            c[static_cast<std::size_t>(m - k)] = c[static_cast<std::size_t>(k)];
        const IntPolynomial p(std::move(c));
        const auto sf = squarefree_part(p);
        if (sf.degree() < 1)
            continue;
        for (double r : moduli(roots_complex(sf)))
            CHECK(std::abs(r - 1.0) < 1e-6);
    }
}

TEST_CASE("root counting and the Jensen check")
{
    CHECK(count_roots_modulus_ge(IntPolynomial{2, -3, 1}) == 1);
    CHECK(jensen_check(IntPolynomial{2, -3, 1}, 3).pass);
    for (int n = 2; n <= 30; ++n) {
        std::vector<Integer> c(static_cast<std::size_t>(n) + 1, 0);
        c[0] = -2;
        c.back() = 1;
        CHECK(count_roots_modulus_ge(IntPolynomial(c)) == 0);
    }
    // A root exactly on the threshold counts.
    CHECK(count_roots_modulus_ge(IntPolynomial{-3, 2}) == 1);
    CHECK_THROWS_AS(jensen_check(IntPolynomial{2, -3, 1}, 2), PreconditionError);

    std::mt19937_64 rng(36);
    for (int i = 0; i < 100; ++i) {
        std::vector<Integer> c;
        const int deg = static_cast<int>(testing::uniform_int(rng, 1, 50));
        for (int j = 0; j <= deg; ++j)
            c.emplace_back(testing::uniform_int(rng, 0, 1) ? 1 : -1);
        const auto r = jensen_check(IntPolynomial(std::move(c)), 1);
        CHECK(r.bound == 64);
        CHECK(r.pass);
    }
}

TEST_CASE("power sum examples")
{
    CHECK(power_sums(IntPolynomial{2, -3, 1}, 2) == std::vector<Rational>{3, 5});
    CHECK(power_sums(IntPolynomial{0, 0, 0, 0, 7}, 4) == std::vector<Rational>{0, 0, 0, 0});
    CHECK(power_sums(IntPolynomial{3, -1, 3}, 2) == std::vector<Rational>{q(1, 3), q(-17, 9)});
    CHECK_THROWS_AS(power_sums(IntPolynomial{2, -3, 1}, 3), PreconditionError);
    CHECK_THROWS_AS(power_sums(IntPolynomial{2, -3, 1}, 0), PreconditionError);
}

TEST_CASE("Newton identities and numeric power sums")
{
    std::mt19937_64 rng(37);
    for (int i = 0; i < 200; ++i) {
        const auto p = testing::random_polynomial(rng, static_cast<int>(testing::uniform_int(rng, 1, 10)), 30);
        const auto sums = power_sums(p, p.degree());
        for (const auto& r : newton_residuals(p, sums))
            CHECK(r == 0);
        if (i % 4 || has_multiple_root(p))
            continue;
        const auto s = roots_complex(p);
        for (int k = 1; k <= p.degree(); ++k) {
            cplx numeric = 0.0;
            double size = 0.0;
            for (const auto& r : s.roots) {
                numeric += std::pow(r.value, k);
                size += std::pow(std::abs(r.value), k);
            }
            CHECK(std::abs(numeric - to_double(sums[static_cast<std::size_t>(k - 1)])) <= 1e-6 * (1.0 + size));
        }
    }
}

TEST_CASE("separation of power sums")
{
    auto s = separation_check(IntPolynomial{2, -3, 1}, IntPolynomial{1, -3, 1}, 2);
    CHECK(s.difference == 2);
    CHECK(s.matches);
    CHECK(s.lower_powers_agree);
    s = separation_check(IntPolynomial{5, 2, 1}, IntPolynomial{5, 3, 1}, 1);
    CHECK(s.difference == 1);
    CHECK(s.matches);
    s = separation_check(IntPolynomial{1, 1, 2}, IntPolynomial{-1, 1, 2}, 2);
    CHECK(s.difference == 2);
    CHECK(s.predicted == 2);
    CHECK(s.matches);
    CHECK_THROWS_AS(separation_check(IntPolynomial{1, 1, 2}, IntPolynomial{1, 1, 3}, 2), PreconditionError);
    CHECK_THROWS_AS(separation_check(IntPolynomial{1, 1, 2}, IntPolynomial{1, 2, 2}, 2), PreconditionError);
}

TEST_CASE("root of unity test")
{
    auto r = is_root_of_unity(IntPolynomial{1, 1, 1});
    CHECK(r.is_root_of_unity);
    CHECK(r.order == 3);
    r = is_root_of_unity(IntPolynomial{3, -1, 3});
    CHECK_FALSE(r.is_root_of_unity);
    CHECK_FALSE(r.order.has_value());
    r = is_root_of_unity(IntPolynomial{-1, 1});
    CHECK(r.order == 1);
    CHECK(is_root_of_unity(IntPolynomial{1, 1}).order == 2);
    CHECK(is_root_of_unity(IntPolynomial{1, -1, 1}).order == 6);
    CHECK(is_root_of_unity(IntPolynomial{1, 0, 0, 0, 1}).order == 8);
    CHECK(is_root_of_unity(IntPolynomial{1, 0, -1, 0, 1}).order == 12);
    CHECK_FALSE(is_root_of_unity(IntPolynomial{1, 1, 1}, 2).is_root_of_unity);
    CHECK_FALSE(is_root_of_unity(IntPolynomial{-2, 1}).is_root_of_unity);
}

TEST_CASE("divisibility by a square")
{
    CHECK(divisible_by_square(12, 2));
    CHECK_FALSE(divisible_by_square(12, 3));
    CHECK(divisible_by_square(0, 17));
    CHECK(divisible_by_square(-50, 5));
    CHECK_THROWS_AS(divisible_by_square(4, 0), PreconditionError);
}

TEST_CASE("off-circle bound")
{
    auto b = off_circle_root_bound(2.0, 1, 100);
    CHECK(b.ell == 1);
    CHECK(b.bound == doctest::Approx(std::ldexp(1.0, -100)).epsilon(1e-12));
    b = off_circle_root_bound(1.01, 1, 700);
    CHECK(b.ell == 70);
    CHECK(b.bound == doctest::Approx(std::exp(-700 * std::log(2.0) / 70)).epsilon(1e-12));
    b = off_circle_root_bound(0.5, 3, 10);
    CHECK(b.ell == 2);
    CHECK_THROWS_AS(off_circle_root_bound(1.0, 1, 10), DomainError);
    CHECK_THROWS_AS(off_circle_root_bound(0.0, 1, 10), PreconditionError);
}
