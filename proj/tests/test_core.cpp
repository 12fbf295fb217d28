#include "randpoly/core.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/serialize.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace randpoly;

namespace {

IntegerDistribution law(std::vector<std::pair<long, const char*>> atoms)
{
    std::vector<Atom> out;
    for (auto [v, w] : atoms)
        out.push_back({v, parse_rational(w)});
    return IntegerDistribution(std::move(out));
}

} // namespace

TEST_CASE("rational text form")
{
    CHECK(to_string(Rational(1, 2)) == "1/2");
    CHECK(to_string(Rational(3)) == "3/1");
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("5") == 5);
    CHECK_THROWS_AS(parse_rational("1/0"), PreconditionError);
    CHECK_THROWS_AS(parse_rational("abc"), PreconditionError);
    CHECK(parse_integer("-12345678901234567890") == Integer("-12345678901234567890"));
}

TEST_CASE("to_double is exact on dyadic rationals and survives huge quotients")
{
    CHECK(to_double(Rational(31, 1024)) == 0.0302734375);
    Integer big;
    mpz_ui_pow_ui(big.get_mpz_t(), 2, 5000);
    CHECK(to_double(Rational(big + 1, big)) == doctest::Approx(1.0));
    CHECK(log2_of(Rational(1, big)) == doctest::Approx(-5000.0));
}

TEST_CASE("distribution validation")
{
    CHECK_THROWS_AS(law({{0, "1/2"}, {0, "1/2"}}), PreconditionError);
    CHECK_THROWS_AS(law({{0, "1/2"}, {1, "1/3"}}), PreconditionError);
    CHECK_THROWS_AS(law({{0, "0"}, {1, "1"}}), PreconditionError);
    CHECK_THROWS_AS(IntegerDistribution({}), PreconditionError);
    const auto d = law({{3, "1/4"}, {-1, "3/4"}});
    CHECK(d.min_value() == -1);
    CHECK(d.max_value() == 3);
    CHECK(d.bound() == 3);
    CHECK(d.weight_of(3) == Rational(1, 4));
    CHECK(d.weight_of(7) == 0);
    CHECK(d.common_denominator() == 4);
}

TEST_CASE("max_atom examples")
{
    CHECK(max_atom(IntegerDistribution::rademacher()) == Rational(1, 2));
    CHECK(max_atom(IntegerDistribution::uniform(0, 3)) == Rational(1, 4));
    CHECK(max_atom(law({{0, "3/5"}, {1, "2/5"}})) == Rational(3, 5));
}

TEST_CASE("max_atom is at least one over the support size")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto d = testing::random_distribution(rng, 1 + i % 9, 20, 9, false);
        CHECK(max_atom(d) * static_cast<long>(d.support_size()) >= 1);
    }
}

TEST_CASE("eval examples")
{
    CHECK(eval(IntPolynomial{1, 1, 1}, 2) == 7);
    CHECK(eval(IntPolynomial{}, 5) == 0);
    CHECK(eval(IntPolynomial{-1, 1, 1, -1}, 1) == 0);
}

TEST_CASE("derivative examples")
{
    CHECK(derivative(IntPolynomial{1, 1, 1}) == IntPolynomial{1, 2});
    CHECK(derivative(IntPolynomial{5}).is_zero());
    CHECK(derivative(IntPolynomial{1, -1, -1, 1}) == IntPolynomial{-1, -2, 3});
}

TEST_CASE("polynomials are kept trimmed; constant differs from zero")
{
    const IntPolynomial p{1, 2, 0, 0};
    CHECK(p.degree() == 1);
    CHECK(IntPolynomial{0, 0}.is_zero());
    CHECK(IntPolynomial{0, 0}.degree() == -1);
    CHECK(IntPolynomial{7}.degree() == 0);
    CHECK((IntPolynomial{1, 1} - IntPolynomial{1, 1}).is_zero());
    CHECK(p.coeff(9) == 0);
}

TEST_CASE("product rule holds exactly on random products")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto p = testing::random_polynomial(rng, static_cast<int>(testing::uniform_int(rng, 0, 10)), 50);
        const auto q = testing::random_polynomial(rng, static_cast<int>(testing::uniform_int(rng, 0, 10)), 50);
        CHECK(derivative(p * q) == derivative(p) * q + p * derivative(q));
        const Integer x = testing::uniform_int(rng, -5, 5);
        CHECK(eval(p * q, x) == eval(p, x) * eval(q, x));
    }
}

TEST_CASE("sparse pmf merges, drops zeros and validates mass")
{
    const SparsePMF p({{2, Rational(1, 4)}, {1, Rational(1, 2)}, {2, Rational(1, 4)}, {9, Rational(0)}});
    REQUIRE(p.size() == 2);
    CHECK(p.entries()[0].value == 1);
    CHECK(p.probability(2) == Rational(1, 2));
    CHECK(p.probability(9) == 0);
    CHECK_THROWS_AS(SparsePMF({{1, Rational(1, 3)}}), PreconditionError);
    CHECK_THROWS_AS(SparsePMF::from_sorted({{2, Rational(1, 2)}, {1, Rational(1, 2)}}), PreconditionError);
}

TEST_CASE("convolution of valid pmfs is valid and matches brute force")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto a = testing::random_distribution(rng, 1 + i % 5, 6, 7, false);
        const auto b = testing::random_distribution(rng, 1 + i % 4, 6, 7, false);
        const auto c = convolve(SparsePMF::from_distribution(a), SparsePMF::from_distribution(b));
        Rational total = 0;
        for (const auto& e : c.entries()) {
            CHECK(e.prob > 0);
            total += e.prob;
        }
        CHECK(total == 1);
        std::vector<PmfEntry> brute;
        for (const auto& x : a.atoms())
            for (const auto& y : b.atoms())
                brute.push_back({Integer(x.value + y.value), x.weight * y.weight});
        CHECK(c == SparsePMF(brute));
    }
    const auto s = scale_values(SparsePMF::from_distribution(IntegerDistribution::uniform(0, 2)), -3);
    CHECK(s.entries()[0].value == -6);
    CHECK(scale_values(s, 0) == SparsePMF::point_mass(0));
}

TEST_CASE("json round trips")
{
    const auto d = law({{-2, "1/3"}, {5, "2/3"}});
    CHECK(to_json(d).dump() == R"([[-2,"1/3"],[5,"2/3"]])");
    CHECK(distribution_from_json(to_json(d)) == d);
    CHECK(distribution_from_json(nlohmann::json::parse(R"({"5":"2/3","-2":"1/3"})")) == d);
    const IntPolynomial p{3, -1, 3};
    CHECK(to_json(p).dump() == R"(["3","-1","3"])");
    CHECK(polynomial_from_json(to_json(p)) == p);
    CHECK(polynomial_from_json(nlohmann::json::parse("[1, 0, -4]")) == IntPolynomial{1, 0, -4});
    const SparsePMF pmf({{-1, Rational(1, 4)}, {3, Rational(3, 4)}});
    CHECK(to_json(pmf).dump() == R"([["-1","1/4"],["3","3/4"]])");
    CHECK(pmf_from_json(to_json(pmf)) == pmf);
}
