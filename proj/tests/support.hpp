#ifndef RANDPOLY_TESTS_SUPPORT_HPP
#define RANDPOLY_TESTS_SUPPORT_HPP

#include "randpoly/core.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace testing {

using randpoly::Atom;
using randpoly::Integer;
using randpoly::IntegerDistribution;
using randpoly::IntPolynomial;
using randpoly::Rational;

inline long uniform_int(std::mt19937_64& rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Random law on `support` distinct values in [-span, span]; integer weights
// 1..max_weight normalized. With balanced = true the largest atom is at most 1/2.
inline IntegerDistribution random_distribution(std::mt19937_64& rng, std::size_t support, long span,
                                               long max_weight, bool balanced)
{
    for (;;) {
        std::set<long> values;
        while (values.size() < support)
            values.insert(uniform_int(rng, -span, span));
        std::vector<long> w;
        long total = 0;
        for (std::size_t i = 0; i < support; ++i) {
            w.push_back(uniform_int(rng, 1, max_weight));
            total += w.back();
        }
        const long top = *std::max_element(w.begin(), w.end());
        if (balanced && 2 * top > total)
            continue;
        std::vector<Atom> atoms;
        std::size_t i = 0;
        for (long v : values) {
            Rational q(w[i++], total);
            q.canonicalize();
            atoms.push_back({v, q});
        }
        return IntegerDistribution(std::move(atoms));
    }
}

inline IntPolynomial random_polynomial(std::mt19937_64& rng, int degree, long bound)
{
    std::vector<Integer> c;
    for (int j = 0; j <= degree; ++j)
        c.emplace_back(uniform_int(rng, -bound, bound));
    while (c.back() == 0)
        c.back() = uniform_int(rng, -bound, bound);
    return IntPolynomial(std::move(c));
}

} // namespace testing

#endif
