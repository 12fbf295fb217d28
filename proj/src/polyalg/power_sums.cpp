#include "randpoly/polyalg.hpp"

#include "randpoly/errors.hpp"

#include <cmath>

namespace randpoly {

namespace {

// a_i in the top-down indexing f = sum a_i x^(d - i).
Integer top(const IntPolynomial& p, int i) { return p.coeff(p.degree() - i); }

} // namespace

std::vector<Rational> power_sums(const IntPolynomial& p, int k)
{
    const int d = p.degree();
    if (k < 1 || k > d)
        throw PreconditionError("power sums need 1 <= k <= degree, got k = " + std::to_string(k));
    const Integer a0 = p.leading();
    std::vector<Rational> s;
    s.reserve(static_cast<std::size_t>(k));
    for (int m = 1; m <= k; ++m) {
        Rational acc = Rational(top(p, m) * m);
        for (int j = 1; j < m; ++j)
            acc += top(p, j) * s[static_cast<std::size_t>(m - j - 1)];
        Rational sm = -acc / a0;
        sm.canonicalize();
        s.push_back(std::move(sm));
    }
    return s;
}

std::vector<Rational> newton_residuals(const IntPolynomial& p, const std::vector<Rational>& sums)
{
    const int d = p.degree();
    if (static_cast<int>(sums.size()) > d)
        throw PreconditionError("more power sums than the degree");
    std::vector<Rational> out;
    for (int k = 1; k <= static_cast<int>(sums.size()); ++k) {
        Rational acc = Rational(top(p, k) * k);
        for (int j = 0; j < k; ++j)
            acc += top(p, j) * sums[static_cast<std::size_t>(k - j - 1)];
        out.push_back(std::move(acc));
    }
    return out;
}

SeparationCheck separation_check(const IntPolynomial& f, const IntPolynomial& g, int k)
{
    if (f.degree() != g.degree() || f.degree() < 1)
        throw PreconditionError("separation check needs equal positive degrees");
    if (k < 1 || k > f.degree())
        throw PreconditionError("separation check needs 1 <= k <= degree");
    for (int i = 0; i < k; ++i)
        if (top(f, i) != top(g, i))
            throw PreconditionError("f and g differ above index " + std::to_string(k));
    if (top(f, k) == top(g, k))
        throw PreconditionError("f and g agree at index " + std::to_string(k));

    const auto sf = power_sums(f, k);
    const auto sg = power_sums(g, k);
    SeparationCheck out;
    out.lower_powers_agree = true;
    for (int i = 0; i + 1 < k; ++i)
        if (sf[static_cast<std::size_t>(i)] != sg[static_cast<std::size_t>(i)])
            out.lower_powers_agree = false;
    out.difference = abs(sf.back() - sg.back());
    const Integer a0 = f.leading();
    out.predicted = Rational(Integer(abs(top(f, k) - top(g, k))) * k, abs(a0));
    out.predicted.canonicalize();
    out.matches = out.difference == out.predicted && out.predicted >= Rational(k, Integer(abs(a0)));
    return out;
}

RootOfUnity is_root_of_unity(const IntPolynomial& p, int kmax)
{
    const int d = p.degree();
    if (d < 1)
        throw PreconditionError("root-of-unity test needs degree >= 1");
    // Monic reduction over Q: x^d = -sum_{j<d} (c_j / c_d) x^j.
    std::vector<Rational> tail(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        tail[static_cast<std::size_t>(j)] = Rational(-p.coeff(j), p.leading());
        tail[static_cast<std::size_t>(j)].canonicalize();
    }
    // r holds x^k mod p, ascending.
    std::vector<Rational> r(static_cast<std::size_t>(d), Rational(0));
    r[0] = 1;
    for (int k = 1; k <= kmax; ++k) {
        const Rational carry = r.back();
        for (int j = d - 1; j > 0; --j)
            r[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j - 1)];
        r[0] = 0;
        if (carry != 0)
            for (int j = 0; j < d; ++j)
                r[static_cast<std::size_t>(j)] += carry * tail[static_cast<std::size_t>(j)];
        bool one = r[0] == 1;
        for (int j = 1; one && j < d; ++j)
            one = r[static_cast<std::size_t>(j)] == 0;
        if (one)
            return {true, k};
    }
    return {false, std::nullopt};
}

bool divisible_by_square(const Integer& value, const Integer& k)
{
    if (k < 1)
        throw PreconditionError("divisible_by_square needs k >= 1");
    const Integer square = k * k;
    return mpz_divisible_p(value.get_mpz_t(), square.get_mpz_t()) != 0;
}

OffCircleBound off_circle_root_bound(double abs_alpha, long M, long n)
{
    if (!(abs_alpha > 0.0))
        throw PreconditionError("|alpha| must be positive");
    if (abs_alpha == 1.0)
        throw DomainError("the off-circle bound is vacuous for |alpha| = 1");
    if (M < 0 || n < 0)
        throw PreconditionError("M and n must be non-negative");
    // The 1e-12 guard keeps exact integer ratios such as log 2 / log 2 from
    // rounding up to the next integer.
    const double ratio = std::log(static_cast<double>(M) + 1.0) / std::abs(std::log(abs_alpha));
    const long ell = std::max(1L, static_cast<long>(std::ceil(ratio - 1e-12)));
    return {ell, std::exp(-static_cast<double>(n) * std::log(2.0) / static_cast<double>(ell))};
}

} // namespace randpoly
