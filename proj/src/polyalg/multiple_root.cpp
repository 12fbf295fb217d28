#include "randpoly/polyalg.hpp"

#include "randpoly/errors.hpp"

#include <type_traits>
#include <vector>

namespace randpoly {

namespace {

struct Overflow {};

// Arithmetic that throws Overflow instead of wrapping; Integer never overflows.
template <class T>
struct Checked {
    static T add(T a, T b)
    {
        T r;
        if (__builtin_add_overflow(a, b, &r))
            throw Overflow{};
        return r;
    }
    static T sub(T a, T b)
    {
        T r;
        if (__builtin_sub_overflow(a, b, &r))
            throw Overflow{};
        return r;
    }
    static T mul(T a, T b)
    {
        T r;
        if (__builtin_mul_overflow(a, b, &r))
            throw Overflow{};
        return r;
    }
    static T from(const Integer& z)
    {
        if (!z.fits_slong_p())
            throw Overflow{};
        return static_cast<T>(z.get_si());
    }
};

template <>
struct Checked<Integer> {
    static Integer add(const Integer& a, const Integer& b) { return a + b; }
    static Integer sub(const Integer& a, const Integer& b) { return a - b; }
    static Integer mul(const Integer& a, const Integer& b) { return a * b; }
    static Integer from(const Integer& z) { return z; }
};

template <class T>
using Poly = std::vector<T>;  // ascending, trimmed; empty is zero

template <class T>
void trim(Poly<T>& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

template <class T>
int deg(const Poly<T>& p)
{
    return static_cast<int>(p.size()) - 1;
}

template <class T>
T power(T base, int e)
{
    T out = 1;
    for (int i = 0; i < e; ++i)
        out = Checked<T>::mul(out, base);
    return out;
}

// lc(b)^(deg a - deg b + 1) * a mod b.
template <class T>
Poly<T> pseudo_remainder(Poly<T> r, const Poly<T>& b)
{
    using C = Checked<T>;
    const int m = deg(b);
    const T lead = b.back();
    const int steps = deg(r) - m + 1;
    for (int s = 0; s < steps; ++s) {
        const int top = deg(b) + (steps - 1 - s);
        const T q = top < static_cast<int>(r.size()) ? r[static_cast<std::size_t>(top)] : T(0);
        for (auto& c : r)
            c = C::mul(c, lead);
        if (q != 0) {
            const int shift = top - m;
            for (int j = 0; j <= m; ++j) {
                auto& c = r[static_cast<std::size_t>(shift + j)];
                c = C::sub(c, C::mul(q, b[static_cast<std::size_t>(j)]));
            }
        }
    }
    trim(r);
    return r;
}

// gcd(a, a') up to a constant factor, via the subresultant sequence; a is
// trimmed with degree >= 2. A constant result means a is square-free.
template <class T>
Poly<T> gcd_with_derivative(Poly<T> a)
{
    using C = Checked<T>;
    Poly<T> b;
    for (std::size_t j = 1; j < a.size(); ++j)
        b.push_back(C::mul(a[j], static_cast<T>(j)));

    T g = 1;
    T h = 1;
    for (;;) {
        const int delta = deg(a) - deg(b);
        Poly<T> r = pseudo_remainder(a, b);
        if (r.empty())
            return b;
        if (deg(r) == 0)
            return {T(1)};
        const T divisor = C::mul(g, power(h, delta));
        for (auto& c : r)
            c /= divisor;
        a = std::move(b);
        b = std::move(r);
        g = a.back();
        h = power(g, delta) / power(h, delta - 1);
    }
}

Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

Integer to_integer(__int128 v)
{
    const bool negative = v < 0;
    unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer out(static_cast<unsigned long>(u >> 64));
    out <<= 64;
    out += static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    return negative ? Integer(-out) : out;
}

template <class T, class Coeffs>
Poly<T> convert(const Coeffs& coeffs)
{
    Poly<T> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, Integer>)
            out.push_back(Checked<T>::from(c));
        else
            out.push_back(static_cast<T>(c));
    }
    return out;
}

template <class T>
std::vector<Integer> widen(const Poly<T>& p)
{
    std::vector<Integer> out;
    for (const auto& c : p)
        out.push_back(to_integer(c));
    return out;
}

template <class Coeffs>
std::vector<Integer> gcd_with_derivative_of(const Coeffs& coeffs)
{
    try {
        return widen(gcd_with_derivative(convert<std::int64_t>(coeffs)));
    } catch (const Overflow&) {
    }
    try {
        return widen(gcd_with_derivative(convert<__int128>(coeffs)));
    } catch (const Overflow&) {
    }
    Poly<Integer> big;
    for (const auto& c : coeffs)
        big.push_back(Integer(c));
    return gcd_with_derivative(std::move(big));
}

template <class Coeffs>
int multiple_part_degree_of(const Coeffs& coeffs)
{
    try {
        return deg(gcd_with_derivative(convert<std::int64_t>(coeffs)));
    } catch (const Overflow&) {
    }
    return static_cast<int>(gcd_with_derivative_of(coeffs).size()) - 1;
}

} // namespace

int multiple_part_degree(const IntPolynomial& p)
{
    if (p.is_zero())
        throw PreconditionError("multiple-root test on the zero polynomial");
    if (p.degree() < 2)
        return 0;
    return multiple_part_degree_of(p.coeffs());
}

int multiple_part_degree(std::span<const std::int64_t> coeffs)
{
    while (!coeffs.empty() && coeffs.back() == 0)
        coeffs = coeffs.first(coeffs.size() - 1);
    if (coeffs.empty())
        throw PreconditionError("multiple-root test on the zero polynomial");
    if (coeffs.size() < 3)
        return 0;
    return multiple_part_degree_of(coeffs);
}

bool has_multiple_root(std::span<const std::int64_t> coeffs) { return multiple_part_degree(coeffs) >= 1; }

bool has_multiple_root(const IntPolynomial& p) { return multiple_part_degree(p) >= 1; }

IntPolynomial squarefree_part(const IntPolynomial& p)
{
    if (p.is_zero())
        throw PreconditionError("square-free part of the zero polynomial");
    if (p.degree() < 2)
        return p;
    std::vector<Integer> g = gcd_with_derivative_of(p.coeffs());
    if (g.size() == 1)
        return p;
    Integer content = 0;
    for (const auto& c : g)
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    // Positive leading g keeps the quotient's leading sign equal to p's.
    if (g.back() < 0)
        content = -content;
    for (auto& c : g)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());

    // Exact long division: g is primitive and divides p, so every quotient
    // coefficient is an integer.
    std::vector<Integer> r(p.coeffs().begin(), p.coeffs().end());
    const std::size_t m = g.size() - 1;
    std::vector<Integer> q(r.size() - m);
    for (std::size_t i = q.size(); i-- > 0;) {
        mpz_divexact(q[i].get_mpz_t(), r[i + m].get_mpz_t(), g.back().get_mpz_t());
        for (std::size_t j = 0; j <= m; ++j)
            r[i + j] -= q[i] * g[j];
    }
    return IntPolynomial(std::move(q));
}

bool double_root_at(const IntPolynomial& p, int x0)
{
    if (x0 < -1 || x0 > 1)
        throw PreconditionError("double_root_at supports x0 in {-1, 0, 1}");
    if (p.is_zero())
        throw PreconditionError("double_root_at on the zero polynomial");
    if (x0 == 0)
        return p.coeff(0) == 0 && p.coeff(1) == 0;
    const Integer x(x0);
    return eval(p, x) == 0 && eval(derivative(p), x) == 0;
}

} // namespace randpoly
