#include "randpoly/core.hpp"

#include "randpoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace randpoly {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer parse_integer(std::string_view text)
{
    std::string s(text);
    if (!s.empty() && s.front() == '+')
        s.erase(0, 1);
    if (s.empty() || s == "-")
        throw PreconditionError("empty integer literal");
    for (std::size_t i = (s.front() == '-') ? 1 : 0; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw PreconditionError("malformed integer literal '" + std::string(text) + "'");
    return Integer(s, 10);
}

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0)
        throw PreconditionError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

double log2_of(const Integer& z)
{
    if (z <= 0)
        throw DomainError("log2 of a non-positive integer");
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log2(mant) + static_cast<double>(exp);
}

double log2_of(const Rational& q)
{
    if (q <= 0)
        throw DomainError("log2 of a non-positive rational");
    return log2_of(q.get_num()) - log2_of(q.get_den());
}

double to_double(const Rational& q)
{
    if (q == 0)
        return 0.0;
    // mpq_get_d is exact for representable values; the log route only
    // handles quotients outside the double range.
    const double direct = q.get_d();
    if (direct != 0.0 && std::isfinite(direct))
        return direct;
    const double mag = std::exp2(log2_of(abs(q)));
    return sgn(q) < 0 ? -mag : mag;
}

// ---------------------------------------------------------------------------

IntegerDistribution::IntegerDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms))
{
    if (atoms_.empty())
        throw PreconditionError("distribution has no atoms");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    Rational total = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        atoms_[i].weight.canonicalize();
        if (atoms_[i].weight <= 0)
            throw PreconditionError("atom " + std::to_string(atoms_[i].value) +
                                    " has non-positive weight");
        if (i > 0 && atoms_[i].value == atoms_[i - 1].value)
            throw PreconditionError("duplicate atom value " + std::to_string(atoms_[i].value));
        total += atoms_[i].weight;
    }
    if (total != 1)
        throw PreconditionError("weights sum to " + to_string(total) + ", expected 1");
}

IntegerDistribution IntegerDistribution::rademacher()
{
    return IntegerDistribution({{-1, Rational(1, 2)}, {1, Rational(1, 2)}});
}

IntegerDistribution IntegerDistribution::uniform(std::int64_t lo, std::int64_t hi)
{
    if (hi < lo)
        throw PreconditionError("uniform: empty range");
    const auto count = static_cast<unsigned long>(hi - lo + 1);
    std::vector<Atom> atoms;
    atoms.reserve(count);
    for (std::int64_t v = lo; v <= hi; ++v)
        atoms.push_back({v, Rational(1, count)});
    return IntegerDistribution(std::move(atoms));
}

IntegerDistribution IntegerDistribution::signed_uniform(std::int64_t m)
{
    if (m < 0)
        throw PreconditionError("signed_uniform: negative bound");
    return uniform(-m, m);
}

IntegerDistribution IntegerDistribution::point_mass(std::int64_t value)
{
    return IntegerDistribution({{value, Rational(1)}});
}

std::int64_t IntegerDistribution::bound() const noexcept
{
    return std::max(std::abs(atoms_.front().value), std::abs(atoms_.back().value));
}

Rational IntegerDistribution::weight_of(std::int64_t value) const
{
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), value,
                               [](const Atom& a, std::int64_t v) { return a.value < v; });
    if (it != atoms_.end() && it->value == value)
        return it->weight;
    return 0;
}

Integer IntegerDistribution::common_denominator() const
{
    Integer d = 1;
    for (const auto& a : atoms_)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a.weight.get_den_mpz_t());
    return d;
}

Rational max_atom(const IntegerDistribution& dist)
{
    Rational best = 0;
    for (const auto& a : dist.atoms())
        if (a.weight > best)
            best = a.weight;
    return best;
}

// ---------------------------------------------------------------------------

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs)
{
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs)
        coeffs_.emplace_back(c);
    trim();
}

IntPolynomial IntPolynomial::monomial(const Integer& c, int power)
{
    std::vector<Integer> v(static_cast<std::size_t>(power) + 1);
    v.back() = c;
    return IntPolynomial(std::move(v));
}

void IntPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Integer IntPolynomial::coeff(int j) const
{
    if (j < 0 || j > degree())
        return 0;
    return coeffs_[static_cast<std::size_t>(j)];
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
        coeffs_[j] += rhs.coeffs_[j];
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
        coeffs_[j] -= rhs.coeffs_[j];
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& rhs)
{
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Integer> out(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    coeffs_ = std::move(out);
    trim();
    return *this;
}

Integer eval(const IntPolynomial& p, const Integer& x)
{
    Integer acc = 0;
    const auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

IntPolynomial derivative(const IntPolynomial& p)
{
    if (p.degree() < 1)
        return {};
    std::vector<Integer> d(static_cast<std::size_t>(p.degree()));
    for (int j = 1; j <= p.degree(); ++j)
        d[static_cast<std::size_t>(j - 1)] = p.coeffs()[static_cast<std::size_t>(j)] * j;
    return IntPolynomial(std::move(d));
}

std::string to_string(const IntPolynomial& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    for (int j = p.degree(); j >= 0; --j) {
        const Integer& c = p.coeffs()[static_cast<std::size_t>(j)];
        if (c == 0)
            continue;
        Integer mag = abs(c);
        if (out.empty())
            out += (c < 0) ? "-" : "";
        else
            out += (c < 0) ? " - " : " + ";
        if (mag != 1 || j == 0)
            out += mag.get_str();
        if (j >= 1)
            out += "x";
        if (j >= 2)
            out += "^" + std::to_string(j);
    }
    return out;
}

// ---------------------------------------------------------------------------

SparsePMF::SparsePMF(std::vector<PmfEntry> entries)
{
    std::map<Integer, Rational> merged;
    for (auto& e : entries)
        merged[e.value] += e.prob;
    Rational total = 0;
    for (auto& [value, prob] : merged) {
        if (prob < 0)
            throw PreconditionError("negative probability at value " + value.get_str());
        if (prob == 0)
            continue;
        total += prob;
        entries_.push_back({value, prob});
    }
    if (total != 1)
        throw PreconditionError("probabilities sum to " + to_string(total) + ", expected 1");
}

SparsePMF SparsePMF::point_mass(const Integer& value)
{
    return SparsePMF({PmfEntry{value, Rational(1)}}, Trusted{});
}

SparsePMF SparsePMF::from_sorted(std::vector<PmfEntry> entries)
{
    Rational total = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && !(entries[i - 1].value < entries[i].value))
            throw PreconditionError("pmf entries are not strictly increasing");
        if (entries[i].prob <= 0)
            throw PreconditionError("non-positive probability at value " + entries[i].value.get_str());
        total += entries[i].prob;
    }
    if (total != 1)
        throw PreconditionError("probabilities sum to " + to_string(total) + ", expected 1");
    return SparsePMF(std::move(entries), Trusted{});
}

SparsePMF SparsePMF::from_distribution(const IntegerDistribution& dist)
{
    std::vector<PmfEntry> out;
    out.reserve(dist.support_size());
    for (const auto& a : dist.atoms())
        out.push_back({Integer(static_cast<long>(a.value)), a.weight});
    return SparsePMF(std::move(out), Trusted{});
}

Rational SparsePMF::probability(const Integer& value) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), value,
                               [](const PmfEntry& e, const Integer& v) { return e.value < v; });
    if (it != entries_.end() && it->value == value)
        return it->prob;
    return 0;
}

SparsePMF convolve(const SparsePMF& lhs, const SparsePMF& rhs)
{
    std::map<Integer, Rational> acc;
    for (const auto& x : lhs.entries_)
        for (const auto& y : rhs.entries_)
            acc[x.value + y.value] += x.prob * y.prob;
    std::vector<PmfEntry> out;
    out.reserve(acc.size());
    for (auto& [v, p] : acc)
        out.push_back({v, std::move(p)});
    return SparsePMF(std::move(out), SparsePMF::Trusted{});
}

SparsePMF scale_values(const SparsePMF& pmf, const Integer& c)
{
    if (c == 0)
        return SparsePMF::point_mass(0);
    std::vector<PmfEntry> out;
    out.reserve(pmf.entries_.size());
    for (const auto& e : pmf.entries_)
        out.push_back({e.value * c, e.prob});
    if (c < 0)
        std::reverse(out.begin(), out.end());
    return SparsePMF(std::move(out), SparsePMF::Trusted{});
}

} // namespace randpoly
