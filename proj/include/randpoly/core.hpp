#ifndef RANDPOLY_CORE_HPP
#define RANDPOLY_CORE_HPP

// Exact-arithmetic domain types shared by every module.
//
// Probabilities are GMP rationals end to end; floating point only appears in
// root finding and in Monte Carlo estimators.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace randpoly {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "num/den" text form (the denominator is always written).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "n" or "n/d" (optional sign, decimal). Throws PreconditionError.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// log2 of a positive rational, accurate for arbitrarily large num/den.
double log2_of(const Rational& q);
double log2_of(const Integer& z);
double to_double(const Rational& q);

// ---------------------------------------------------------------------------
// IntegerDistribution

struct Atom {
    std::int64_t value;
    Rational weight;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// A finitely supported probability law on the integers (the law of one
/// coefficient). Atoms are sorted by value, weights are positive and sum to 1.
class IntegerDistribution {
public:
    /// Validates and sorts. Throws PreconditionError on duplicate values,
    /// non-positive weights, an empty list, or weights not summing to 1.
    explicit IntegerDistribution(std::vector<Atom> atoms);

    static IntegerDistribution rademacher();
    /// Uniform on {lo, lo+1, ..., hi}.
    static IntegerDistribution uniform(std::int64_t lo, std::int64_t hi);
    /// Uniform on {-m, ..., m}.
    static IntegerDistribution signed_uniform(std::int64_t m);
    static IntegerDistribution point_mass(std::int64_t value);

    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::size_t support_size() const noexcept { return atoms_.size(); }
    std::int64_t min_value() const noexcept { return atoms_.front().value; }
    std::int64_t max_value() const noexcept { return atoms_.back().value; }
    /// M = max |value|.
    std::int64_t bound() const noexcept;
    /// Weight of `value`, zero when off the support.
    Rational weight_of(std::int64_t value) const;
    /// Least common multiple of the weight denominators.
    Integer common_denominator() const;

    friend bool operator==(const IntegerDistribution&, const IntegerDistribution&) = default;

private:
    std::vector<Atom> atoms_;
};

/// Largest single-point weight.
Rational max_atom(const IntegerDistribution& dist);

// ---------------------------------------------------------------------------
// IntPolynomial

/// Dense integer polynomial, coefficient j multiplies x^j. The zero
/// polynomial has no coefficients and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial monomial(const Integer& c, int power);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::span<const Integer> coeffs() const noexcept { return coeffs_; }
    /// Coefficient of x^j, zero beyond the degree.
    Integer coeff(int j) const;
    const Integer& leading() const { return coeffs_.back(); }

    IntPolynomial& operator+=(const IntPolynomial& rhs);
    IntPolynomial& operator-=(const IntPolynomial& rhs);
    IntPolynomial& operator*=(const IntPolynomial& rhs);

    friend IntPolynomial operator+(IntPolynomial lhs, const IntPolynomial& rhs) { return lhs += rhs; }
    friend IntPolynomial operator-(IntPolynomial lhs, const IntPolynomial& rhs) { return lhs -= rhs; }
    friend IntPolynomial operator*(IntPolynomial lhs, const IntPolynomial& rhs) { return lhs *= rhs; }
    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    void trim();
    std::vector<Integer> coeffs_;
};

/// Horner evaluation.
Integer eval(const IntPolynomial& p, const Integer& x);
IntPolynomial derivative(const IntPolynomial& p);
std::string to_string(const IntPolynomial& p);

// ---------------------------------------------------------------------------
// SparsePMF

struct PmfEntry {
    Integer value;
    Rational prob;

    friend bool operator==(const PmfEntry&, const PmfEntry&) = default;
};

/// Exact probability mass function on the integers: entries sorted by value,
/// probabilities strictly positive and summing to exactly 1.
class SparsePMF {
public:
    /// Entries may arrive unsorted and with repeated values (they are merged).
    /// Zero-probability entries are dropped. Throws PreconditionError if the
    /// remaining probabilities are negative or do not sum to 1.
    explicit SparsePMF(std::vector<PmfEntry> entries);

    static SparsePMF point_mass(const Integer& value);
    /// Linear-time construction from strictly increasing values; validates
    /// ordering, positivity and total mass.
    static SparsePMF from_sorted(std::vector<PmfEntry> entries);
    static SparsePMF from_distribution(const IntegerDistribution& dist);

    std::span<const PmfEntry> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    Rational probability(const Integer& value) const;

    friend bool operator==(const SparsePMF&, const SparsePMF&) = default;

private:
    struct Trusted {};
    SparsePMF(std::vector<PmfEntry> sorted, Trusted) : entries_(std::move(sorted)) {}
    friend SparsePMF convolve(const SparsePMF&, const SparsePMF&);
    friend SparsePMF scale_values(const SparsePMF&, const Integer&);

    std::vector<PmfEntry> entries_;
};

/// Law of X + Y for independent X ~ lhs, Y ~ rhs.
SparsePMF convolve(const SparsePMF& lhs, const SparsePMF& rhs);
/// Law of c * X (c may be zero or negative).
SparsePMF scale_values(const SparsePMF& pmf, const Integer& c);

} // namespace randpoly

#endif
