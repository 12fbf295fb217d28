#ifndef RANDPOLY_POLYALG_HPP
#define RANDPOLY_POLYALG_HPP

// Polynomial algebra: exact multiple-root detection, complex root finding,
// house, Newton power sums, root-of-unity tests and a few computable bounds.

#include "randpoly/core.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace randpoly {

/// True iff gcd(p, p') has positive degree, i.e. p has a repeated complex
/// root. Decided with a subresultant pseudo-remainder sequence in exact
/// integers (machine words first, GMP on overflow).
/// Throws PreconditionError on the zero polynomial.
bool has_multiple_root(const IntPolynomial& p);

/// Degree of gcd(p, p') over the rationals (0 for square-free p).
int multiple_part_degree(const IntPolynomial& p);

/// p / gcd(p, p'): same roots, all simple.
IntPolynomial squarefree_part(const IntPolynomial& p);

/// Same tests on ascending machine-word coefficients (trailing zeros ignored).
bool has_multiple_root(std::span<const std::int64_t> coeffs);
int multiple_part_degree(std::span<const std::int64_t> coeffs);

/// Double root at 0 (two lowest coefficients vanish) or at +-1
/// (p(x0) = p'(x0) = 0). Throws PreconditionError unless x0 is -1, 0 or 1.
bool double_root_at(const IntPolynomial& p, int x0);

struct Root {
    std::complex<double> value;
    int multiplicity;  // size of the cluster this root belongs to
};

struct RootSet {
    std::vector<Root> roots;
    double residual;   // max |p(z)| / sum |c_j| |z|^j over the roots
    int iterations;
    bool converged;
};

inline constexpr double kDefaultRootTolerance = 1e-10;
inline constexpr int kMaxRootIterations = 200;

/// Simultaneous (Aberth) iteration from equally spaced starting points on a
/// circle of radius 1.05 * Cauchy bound, phase offset 0.4 rad. Exact zero
/// roots are split off first. Throws NonConverged when the residual stays
/// above `tol`, PreconditionError when degree < 1.
RootSet roots_complex(const IntPolynomial& p, double tol = kDefaultRootTolerance);

/// Largest root modulus, computed on the square-free part so that repeated
/// roots do not lose accuracy.
double house(const IntPolynomial& p, double tol = kDefaultRootTolerance);

/// Roots with |z| >= r - slack count (borderline moduli count as >= r).
int count_roots_modulus_ge(const IntPolynomial& p, double r = 1.5, double slack = 1e-9,
                           double tol = kDefaultRootTolerance);

struct JensenCheck {
    int count;  // roots with |z| >= 3/2
    long bound; // 64 M
    bool pass;
};

/// Root count outside |z| < 3/2 against 64 M. Throws PreconditionError if a
/// coefficient exceeds M in absolute value.
JensenCheck jensen_check(const IntPolynomial& p, long M, double tol = kDefaultRootTolerance);

/// S_1..S_k of the roots via Newton's identities, with coefficients indexed
/// from the leading one: a_0 S_k + a_1 S_{k-1} + ... + k a_k = 0.
/// Throws PreconditionError unless 1 <= k <= degree.
std::vector<Rational> power_sums(const IntPolynomial& p, int k);

/// Residual a_0 S_k + ... + a_{k-1} S_1 + k a_k for each k (all zero when
/// `sums` are the true power sums).
std::vector<Rational> newton_residuals(const IntPolynomial& p, const std::vector<Rational>& sums);

struct SeparationCheck {
    Rational difference;  // |S_k(f) - S_k(g)|
    Rational predicted;   // k |a_k - b_k| / a_0
    bool lower_powers_agree;
    bool matches;         // difference == predicted && predicted >= k / a_0
};

/// f and g share degree, leading coefficient and the coefficients a_1..a_{k-1}
/// (indexed from the top) and differ at a_k. Throws PreconditionError
/// otherwise.
SeparationCheck separation_check(const IntPolynomial& f, const IntPolynomial& g, int k);

struct RootOfUnity {
    bool is_root_of_unity;
    std::optional<int> order;
};

/// Smallest k <= kmax with p | x^k - 1 (exact division over Q).
RootOfUnity is_root_of_unity(const IntPolynomial& p, int kmax = 120);

/// k^2 | value. Throws PreconditionError for k < 1.
bool divisible_by_square(const Integer& value, const Integer& k);

struct OffCircleBound {
    long ell;     // ceil(log(M + 1) / |log |alpha||)
    double bound; // exp(-n log 2 / ell)
};

/// Throws DomainError when |alpha| == 1, PreconditionError when |alpha| <= 0.
OffCircleBound off_circle_root_bound(double abs_alpha, long M, long n);

} // namespace randpoly

#endif
