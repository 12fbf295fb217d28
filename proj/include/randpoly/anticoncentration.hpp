#ifndef RANDPOLY_ANTICONCENTRATION_HPP
#define RANDPOLY_ANTICONCENTRATION_HPP

// Exact laws of P(a) = sum_{j<=n} xi_j a^j, their largest point mass, and the
// W statistic W = |{i + w_i : 1 <= i <= n}| used to bound it.

#include "randpoly/core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace randpoly {

inline constexpr std::size_t kDefaultEntryBudget = 30'000'000;
inline constexpr std::size_t kDefaultEnumerationBudget = 20'000'000;

/// Exponent of 2 in k. Throws DomainError for k == 0.
unsigned leading_power_two(const Integer& k);

/// Number of dense entries the value range of P(a) spans at degree n:
/// 1 + (max - min) * sum_{j<=n} |a|^j.
Integer evaluation_range_entries(const IntegerDistribution& dist, int n, long a);

/// Exact law of P(a) for degree n by iterated convolution.
/// Throws BudgetExceeded when the value range exceeds `budget` entries.
SparsePMF exact_pmf_of_evaluation(const IntegerDistribution& dist, int n, long a,
                                  std::size_t budget = kDefaultEntryBudget);

struct PointMass {
    Integer value;
    Rational prob;

    friend bool operator==(const PointMass&, const PointMass&) = default;
};

/// Largest probability, smallest value on ties.
PointMass max_point_mass(const SparsePMF& pmf);

/// max_m P(P_k(a) = m) for every degree k = 0..n_max in one convolution pass.
std::vector<PointMass> max_point_mass_by_degree(const IntegerDistribution& dist, int n_max, long a,
                                                std::size_t budget = kDefaultEntryBudget);

struct EpsilonRow {
    int n;
    Rational p_max;
    Integer argmax;
    double eps;  // -log2(p_max)/n - 1/2
};

struct EpsilonProfile {
    long a;
    std::vector<EpsilonRow> rows;
    std::vector<int> non_positive;  // degrees with eps_n <= 0
};

/// Per-degree p_max and eps_n for n in [n_lo, n_hi] (n_lo >= 1).
/// Throws MaxAtomTooLarge if max_atom(dist) > 1/2.
EpsilonProfile epsilon_profile(const IntegerDistribution& dist, int n_lo, int n_hi, long a,
                               std::size_t budget = kDefaultEntryBudget);

struct LambdaRow {
    int n;             // degree; the sum has n + 1 coefficients
    Rational p_max;
    double rate;       // -ln(p_max) / (n + 1)
};

struct LambdaTable {
    std::vector<LambdaRow> rows;
    std::size_t submultiplicative_checked = 0;
    std::size_t submultiplicative_violations = 0;
};

/// Growth rate of p_max. Submultiplicativity p(k1 + k2) >= p(k1) p(k2), with
/// k the number of coefficients, is checked exactly on every pair that the
/// computed range covers. An empty range (n_lo > n_hi) gives an empty table.
LambdaTable estimate_lambda(const IntegerDistribution& dist, int n_lo, int n_hi, long a = 2,
                            std::size_t budget = kDefaultEntryBudget);

struct CoinsCheck {
    Rational max_mass;
    Rational bound;          // 2^-(number of distinct L(d_i))
    unsigned distinct_levels;
    bool pass;
};

/// Brute force over all 2^n fair-coin vectors of sum b_i + d_i B_i.
/// Throws PreconditionError on length mismatch, n > 20, or a zero d_i.
CoinsCheck coins_bound_check(std::span<const std::int64_t> b, std::span<const std::int64_t> d);

// ---------------------------------------------------------------------------
// W statistic

/// Law of w_1 (non-negative integers) and the number of indices n.
class WModel {
public:
    /// Throws PreconditionError on negative support points or n < 1.
    WModel(IntegerDistribution law, int n);

    const IntegerDistribution& law() const noexcept { return law_; }
    int n() const noexcept { return n_; }

private:
    IntegerDistribution law_;
    int n_;
};

/// Number of distinct values among i + w_i.
int w_statistic(std::span<const std::int64_t> w);

/// Exact law of W by enumerating all w-vectors; `workers` shards the top
/// index. Throws BudgetExceeded if |support|^n > budget.
SparsePMF w_exact_pmf(const WModel& model, std::size_t budget = kDefaultEnumerationBudget,
                      unsigned workers = 1);

struct BinomialBound {
    Rational exact;   // C(n, alpha n) alpha^n
    double smooth;    // (alpha / (1 - alpha))^(n (1 - alpha))
    bool chain_holds; // exact <= smooth, up to 1e-12 relative
};

/// Throws PreconditionError unless 0 < alpha < 1 and alpha n is an integer.
BinomialBound w_binomial_bound(int n, const Rational& alpha);

struct UVector {
    std::vector<Rational> u;  // u_i = P(i + w_i mod n in A), i = 1..n
    Rational product;         // U(A)
    bool balance_holds;       // sum u_i == |A|
    bool product_bound_holds; // U(A) <= (|A|/n)^n
};

/// Throws PreconditionError if A has entries outside {0..n-1} or repeats.
UVector u_vector_and_U(std::span<const int> subset, const WModel& model);

struct WLowerBound {
    Rational bound;  // (n/2)(1 + sum p_k^2)
    Rational eta;    // (1/2) sum p_k^2
};

WLowerBound expected_w_lower_bound(const WModel& model);

struct WSampleStats {
    double mean;
    double std_error;
    std::size_t samples;
};

WSampleStats sample_w_mean(const WModel& model, std::size_t samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// f_n(alpha) = (alpha/(1-alpha))^(n(1-alpha)) 2^(n(1/2-alpha))

double f_n(int n, double alpha);
/// log f_1 and its derivative.
double g_log_f1(double alpha);
double g_prime(double alpha);

/// Root of g' by bisection on [lo, hi]; g' > 0 at lo and < 0 at hi.
double locate_c0(double lo = 0.5, double hi = 0.99, double tol = 1e-9);

struct FnAnalysis {
    int n;
    std::vector<double> alpha;
    std::vector<double> value;
    double c0;
    bool increasing_below_c0;  // strictly increasing on the grid points < c0
};

/// Tabulates f_n on `grid_points` equally spaced points of (0, 1).
FnAnalysis f_n_analysis(int n, std::size_t grid_points = 99);

} // namespace randpoly

#endif
