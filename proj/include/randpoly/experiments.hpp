#ifndef RANDPOLY_EXPERIMENTS_HPP
#define RANDPOLY_EXPERIMENTS_HPP

// Double-root probabilities of random integer polynomials, divisibility and
// tail statistics of P(+-2), and the census of polynomials with small house.

#include "randpoly/core.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace randpoly {

inline constexpr std::size_t kDefaultTrialBlock = 4096;
inline constexpr std::size_t kDefaultCensusBudget = 200'000'000;

enum class Mode { exact, monte_carlo };

const char* to_string(Mode m);

/// One value per double-root event of P = sum_{j<=n} xi_j x^j.
template <class T>
struct DoubleRootEvents {
    T any{};         // some multiple root in C
    T at_0{};
    T at_plus1{};
    T at_minus1{};
    T at_pm1_or_0{};

    friend bool operator==(const DoubleRootEvents&, const DoubleRootEvents&) = default;
};

struct DoubleRootReport {
    int n = 0;
    Mode mode = Mode::exact;
    std::optional<DoubleRootEvents<Rational>> exact;         // exact mode
    std::optional<DoubleRootEvents<std::uint64_t>> counts;   // Monte Carlo mode
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    /// Point estimates (exact probabilities converted in exact mode).
    DoubleRootEvents<double> estimate() const;
    /// sqrt(p(1 - p) / trials); zero in exact mode.
    DoubleRootEvents<double> std_error() const;
};

/// Enumerates all |support|^(n+1) coefficient vectors. An all-zero vector
/// counts as a double root at 0. Throws BudgetExceeded past `budget` vectors.
DoubleRootReport exact_double_root(const IntegerDistribution& dist, int n,
                                   std::size_t budget = 20'000'000, unsigned workers = 1);

/// Trials are cut into blocks of kDefaultTrialBlock; block b draws from
/// mt19937_64(block_seed(seed, b)), so counts do not depend on `workers`.
DoubleRootReport mc_double_root(const IntegerDistribution& dist, int n, std::uint64_t trials,
                                std::uint64_t seed, unsigned workers = 1);

struct ScalingRow {
    int n;
    Mode mode;
    std::optional<Rational> p_any_exact;
    double p_any;
    double p_pm1_or_0;
    double n2_p_any;
    double std_error;  // of p_any; zero when exact
};

/// Exact rows while |support|^(n+1) fits `budget`, Monte Carlo rows
/// (`mc_trials`, `seed`) beyond it.
std::vector<ScalingRow> scaling_table(const IntegerDistribution& dist, const std::vector<int>& degrees,
                                      std::size_t budget = 20'000'000, std::uint64_t mc_trials = 1'000'000,
                                      std::uint64_t seed = 1, unsigned workers = 1);

/// Degrees n <= n_max used by default: n = 3 mod 4 for symmetric +-1 laws,
/// every n >= 1 otherwise.
std::vector<int> default_scaling_degrees(const IntegerDistribution& dist, int n_max);

struct DivisibilityRow {
    std::int64_t k;
    std::uint64_t hits;
    double frequency;  // of k^2 | P(a)
    double std_error;
    double fitted;     // c k^-(1 + eps) from the fit
};

struct DivisibilityReport {
    long a;
    int n;
    std::uint64_t trials;
    std::uint64_t seed;
    std::vector<DivisibilityRow> rows;
    // log-log least squares over rows with k >= 2 and a positive frequency
    double fit_c = 0.0;
    double fit_eps = 0.0;
    bool fit_valid = false;
};

/// Throws PreconditionError on trials == 0, a not in {-2, 2}, or k outside [1, 2^31).
DivisibilityReport divisibility_experiment(const IntegerDistribution& dist, int n, long a,
                                           const std::vector<std::int64_t>& ks, std::uint64_t trials,
                                           std::uint64_t seed, unsigned workers = 1);

struct TailReport {
    int n;
    double C;
    std::uint64_t trials;
    std::uint64_t seed;
    std::uint64_t hits;       // |P(2)| <= n^-C 2^n
    double frequency;
    double std_error;
};

/// Throws PreconditionError on trials == 0 or n < 1.
TailReport tail_near_two_check(const IntegerDistribution& dist, int n, std::uint64_t trials,
                               std::uint64_t seed, double C, unsigned workers = 1);

struct CensusReport {
    int d;
    long a;
    double b;
    double threshold;          // 1 + b log d / (a d)
    double bound;              // exp((a d)^(2/3 + b))
    Integer box_size;          // candidates in the coefficient box
    std::uint64_t nodes = 0;   // partial coefficient vectors visited
    std::uint64_t scanned = 0; // complete candidates whose roots were computed
    std::vector<IntPolynomial> matching;
    bool pass = false;         // matching.size() < bound
};

/// Integer polynomials of degree d, leading coefficient a, house below the
/// threshold. Candidates come from the box |a_j| <= a C(d, j) threshold^j,
/// pruned by a Toeplitz positivity test on the normalized power sums.
/// Throws BudgetExceeded when more than `budget` nodes are visited.
CensusReport small_house_census(int d, long a, double b, double tol = 1e-10,
                                std::size_t budget = kDefaultCensusBudget, unsigned workers = 1);

} // namespace randpoly

#endif
