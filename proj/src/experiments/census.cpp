#include "randpoly/experiments.hpp"

#include "randpoly/errors.hpp"
#include "randpoly/parallel.hpp"
#include "randpoly/polyalg.hpp"

#include <cmath>

namespace randpoly {

namespace {

// Depth-first scan of f = sum_i a_i x^(d-i), a_0 fixed, choosing a_1, a_2, ...
// in turn. If every root lies in |z| < L, the sequence c_0 = d,
// c_k = S_k / L^k (S_k the power sums) is the Fourier sequence of a sum of
// Poisson kernels, so its Toeplitz matrices are positive definite. Levinson's
// recursion turns that into an interval for c_k given c_1..c_{k-1}, and
// Newton's identities turn the interval for c_k into one for a_k.
class CensusSearch {
public:
    CensusSearch(int d, long a, double lambda, double tol, std::size_t budget)
        : d_(d), a_(a), lambda_(lambda), tol_(tol), budget_(budget),
          coef_(static_cast<std::size_t>(d) + 1), s_(static_cast<std::size_t>(2 * d) + 1),
          c_(static_cast<std::size_t>(2 * d) + 1), phi_(static_cast<std::size_t>(2 * d) + 1),
          err_(static_cast<std::size_t>(2 * d) + 1), slack_(1e-9 * d)
    {
        coef_[0] = a;
        c_[0] = d;
        err_[0] = d;
        double binom = 1.0;
        for (int j = 0; j <= d; ++j) {
            box_.push_back(static_cast<long>(std::floor(a * binom * std::pow(lambda, j) + 1e-9)));
            binom = binom * (d - j) / (j + 1);
        }
    }

    long box(int j) const { return box_[static_cast<std::size_t>(j)]; }

    // Candidates for a_1, in scan order; each one is a shard.
    std::vector<long> first_level() const
    {
        std::vector<long> out;
        const auto [lo, hi] = range(1);
        for (long v = lo; v <= hi; ++v)
            out.push_back(v);
        return out;
    }

    void run_from(long a1)
    {
        if (choose(1, a1))
            descend(2);
    }

    std::uint64_t nodes = 0;
    std::uint64_t scanned = 0;
    std::vector<IntPolynomial> matching;

private:
    // Sum_{j=1}^{min(k-1, d)} a_j S_{k-j}.
    double newton_tail(int k) const
    {
        double t = 0.0;
        for (int j = 1; j < k && j <= d_; ++j)
            t += static_cast<double>(coef_[static_cast<std::size_t>(j)]) * s_[static_cast<std::size_t>(k - j)];
        return t;
    }

    double center(int k) const
    {
        const auto& phi = phi_[static_cast<std::size_t>(k - 1)];
        double v = 0.0;
        for (int j = 1; j < k; ++j)
            v += phi[static_cast<std::size_t>(j - 1)] * c_[static_cast<std::size_t>(k - j)];
        return v;
    }

    // Integer range of a_k allowed by the box and the Toeplitz interval.
    std::pair<long, long> range(int k) const
    {
        const double mid = center(k);
        const double half = err_[static_cast<std::size_t>(k - 1)] + slack_;
        const double scale = std::pow(lambda_, k);
        const double s_lo = (mid - half) * scale;
        const double s_hi = (mid + half) * scale;
        const double t = newton_tail(k);
        // a_k = -(a_0 S_k + t) / k decreases in S_k.
        const double lo = -(static_cast<double>(a_) * s_hi + t) / k;
        const double hi = -(static_cast<double>(a_) * s_lo + t) / k;
        long ilo = static_cast<long>(std::ceil(lo - 1e-9));
        long ihi = static_cast<long>(std::floor(hi + 1e-9));
        ilo = std::max(ilo, -box(k));
        ihi = std::min(ihi, box(k));
        return {ilo, ihi};
    }

    // Records c_k and advances Levinson's recursion; false if c_k falls
    // outside the positive-definite interval.
    bool push(int k, double ck)
    {
        const auto K = static_cast<std::size_t>(k);
        const double mid = center(k);
        const double e = err_[K - 1];
        if (std::abs(ck - mid) > e + slack_)
            return false;
        double kappa = e > 0.0 ? (ck - mid) / e : 0.0;
        kappa = std::clamp(kappa, -1.0, 1.0);
        const auto& prev = phi_[K - 1];
        auto& phi = phi_[K];
        phi.resize(K);
        for (std::size_t j = 1; j < K; ++j)
            phi[j - 1] = prev[j - 1] - kappa * prev[K - j - 1];
        phi[K - 1] = kappa;
        c_[K] = ck;
        err_[K] = std::max(0.0, e * (1.0 - kappa * kappa));
        return true;
    }

    bool choose(int k, long ak)
    {
        if (++nodes > budget_)
            throw BudgetExceeded("census visited more than " + std::to_string(budget_) + " nodes",
                                 static_cast<double>(nodes), static_cast<double>(budget_));
        coef_[static_cast<std::size_t>(k)] = ak;
        const double sk = -(newton_tail(k) + static_cast<double>(k) * static_cast<double>(ak)) / static_cast<double>(a_);
        s_[static_cast<std::size_t>(k)] = sk;
        return push(k, sk / std::pow(lambda_, k));
    }

    void descend(int k)
    {
        if (k > d_) {
            leaf();
            return;
        }
        const auto [lo, hi] = range(k);
        for (long v = lo; v <= hi; ++v)
            if (choose(k, v))
                descend(k + 1);
    }

    void leaf()
    {
        for (int k = d_ + 1; k <= 2 * d_; ++k) {
            const double sk = -newton_tail(k) / static_cast<double>(a_);
            s_[static_cast<std::size_t>(k)] = sk;
            if (!push(k, sk / std::pow(lambda_, k)))
                return;
        }
        ++scanned;
        std::vector<Integer> ascending;
        for (int i = d_; i >= 0; --i)
            ascending.emplace_back(coef_[static_cast<std::size_t>(i)]);
        IntPolynomial p(std::move(ascending));
        if (house(p, tol_) < lambda_)
            matching.push_back(std::move(p));
    }

    int d_;
    long a_;
    double lambda_;
    double tol_;
    std::size_t budget_;
    std::vector<long> box_;
    std::vector<long> coef_;
    std::vector<double> s_;
    std::vector<double> c_;
    std::vector<std::vector<double>> phi_;
    std::vector<double> err_;
    double slack_;
};

} // namespace

CensusReport small_house_census(int d, long a, double b, double tol, std::size_t budget, unsigned workers)
{
    if (d < 1)
        throw PreconditionError("census needs degree >= 1");
    if (a < 1)
        throw PreconditionError("census needs leading coefficient >= 1");
    if (!(b > 0))
        throw PreconditionError("census needs b > 0");

    CensusReport report;
    report.d = d;
    report.a = a;
    report.b = b;
    report.threshold = 1.0 + b * std::log(static_cast<double>(d)) / (static_cast<double>(a) * d);
    report.bound = std::exp(std::pow(static_cast<double>(a) * d, 2.0 / 3.0 + b));

    CensusSearch probe(d, a, report.threshold, tol, budget);
    report.box_size = 1;
    for (int j = 1; j <= d; ++j)
        report.box_size *= 2 * probe.box(j) + 1;

    if (d == 1) {
        // Threshold is exactly 1: a x + c qualifies iff |c| < a.
        for (long c = -(a - 1); c <= a - 1; ++c)
            report.matching.push_back(IntPolynomial{c, a});
        report.nodes = report.scanned = 2 * static_cast<std::uint64_t>(probe.box(1)) + 1;
    } else {
        const std::vector<long> firsts = probe.first_level();
        std::vector<CensusSearch> shards(firsts.size(), probe);
        run_shards(workers, firsts.size(), [&](std::size_t i) { shards[i].run_from(firsts[i]); });
        for (auto& s : shards) {
            report.nodes += s.nodes;
            report.scanned += s.scanned;
            for (auto& p : s.matching)
                report.matching.push_back(std::move(p));
        }
        if (report.nodes > budget)
            throw BudgetExceeded("census visited " + std::to_string(report.nodes) + " nodes, budget " +
                                     std::to_string(budget),
                                 static_cast<double>(report.nodes), static_cast<double>(budget));
    }
    report.pass = static_cast<double>(report.matching.size()) < report.bound;
    return report;
}

} // namespace randpoly
