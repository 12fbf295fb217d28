#include "randpoly/polyalg.hpp"

#include "randpoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace randpoly {

namespace {

using cplx = std::complex<double>;

struct Evaluation {
    cplx value;
    cplx slope;
};

Evaluation horner(const std::vector<double>& c, cplx z)
{
    cplx v = c.back();
    cplx d = 0.0;
    for (std::size_t j = c.size() - 1; j-- > 0;) {
        d = d * z + v;
        v = v * z + c[j];
    }
    return {v, d};
}

double scaled_residual(const std::vector<double>& c, cplx z)
{
    const double r = std::abs(z);
    double scale = 0.0;
    for (std::size_t j = c.size(); j-- > 0;)
        scale = scale * r + std::abs(c[j]);
    if (scale == 0.0)
        return 0.0;
    return std::abs(horner(c, z).value) / scale;
}

// Cluster sizes by single-linkage on |z_i - z_j| < radius (1 + |z_i|).
std::vector<int> cluster_sizes(const std::vector<cplx>& z, double radius)
{
    const std::size_t n = z.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(z[i] - z[j]) < radius * (1.0 + std::abs(z[i])))
                parent[find(i)] = find(j);
    std::vector<int> size(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        ++size[find(i)];
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = size[find(i)];
    return out;
}

} // namespace

RootSet roots_complex(const IntPolynomial& p, double tol)
{
    if (p.degree() < 1)
        throw PreconditionError("root finding needs degree >= 1");

    int zeros = 0;
    while (p.coeff(zeros) == 0)
        ++zeros;
    std::vector<double> c;
    for (int j = zeros; j <= p.degree(); ++j)
        c.push_back(p.coeff(j).get_d());
    const int m = static_cast<int>(c.size()) - 1;

    std::vector<cplx> z;
    int iterations = 0;
    double residual = 0.0;
    if (m > 0) {
        double cauchy = 0.0;
        for (int j = 0; j < m; ++j)
            cauchy = std::max(cauchy, std::abs(c[static_cast<std::size_t>(j)] / c.back()));
        const double radius = 1.05 * (1.0 + cauchy);
        for (int k = 0; k < m; ++k)
            z.push_back(std::polar(radius, 2.0 * std::numbers::pi * k / m + 0.4));

        for (iterations = 1; iterations <= kMaxRootIterations; ++iterations) {
            double largest_step = 0.0;
            for (int i = 0; i < m; ++i) {
                const auto [value, slope] = horner(c, z[static_cast<std::size_t>(i)]);
                if (value == 0.0)
                    continue;
                const cplx ratio = value / slope;
                cplx repulsion = 0.0;
                for (int j = 0; j < m; ++j)
                    if (j != i)
                        repulsion += 1.0 / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
                const cplx step = ratio / (1.0 - ratio * repulsion);
                if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                    continue;
                z[static_cast<std::size_t>(i)] -= step;
                largest_step = std::max(largest_step, std::abs(step) / (1.0 + std::abs(z[static_cast<std::size_t>(i)])));
            }
            residual = 0.0;
            for (const auto& root : z)
                residual = std::max(residual, scaled_residual(c, root));
            if (largest_step < 1e-15 || (residual <= 1e-4 * tol && largest_step < 1e-12))
                break;
        }
        iterations = std::min(iterations, kMaxRootIterations);
    }

    z.insert(z.end(), static_cast<std::size_t>(zeros), cplx(0.0, 0.0));
    std::sort(z.begin(), z.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    const auto mult = cluster_sizes(z, 1e-4);

    RootSet out{{}, residual, iterations, residual <= tol};
    for (std::size_t i = 0; i < z.size(); ++i)
        out.roots.push_back({z[i], mult[i]});
    if (!out.converged) {
        std::ostringstream msg;
        msg << "root finder residual " << residual << " above tolerance " << tol;
        throw NonConverged(msg.str(), residual);
    }
    return out;
}

double house(const IntPolynomial& p, double tol)
{
    double best = 0.0;
    for (const auto& r : roots_complex(squarefree_part(p), tol).roots)
        best = std::max(best, std::abs(r.value));
    return best;
}

int count_roots_modulus_ge(const IntPolynomial& p, double r, double slack, double tol)
{
    int count = 0;
    for (const auto& root : roots_complex(p, tol).roots)
        if (std::abs(root.value) >= r - slack)
            ++count;
    return count;
}

JensenCheck jensen_check(const IntPolynomial& p, long M, double tol)
{
    if (M < 1)
        throw PreconditionError("jensen_check needs M >= 1");
    for (const auto& c : p.coeffs())
        if (abs(c) > M)
            throw PreconditionError("coefficient " + c.get_str() + " exceeds M = " + std::to_string(M));
    const int count = count_roots_modulus_ge(p, 1.5, 1e-9, tol);
    return {count, 64 * M, count <= 64 * M};
}

} // namespace randpoly
