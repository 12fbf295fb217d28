#ifndef RANDPOLY_MIXTURE_HPP
#define RANDPOLY_MIXTURE_HPP

// Decomposition of an integer law with max atom <= 1/2 into unbiased
// two-point (Bernoulli) components, and the matching (I, Delta, B) sampler
// xi = I + B * Delta with B ~ Ber(1/2) independent of (I, Delta).

#include "randpoly/core.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace randpoly {

struct WeightedPoint {
    std::int64_t point;
    Rational weight;

    friend bool operator==(const WeightedPoint&, const WeightedPoint&) = default;
};

/// Finite non-negative measure listed in canonical order: weights
/// non-increasing, ties broken by ascending point. `total` is the mass.
class OrderedMeasure {
public:
    /// Sorts into canonical order. Throws PreconditionError on non-positive
    /// weights or repeated points.
    explicit OrderedMeasure(std::vector<WeightedPoint> items);

    std::span<const WeightedPoint> items() const noexcept { return items_; }
    std::size_t support_size() const noexcept { return items_.size(); }
    const Rational& total() const noexcept { return total_; }
    /// Class-M membership: the largest weight is at most half the mass.
    bool balanced() const;

    friend bool operator==(const OrderedMeasure&, const OrderedMeasure&) = default;

private:
    std::vector<WeightedPoint> items_;
    Rational total_;
};

/// One mixture component t * (delta_a + delta_b) / 2 with a < b.
struct BernoulliComponent {
    Rational t;
    std::int64_t a;
    std::int64_t b;

    friend bool operator==(const BernoulliComponent&, const BernoulliComponent&) = default;
};

/// Components sorted by (a, b) with duplicate pairs merged.
class MixtureDecomposition {
public:
    MixtureDecomposition() = default;
    /// Canonicalizes (orders each pair, merges duplicates, sorts).
    /// Throws PreconditionError on t <= 0 or a == b.
    explicit MixtureDecomposition(std::vector<BernoulliComponent> components);

    std::span<const BernoulliComponent> components() const noexcept { return components_; }
    std::size_t size() const noexcept { return components_.size(); }
    bool empty() const noexcept { return components_.empty(); }
    Rational total_weight() const;

    friend bool operator==(const MixtureDecomposition&, const MixtureDecomposition&) = default;

private:
    std::vector<BernoulliComponent> components_;
};

OrderedMeasure canonical_order(const IntegerDistribution& dist);

/// Explicit split of a normalized measure on at most three points.
/// Throws PreconditionError unless total == 1, support <= 3 and balanced.
MixtureDecomposition decompose_three(const OrderedMeasure& m);

struct Extraction {
    /// Mass w_4 at pi_1 and at pi_4, written as one component with t = 2 w_4.
    std::optional<BernoulliComponent> beta;
    OrderedMeasure rest;
};

/// One reduction step with k = 4: removes pi_4 from the support while keeping
/// the remainder balanced. Throws PreconditionError if support < 4 or the
/// input is not balanced.
Extraction extract_component(const OrderedMeasure& m);

/// Full decomposition. Throws MaxAtomTooLarge when max_atom(dist) > 1/2.
MixtureDecomposition decompose(const IntegerDistribution& dist);

/// Law reconstructed from components: sum t * (delta_a + delta_b) / 2.
IntegerDistribution reconstruct(const MixtureDecomposition& d);

struct SamplerRow {
    Rational probability;
    std::int64_t offset;   // I
    std::int64_t spread;   // Delta >= 1

    friend bool operator==(const SamplerRow&, const SamplerRow&) = default;
};

/// The pair law of (I, Delta). Draws are exact: the row is chosen by an
/// integer uniform on the common denominator of the row probabilities.
class BernoulliMixtureSampler {
public:
    /// Throws PreconditionError on an empty decomposition, or if the row
    /// probabilities need a common denominator above 2^62.
    explicit BernoulliMixtureSampler(const MixtureDecomposition& d);

    std::span<const SamplerRow> rows() const noexcept { return rows_; }

    /// Index of a row drawn with the row probabilities.
    std::size_t draw_row(std::mt19937_64& rng) const;
    /// One coefficient I + B * Delta.
    std::int64_t draw(std::mt19937_64& rng) const;

private:
    std::vector<SamplerRow> rows_;
    std::vector<std::uint64_t> cumulative_;  // numerators over denominator_
    std::uint64_t denominator_ = 1;
};

BernoulliMixtureSampler to_sampler(const MixtureDecomposition& d);

/// Exact integer draw in [0, bound) by rejection; bound >= 1.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Coefficient sampler that goes through the mixture representation when the
/// law admits one and falls back to direct atom sampling otherwise.
class CoefficientSampler {
public:
    explicit CoefficientSampler(const IntegerDistribution& dist);

    std::int64_t draw(std::mt19937_64& rng) const;
    bool uses_mixture() const noexcept { return mixture_.has_value(); }

private:
    std::optional<BernoulliMixtureSampler> mixture_;
    std::vector<std::int64_t> values_;
    std::vector<std::uint64_t> cumulative_;
    std::uint64_t denominator_ = 1;
};

} // namespace randpoly

#endif
