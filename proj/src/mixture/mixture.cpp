#include "randpoly/mixture.hpp"

#include "randpoly/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace randpoly {

namespace {

bool canonical_less(const WeightedPoint& x, const WeightedPoint& y)
{
    if (x.weight != y.weight)
        return x.weight > y.weight;
    return x.point < y.point;
}

constexpr std::uint64_t kMaxSamplerDenominator = std::uint64_t{1} << 62;

// Exact cumulative numerators over the lcm of the denominators.
std::uint64_t cumulative_table(std::span<const Rational> probs, std::vector<std::uint64_t>& cum)
{
    Integer den = 1;
    for (const auto& p : probs)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.get_den_mpz_t());
    if (den > Integer(static_cast<unsigned long>(kMaxSamplerDenominator)))
        throw PreconditionError("sampler: common denominator " + den.get_str() + " exceeds 2^62");
    cum.clear();
    Integer running = 0;
    for (const auto& p : probs) {
        running += p.get_num() * (den / p.get_den());
        cum.push_back(running.get_ui());
    }
    if (running != den)
        throw PreconditionError("sampler: probabilities do not sum to 1");
    return den.get_ui();
}

std::size_t pick(std::span<const std::uint64_t> cum, std::uint64_t u)
{
    return static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
}

} // namespace

// ---------------------------------------------------------------------------

OrderedMeasure::OrderedMeasure(std::vector<WeightedPoint> items) : items_(std::move(items)), total_(0)
{
    std::sort(items_.begin(), items_.end(), canonical_less);
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (items_[i].weight <= 0)
            throw PreconditionError("ordered measure: non-positive weight at point " +
                                    std::to_string(items_[i].point));
        total_ += items_[i].weight;
    }
    std::vector<std::int64_t> pts;
    pts.reserve(items_.size());
    for (const auto& it : items_)
        pts.push_back(it.point);
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        throw PreconditionError("ordered measure: repeated point");
}

bool OrderedMeasure::balanced() const
{
    if (items_.empty())
        return true;
    return items_.front().weight * 2 <= total_;
}

MixtureDecomposition::MixtureDecomposition(std::vector<BernoulliComponent> components)
{
    std::map<std::pair<std::int64_t, std::int64_t>, Rational> merged;
    for (auto& c : components) {
        if (c.t <= 0)
            throw PreconditionError("mixture component with non-positive weight");
        if (c.a == c.b)
            throw PreconditionError("mixture component with a == b");
        merged[{std::min(c.a, c.b), std::max(c.a, c.b)}] += c.t;
    }
    for (auto& [pair, t] : merged)
        components_.push_back({t, pair.first, pair.second});
}

Rational MixtureDecomposition::total_weight() const
{
    Rational s = 0;
    for (const auto& c : components_)
        s += c.t;
    return s;
}

OrderedMeasure canonical_order(const IntegerDistribution& dist)
{
    std::vector<WeightedPoint> items;
    items.reserve(dist.support_size());
    for (const auto& a : dist.atoms())
        items.push_back({a.value, a.weight});
    return OrderedMeasure(std::move(items));
}

MixtureDecomposition decompose_three(const OrderedMeasure& m)
{
    const auto items = m.items();
    if (items.empty() || items.size() > 3)
        throw PreconditionError("decompose_three: support size must be 1..3");
    if (m.total() != 1)
        throw PreconditionError("decompose_three: measure is not normalized");
    if (!m.balanced())
        throw PreconditionError("decompose_three: largest weight exceeds half the mass");

    const Rational w1 = items[0].weight;
    const Rational w2 = items.size() > 1 ? items[1].weight : Rational(0);
    const Rational w3 = items.size() > 2 ? items[2].weight : Rational(0);

    std::vector<BernoulliComponent> out;
    auto emit = [&](Rational t, std::size_t i, std::size_t j) {
        if (t != 0)
            out.push_back({std::move(t), items[i].point, items[j].point});
    };
    emit(w1 + w2 - w3, 0, 1);
    if (items.size() == 3) {
        emit(w1 + w3 - w2, 0, 2);
        emit(w2 + w3 - w1, 1, 2);
    }
    return MixtureDecomposition(std::move(out));
}

Extraction extract_component(const OrderedMeasure& m)
{
    const auto items = m.items();
    if (items.size() < 4)
        throw PreconditionError("extract_component: support size must be at least 4");
    if (!m.balanced())
        throw PreconditionError("extract_component: largest weight exceeds half the mass");

    const Rational& w4 = items[3].weight;
    BernoulliComponent beta{w4 * 2, items[0].point, items[3].point};
    if (beta.a > beta.b)
        std::swap(beta.a, beta.b);

    std::vector<WeightedPoint> rest;
    rest.reserve(items.size() - 1);
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i == 3)
            continue;
        Rational w = items[i].weight;
        if (i == 0)
            w -= w4;
        if (w != 0)
            rest.push_back({items[i].point, std::move(w)});
    }
    return {std::move(beta), OrderedMeasure(std::move(rest))};
}

MixtureDecomposition decompose(const IntegerDistribution& dist)
{
    const Rational top = max_atom(dist);
    if (top * 2 > 1)
        throw MaxAtomTooLarge("max atom " + to_string(top) + " exceeds 1/2");

    std::vector<BernoulliComponent> out;
    OrderedMeasure m = canonical_order(dist);
    while (m.support_size() > 3) {
        Extraction step = extract_component(m);
        if (step.beta)
            out.push_back(*step.beta);
        m = std::move(step.rest);
    }

    const Rational mass = m.total();
    std::vector<WeightedPoint> normalized;
    for (const auto& it : m.items())
        normalized.push_back({it.point, it.weight / mass});
    const MixtureDecomposition tail = decompose_three(OrderedMeasure(std::move(normalized)));
    for (const auto& c : tail.components())
        out.push_back({c.t * mass, c.a, c.b});
    return MixtureDecomposition(std::move(out));
}

IntegerDistribution reconstruct(const MixtureDecomposition& d)
{
    std::map<std::int64_t, Rational> mass;
    for (const auto& c : d.components()) {
        mass[c.a] += c.t / 2;
        mass[c.b] += c.t / 2;
    }
    std::vector<Atom> atoms;
    for (auto& [v, w] : mass)
        atoms.push_back({v, std::move(w)});
    return IntegerDistribution(std::move(atoms));
}

// ---------------------------------------------------------------------------

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    if (bound <= 1)
        return 0;
    // 2^64 mod bound; the accepted range [threshold, 2^64) is a multiple of bound.
    const std::uint64_t threshold = (std::uint64_t{0} - bound) % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x < threshold);
    return x % bound;
}

BernoulliMixtureSampler::BernoulliMixtureSampler(const MixtureDecomposition& d)
{
    if (d.empty())
        throw PreconditionError("sampler: empty decomposition");
    std::vector<Rational> probs;
    for (const auto& c : d.components()) {
        rows_.push_back({c.t, c.a, c.b - c.a});
        probs.push_back(c.t);
    }
    denominator_ = cumulative_table(probs, cumulative_);
}

std::size_t BernoulliMixtureSampler::draw_row(std::mt19937_64& rng) const
{
    return pick(cumulative_, uniform_below(rng, denominator_));
}

std::int64_t BernoulliMixtureSampler::draw(std::mt19937_64& rng) const
{
    const SamplerRow& row = rows_[draw_row(rng)];
    const bool coin = (rng() >> 63) != 0;
    return coin ? row.offset + row.spread : row.offset;
}

BernoulliMixtureSampler to_sampler(const MixtureDecomposition& d) { return BernoulliMixtureSampler(d); }

CoefficientSampler::CoefficientSampler(const IntegerDistribution& dist)
{
    if (max_atom(dist) * 2 <= 1) {
        mixture_.emplace(decompose(dist));
        return;
    }
    std::vector<Rational> probs;
    for (const auto& a : dist.atoms()) {
        values_.push_back(a.value);
        probs.push_back(a.weight);
    }
    denominator_ = cumulative_table(probs, cumulative_);
}

std::int64_t CoefficientSampler::draw(std::mt19937_64& rng) const
{
    if (mixture_)
        return mixture_->draw(rng);
    return values_[pick(cumulative_, uniform_below(rng, denominator_))];
}

} // namespace randpoly
