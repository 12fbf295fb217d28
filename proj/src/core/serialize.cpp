#include "randpoly/serialize.hpp"

#include "randpoly/errors.hpp"

#include <limits>

namespace randpoly {

using nlohmann::json;

namespace {

std::int64_t atom_value(const json& j)
{
    if (j.is_number_integer())
        return j.get<std::int64_t>();
    if (j.is_string()) {
        const Integer z = parse_integer(j.get<std::string>());
        if (!z.fits_slong_p())
            throw PreconditionError("atom value out of range: " + z.get_str());
        return z.get_si();
    }
    throw PreconditionError("atom value must be an integer");
}

Integer integer_from_json(const json& j)
{
    if (j.is_number_integer())
        return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string())
        return parse_integer(j.get<std::string>());
    throw PreconditionError("expected an integer or decimal string");
}

} // namespace

json to_json(const Rational& q) { return to_string(q); }

json to_json(const IntegerDistribution& dist)
{
    json out = json::array();
    for (const auto& a : dist.atoms())
        out.push_back(json::array({a.value, to_string(a.weight)}));
    return out;
}

json to_json(const IntPolynomial& p)
{
    json out = json::array();
    for (const auto& c : p.coeffs())
        out.push_back(c.get_str());
    return out;
}

json to_json(const SparsePMF& pmf)
{
    json out = json::array();
    for (const auto& e : pmf.entries())
        out.push_back(json::array({e.value.get_str(), to_string(e.prob)}));
    return out;
}

json to_json(const MixtureDecomposition& d)
{
    json out = json::array();
    for (const auto& c : d.components())
        out.push_back({{"t", to_string(c.t)}, {"a", c.a}, {"b", c.b}});
    return out;
}

Rational rational_from_json(const json& j)
{
    if (j.is_number_integer())
        return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    throw PreconditionError("expected a rational as \"num/den\"");
}

IntegerDistribution distribution_from_json(const json& j)
{
    std::vector<Atom> atoms;
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            atoms.push_back({atom_value(json(key)), rational_from_json(value)});
    } else if (j.is_array()) {
        for (const auto& pair : j) {
            if (!pair.is_array() || pair.size() != 2)
                throw PreconditionError("distribution atoms must be [value, \"num/den\"] pairs");
            atoms.push_back({atom_value(pair[0]), rational_from_json(pair[1])});
        }
    } else {
        throw PreconditionError("distribution must be a JSON object or array");
    }
    return IntegerDistribution(std::move(atoms));
}

IntPolynomial polynomial_from_json(const json& j)
{
    if (!j.is_array())
        throw PreconditionError("polynomial must be a JSON array of coefficients");
    std::vector<Integer> coeffs;
    coeffs.reserve(j.size());
    for (const auto& c : j)
        coeffs.push_back(integer_from_json(c));
    return IntPolynomial(std::move(coeffs));
}

SparsePMF pmf_from_json(const json& j)
{
    if (!j.is_array())
        throw PreconditionError("pmf must be a JSON array of [value, prob] pairs");
    std::vector<PmfEntry> entries;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw PreconditionError("pmf entries must be [value, \"num/den\"] pairs");
        entries.push_back({integer_from_json(pair[0]), rational_from_json(pair[1])});
    }
    return SparsePMF(std::move(entries));
}

} // namespace randpoly
