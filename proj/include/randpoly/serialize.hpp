#ifndef RANDPOLY_SERIALIZE_HPP
#define RANDPOLY_SERIALIZE_HPP

// Canonical JSON forms of the core types.
//
//   IntegerDistribution  [[value, "num/den"], ...]          sorted by value
//   IntPolynomial        ["c0", "c1", ...]                  ascending powers
//   SparsePMF            [["value", "num/den"], ...]        sorted by value
//   MixtureDecomposition [{"t": "num/den", "a": a, "b": b}, ...]
//
// The readers also accept the map form {"value": "num/den", ...} for
// distributions and plain JSON integers for coefficients.

#include "randpoly/core.hpp"
#include "randpoly/mixture.hpp"

#include <json.hpp>

namespace randpoly {

nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const IntegerDistribution& dist);
nlohmann::json to_json(const IntPolynomial& p);
nlohmann::json to_json(const SparsePMF& pmf);
nlohmann::json to_json(const MixtureDecomposition& d);

Rational rational_from_json(const nlohmann::json& j);
IntegerDistribution distribution_from_json(const nlohmann::json& j);
IntPolynomial polynomial_from_json(const nlohmann::json& j);
SparsePMF pmf_from_json(const nlohmann::json& j);

} // namespace randpoly

#endif
