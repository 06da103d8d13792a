#pragma once

// JSON encoding of systems, points, homeomorphisms and evidence.
// Rationals are [numerator, denominator]; decoders also accept integers and
// "p/q" strings. Decoding errors throw Error(Schema) prefixed with a JSON path.

#include <string>

#include <json.hpp>

#include "kato/conjugacy.hpp"
#include "kato/detectors.hpp"
#include "kato/spaces.hpp"

namespace kato::io {

using json = nlohmann::ordered_json;

json parse_json(const std::string& text, const std::string& origin);
json load_json_file(const std::string& path);

Rational decode_rational(const json& j, const std::string& path);
json encode(const Rational& q);

Space decode_space(const json& j, const std::string& path);
json encode(const Space& s);

SelfMap decode_map(const json& j, const std::string& path);
json encode(const SelfMap& m);

/// {"space": ..., "maps": [...]}; an optional "name" is ignored here.
MultiMapping decode_system(const json& j, const std::string& path = "$");
json encode(const MultiMapping& f);

Point decode_point(const json& j, const Space& s, const std::string& path);
json encode(const Point& p);

FiniteSet decode_set(const json& j, const Space& s, const std::string& path);
json encode(const FiniteSet& a);

Homeomorphism decode_homeomorphism(const json& j, const Space& source, const std::string& path = "$");
json encode(const Homeomorphism& t);

json encode(const Distance& d);
/// Full evidence; at most max_witnesses witnesses when nonzero (the count is always reported).
json encode(const Evidence& e, std::size_t max_witnesses = 0);

}  // namespace kato::io
