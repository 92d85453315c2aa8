#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "simerka/bqf.hpp"
#include "simerka/factored_rational.hpp"
#include "simerka/factorizer.hpp"
#include "simerka/relations.hpp"

namespace simerka {

using Json = nlohmann::ordered_json;

/// ["a", "b", "c"]
Json to_json(const QForm& q);
QForm form_from_json(const Json& j);

/// [["p", e], ...] in ascending prime order
Json to_json(const FactoredRational& r);
FactoredRational factored_from_json(const Json& j);

Json to_json(const GroupStructure& g);
Json to_json(const FactorResult& r);

/// One relation-log record: the discriminant, the primes with nonzero
/// exponent, their exponents and the witness.
Json relation_record(const Relation& rel, const FactorBase& base);
/// Throws parse_error on malformed records and invalid_argument when a prime
/// is missing from the base.
Relation relation_from_record(const Json& j, const FactorBase& base);

/// Appends one JSON line per relation.
void append_relation_log(const std::string& path, const std::vector<Relation>& rels, const FactorBase& base);
/// Relations recorded for the base's discriminant; other discriminants are
/// skipped. A missing file yields an empty list.
std::vector<Relation> load_relation_log(const std::string& path, const FactorBase& base);

} // namespace simerka
