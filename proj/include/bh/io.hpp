#pragma once

#include "bh/bounds.hpp"
#include "bh/equivalence.hpp"
#include "bh/search.hpp"
#include "bh/sets.hpp"
#include "json.hpp"

namespace bh {

using json = nlohmann::json;

// nlohmann adapters; the field layout is described in docs/json-schema.md.
// Parsing errors surface as bh::Error with ParseError.

void to_json(json& j, const PrimePower& q);
void to_json(json& j, const BhParams& p);
void from_json(const json& j, BhParams& p);

void to_json(json& j, const CyclicSet& s);
void from_json(const json& j, CyclicSet& s);

void to_json(json& j, const IntSet& s);
void from_json(const json& j, IntSet& s);

void to_json(json& j, const Provenance& p);
void from_json(const json& j, Provenance& p);

void to_json(json& j, const SearchResult& r);
void from_json(const json& j, SearchResult& r);

void to_json(json& j, const TableScan& t);
void to_json(json& j, const ExactResult& r);
void to_json(json& j, const Merge& m);
void to_json(json& j, const BClassification& c);
void to_json(json& j, const CertificationReport& r);
void to_json(json& j, const BoundReport& r);

CyclicSet parse_cyclic_set(std::string_view text);
SearchResult parse_search_result(std::string_view text);

}  // namespace bh
