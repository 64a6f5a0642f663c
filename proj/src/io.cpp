#include "bh/io.hpp"

#include "bh/error.hpp"

namespace bh {

namespace {

template <class T>
T parse_with(std::string_view text) {
  try {
    return json::parse(text).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, e.what());
  }
}

Method parse_method(const std::string& s) {
  if (s == "affine_subset") return Method::affine_subset;
  if (s == "greedy") return Method::greedy;
  if (s == "exhaustive") return Method::exhaustive;
  fail(ErrorCode::parse_error, "unknown method '" + s + "'");
}

}  // namespace

void to_json(json& j, const PrimePower& q) { j = json{{"q", q.q}, {"p", q.p}, {"e", q.e}}; }

void to_json(json& j, const BhParams& p) {
  j = json{{"family", to_string(p.family)}, {"h", p.h}, {"q", p.q.q}, {"b", p.b}};
}

void from_json(const json& j, BhParams& p) {
  p.family = parse_family(j.at("family").get<std::string>());
  p.h = j.at("h").get<int>();
  p.q = PrimePower::from_q(j.at("q").get<std::uint64_t>());
  p.b = j.at("b").get<std::uint64_t>();
}

void to_json(json& j, const CyclicSet& s) {
  j = json{{"modulus", s.modulus}, {"elements", s.elements}};
  if (s.meta) j["params"] = *s.meta;
}

void from_json(const json& j, CyclicSet& s) {
  const auto elems = j.at("elements").get<std::vector<std::uint64_t>>();
  s = CyclicSet::from_residues(j.at("modulus").get<std::uint64_t>(), elems);
  if (j.contains("params")) s.meta = j.at("params").get<BhParams>();
}

void to_json(json& j, const IntSet& s) { j = s.elements; }

void from_json(const json& j, IntSet& s) { s = IntSet::from(j.get<std::vector<std::uint64_t>>()); }

void to_json(json& j, const Provenance& p) {
  j = json{{"method", to_string(p.method)}};
  if (p.method != Method::affine_subset) return;
  if (p.params) j["params"] = *p.params;
  j["d"] = p.d;
  j["start"] = p.start;
}

void from_json(const json& j, Provenance& p) {
  p = Provenance{};
  p.method = parse_method(j.at("method").get<std::string>());
  if (j.contains("params")) p.params = j.at("params").get<BhParams>();
  p.d = j.value("d", std::uint64_t{0});
  p.start = j.value("start", std::uint64_t{0});
}

void to_json(json& j, const SearchResult& r) {
  j = json{{"k", r.k}, {"n", r.n}, {"witness", r.witness}, {"provenance", r.provenance}};
}

void from_json(const json& j, SearchResult& r) {
  r.k = j.at("k").get<std::size_t>();
  r.n = j.at("n").get<std::uint64_t>();
  r.witness = j.at("witness").get<IntSet>();
  r.provenance = j.at("provenance").get<Provenance>();
}

void to_json(json& j, const TableScan& t) {
  j = json{{"h", t.h}, {"family", to_string(t.family)}, {"rows", t.rows}, {"errors", json::array()}};
  for (const auto& e : t.errors) j["errors"].push_back(json{{"q", e.q}, {"message", e.message}});
}

void to_json(json& j, const ExactResult& r) {
  j = json{{"h", r.h},
           {"k", r.k},
           {"n", r.n},
           {"infeasible", r.infeasible},
           {"witnesses", r.witnesses},
           {"up_to_reflection", up_to_reflection(r.witnesses)}};
}

void to_json(json& j, const Merge& m) { j = json{{"b", m.b}, {"e", m.e}, {"criterion", to_string(m.criterion)}}; }

void to_json(json& j, const BClassification& c) {
  j = json{{"family", to_string(c.family)},
           {"h", c.h},
           {"q", c.q.q},
           {"window", c.window},
           {"representatives", c.representatives()},
           {"classes", json::array()},
           {"funnel", json::array()},
           {"merges", c.merges}};
  if (c.family == Family::singer) j["mode"] = to_string(c.mode);
  for (const auto& cls : c.classes) {
    j["classes"].push_back(json{{"representative", cls.representative}, {"members", cls.members}});
  }
  for (const auto& s : c.counts_after_stage) {
    j["funnel"].push_back(json{{"stage", to_string(s.stage)}, {"classes", s.classes}});
  }
}

void to_json(json& j, const CertificationReport& r) {
  j = json{{"pairs_checked", r.pairs_checked}, {"all_inequivalent", r.all_inequivalent()},
           {"equivalent_pairs", r.equivalent_pairs}};
}

void to_json(json& j, const BoundReport& r) {
  j = json{{"h", r.h},
           {"quantity", to_string(r.quantity)},
           {"argument", r.argument},
           {"regime", to_string(r.regime)},
           {"relation", r.relation},
           {"value", r.value},
           {"vacuous", r.vacuous},
           {"formula", r.formula},
           {"hypotheses", r.hypotheses}};
  if (r.regime == Regime::constructive) {
    j["construction"] = r.construction;
    if (r.q) j["q"] = *r.q;
  } else {
    j["raw_value"] = r.raw_value;
    j["precision_bits"] = r.precision_bits;
  }
}

CyclicSet parse_cyclic_set(std::string_view text) { return parse_with<CyclicSet>(text); }

SearchResult parse_search_result(std::string_view text) { return parse_with<SearchResult>(text); }

}  // namespace bh
