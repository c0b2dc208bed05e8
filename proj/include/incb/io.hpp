#pragma once

// JSON encodings: complex scalars as [re, im] pairs, partitions as nested
// arrays, states and cumulant specs as word/tuple tables.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "incb/cumulants.hpp"
#include "incb/dual.hpp"
#include "incb/errors.hpp"
#include "incb/freealg.hpp"
#include "incb/nc_a.hpp"
#include "incb/nc_b.hpp"

namespace incb {

using nlohmann::json;

inline json to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("complex: expected [re, im]");
  return cplx{j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Dual& d) {
  return json{{"body", to_json(d.body)}, {"soul", to_json(d.soul)}};
}

inline Dual dual_from_json(const json& j) {
  return Dual{cplx_from_json(j.at("body")), cplx_from_json(j.at("soul"))};
}

inline json to_json(const Partition& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks) blocks.push_back(b);
  return blocks;
}

inline Partition partition_from_json(const json& j) {
  std::vector<std::vector<int>> blocks;
  for (const auto& b : j) blocks.push_back(b.get<std::vector<int>>());
  int n = 0;
  for (const auto& b : blocks)
    for (int e : b) n = std::max(n, e);
  Partition p = make_partition(n, std::move(blocks));
  if (has_crossing(p.blocks)) throw ParseError("partition JSON: partition is crossing");
  return p;
}

inline json to_json(const BPartition& t) {
  json blocks = json::array();
  for (const auto& b : t.blocks) blocks.push_back(b);
  return blocks;
}

inline BPartition bpartition_from_json(const json& j) {
  std::vector<std::vector<int>> blocks;
  for (const auto& b : j) blocks.push_back(b.get<std::vector<int>>());
  int n = 0;
  for (const auto& b : blocks)
    for (int e : b) n = std::max(n, std::abs(e));
  return make_bpartition(n, std::move(blocks));
}

inline std::string relation_name(Relation r) {
  switch (r) {
    case Relation::idempotent: return "idempotent";
    case Relation::involution: return "involution";
    default: return "free";
  }
}

inline Relation relation_from_name(const std::string& s) {
  if (s == "free") return Relation::free;
  if (s == "idempotent") return Relation::idempotent;
  if (s == "involution") return Relation::involution;
  throw ParseError("alphabet JSON: unknown relation '" + s + "'");
}

inline json to_json(const Alphabet& a) {
  json out = json::array();
  for (const auto& g : a.gens)
    out.push_back(json{{"name", g.name}, {"relation", relation_name(g.relation)}});
  return out;
}

inline Alphabet alphabet_from_json(const json& j) {
  std::vector<Generator> gens;
  for (const auto& g : j)
    gens.push_back({g.at("name").get<std::string>(),
                    relation_from_name(g.value("relation", std::string("free")))});
  return make_alphabet(std::move(gens));
}

inline json word_to_json(const Alphabet& alph, const Word& w) {
  json out = json::array();
  for (int g : w) out.push_back(alph.gens[static_cast<std::size_t>(g)].name);
  return out;
}

inline Word word_from_json(const Alphabet& alph, const json& j) {
  Word w;
  for (const auto& name : j) w.push_back(alph.index_of(name.get<std::string>()));
  return normalize_word(alph, std::move(w));
}

inline json to_json(const State& s) {
  json moments = json::array();
  for (const Word& w : enumerate_words(s.alphabet, s.degree)) {
    Dual v = s.word_moment(w);
    moments.push_back(json{{"word", word_to_json(s.alphabet, w)},
                           {"body", to_json(v.body)},
                           {"soul", to_json(v.soul)}});
  }
  return json{{"alphabet", to_json(s.alphabet)}, {"degree", s.degree}, {"moments", moments}};
}

inline State state_from_json(const json& j) {
  Alphabet alph = alphabet_from_json(j.at("alphabet"));
  int degree = j.at("degree").get<int>();
  std::map<Word, Dual> table;
  for (const auto& entry : j.at("moments")) {
    Word w = word_from_json(alph, entry.at("word"));
    table[w] = Dual{cplx_from_json(entry.at("body")), cplx_from_json(entry.at("soul"))};
  }
  return make_state(std::move(alph), degree, std::move(table));
}

inline json to_json(const CumulantSpec& spec) {
  json cumulants = json::array();
  for (const auto& [tuple, v] : spec.kappa) {
    json names = json::array();
    for (int g : tuple) names.push_back(spec.alphabet.gens[static_cast<std::size_t>(g)].name);
    cumulants.push_back(
        json{{"tuple", names}, {"body", to_json(v.body)}, {"soul", to_json(v.soul)}});
  }
  return json{{"alphabet", to_json(spec.alphabet)},
              {"degree", spec.degree},
              {"cumulants", cumulants}};
}

inline CumulantSpec spec_from_json(const json& j) {
  CumulantSpec spec;
  spec.alphabet = alphabet_from_json(j.at("alphabet"));
  spec.degree = j.at("degree").get<int>();
  for (const auto& entry : j.at("cumulants")) {
    std::vector<int> tuple;
    for (const auto& name : entry.at("tuple")) tuple.push_back(spec.alphabet.index_of(name));
    spec.kappa[tuple] =
        Dual{cplx_from_json(entry.at("body")), cplx_from_json(entry.at("soul"))};
  }
  spec.zero_default = j.value("zero_default", false);
  return spec;
}

inline json poly_to_json(const Poly& p) {
  json out = json::array();
  for (const auto& [w, c] : p.terms)
    out.push_back(json{{"word", word_to_json(p.alphabet, w)}, {"coeff", to_json(c)}});
  return out;
}

inline Poly poly_from_json(const Alphabet& alph, const json& j) {
  Poly p = Poly::zero(alph);
  for (const auto& term : j)
    p.add_term(word_from_json(alph, term.at("word")), cplx_from_json(term.at("coeff")));
  return p;
}

inline json to_json(const Derivation& d) {
  json images = json::array();
  for (const auto& img : d.images) images.push_back(poly_to_json(img));
  return json{{"alphabet", to_json(d.alphabet)}, {"images", images}};
}

inline Derivation derivation_from_json(const json& j) {
  Alphabet alph = alphabet_from_json(j.at("alphabet"));
  std::vector<Poly> images;
  for (const auto& img : j.at("images")) images.push_back(poly_from_json(alph, img));
  return make_derivation(std::move(alph), std::move(images));
}

inline json to_json(const Report& r) {
  json out{{"name", r.name},
           {"pass", r.pass},
           {"max_violation", r.max_violation},
           {"tol", r.tol}};
  if (!r.pass) out["witness"] = r.witness;
  return out;
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

inline void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace incb
