#pragma once

// Minimal free-algebra layer: words and noncommutative polynomials over a
// declared alphabet with optional per-generator rewriting (idempotent p^2 = p,
// involution u^2 = 1), star operation, and Leibniz derivations.

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "incb/dual.hpp"
#include "incb/errors.hpp"

namespace incb {

enum class Relation { free, idempotent, involution };

struct Generator {
  std::string name;
  Relation relation = Relation::free;

  friend bool operator==(const Generator& a, const Generator& b) {
    return a.name == b.name && a.relation == b.relation;
  }
};

struct Alphabet {
  std::vector<Generator> gens;

  int size() const { return static_cast<int>(gens.size()); }
  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == name) return static_cast<int>(i);
    throw ParseError("alphabet: unknown generator '" + name + "'");
  }
  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.gens == b.gens; }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }
};

inline Alphabet make_alphabet(std::vector<Generator> gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i].name == gens[j].name)
        throw AlphabetCollision("alphabet: duplicate generator name '" + gens[i].name + "'");
  return Alphabet{std::move(gens)};
}

using Word = std::vector<int>;  // generator indices; empty = unit

// Reduce adjacent pairs until fixpoint: idempotent gg -> g, involution gg -> 1.
inline Word normalize_word(const Alphabet& alph, Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] != w[i + 1]) continue;
      Relation r = alph.gens[static_cast<std::size_t>(w[i])].relation;
      if (r == Relation::idempotent) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      if (r == Relation::involution) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i),
                w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline bool is_normalized(const Alphabet& alph, const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1] &&
        alph.gens[static_cast<std::size_t>(w[i])].relation != Relation::free)
      return false;
  return true;
}

struct Poly {
  Alphabet alphabet;
  std::map<Word, cplx> terms;  // no stored coefficients below 1e-14

  static Poly zero(const Alphabet& alph) { return Poly{alph, {}}; }
  static Poly unit(const Alphabet& alph, cplx c = 1.0) {
    Poly p{alph, {}};
    p.add_term({}, c);
    return p;
  }
  static Poly gen(const Alphabet& alph, int index, cplx c = 1.0) {
    Poly p{alph, {}};
    p.add_term({index}, c);
    return p;
  }
  static Poly word(const Alphabet& alph, Word w, cplx c = 1.0) {
    Poly p{alph, {}};
    p.add_term(normalize_word(alph, std::move(w)), c);
    return p;
  }

  void add_term(Word w, cplx c) {
    auto it = terms.find(w);
    cplx v = (it == terms.end() ? cplx{} : it->second) + c;
    if (std::abs(v) < 1e-14) {
      if (it != terms.end()) terms.erase(it);
    } else if (it == terms.end()) {
      terms.emplace(std::move(w), v);
    } else {
      it->second = v;
    }
  }
};

inline Poly p_add(const Poly& a, const Poly& b) {
  if (a.alphabet != b.alphabet) throw AlphabetMismatch("p_add: different alphabets");
  Poly out = a;
  for (const auto& [w, c] : b.terms) out.add_term(w, c);
  return out;
}

inline Poly p_sub(const Poly& a, const Poly& b) {
  if (a.alphabet != b.alphabet) throw AlphabetMismatch("p_sub: different alphabets");
  Poly out = a;
  for (const auto& [w, c] : b.terms) out.add_term(w, -c);
  return out;
}

inline Poly p_scale(cplx c, const Poly& a) {
  Poly out = Poly::zero(a.alphabet);
  for (const auto& [w, coeff] : a.terms) out.add_term(w, c * coeff);
  return out;
}

inline Poly p_mul(const Poly& a, const Poly& b) {
  if (a.alphabet != b.alphabet) throw AlphabetMismatch("p_mul: different alphabets");
  Poly out = Poly::zero(a.alphabet);
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(normalize_word(a.alphabet, std::move(w)), ca * cb);
    }
  return out;
}

// Generators are formally self-adjoint: star reverses words and conjugates
// coefficients.
inline Poly p_star(const Poly& a) {
  Poly out = Poly::zero(a.alphabet);
  for (const auto& [w, c] : a.terms) {
    Word r(w.rbegin(), w.rend());
    out.add_term(normalize_word(a.alphabet, std::move(r)), std::conj(c));
  }
  return out;
}

struct Derivation {
  Alphabet alphabet;
  std::vector<Poly> images;  // one per generator
};

inline Derivation make_derivation(const Alphabet& alph, std::vector<Poly> images) {
  if (static_cast<int>(images.size()) != alph.size())
    throw DimensionMismatch("make_derivation: one image per generator required");
  for (const auto& img : images)
    if (img.alphabet != alph) throw AlphabetMismatch("make_derivation: image alphabet differs");
  return Derivation{alph, std::move(images)};
}

inline Derivation removal_derivation(const Alphabet& alph) {
  std::vector<Poly> images;
  for (int i = 0; i < alph.size(); ++i) images.push_back(Poly::unit(alph));
  return make_derivation(alph, std::move(images));
}

inline Derivation number_derivation(const Alphabet& alph) {
  std::vector<Poly> images;
  for (int i = 0; i < alph.size(); ++i) images.push_back(Poly::gen(alph, i));
  return make_derivation(alph, std::move(images));
}

inline Derivation zero_derivation(const Alphabet& alph) {
  std::vector<Poly> images;
  for (int i = 0; i < alph.size(); ++i) images.push_back(Poly::zero(alph));
  return make_derivation(alph, std::move(images));
}

namespace detail {

inline Poly derive_word(const Derivation& d, const Word& w) {
  Poly out = Poly::zero(d.alphabet);
  for (std::size_t m = 0; m < w.size(); ++m) {
    const Poly& img = d.images[static_cast<std::size_t>(w[m])];
    for (const auto& [iw, ic] : img.terms) {
      Word t(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m));
      t.insert(t.end(), iw.begin(), iw.end());
      t.insert(t.end(), w.begin() + static_cast<std::ptrdiff_t>(m) + 1, w.end());
      out.add_term(normalize_word(d.alphabet, std::move(t)), ic);
    }
  }
  return out;
}

}  // namespace detail

// d must be compatible with the rewrite relations: d(g^2 - g) = 0 for an
// idempotent g, d(g^2) = 0 for an involution g, expanded via Leibniz.
inline void check_derivation_relations(const Derivation& d) {
  for (int i = 0; i < d.alphabet.size(); ++i) {
    Relation r = d.alphabet.gens[static_cast<std::size_t>(i)].relation;
    if (r == Relation::free) continue;
    Poly g = Poly::gen(d.alphabet, i);
    const Poly& dg = d.images[static_cast<std::size_t>(i)];
    Poly lhs = p_add(p_mul(dg, g), p_mul(g, dg));
    if (r == Relation::idempotent) lhs = p_sub(lhs, dg);
    double worst = 0.0;
    for (const auto& [w, c] : lhs.terms) worst = std::max(worst, std::abs(c));
    if (worst > 1e-10)
      throw RelationViolation("derivation image of '" +
                              d.alphabet.gens[static_cast<std::size_t>(i)].name +
                              "' breaks its relation");
  }
}

inline Poly apply_derivation(const Derivation& d, const Poly& a) {
  if (d.alphabet != a.alphabet) throw AlphabetMismatch("apply_derivation: different alphabets");
  check_derivation_relations(d);
  Poly out = Poly::zero(a.alphabet);
  for (const auto& [w, c] : a.terms) {
    Poly dw = detail::derive_word(d, w);
    for (const auto& [tw, tc] : dw.terms) out.add_term(tw, c * tc);
  }
  return out;
}

// All normalized words of length 1..max_len, in length-then-lex order.
inline std::vector<Word> enumerate_words(const Alphabet& alph, int max_len) {
  std::vector<Word> out;
  std::vector<Word> current{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : current)
      for (int g = 0; g < alph.size(); ++g) {
        if (!w.empty() && w.back() == g &&
            alph.gens[static_cast<std::size_t>(g)].relation != Relation::free)
          continue;
        Word x = w;
        x.push_back(g);
        next.push_back(std::move(x));
      }
    for (const auto& w : next) out.push_back(w);
    current = std::move(next);
  }
  return out;
}

inline std::string word_to_string(const Alphabet& alph, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += alph.gens[static_cast<std::size_t>(w[i])].name;
  }
  return s;
}

}  // namespace incb
