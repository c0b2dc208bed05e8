#pragma once

// Dual derivation systems: families d_n acting on multilinear functionals,
// either induced by an algebra derivation or given canonically on the
// phi^(A)_pi basis via zero-block lifts.

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "incb/cumulants.hpp"
#include "incb/dual.hpp"
#include "incb/freealg.hpp"
#include "incb/nc_a.hpp"
#include "incb/nc_b.hpp"

namespace incb {

// An n-linear complex-valued functional on tuples of polynomials.
struct Functional {
  int arity = 0;
  std::function<cplx(const Tuple&)> eval;

  cplx operator()(const Tuple& t) const {
    if (static_cast<int>(t.size()) != arity)
      throw DimensionMismatch("functional: tuple length differs from arity");
    return eval(t);
  }
};

inline Functional moment_functional(const State& s, int n) {
  return Functional{n, [s](const Tuple& t) {
                      Poly prod = Poly::unit(s.alphabet);
                      for (const auto& a : t) prod = p_mul(prod, a);
                      return moment(s, prod).body;
                    }};
}

inline Functional soul_moment_functional(const State& s, int n) {
  return Functional{n, [s](const Tuple& t) {
                      Poly prod = Poly::unit(s.alphabet);
                      for (const auto& a : t) prod = p_mul(prod, a);
                      return moment(s, prod).soul;
                    }};
}

inline Functional phi_a_functional(const State& s, const Partition& p) {
  return Functional{p.n, [s, p](const Tuple& t) { return phi_pi(s, p, t).body; }};
}

inline Functional kappa_functional(const State& s, int n) {
  return Functional{n, [s](const Tuple& t) { return kappa_n(s, t).body; }};
}

inline Functional soul_kappa_functional(const State& s, int n) {
  return Functional{n, [s](const Tuple& t) { return kappa_n(s, t).soul; }};
}

// Block product: J_pi(f_1,...,f_p)(a_1,...,a_n) multiplies each f_j applied
// to the restriction of the tuple to the j-th block of pi (canonical order).
inline Functional j_pi(const Partition& p, const std::vector<Functional>& fs) {
  if (fs.size() != p.blocks.size())
    throw DimensionMismatch("j_pi: one functional per block required");
  for (std::size_t j = 0; j < fs.size(); ++j)
    if (fs[j].arity != static_cast<int>(p.blocks[j].size()))
      throw DimensionMismatch("j_pi: functional arity differs from block size");
  Partition pp = p;
  std::vector<Functional> ffs = fs;
  return Functional{p.n, [pp, ffs](const Tuple& t) {
                      cplx acc{1.0, 0.0};
                      for (std::size_t j = 0; j < ffs.size(); ++j)
                        acc *= ffs[j](tuple_restrict(t, pp.blocks[j]));
                      return acc;
                    }};
}

// Concatenation (f x g)(a_1,...,a_{m+n}) = f(a_1..a_m) * g(a_{m+1}..a_{m+n}).
inline Functional concat(const Functional& f, const Functional& g) {
  Functional ff = f, gg = g;
  return Functional{f.arity + g.arity, [ff, gg](const Tuple& t) {
                      Tuple left(t.begin(), t.begin() + ff.arity);
                      Tuple right(t.begin() + ff.arity, t.end());
                      return ff(left) * gg(right);
                    }};
}

// f o Mult_n as an n-linear functional, for 1-linear f.
inline Functional pullback_mult(const Functional& f, int n) {
  if (f.arity != 1) throw DimensionMismatch("pullback_mult: f must be 1-linear");
  Functional ff = f;
  return Functional{n, [ff](const Tuple& t) {
                      Poly prod = Poly::unit(t.front().alphabet);
                      for (const auto& a : t) prod = p_mul(prod, a);
                      return ff({prod});
                    }};
}

// The dual derivation system induced by an algebra derivation:
// (d_n f)(a_1,...,a_n) = sum_m f(a_1,...,D(a_m),...,a_n).
struct DualDerivationSystem {
  Derivation derivation;

  Functional apply(const Functional& f) const {
    Derivation d = derivation;
    Functional ff = f;
    return Functional{f.arity, [d, ff](const Tuple& t) {
                        cplx acc{};
                        for (std::size_t m = 0; m < t.size(); ++m) {
                          Tuple mod = t;
                          mod[m] = apply_derivation(d, t[m]);
                          acc += ff(mod);
                        }
                        return acc;
                      }};
  }
};

inline DualDerivationSystem dds_from_derivation(const Derivation& d) {
  check_derivation_relations(d);
  return DualDerivationSystem{d};
}

namespace detail {

inline Poly random_poly(const Alphabet& alph, int max_len, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Poly p = Poly::zero(alph);
  for (const Word& w : enumerate_words(alph, max_len)) p.add_term(w, cplx{unif(rng), unif(rng)});
  p.add_term({}, cplx{unif(rng), unif(rng)});
  return p;
}

}  // namespace detail

// Evaluates both sides of the two axioms (block products with |pi| = 2 and
// random larger pi; pullback along Mult_n) plus the concatenation rule, on
// functionals sampled from random moment tables.
inline Report dds_check(const DualDerivationSystem& sys, int samples, std::uint64_t seed,
                        double tol = kDefaultTol) {
  Report rep;
  rep.name = "dds-axioms";
  rep.tol = tol;
  const Alphabet& alph = sys.derivation.alphabet;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_n(2, 4);
  int degree = 10;  // products of short random polys against random tables
  for (int s = 0; s < samples; ++s) {
    State st = make_random_state(alph, degree, rng());
    int n = pick_n(rng);
    const auto& lattice = enumerate_nc(n);
    std::vector<Partition> candidates;
    for (const auto& p : lattice)
      if (p.blocks.size() >= 2) candidates.push_back(p);
    std::uniform_int_distribution<std::size_t> pick_p(0, candidates.size() - 1);
    Partition p = candidates[pick_p(rng)];
    // prefer |pi| = 2 (sufficient for the axiom), every third sample larger
    if (s % 3 != 0) {
      std::vector<Partition> two;
      for (const auto& q : candidates)
        if (q.blocks.size() == 2) two.push_back(q);
      std::uniform_int_distribution<std::size_t> pick_two(0, two.size() - 1);
      p = two[pick_two(rng)];
    }
    std::vector<Functional> fs;
    for (const auto& b : p.blocks) fs.push_back(moment_functional(st, static_cast<int>(b.size())));
    Tuple args;
    for (int i = 0; i < n; ++i) args.push_back(detail::random_poly(alph, 2, rng));
    // axiom (i)
    cplx lhs = sys.apply(j_pi(p, fs))(args);
    cplx rhs{};
    for (std::size_t j = 0; j < fs.size(); ++j) {
      std::vector<Functional> mod = fs;
      mod[j] = sys.apply(fs[j]);
      rhs += j_pi(p, mod)(args);
    }
    double v = std::abs(lhs - rhs);
    if (v > rep.max_violation) {
      rep.max_violation = v;
      if (v > rep.tol) rep.witness = "axiom(i) n=" + std::to_string(n) + " pi=" + to_text(p);
    }
    // axiom (ii): f in M_1 pulled back along Mult_n
    Functional f1 = moment_functional(st, 1);
    cplx lhs2 = sys.apply(pullback_mult(f1, n))(args);
    cplx rhs2 = pullback_mult(sys.apply(f1), n)(args);
    v = std::abs(lhs2 - rhs2);
    if (v > rep.max_violation) {
      rep.max_violation = v;
      if (v > rep.tol) rep.witness = "axiom(ii) n=" + std::to_string(n);
    }
    // concatenation rule
    Functional f = moment_functional(st, 1), g = moment_functional(st, n - 1);
    cplx lhs3 = sys.apply(concat(f, g))(args);
    cplx rhs3 = concat(sys.apply(f), g)(args) + concat(f, sys.apply(g))(args);
    v = std::abs(lhs3 - rhs3);
    if (v > rep.max_violation) {
      rep.max_violation = v;
      if (v > rep.tol) rep.witness = "concatenation n=" + std::to_string(n);
    }
  }
  rep.pass = rep.max_violation <= rep.tol;
  return rep;
}

// Canonical action on the phi^(A) basis: each pi coefficient spreads over the
// zero-block lifts of pi.
inline std::map<BPartition, cplx> dds_canonical(int n, const std::map<Partition, cplx>& coeffs) {
  if (n > 5) throw SizeLimit("dds_canonical: n exceeds 5");
  std::map<BPartition, cplx> out;
  for (const auto& [p, c] : coeffs) {
    if (p.n != n) throw DimensionMismatch("dds_canonical: partition size differs from n");
    for (const auto& v : p.blocks) {
      BPartition tau = zero_block_lift(p, v);
      out[tau] += c;
    }
  }
  return out;
}

inline cplx eval_phi_a_combo(const State& s, const std::map<Partition, cplx>& coeffs,
                             const Tuple& t) {
  cplx acc{};
  for (const auto& [p, c] : coeffs) acc += c * phi_pi(s, p, t).body;
  return acc;
}

inline cplx eval_phi_b_combo(const State& s, const std::map<BPartition, cplx>& coeffs,
                             const Tuple& t) {
  cplx acc{};
  for (const auto& [tb, c] : coeffs) acc += c * phi_b(s, tb, t);
  return acc;
}

}  // namespace incb
