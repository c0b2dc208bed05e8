#pragma once

// Constructions on truncated infinitesimal probability spaces: free products,
// the Z2 group-algebra state, free compression, named laws, quadratic
// compression by a semicircular element, derivation-induced soul companions,
// and boxplus convolution powers.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "incb/cumulants.hpp"
#include "incb/dual.hpp"
#include "incb/errors.hpp"
#include "incb/freealg.hpp"
#include "incb/nc_a.hpp"

namespace incb {

namespace detail {

// kappa on a generator-index tuple of a single input state, without the
// public tuple-length guard (internal blocks may exceed it); memoized.
struct InputKappaCache {
  State state;
  std::map<std::vector<int>, Dual> memo;
  std::mutex mu;

  Dual get(const std::vector<int>& tuple) {
    std::lock_guard<std::mutex> guard(mu);
    auto it = memo.find(tuple);
    if (it != memo.end()) return it->second;
    int n = static_cast<int>(tuple.size());
    if (n > state.degree)
      throw IncompleteInput("free_product: input state does not cover degree " +
                            std::to_string(n));
    const auto& lattice = enumerate_nc(n);
    const auto& mob = mobius_to_top(n);
    Dual acc{};
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      Dual term = g_scale(static_cast<double>(mob[i]), Dual::one());
      for (const auto& b : lattice[i].blocks) {
        Word w;
        for (int e : b) w.push_back(tuple[static_cast<std::size_t>(e - 1)]);
        term *= state.word_moment(normalize_word(state.alphabet, std::move(w)));
      }
      acc += term;
    }
    memo.emplace(tuple, acc);
    return acc;
  }
};

}  // namespace detail

// Free product: union alphabet, mixed cumulants zero, within-group cumulants
// taken from the inputs; moments recomposed by the moment-cumulant summation.
// The table is filled lazily, so inputs only need to cover the word lengths
// actually queried within each group.
inline State free_product(const std::vector<State>& states, int degree) {
  if (states.empty()) throw DimensionMismatch("free_product: no input states");
  if (degree > kMaxNcN) throw SizeLimit("free_product: degree exceeds 12");
  std::vector<Generator> gens;
  std::vector<int> gen_input, gen_local;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (int g = 0; g < states[i].alphabet.size(); ++g) {
      gens.push_back(states[i].alphabet.gens[static_cast<std::size_t>(g)]);
      gen_input.push_back(static_cast<int>(i));
      gen_local.push_back(g);
    }
  Alphabet alph = make_alphabet(std::move(gens));  // throws AlphabetCollision on clash
  auto caches = std::make_shared<std::vector<std::shared_ptr<detail::InputKappaCache>>>();
  for (const auto& s : states) {
    auto c = std::make_shared<detail::InputKappaCache>();
    c->state = s;
    caches->push_back(std::move(c));
  }
  auto provider = [alph, caches, gen_input, gen_local](const Word& w) {
    int n = static_cast<int>(w.size());
    Dual acc{};
    for (const auto& p : enumerate_nc(n)) {
      // only partitions whose blocks stay within one input contribute
      bool pure = true;
      for (const auto& b : p.blocks) {
        int owner = gen_input[static_cast<std::size_t>(w[static_cast<std::size_t>(b.front() - 1)])];
        for (int e : b)
          if (gen_input[static_cast<std::size_t>(w[static_cast<std::size_t>(e - 1)])] != owner)
            pure = false;
        if (!pure) break;
      }
      if (!pure) continue;
      Dual term = Dual::one();
      for (const auto& b : p.blocks) {
        int owner = gen_input[static_cast<std::size_t>(w[static_cast<std::size_t>(b.front() - 1)])];
        std::vector<int> local;
        for (int e : b)
          local.push_back(gen_local[static_cast<std::size_t>(w[static_cast<std::size_t>(e - 1)])]);
        term *= (*caches)[static_cast<std::size_t>(owner)]->get(local);
      }
      acc += term;
    }
    return acc;
  };
  return make_lazy_state(std::move(alph), degree, std::move(provider));
}

// Group algebra of (Z2)*k: k involution generators, body zero on nonempty
// reduced words, soul nonzero exactly on odd palindromic index patterns.
inline State z2_state(int k, const std::vector<double>& alpha_primes, int degree) {
  if (k < 1) throw DimensionMismatch("z2_state: k must be >= 1");
  if (alpha_primes.size() != static_cast<std::size_t>(k))
    throw DimensionMismatch("z2_state: one alpha' per generator required");
  std::vector<Generator> gens;
  for (int i = 1; i <= k; ++i) gens.push_back({"u" + std::to_string(i), Relation::involution});
  Alphabet alph = make_alphabet(std::move(gens));
  std::map<Word, Dual> table;
  for (const Word& w : enumerate_words(alph, degree)) {
    cplx soul{};
    std::size_t n = w.size();
    if (n % 2 == 1) {
      bool palindromic = true;
      for (std::size_t i = 0; i < n; ++i)
        if (w[i] != w[n - 1 - i]) palindromic = false;
      if (palindromic) soul = alpha_primes[static_cast<std::size_t>(w[n / 2])];
    }
    table[w] = Dual{cplx{}, soul};
  }
  return make_state(std::move(alph), degree, std::move(table));
}

struct CompressionParams {
  cplx alpha;        // phi(p)
  cplx alpha_prime;  // phi'(p)

  Dual alpha_tilde() const { return Dual{alpha, alpha_prime}; }
};

inline void validate(const CompressionParams& params) {
  if (std::abs(params.alpha) < 1e-12)
    throw NonInvertible("compression: |phi(p)| below 1e-12");
}

// Each n-tuple cumulant is multiplied by alpha-tilde^(n-1) in G arithmetic.
inline CumulantSpec compress_cumulants(const CumulantSpec& spec, const CompressionParams& params) {
  validate(params);
  Dual at = params.alpha_tilde();
  CumulantSpec out;
  out.alphabet = spec.alphabet;
  out.degree = spec.degree;
  out.zero_default = spec.zero_default;
  for (const auto& [tuple, v] : spec.kappa)
    out.kappa[tuple] = g_pow(at, static_cast<int>(tuple.size()) - 1) * v;
  return out;
}

// End-to-end compression model: adjoin an idempotent p with phi-tilde(p) =
// alpha-tilde, take the free product, and read the compressed state off the
// moments of p x_{i1} p ... x_{im} p, rescaled by 1/alpha-tilde.
inline State compress_state_model(const State& x_state, const CompressionParams& params,
                                  int degree) {
  validate(params);
  int internal = 2 * degree + 1;
  if (internal > kMaxNcN)
    throw DegreeOverflow("compress_state_model: internal degree 2N+1 exceeds 12");
  std::string pname = "p";
  bool clash = true;
  while (clash) {
    clash = false;
    for (const auto& g : x_state.alphabet.gens)
      if (g.name == pname) {
        pname = "_" + pname;
        clash = true;
      }
  }
  Alphabet palph = make_alphabet({{pname, Relation::idempotent}});
  std::map<Word, Dual> ptable;
  ptable[{0}] = params.alpha_tilde();
  State p_state = make_state(palph, internal, std::move(ptable));
  State joint = free_product({x_state, p_state}, internal);
  int p_index = x_state.alphabet.size();  // p comes after the x generators
  Dual inv_at = g_inv(params.alpha_tilde());
  Alphabet xalph = x_state.alphabet;
  auto provider = [joint, p_index, inv_at](const Word& w) {
    Word interleaved{p_index};
    for (int g : w) {
      interleaved.push_back(g);
      interleaved.push_back(p_index);
    }
    return inv_at * joint.word_moment(interleaved);
  };
  return make_lazy_state(std::move(xalph), degree, std::move(provider));
}

// Standard infinitesimally semicircular element: kappa-tilde_1 = eps*a1p,
// kappa-tilde_2 = 1 + eps*a2p, all higher cumulants zero.
inline CumulantSpec semicircular_spec(double a1p, double a2p, int degree) {
  if (degree > kMaxNcN) throw SizeLimit("semicircular_spec: degree exceeds 12");
  CumulantSpec spec;
  spec.alphabet = make_alphabet({{"x", Relation::free}});
  spec.degree = degree;
  for (int n = 1; n <= degree; ++n) {
    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    Dual v{};
    if (n == 1) v = Dual{cplx{}, cplx{a1p, 0.0}};
    if (n == 2) v = Dual{cplx{1.0, 0.0}, cplx{a2p, 0.0}};
    spec.kappa[tuple] = v;
  }
  return spec;
}

// Closed-form moments of the standard infinitesimally semicircular law:
// phi(x^(2m)) = C_m, phi'(x^(2m)) = a2p*m*C_m, phi'(x^(2m+1)) = a1p*(2m+1)*C_m.
inline Dual semicircular_moment(int power, double a1p, double a2p) {
  if (power == 0) return Dual::one();
  if (power % 2 == 0) {
    int m = power / 2;
    double c = static_cast<double>(catalan(m));
    return Dual{cplx{c, 0.0}, cplx{a2p * m * c, 0.0}};
  }
  int m = (power - 1) / 2;
  double c = static_cast<double>(catalan(m));
  return Dual{cplx{}, cplx{a1p * (2 * m + 1) * c, 0.0}};
}

// Infinitesimal free Poisson: kappa_n = lambda, kappa'_n = beta' + n*gamma'.
inline CumulantSpec free_poisson_spec(double lambda, double beta_p, double gamma_p, int degree) {
  if (lambda <= 0.0) throw DimensionMismatch("free_poisson_spec: lambda must be positive");
  if (degree > kMaxNcN) throw SizeLimit("free_poisson_spec: degree exceeds 12");
  CumulantSpec spec;
  spec.alphabet = make_alphabet({{"y", Relation::free}});
  spec.degree = degree;
  for (int n = 1; n <= degree; ++n) {
    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    spec.kappa[tuple] = Dual{cplx{lambda, 0.0}, cplx{beta_p + n * gamma_p, 0.0}};
  }
  return spec;
}

// kappa-tilde_n(x a_1 x, ..., x a_n x) for a standard infinitesimally
// semicircular x infinitesimally free from the family carrying the a_i:
// equals (kappa-tilde_2(x,x))^n * phi-tilde(a_1...a_n).
inline Dual xax_cumulants(const State& joint, int x_index, const Tuple& t,
                          double tol = kDefaultTol) {
  Poly x = Poly::gen(joint.alphabet, x_index);
  Dual k1 = kappa_n(joint, {x});
  Dual k2 = kappa_n(joint, {x, x});
  if (std::abs(k1.body) > tol || std::abs(k2.body - cplx{1.0, 0.0}) > tol)
    throw PreconditionViolated("xax_cumulants: x is not standard semicircular in body");
  std::vector<int> groups(static_cast<std::size_t>(joint.alphabet.size()), 1);
  groups[static_cast<std::size_t>(x_index)] = 0;
  Report free_rep = check_inf_freeness(joint, groups, 3, tol);
  if (!free_rep.pass)
    throw PreconditionViolated("xax_cumulants: x not infinitesimally free from the family: " +
                               free_rep.witness);
  Poly prod = Poly::unit(joint.alphabet);
  for (const auto& a : t) {
    if (a.alphabet != joint.alphabet)
      throw AlphabetMismatch("xax_cumulants: tuple entry over wrong alphabet");
    prod = p_mul(prod, a);
  }
  return g_pow(k2, static_cast<int>(t.size())) * moment(joint, prod);
}

// Soul companion of a body state along a derivation: phi' := phi o D.
inline State soul_companion(const State& body, const Derivation& d) {
  if (d.alphabet != body.alphabet)
    throw AlphabetMismatch("soul_companion: derivation over wrong alphabet");
  check_derivation_relations(d);
  State base = body;
  Derivation dd = d;
  auto provider = [base, dd](const Word& w) {
    cplx b = base.word_moment(w).body;
    Poly dw = apply_derivation(dd, Poly::word(base.alphabet, w));
    cplx soul{};
    for (const auto& [tw, tc] : dw.terms) soul += tc * base.word_moment(tw).body;
    return Dual{b, soul};
  };
  return make_lazy_state(body.alphabet, body.degree, std::move(provider));
}

// Boxplus convolution power: every body cumulant scaled by (t+1).
inline CumulantSpec convolution_power(const CumulantSpec& spec, double t) {
  if (t <= -1.0) throw DimensionMismatch("convolution_power: t must exceed -1");
  CumulantSpec out = spec;
  for (auto& [tuple, v] : out.kappa) v.body *= (t + 1.0);
  return out;
}

// Infinitesimal law of the t-derivative of the boxplus powers at t = 0:
// mu(w) is the plain moment sum, mu'(w) weights each partition by its number
// of blocks; the resulting cumulants satisfy kappa'_n = kappa_n.
inline State inf_limit_of_powers(const CumulantSpec& spec) {
  std::map<Word, Dual> table;
  for (const Word& w : enumerate_words(spec.alphabet, spec.degree)) {
    int n = static_cast<int>(w.size());
    cplx body{}, soul{};
    for (const auto& p : enumerate_nc(n)) {
      cplx term{1.0, 0.0};
      for (const auto& b : p.blocks) {
        std::vector<int> sub;
        for (int e : b) sub.push_back(w[static_cast<std::size_t>(e - 1)]);
        term *= spec.value(sub).body;
      }
      body += term;
      soul += static_cast<double>(p.blocks.size()) * term;
    }
    table[w] = Dual{body, soul};
  }
  return make_state(spec.alphabet, spec.degree, std::move(table));
}

}  // namespace incb
