#pragma once

// Truncated infinitesimal probability spaces as moment tables, G-valued
// moment/cumulant transforms over NC(n), the three routes to the
// infinitesimal cumulants, type-B summation formulas, and freeness checkers.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "incb/dual.hpp"
#include "incb/errors.hpp"
#include "incb/freealg.hpp"
#include "incb/nc_a.hpp"
#include "incb/nc_b.hpp"

namespace incb {

inline constexpr int kMaxKappaN = 8;
inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kFdTol = 1e-6;

// A truncated state: normalized words of length <= degree mapped to G.
// Constructed states may fill the table lazily (provider function); entries
// are cached on first use.  Absent entries with no provider read as 0.
struct State {
  Alphabet alphabet;
  int degree = 0;
  std::shared_ptr<std::map<Word, Dual>> table = std::make_shared<std::map<Word, Dual>>();
  std::function<Dual(const Word&)> provider;  // may be empty
  std::shared_ptr<std::mutex> lock = std::make_shared<std::mutex>();

  Dual word_moment(const Word& w) const {
    if (w.empty()) return Dual::one();
    if (static_cast<int>(w.size()) > degree)
      throw DegreeOverflow("word_moment: word length " + std::to_string(w.size()) +
                           " exceeds truncation degree " + std::to_string(degree));
    std::lock_guard<std::mutex> guard(*lock);
    auto it = table->find(w);
    if (it != table->end()) return it->second;
    if (!provider) return Dual{};
    Dual v = provider(w);
    table->emplace(w, v);
    return v;
  }
};

inline State make_state(Alphabet alph, int degree, std::map<Word, Dual> table) {
  for (const auto& [w, v] : table) {
    if (static_cast<int>(w.size()) > degree)
      throw DegreeOverflow("make_state: stored word longer than degree");
    if (!is_normalized(alph, w)) throw ParseError("make_state: stored word not normalized");
  }
  table[Word{}] = Dual::one();
  State s;
  s.alphabet = std::move(alph);
  s.degree = degree;
  *s.table = std::move(table);
  return s;
}

inline State make_lazy_state(Alphabet alph, int degree, std::function<Dual(const Word&)> provider) {
  State s;
  s.alphabet = std::move(alph);
  s.degree = degree;
  s.provider = std::move(provider);
  return s;
}

using Tuple = std::vector<Poly>;

inline Dual moment(const State& s, const Poly& a) {
  if (a.alphabet != s.alphabet) throw AlphabetMismatch("moment: polynomial over wrong alphabet");
  Dual acc{};
  for (const auto& [w, c] : a.terms) acc += g_scale(c, s.word_moment(w));
  return acc;
}

inline Poly tuple_product(const Tuple& t, const std::vector<int>& block) {
  Poly prod = Poly::unit(t.front().alphabet);
  for (int e : block) prod = p_mul(prod, t[static_cast<std::size_t>(e - 1)]);
  return prod;
}

inline Dual phi_pi(const State& s, const Partition& p, const Tuple& t) {
  if (static_cast<int>(t.size()) != p.n)
    throw DimensionMismatch("phi_pi: tuple length differs from partition size");
  Dual acc = Dual::one();
  for (const auto& b : p.blocks) acc *= moment(s, tuple_product(t, b));
  return acc;
}

inline Dual kappa_n(const State& s, const Tuple& t) {
  int n = static_cast<int>(t.size());
  if (n < 1) throw DimensionMismatch("kappa_n: empty tuple");
  if (n > kMaxKappaN) throw SizeLimit("kappa_n: tuple length exceeds 8");
  const auto& lattice = enumerate_nc(n);
  const auto& mob = mobius_to_top(n);
  Dual acc{};
  for (std::size_t i = 0; i < lattice.size(); ++i)
    acc += g_scale(static_cast<double>(mob[i]), phi_pi(s, lattice[i], t));
  return acc;
}

inline Tuple tuple_restrict(const Tuple& t, const std::vector<int>& block) {
  Tuple out;
  for (int e : block) out.push_back(t[static_cast<std::size_t>(e - 1)]);
  return out;
}

inline Dual kappa_pi(const State& s, const Partition& p, const Tuple& t) {
  if (static_cast<int>(t.size()) != p.n)
    throw DimensionMismatch("kappa_pi: tuple length differs from partition size");
  Dual acc = Dual::one();
  for (const auto& b : p.blocks) acc *= kappa_n(s, tuple_restrict(t, b));
  return acc;
}

// Formal route: double sum over (pi, V in pi) with one primed factor.
inline cplx inf_cumulant_formal(const State& s, const Tuple& t) {
  int n = static_cast<int>(t.size());
  if (n < 1) throw DimensionMismatch("inf_cumulant_formal: empty tuple");
  if (n > kMaxKappaN) throw SizeLimit("inf_cumulant_formal: tuple length exceeds 8");
  const auto& lattice = enumerate_nc(n);
  const auto& mob = mobius_to_top(n);
  cplx acc{};
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Partition& p = lattice[i];
    std::vector<Dual> factors;
    for (const auto& b : p.blocks) factors.push_back(moment(s, tuple_product(t, b)));
    acc += static_cast<double>(mob[i]) * soul_of_product(factors);
  }
  return acc;
}

// phi^(B): the zero-block contributes the primed moment on Abs(Z); every
// +/- pair contributes one unprimed moment on its absolute value.
inline cplx phi_b(const State& s, const BPartition& tb, const Tuple& t) {
  if (static_cast<int>(t.size()) != tb.n)
    throw DimensionMismatch("phi_b: tuple length differs from partition size");
  cplx acc{1.0, 0.0};
  auto z = zero_block(tb);
  if (z) {
    std::vector<int> absz;
    for (int e : *z)
      if (e > 0) absz.push_back(e);
    std::sort(absz.begin(), absz.end());
    acc *= moment(s, tuple_product(t, absz)).soul;
  }
  std::set<std::vector<int>> pairs;
  for (const auto& b : tb.blocks) {
    std::set<int> bs(b.begin(), b.end()), neg;
    for (int e : b) neg.insert(-e);
    if (bs == neg) continue;
    std::vector<int> ab;
    for (int e : b) ab.push_back(e > 0 ? e : -e);
    std::sort(ab.begin(), ab.end());
    pairs.insert(std::move(ab));
  }
  for (const auto& ab : pairs) acc *= moment(s, tuple_product(t, ab)).body;
  return acc;
}

inline cplx kappa_b(const State& s, const BPartition& tb, const Tuple& t) {
  if (static_cast<int>(t.size()) != tb.n)
    throw DimensionMismatch("kappa_b: tuple length differs from partition size");
  cplx acc{1.0, 0.0};
  auto z = zero_block(tb);
  if (z) {
    std::vector<int> absz;
    for (int e : *z)
      if (e > 0) absz.push_back(e);
    std::sort(absz.begin(), absz.end());
    acc *= kappa_n(s, tuple_restrict(t, absz)).soul;
  }
  std::set<std::vector<int>> pairs;
  for (const auto& b : tb.blocks) {
    std::set<int> bs(b.begin(), b.end()), neg;
    for (int e : b) neg.insert(-e);
    if (bs == neg) continue;
    std::vector<int> ab;
    for (int e : b) ab.push_back(e > 0 ? e : -e);
    std::sort(ab.begin(), ab.end());
    pairs.insert(std::move(ab));
  }
  for (const auto& ab : pairs) acc *= kappa_n(s, tuple_restrict(t, ab)).body;
  return acc;
}

// Type-B route: Moebius-weighted sum over the zero-block partitions.
inline cplx inf_cumulant_typeb(const State& s, const Tuple& t) {
  int n = static_cast<int>(t.size());
  if (n < 1) throw DimensionMismatch("inf_cumulant_typeb: empty tuple");
  if (n > kMaxNcbN) throw SizeLimit("inf_cumulant_typeb: tuple length exceeds 6");
  BPartition top = full_bpartition(n);
  cplx acc{};
  for (const auto& tb : enumerate_ncz(n))
    acc += static_cast<double>(mobius_b_zero(tb, top)) * phi_b(s, tb, t);
  return acc;
}

// Finite-difference route: derivative at t = 0 of the body cumulant of the
// deformed body state phi + t*phi'; cross-check oracle only.
inline cplx inf_cumulant_numeric(const State& s, const Tuple& t, double h = 1e-4) {
  auto deformed = [&s](double tt) {
    State base = s;
    return make_lazy_state(s.alphabet, s.degree, [base, tt](const Word& w) {
      Dual v = base.word_moment(w);
      return Dual{v.body + tt * v.soul, cplx{}};
    });
  };
  State plus = deformed(h), minus = deformed(-h);
  return (kappa_n(plus, t).body - kappa_n(minus, t).body) / (2.0 * h);
}

inline cplx inf_cumulant_soul(const State& s, const Tuple& t) { return kappa_n(s, t).soul; }

// phi'(a_1...a_n) as the plain sum of kappa^(B) over zero-block partitions.
inline cplx phiprime_from_cumulants(const State& s, const Tuple& t) {
  int n = static_cast<int>(t.size());
  if (n < 1) throw DimensionMismatch("phiprime_from_cumulants: empty tuple");
  if (n > kMaxNcbN) throw SizeLimit("phiprime_from_cumulants: tuple length exceeds 6");
  cplx acc{};
  for (const auto& tb : enumerate_ncz(n)) acc += kappa_b(s, tb, t);
  return acc;
}

// G-valued alternating sums over NC^(B)(n); the no-zero-block partitions feed
// through the unprimed factors only.
inline cplx alternating_moment_typeb(const State& s, const Tuple& a, const Tuple& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("alternating_moment_typeb: tuple lengths differ");
  int n = static_cast<int>(a.size());
  if (n > 5) throw SizeLimit("alternating_moment_typeb: tuple length exceeds 5");
  cplx acc{};
  for (const auto& sigma : enumerate_ncb(n)) {
    BPartition kr = kreweras_b(sigma);
    auto zs = zero_block(sigma), zk = zero_block(kr);
    if (zs && zk) continue;  // exactly one of sigma, Kr(sigma) carries the soul
    if (!zs && !zk) continue;
    if (zs)
      acc += kappa_b(s, sigma, a) * phi_pi(s, abs_map(kr), b).body;
    else
      acc += kappa_pi(s, abs_map(sigma), a).body * phi_b(s, kr, b);
  }
  return acc;
}

inline cplx alternating_cumulant_typeb(const State& s, const Tuple& a, const Tuple& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("alternating_cumulant_typeb: tuple lengths differ");
  int n = static_cast<int>(a.size());
  if (n > 5) throw SizeLimit("alternating_cumulant_typeb: tuple length exceeds 5");
  cplx acc{};
  for (const auto& sigma : enumerate_ncb(n)) {
    BPartition kr = kreweras_b(sigma);
    auto zs = zero_block(sigma), zk = zero_block(kr);
    if (zs && zk) continue;
    if (!zs && !zk) continue;
    if (zs)
      acc += kappa_b(s, sigma, a) * kappa_pi(s, abs_map(kr), b).body;
    else
      acc += kappa_pi(s, abs_map(sigma), a).body * kappa_b(s, kr, b);
  }
  return acc;
}

// Grouped products: kappa of (products over the interval grouping) equals the
// sum of kappa_pi over pi joining with the grouping to the full partition.
inline bool product_cumulant_check(const State& s, const Tuple& x,
                                   const std::vector<int>& group_sizes,
                                   double tol = kDefaultTol) {
  int total = 0;
  for (int g : group_sizes) {
    if (g < 1) throw DimensionMismatch("product_cumulant_check: empty group");
    total += g;
  }
  if (total != static_cast<int>(x.size()))
    throw DimensionMismatch("product_cumulant_check: group sizes do not cover the tuple");
  Partition theta = interval_partition(group_sizes);
  Tuple grouped;
  for (const auto& b : theta.blocks) grouped.push_back(tuple_product(x, b));
  Dual lhs = kappa_n(s, grouped);
  Partition top = full_partition(total);
  Dual rhs{};
  for (const auto& p : enumerate_nc(total))
    if (join(p, theta) == top) rhs += kappa_pi(s, p, x);
  return g_close(lhs, rhs, tol);
}

struct Report {
  std::string name;
  bool pass = true;
  double max_violation = 0.0;
  std::string witness;  // present when pass is false
  double tol = kDefaultTol;
};

namespace detail {

inline void scan_mixed_tuples(const State& s, const std::vector<int>& group_of_gen, int max_n,
                              const std::function<double(const Tuple&)>& violation,
                              const std::function<std::string(const std::vector<int>&)>& describe,
                              Report& rep) {
  int k = s.alphabet.size();
  if (group_of_gen.size() != static_cast<std::size_t>(k))
    throw DimensionMismatch("freeness check: one group label per generator required");
  for (int n = 2; n <= max_n; ++n) {
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
      bool mixed = false;
      for (int i = 1; i < n; ++i)
        if (group_of_gen[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] !=
            group_of_gen[static_cast<std::size_t>(idx[0])])
          mixed = true;
      if (mixed) {
        Tuple t;
        for (int i = 0; i < n; ++i) t.push_back(Poly::gen(s.alphabet, idx[static_cast<std::size_t>(i)]));
        double v = violation(t);
        if (v > rep.max_violation) {
          rep.max_violation = v;
          if (v > rep.tol) rep.witness = describe(idx);
        }
      }
      int i = n - 1;
      while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == k) idx[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
    }
  }
  rep.pass = rep.max_violation <= rep.tol;
}

inline std::string describe_tuple(const Alphabet& alph, const std::vector<int>& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += alph.gens[static_cast<std::size_t>(idx[i])].name;
  }
  return s + ")";
}

}  // namespace detail

// group_of_gen: one class label per generator.  Freeness: mixed body cumulants
// vanish.  Infinitesimal freeness: mixed G-valued cumulants vanish.
inline Report check_freeness(const State& s, const std::vector<int>& group_of_gen, int max_n,
                             double tol = kDefaultTol) {
  Report rep;
  rep.name = "freeness";
  rep.tol = tol;
  detail::scan_mixed_tuples(
      s, group_of_gen, max_n, [&](const Tuple& t) { return std::abs(kappa_n(s, t).body); },
      [&](const std::vector<int>& idx) { return detail::describe_tuple(s.alphabet, idx); }, rep);
  return rep;
}

inline Report check_inf_freeness(const State& s, const std::vector<int>& group_of_gen, int max_n,
                                 double tol = kDefaultTol) {
  Report rep;
  rep.name = "inf-freeness";
  rep.tol = tol;
  detail::scan_mixed_tuples(
      s, group_of_gen, max_n,
      [&](const Tuple& t) {
        Dual v = kappa_n(s, t);
        return std::abs(v.body) + std::abs(v.soul);
      },
      [&](const std::vector<int>& idx) { return detail::describe_tuple(s.alphabet, idx); }, rep);
  return rep;
}

// Definition-level checker: centers alternating tuples of subalgebra words
// with respect to the body and tests the moment condition together with the
// palindromic formula for the soul.
inline Report check_inf_freeness_definition(const State& s, const std::vector<int>& group_of_gen,
                                            int max_n, double tol = kDefaultTol,
                                            int max_word_len = 2) {
  Report rep;
  rep.name = "inf-freeness-definition";
  rep.tol = tol;
  int k = s.alphabet.size();
  if (group_of_gen.size() != static_cast<std::size_t>(k))
    throw DimensionMismatch("freeness check: one group label per generator required");
  std::set<int> group_set(group_of_gen.begin(), group_of_gen.end());
  // candidate subalgebra elements per group: normalized words in that group's
  // generators, up to max_word_len letters
  std::map<int, std::vector<Word>> pool;
  for (int g : group_set) {
    for (const Word& w : enumerate_words(s.alphabet, max_word_len)) {
      bool ok = true;
      for (int letter : w)
        if (group_of_gen[static_cast<std::size_t>(letter)] != g) ok = false;
      if (ok) pool[g].push_back(w);
    }
  }
  for (int n = 2; n <= max_n; ++n) {
    // alternating group label sequences
    std::vector<std::vector<int>> labelseqs;
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& cur) {
      if (static_cast<int>(cur.size()) == n) {
        labelseqs.push_back(cur);
        return;
      }
      for (int g : group_set) {
        if (!cur.empty() && cur.back() == g) continue;
        cur.push_back(g);
        rec(cur);
        cur.pop_back();
      }
    };
    std::vector<int> cur;
    rec(cur);
    for (const auto& labels : labelseqs) {
      // word choices per slot, bounded so the full product fits the table
      std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
      for (;;) {
        int total_len = 0;
        for (int i = 0; i < n; ++i)
          total_len += static_cast<int>(pool[labels[static_cast<std::size_t>(i)]]
                                            [pick[static_cast<std::size_t>(i)]].size());
        // the full product and the palindromic pair products must fit the table
        bool fits = total_len <= s.degree;
        for (int i = 0; fits && i < n; ++i) {
          int j = n - 1 - i;
          int len = static_cast<int>(pool[labels[static_cast<std::size_t>(i)]]
                                         [pick[static_cast<std::size_t>(i)]].size()) +
                    static_cast<int>(pool[labels[static_cast<std::size_t>(j)]]
                                         [pick[static_cast<std::size_t>(j)]].size());
          if (len > s.degree) fits = false;
        }
        {
          if (fits) {
            Tuple centered;
            for (int i = 0; i < n; ++i) {
              const Word& w = pool[labels[static_cast<std::size_t>(i)]]
                                  [pick[static_cast<std::size_t>(i)]];
              Poly a = Poly::word(s.alphabet, w);
              a = p_sub(a, Poly::unit(s.alphabet, s.word_moment(w).body));
              centered.push_back(std::move(a));
            }
            Poly prod = Poly::unit(s.alphabet);
            for (const auto& a : centered) prod = p_mul(prod, a);
            Dual lhs = moment(s, prod);
            // expected: body 0; soul from the palindromic rule
            cplx expected_soul{};
            bool palindromic = (n % 2 == 1);
            for (int i = 0; palindromic && i < n; ++i)
              if (labels[static_cast<std::size_t>(i)] != labels[static_cast<std::size_t>(n - 1 - i)])
                palindromic = false;
            if (palindromic) {
              cplx val{1.0, 0.0};
              for (int i = 0; i < (n - 1) / 2; ++i)
                val *= moment(s, p_mul(centered[static_cast<std::size_t>(i)],
                                       centered[static_cast<std::size_t>(n - 1 - i)]))
                           .body;
              val *= moment(s, centered[static_cast<std::size_t>((n - 1) / 2)]).soul;
              expected_soul = val;
            }
            double v = std::abs(lhs.body) + std::abs(lhs.soul - expected_soul);
            if (v > rep.max_violation) {
              rep.max_violation = v;
              if (v > rep.tol) {
                std::ostringstream os;
                os << "(";
                for (int i = 0; i < n; ++i) {
                  if (i) os << ",";
                  os << word_to_string(s.alphabet, pool[labels[static_cast<std::size_t>(i)]]
                                                      [pick[static_cast<std::size_t>(i)]]);
                }
                os << ") centered";
                rep.witness = os.str();
              }
            }
          }
        }
        int i = 0;
        while (i < n &&
               ++pick[static_cast<std::size_t>(i)] ==
                   pool[labels[static_cast<std::size_t>(i)]].size())
          pick[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
      }
    }
  }
  rep.pass = rep.max_violation <= rep.tol;
  return rep;
}

// Traciality: the moment table is invariant under cyclic rotation of words;
// companion check that G-valued cumulants of generator tuples are invariant
// under cyclic rotation of the arguments.
inline Report check_traciality(const State& s, double tol = kDefaultTol, int cumulant_max_n = 4) {
  Report rep;
  rep.name = "traciality";
  rep.tol = tol;
  for (const Word& w : enumerate_words(s.alphabet, s.degree)) {
    if (w.size() < 2) continue;
    Word r(w.begin() + 1, w.end());
    r.push_back(w.front());
    r = normalize_word(s.alphabet, r);
    Dual a = s.word_moment(w);
    Dual b = static_cast<int>(r.size()) <= s.degree ? s.word_moment(r) : Dual{};
    double v = g_dist(a, b);
    if (v > rep.max_violation) {
      rep.max_violation = v;
      if (v > rep.tol) rep.witness = word_to_string(s.alphabet, w);
    }
  }
  int k = s.alphabet.size();
  for (int n = 2; n <= cumulant_max_n && n <= s.degree; ++n) {
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
      Tuple t, rot;
      for (int i = 0; i < n; ++i) t.push_back(Poly::gen(s.alphabet, idx[static_cast<std::size_t>(i)]));
      for (int i = 1; i < n; ++i) rot.push_back(t[static_cast<std::size_t>(i)]);
      rot.push_back(t.front());
      double v = g_dist(kappa_n(s, t), kappa_n(s, rot));
      if (v > rep.max_violation) {
        rep.max_violation = v;
        if (v > rep.tol) rep.witness = detail::describe_tuple(s.alphabet, idx) + " kappa-rotation";
      }
      int i = 0;
      while (i < n && ++idx[static_cast<std::size_t>(i)] == k) idx[static_cast<std::size_t>(i++)] = 0;
      if (i == n) break;
    }
  }
  rep.pass = rep.max_violation <= rep.tol;
  return rep;
}

// kappa-tilde values on generator tuples, the data from which a state is
// rebuilt by the moment-cumulant summation.
struct CumulantSpec {
  Alphabet alphabet;
  int degree = 0;
  std::map<std::vector<int>, Dual> kappa;  // generator index tuples, length <= degree
  bool zero_default = false;               // absent tuples read as 0 when set

  Dual value(const std::vector<int>& tuple) const {
    auto it = kappa.find(tuple);
    if (it != kappa.end()) return it->second;
    if (zero_default) return Dual{};
    throw IncompleteSpec("cumulant spec: no value for a generator tuple of length " +
                         std::to_string(tuple.size()));
  }
};

inline Dual moment_word_from_spec(const CumulantSpec& spec, const Word& w) {
  if (w.empty()) return Dual::one();
  int n = static_cast<int>(w.size());
  Dual acc{};
  for (const auto& p : enumerate_nc(n)) {
    Dual term = Dual::one();
    for (const auto& b : p.blocks) {
      std::vector<int> sub;
      for (int e : b) sub.push_back(w[static_cast<std::size_t>(e - 1)]);
      term *= spec.value(sub);
    }
    acc += term;
  }
  return acc;
}

inline State moments_from_cumulants(const CumulantSpec& spec) {
  std::map<Word, Dual> table;
  for (const Word& w : enumerate_words(spec.alphabet, spec.degree))
    table[w] = moment_word_from_spec(spec, w);
  return make_state(spec.alphabet, spec.degree, std::move(table));
}

// Extract the generator-tuple cumulants of a state up to max_n.
inline CumulantSpec extract_cumulants(const State& s, int max_n) {
  CumulantSpec spec;
  spec.alphabet = s.alphabet;
  spec.degree = max_n;
  int k = s.alphabet.size();
  for (int n = 1; n <= max_n; ++n) {
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
      Tuple t;
      for (int i = 0; i < n; ++i) t.push_back(Poly::gen(s.alphabet, idx[static_cast<std::size_t>(i)]));
      spec.kappa[idx] = kappa_n(s, t);
      int i = 0;
      while (i < n && ++idx[static_cast<std::size_t>(i)] == k) idx[static_cast<std::size_t>(i++)] = 0;
      if (i == n) break;
    }
  }
  return spec;
}

// Random state with unit-disc body/soul entries; the property-test workhorse.
inline State make_random_state(const Alphabet& alph, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto disc = [&]() {
    for (;;) {
      double x = 2.0 * unif(rng) - 1.0, y = 2.0 * unif(rng) - 1.0;
      if (x * x + y * y <= 1.0) return cplx{x, y};
    }
  };
  std::map<Word, Dual> table;
  for (const Word& w : enumerate_words(alph, degree)) table[w] = Dual{disc(), disc()};
  return make_state(alph, degree, std::move(table));
}

}  // namespace incb
