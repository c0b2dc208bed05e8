#pragma once

// Two-dimensional Grassmann algebra G = C + eps*C with eps^2 = 0.
// Every functional in the library is G-valued; body/soul are the two
// complex components.

#include <complex>
#include <cstddef>
#include <vector>

#include "incb/errors.hpp"

namespace incb {

using cplx = std::complex<double>;

struct Dual {
  cplx body{0.0, 0.0};
  cplx soul{0.0, 0.0};

  Dual() = default;
  Dual(cplx b, cplx s) : body(b), soul(s) {}
  Dual(double b) : body(b, 0.0) {}
  Dual(cplx b) : body(b) {}

  static Dual one() { return Dual{cplx{1.0, 0.0}, cplx{0.0, 0.0}}; }
  static Dual eps() { return Dual{cplx{0.0, 0.0}, cplx{1.0, 0.0}}; }
};

inline Dual g_add(const Dual& x, const Dual& y) {
  return Dual{x.body + y.body, x.soul + y.soul};
}

inline Dual g_sub(const Dual& x, const Dual& y) {
  return Dual{x.body - y.body, x.soul - y.soul};
}

inline Dual g_neg(const Dual& x) { return Dual{-x.body, -x.soul}; }

inline Dual g_mul(const Dual& x, const Dual& y) {
  return Dual{x.body * y.body, x.body * y.soul + x.soul * y.body};
}

inline Dual g_scale(cplx c, const Dual& x) { return Dual{c * x.body, c * x.soul}; }

inline Dual g_inv(const Dual& x) {
  if (std::abs(x.body) < 1e-12) throw NonInvertible("g_inv: body magnitude below 1e-12");
  cplx b = 1.0 / x.body;
  return Dual{b, -x.soul * b * b};
}

// So(g1...gn) expanded without forming the product:
// sum_i soul(g_i) * prod_{j != i} body(g_j).
inline cplx soul_of_product(const std::vector<Dual>& xs) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cplx term = xs[i].soul;
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i) term *= xs[j].body;
    acc += term;
  }
  return acc;
}

inline Dual operator+(const Dual& x, const Dual& y) { return g_add(x, y); }
inline Dual operator-(const Dual& x, const Dual& y) { return g_sub(x, y); }
inline Dual operator-(const Dual& x) { return g_neg(x); }
inline Dual operator*(const Dual& x, const Dual& y) { return g_mul(x, y); }
inline Dual& operator+=(Dual& x, const Dual& y) { x = x + y; return x; }
inline Dual& operator-=(Dual& x, const Dual& y) { x = x - y; return x; }
inline Dual& operator*=(Dual& x, const Dual& y) { x = x * y; return x; }

inline double g_dist(const Dual& x, const Dual& y) {
  return std::abs(x.body - y.body) + std::abs(x.soul - y.soul);
}

inline bool g_close(const Dual& x, const Dual& y, double tol = 1e-9) {
  return g_dist(x, y) <= tol;
}

// (x)^m for small non-negative integer m.
inline Dual g_pow(const Dual& x, int m) {
  Dual acc = Dual::one();
  for (int i = 0; i < m; ++i) acc *= x;
  return acc;
}

}  // namespace incb
