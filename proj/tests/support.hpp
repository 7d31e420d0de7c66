#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lagsweep/lagsweep.hpp"

namespace testing_support {

using lagsweep::Exponents;
using lagsweep::SparsePolynomial;
using lagsweep::Term;
using lagsweep::Vector;

struct Rand {
  std::mt19937_64 eng;
  explicit Rand(std::uint64_t seed) : eng(seed) {}
  double operator()(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
  Vector vec(int n, double lo = -1.0, double hi = 1.0) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = (*this)(lo, hi);
    return v;
  }
};

inline SparsePolynomial poly(int n, std::vector<std::pair<Exponents, double>> ts) {
  std::vector<Term> terms;
  for (auto& [e, c] : ts) terms.push_back(Term{e, c});
  return SparsePolynomial(n, std::move(terms));
}

inline SparsePolynomial cube1() { return poly(1, {{{3}, 1.0}}); }
inline SparsePolynomial cubes2() { return poly(2, {{{3, 0}, 1.0}, {{0, 3}, 1.0}}); }
inline SparsePolynomial hyp() { return poly(2, {{{2, 1}, 1.0}, {{1, 2}, 1.0}}); }

// All monomials of exactly the given degree in n variables.
inline std::vector<Exponents> monomials_of_degree(int n, int d) {
  std::vector<Exponents> out;
  Exponents e(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[static_cast<std::size_t>(i)] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(i)] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

// Cubic with unit-scale random coefficients (diagonal bounded away from 0)
// plus quartic noise of the given amplitude.
inline SparsePolynomial random_germ(Rand& r, int n, double noise, double diag_min = 0.5) {
  std::vector<Term> terms;
  for (const auto& e : monomials_of_degree(n, 3)) {
    bool diag = false;
    for (int k : e) diag = diag || k == 3;
    double c = diag ? (r() < 0 ? -1.0 : 1.0) * r(diag_min, 1.5) : r(-0.3, 0.3);
    terms.push_back(Term{e, c});
  }
  for (const auto& e : monomials_of_degree(n, 4)) terms.push_back(Term{e, noise * r()});
  return SparsePolynomial(n, std::move(terms));
}

}  // namespace testing_support
