#pragma once

// Sparse multivariate polynomials with real coefficients and integer
// exponents. Terms are kept in graded-lexicographic order with like terms
// merged and zero coefficients dropped, so two polynomials are equal exactly
// when their term lists are equal.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lagsweep/error.hpp"

namespace lagsweep {

using Exponents = std::vector<int>;

struct Term {
  Exponents exponents;
  double coeff = 0.0;

  int degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
  friend bool operator==(const Term&, const Term&) = default;
};

namespace detail {

// Graded lex: lower total degree first; within a degree, larger leading
// exponent first (so q1 sorts before q2).
inline bool grlex_less(const Exponents& a, const Exponents& b) {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

inline double ipow(double base, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace detail

class SparsePolynomial {
 public:
  explicit SparsePolynomial(int nvars = 1) : nvars_(nvars) {
    if (nvars < 1) throw input_error("SparsePolynomial: nvars must be positive");
  }

  SparsePolynomial(int nvars, std::vector<Term> terms) : SparsePolynomial(nvars) {
    for (const auto& t : terms) {
      if (static_cast<int>(t.exponents.size()) != nvars)
        throw input_error("SparsePolynomial: exponent tuple length differs from nvars");
      for (int e : t.exponents)
        if (e < 0) throw input_error("SparsePolynomial: negative exponent");
    }
    terms_ = std::move(terms);
    normalize();
  }

  static SparsePolynomial constant(int nvars, double c) {
    return SparsePolynomial(nvars, {Term{Exponents(nvars, 0), c}});
  }

  // c * q_i^power (0-based variable index).
  static SparsePolynomial monomial(int nvars, int var, int power, double c = 1.0) {
    check_index(nvars, var);
    Exponents e(nvars, 0);
    e[var] = power;
    return SparsePolynomial(nvars, {Term{std::move(e), c}});
  }

  int nvars() const { return nvars_; }
  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.back().degree(); }

  // Coefficient of the given monomial, 0 if absent.
  double coeff(const Exponents& e) const {
    for (const auto& t : terms_)
      if (t.exponents == e) return t.coeff;
    return 0.0;
  }

  double eval(std::span<const double> q) const {
    detail::require_dim(q.size(), static_cast<std::size_t>(nvars_), "SparsePolynomial::eval");
    double sum = 0.0;
    for (const auto& t : terms_) {
      double m = t.coeff;
      for (int i = 0; i < nvars_; ++i)
        if (t.exponents[i] != 0) m *= detail::ipow(q[i], t.exponents[i]);
      sum += m;
    }
    return sum;
  }

  double eval(const Eigen::VectorXd& q) const {
    return eval(std::span<const double>(q.data(), static_cast<std::size_t>(q.size())));
  }

  double operator()(const Eigen::VectorXd& q) const { return eval(q); }

  SparsePolynomial& operator+=(const SparsePolynomial& o) {
    check_same(o);
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
  }

  SparsePolynomial& operator-=(const SparsePolynomial& o) { return *this += (-1.0) * o; }

  SparsePolynomial& operator*=(double s) {
    for (auto& t : terms_) t.coeff *= s;
    normalize();
    return *this;
  }

  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator*(double s, SparsePolynomial p) { return p *= s; }
  friend SparsePolynomial operator*(SparsePolynomial p, double s) { return p *= s; }

  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    a.check_same(b);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        Exponents e(a.nvars_);
        for (int i = 0; i < a.nvars_; ++i) e[i] = ta.exponents[i] + tb.exponents[i];
        out.push_back(Term{std::move(e), ta.coeff * tb.coeff});
      }
    }
    return SparsePolynomial(a.nvars_, std::move(out));
  }

  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(t.coeff);
      for (int i = 0; i < nvars_; ++i) {
        if (t.exponents[i] == 0) continue;
        s += "*q" + std::to_string(i + 1);
        if (t.exponents[i] > 1) s += "^" + std::to_string(t.exponents[i]);
      }
    }
    return s;
  }

  static void check_index(int nvars, int i) {
    if (i < 0 || i >= nvars)
      throw input_error("variable index " + std::to_string(i) + " out of range [0, " +
                        std::to_string(nvars) + ")");
  }

 private:
  void check_same(const SparsePolynomial& o) const {
    if (o.nvars_ != nvars_) throw input_error("SparsePolynomial: nvars mismatch");
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return detail::grlex_less(a.exponents, b.exponents); });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().exponents == t.exponents)
        merged.back().coeff += t.coeff;
      else
        merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0.0; });
    terms_ = std::move(merged);
  }

  int nvars_;
  std::vector<Term> terms_;
};

// Exact partial derivative in variable i (0-based).
inline SparsePolynomial partial(const SparsePolynomial& p, int i) {
  SparsePolynomial::check_index(p.nvars(), i);
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (t.exponents[i] == 0) continue;
    Term d = t;
    d.coeff *= t.exponents[i];
    d.exponents[i] -= 1;
    out.push_back(std::move(d));
  }
  return SparsePolynomial(p.nvars(), std::move(out));
}

inline std::vector<SparsePolynomial> gradient(const SparsePolynomial& p) {
  std::vector<SparsePolynomial> g;
  g.reserve(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) g.push_back(partial(p, i));
  return g;
}

using PolyMatrix = std::vector<std::vector<SparsePolynomial>>;
using PolyTensor3 = std::vector<std::vector<std::vector<SparsePolynomial>>>;

// hessian[i][j] = d^2 P / dq_i dq_j. Only the upper triangle is differentiated;
// the lower triangle is a copy, so the result is symmetric by construction.
inline PolyMatrix hessian(const SparsePolynomial& p) {
  const int n = p.nvars();
  PolyMatrix h(n, std::vector<SparsePolynomial>(n, SparsePolynomial(n)));
  for (int i = 0; i < n; ++i) {
    const auto pi = partial(p, i);
    for (int j = i; j < n; ++j) {
      h[i][j] = partial(pi, j);
      h[j][i] = h[i][j];
    }
  }
  return h;
}

inline PolyTensor3 third_tensor(const SparsePolynomial& p) {
  const int n = p.nvars();
  const auto h = hessian(p);
  PolyTensor3 t(n, PolyMatrix(n, std::vector<SparsePolynomial>(n, SparsePolynomial(n))));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const auto d = partial(h[i][j], k);
        const int idx[3] = {i, j, k};
        // all permutations of (i, j, k)
        static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& pm : perms) t[idx[pm[0]]][idx[pm[1]]][idx[pm[2]]] = d;
      }
  return t;
}

// Homogeneous components keyed by total degree; empty for the zero polynomial.
inline std::map<int, SparsePolynomial> split_by_degree(const SparsePolynomial& p) {
  std::map<int, std::vector<Term>> groups;
  for (const auto& t : p.terms()) groups[t.degree()].push_back(t);
  std::map<int, SparsePolynomial> out;
  for (auto& [d, terms] : groups) out.emplace(d, SparsePolynomial(p.nvars(), std::move(terms)));
  return out;
}

inline Eigen::VectorXd eval_vector(const std::vector<SparsePolynomial>& ps, const Eigen::VectorXd& q) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(ps.size()));
  for (std::size_t i = 0; i < ps.size(); ++i) v[static_cast<Eigen::Index>(i)] = ps[i].eval(q);
  return v;
}

inline Eigen::MatrixXd eval_matrix(const PolyMatrix& ps, const Eigen::VectorXd& q) {
  const auto n = static_cast<Eigen::Index>(ps.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = ps[i][j].eval(q);
  return m;
}

}  // namespace lagsweep
