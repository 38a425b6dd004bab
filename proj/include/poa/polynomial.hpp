#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "poa/errors.hpp"
#include "poa/field.hpp"

namespace poa {

/// Dense univariate polynomial, lowest degree first, kept canonical (no
/// trailing zero coefficients; the zero polynomial has no coefficients).
template <class F>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static Polynomial constant(const F& v) { return Polynomial(std::vector<F>{v}); }
  /// x - root
  static Polynomial linear_root(const F& root) { return Polynomial(std::vector<F>{-root, F::one()}); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<F>& coefficients() const { return c_; }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F::zero(); }

  F evaluate(const F& x) const {
    F acc = F::zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const F& s) {
    std::vector<F> r = a.c_;
    for (auto& v : r) v *= s;
    return Polynomial(std::move(r));
  }

  /// Long division; returns (quotient, remainder).
  friend std::pair<Polynomial, Polynomial> divide(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.degree() < den.degree()) return {Polynomial(), num};
    std::vector<F> rem = num.c_;
    const std::size_t dn = den.c_.size();
    std::vector<F> q(rem.size() - dn + 1);
    const F lead_inv = den.c_.back().inverse();
    for (std::size_t i = q.size(); i-- > 0;) {
      const F t = rem[i + dn - 1] * lead_inv;
      q[i] = t;
      if (t.is_zero()) continue;
      for (std::size_t j = 0; j < dn; ++j) rem[i + j] -= t * den.c_[j];
    }
    rem.resize(dn - 1);
    return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<F> c_;
};

/// prod_j (x - points_j)
template <class F>
Polynomial<F> vanishing_polynomial(std::span<const F> points) {
  std::vector<F> c{F::one()};
  for (const F& z : points) {
    c.push_back(F::zero());
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - z * c[i];
    c[0] = -z * c[0];
  }
  return Polynomial<F>(std::move(c));
}

/// Lagrange interpolation, O(n^2). Throws DomainError on repeated x values.
template <class F>
Polynomial<F> interpolate(std::span<const std::pair<F, F>> points) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  std::vector<F> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = points[i].first;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (xs[i] == xs[j]) throw DomainError("interpolate: duplicate evaluation point");
    }
  }
  const Polynomial<F> z = vanishing_polynomial<F>(xs);
  // Barycentric weights w_i = 1 / prod_{j != i} (x_i - x_j).
  std::vector<F> w(n, F::one());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) w[i] *= xs[i] - xs[j];
    }
  }
  batch_invert(std::span<F>(w));
  std::vector<F> acc(n);
  const auto& zc = z.coefficients();
  for (std::size_t i = 0; i < n; ++i) {
    const F scale = points[i].second * w[i];
    if (scale.is_zero()) continue;
    // z(x) / (x - x_i) by synthetic division, accumulated with the scale.
    F carry = zc[n];
    for (std::size_t k = n; k-- > 0;) {
      acc[k] += scale * carry;
      carry = zc[k] + xs[i] * carry;
    }
  }
  return Polynomial<F>(std::move(acc));
}

}  // namespace poa
