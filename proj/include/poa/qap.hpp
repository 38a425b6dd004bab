#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "poa/domain.hpp"
#include "poa/errors.hpp"
#include "poa/polynomial.hpp"
#include "poa/r1cs.hpp"

namespace poa {

struct QapOptions {
  /// Appends one row per public wire (constant included) with u_i = 1 there,
  /// so every public input influences the proof even when no constraint uses it.
  bool bind_public_inputs = true;
  /// Power-of-two roots of unity with FFT; otherwise the points 1..rows.
  bool use_fft = true;

  friend bool operator==(const QapOptions&, const QapOptions&) = default;
};

/// QAP of a sealed constraint system. Wire polynomials u_i, v_i, w_i are kept
/// as the sparse row coefficients they interpolate and materialized in
/// coefficient form on request.
template <class F>
class Qap {
 public:
  struct Evaluation {
    std::vector<F> u, v, w;
    F t;
  };

  static Qap compile(const ConstraintSystem<F>& cs, QapOptions opt = {}) {
    const std::size_t rows = cs.num_constraints() + (opt.bind_public_inputs ? cs.num_inputs() + 1 : 0);
    const std::size_t min_size = std::max<std::size_t>(rows, 1);
    auto domain = opt.use_fft ? EvaluationDomain<F>::roots_of_unity(min_size) : EvaluationDomain<F>::consecutive(min_size);
    return compile(cs, std::move(domain), opt);
  }

  static Qap compile(const ConstraintSystem<F>& cs, EvaluationDomain<F> domain, QapOptions opt) {
    if (!cs.sealed()) throw StateError("QAP compilation needs a sealed constraint system");
    Qap q;
    q.num_variables_ = cs.num_variables();
    q.num_inputs_ = cs.num_inputs();
    q.rows_ = cs.constraints();
    if (opt.bind_public_inputs) {
      for (std::uint32_t i = 0; i <= cs.num_inputs(); ++i) {
        q.rows_.push_back({LinearCombination<F>(Variable{i}), {}, {}});
      }
    }
    if (domain.size() < q.rows_.size()) throw DomainError("evaluation domain smaller than the constraint count");
    q.domain_ = std::move(domain);
    q.options_ = opt;
    return q;
  }

  const EvaluationDomain<F>& domain() const { return domain_; }
  const QapOptions& options() const { return options_; }
  /// n: the domain size and the degree of t(x).
  std::size_t degree() const { return domain_.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_variables() const { return num_variables_; }
  std::size_t num_inputs() const { return num_inputs_; }

  Polynomial<F> target() const { return domain_.vanishing_polynomial(); }

  Polynomial<F> u(std::size_t wire) const { return column_poly(wire, &Constraint<F>::a); }
  Polynomial<F> v(std::size_t wire) const { return column_poly(wire, &Constraint<F>::b); }
  Polynomial<F> w(std::size_t wire) const { return column_poly(wire, &Constraint<F>::c); }

  /// u_i(x), v_i(x), w_i(x) for every wire, and t(x). x must lie outside the domain.
  Evaluation evaluate_at(const F& x) const {
    const std::vector<F> lag = domain_.lagrange_at(x);
    Evaluation e{std::vector<F>(num_variables_), std::vector<F>(num_variables_), std::vector<F>(num_variables_),
                 domain_.evaluate_vanishing(x)};
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      for (const auto& [i, c] : rows_[j].a.terms()) e.u[i] += c * lag[j];
      for (const auto& [i, c] : rows_[j].b.terms()) e.v[i] += c * lag[j];
      for (const auto& [i, c] : rows_[j].c.terms()) e.w[i] += c * lag[j];
    }
    return e;
  }

  /// Row values <A_j, t>, <B_j, t>, <C_j, t>, zero-padded to the domain size.
  struct RowValues {
    std::vector<F> a, b, c;
  };
  RowValues row_values(const Assignment<F>& t) const {
    if (t.size() != num_variables_) throw ShapeError("assignment length does not match the QAP");
    RowValues r{std::vector<F>(degree()), std::vector<F>(degree()), std::vector<F>(degree())};
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      r.a[j] = rows_[j].a.evaluate(t);
      r.b[j] = rows_[j].b.evaluate(t);
      r.c[j] = rows_[j].c.evaluate(t);
    }
    return r;
  }

  /// Sum_i a_i u_i(x), Sum_i a_i v_i(x), Sum_i a_i w_i(x) in coefficient form.
  std::array<Polynomial<F>, 3> combined_polys(const Assignment<F>& t) const {
    RowValues r = row_values(t);
    return {domain_.interpolate(r.a), domain_.interpolate(r.b), domain_.interpolate(r.c)};
  }

  /// p(x) = A(x) B(x) - C(x).
  Polynomial<F> p_of_x(const Assignment<F>& t) const {
    const auto [a, b, c] = combined_polys(t);
    return a * b - c;
  }

  /// Long division p(x) / t(x): (h, remainder). The reference path.
  std::pair<Polynomial<F>, Polynomial<F>> divide_p_by_t(const Assignment<F>& t) const {
    return divide(p_of_x(t), target());
  }

  Polynomial<F> witness_poly_naive(const Assignment<F>& t) const {
    auto [h, rem] = divide_p_by_t(t);
    if (!rem.is_zero()) throw NotSatisfiedError("p(x) is not divisible by t(x)");
    return h;
  }

  /// h(x) with p = t h. Uses coset FFTs on a roots-of-unity domain and falls
  /// back to long division otherwise.
  Polynomial<F> witness_poly(const Assignment<F>& t) const {
    if (domain_.kind() != EvaluationDomain<F>::Kind::kRootsOfUnity) return witness_poly_naive(t);
    RowValues r = row_values(t);
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      if (r.a[j] * r.b[j] != r.c[j]) throw NotSatisfiedError("p(x) is not divisible by t(x)");
    }
    for (auto* vals : {&r.a, &r.b, &r.c}) {
      domain_.ifft(*vals);
      domain_.coset_fft(*vals);
    }
    // t(g w^j) = g^n - 1 for every coset point.
    const F z_inv = (domain_.coset_shift().pow(U256(degree())) - F::one()).inverse();
    std::vector<F> h(degree());
    for (std::size_t j = 0; j < degree(); ++j) h[j] = (r.a[j] * r.b[j] - r.c[j]) * z_inv;
    domain_.coset_ifft(h);
    return Polynomial<F>(std::move(h));
  }

 private:
  Polynomial<F> column_poly(std::size_t wire, LinearCombination<F> Constraint<F>::*m) const {
    if (wire >= num_variables_) throw WireError("no such wire");
    std::vector<F> vals(degree());
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      for (const auto& [i, c] : (rows_[j].*m).terms()) {
        if (i == wire) vals[j] = c;
      }
    }
    return domain_.interpolate(vals);
  }

  std::vector<Constraint<F>> rows_;
  EvaluationDomain<F> domain_;
  QapOptions options_;
  std::size_t num_variables_ = 0;
  std::size_t num_inputs_ = 0;
};

}  // namespace poa
