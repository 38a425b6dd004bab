#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "poa/errors.hpp"
#include "poa/field.hpp"
#include "poa/polynomial.hpp"

namespace poa {

/// Interpolation points for a QAP. Either the 2^k-th roots of unity (FFT
/// path) or the arbitrary distinct points 1, 2, ..., n (naive path).
template <class F>
class EvaluationDomain {
 public:
  enum class Kind { kRootsOfUnity, kArbitrary };

  static EvaluationDomain roots_of_unity(std::size_t min_size) {
    std::size_t log = 0;
    while ((std::size_t{1} << log) < min_size) ++log;
    EvaluationDomain d;
    d.kind_ = Kind::kRootsOfUnity;
    d.log_size_ = log;
    d.omega_ = F::root_of_unity(log);
    const std::size_t n = std::size_t{1} << log;
    d.points_.resize(n);
    F w = F::one();
    for (std::size_t i = 0; i < n; ++i) {
      d.points_[i] = w;
      w *= d.omega_;
    }
    d.size_inv_ = F(n).inverse();
    d.shift_ = F::nonresidue();
    return d;
  }

  static EvaluationDomain arbitrary(std::vector<F> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        if (points[i] == points[j]) throw DomainError("evaluation domain points must be distinct");
      }
    }
    EvaluationDomain d;
    d.kind_ = Kind::kArbitrary;
    d.points_ = std::move(points);
    return d;
  }

  /// Points 1..n.
  static EvaluationDomain consecutive(std::size_t n) {
    std::vector<F> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = F(i + 1);
    return arbitrary(std::move(pts));
  }

  Kind kind() const { return kind_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<F>& points() const { return points_; }
  const F& point(std::size_t i) const { return points_[i]; }
  const F& omega() const { return omega_; }
  const F& coset_shift() const { return shift_; }

  /// t(x) = prod (x - point_j).
  Polynomial<F> vanishing_polynomial() const {
    if (kind_ == Kind::kRootsOfUnity) {
      std::vector<F> c(size() + 1);
      c[0] = -F::one();
      c[size()] = F::one();
      return Polynomial<F>(std::move(c));
    }
    return poa::vanishing_polynomial<F>(points_);
  }

  F evaluate_vanishing(const F& x) const {
    if (kind_ == Kind::kRootsOfUnity) return x.pow(U256(size())) - F::one();
    F acc = F::one();
    for (const F& p : points_) acc *= x - p;
    return acc;
  }

  /// L_j(x) for every domain point j. x must lie outside the domain.
  std::vector<F> lagrange_at(const F& x) const {
    const std::size_t n = size();
    std::vector<F> out(n);
    const F z = evaluate_vanishing(x);
    if (z.is_zero()) throw DomainError("lagrange_at: point lies in the domain");
    if (kind_ == Kind::kRootsOfUnity) {
      // L_j(x) = z(x) / n * w^j / (x - w^j)
      for (std::size_t j = 0; j < n; ++j) out[j] = x - points_[j];
      batch_invert(std::span<F>(out));
      const F scale = z * size_inv_;
      for (std::size_t j = 0; j < n; ++j) out[j] *= scale * points_[j];
      return out;
    }
    // L_j(x) = z(x) / ((x - p_j) prod_{k != j} (p_j - p_k))
    std::vector<F> denom(n);
    for (std::size_t j = 0; j < n; ++j) {
      F d = x - points_[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) d *= points_[j] - points_[k];
      }
      denom[j] = d;
    }
    batch_invert(std::span<F>(denom));
    for (std::size_t j = 0; j < n; ++j) out[j] = z * denom[j];
    return out;
  }

  /// Coefficients of the polynomial taking `values` on the domain points.
  Polynomial<F> interpolate(std::span<const F> values) const {
    if (values.size() > size()) throw ShapeError("interpolate: more values than domain points");
    std::vector<F> v(values.begin(), values.end());
    v.resize(size());
    if (kind_ == Kind::kRootsOfUnity) {
      ifft(v);
      return Polynomial<F>(std::move(v));
    }
    std::vector<std::pair<F, F>> pts(size());
    for (std::size_t i = 0; i < size(); ++i) pts[i] = {points_[i], v[i]};
    return poa::interpolate<F>(pts);
  }

  // In-place transforms on vectors of exactly size() entries (roots of unity only).

  void fft(std::vector<F>& a) const { transform(a, omega_); }

  void ifft(std::vector<F>& a) const {
    transform(a, omega_.inverse());
    for (auto& v : a) v *= size_inv_;
  }

  /// Evaluations on shift * <omega>.
  void coset_fft(std::vector<F>& a) const {
    F s = F::one();
    for (auto& v : a) {
      v *= s;
      s *= shift_;
    }
    fft(a);
  }

  void coset_ifft(std::vector<F>& a) const {
    ifft(a);
    const F inv = shift_.inverse();
    F s = F::one();
    for (auto& v : a) {
      v *= s;
      s *= inv;
    }
  }

 private:
  void transform(std::vector<F>& a, const F& root) const {
    if (kind_ != Kind::kRootsOfUnity) throw StateError("FFT needs a roots-of-unity domain");
    const std::size_t n = a.size();
    if (n != size()) throw ShapeError("FFT input length must equal the domain size");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      F wlen = root;
      for (std::size_t k = len; k < n; k <<= 1) wlen = wlen.square();
      std::vector<F> tw(len / 2);
      tw[0] = F::one();
      for (std::size_t k = 1; k < len / 2; ++k) tw[k] = tw[k - 1] * wlen;
      for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t k = 0; k < len / 2; ++k) {
          const F u = a[i + k];
          const F v = a[i + k + len / 2] * tw[k];
          a[i + k] = u + v;
          a[i + k + len / 2] = u - v;
        }
      }
    }
  }

  Kind kind_ = Kind::kArbitrary;
  std::size_t log_size_ = 0;
  std::vector<F> points_;
  F omega_ = F::one();
  F size_inv_ = F::one();
  F shift_ = F::one();
};

}  // namespace poa
