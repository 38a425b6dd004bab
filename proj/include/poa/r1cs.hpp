#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poa/errors.hpp"
#include "poa/prf.hpp"
#include "poa/serialize.hpp"

namespace poa {

/// Wire reference. Index 0 is the constant-one wire.
struct Variable {
  std::uint32_t index = 0;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Full wire vector t; values[0] = 1.
template <class F>
struct Assignment {
  std::vector<F> values;

  Assignment() : values{F::one()} {}
  explicit Assignment(std::size_t n) : values(n) {
    if (n == 0) throw ShapeError("assignment needs the constant wire");
    values[0] = F::one();
  }
  F& operator[](Variable v) { return values.at(v.index); }
  const F& operator[](Variable v) const { return values.at(v.index); }
  std::size_t size() const { return values.size(); }
};

/// Sparse sum of coefficient * wire, sorted by wire index with no zero coefficients.
template <class F>
class LinearCombination {
 public:
  using Term = std::pair<std::uint32_t, F>;

  LinearCombination() = default;
  LinearCombination(Variable v) : terms_{{v.index, F::one()}} {}  // NOLINT(google-explicit-constructor)
  LinearCombination(const F& constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) terms_.push_back({0, constant});
  }
  static LinearCombination constant(const F& c) { return LinearCombination(c); }
  static LinearCombination zero() { return {}; }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  F evaluate(const Assignment<F>& t) const {
    F acc = F::zero();
    for (const auto& [i, c] : terms_) acc += c * t.values[i];
    return acc;
  }

  friend LinearCombination operator+(const LinearCombination& a, const LinearCombination& b) {
    LinearCombination r;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
        r.terms_.push_back(b.terms_[j++]);
      } else {
        const F s = a.terms_[i].second + b.terms_[j].second;
        if (!s.is_zero()) r.terms_.push_back({a.terms_[i].first, s});
        ++i;
        ++j;
      }
    }
    return r;
  }
  LinearCombination operator-() const { return *this * -F::one(); }
  friend LinearCombination operator-(const LinearCombination& a, const LinearCombination& b) { return a + (-b); }
  friend LinearCombination operator*(const LinearCombination& a, const F& s) {
    LinearCombination r;
    if (s.is_zero()) return r;
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.second *= s;
    return r;
  }
  friend LinearCombination operator*(const F& s, const LinearCombination& a) { return a * s; }
  LinearCombination& operator+=(const LinearCombination& o) { return *this = *this + o; }

 private:
  std::vector<Term> terms_;
};

template <class F>
struct Constraint {
  LinearCombination<F> a, b, c;
};

/// R1CS builder. Public wires (after the constant) come first; once an
/// auxiliary wire exists no further public wires may be added. Sealing
/// freezes the system and fixes its layout hash.
template <class F>
class ConstraintSystem {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  Variable allocate_public() {
    check_open("allocate");
    if (num_aux_ != 0) throw StateError("public wires must be allocated before auxiliary wires");
    ++num_public_;
    return {static_cast<std::uint32_t>(num_public_)};
  }

  Variable allocate_aux() {
    check_open("allocate");
    ++num_aux_;
    return {static_cast<std::uint32_t>(num_public_ + num_aux_)};
  }

  void enforce(LinearCombination<F> a, LinearCombination<F> b, LinearCombination<F> c) {
    check_open("enforce");
    for (const auto* lc : {&a, &b, &c}) {
      for (const auto& term : lc->terms()) {
        if (term.first >= num_variables()) throw WireError("constraint references unallocated wire " + std::to_string(term.first));
      }
    }
    constraints_.push_back({std::move(a), std::move(b), std::move(c)});
  }

  void seal() {
    if (sealed_) return;
    sealed_ = true;
    layout_hash_ = sha256(serialize_body());
  }

  bool sealed() const { return sealed_; }
  /// l: public wires excluding the constant.
  std::size_t num_inputs() const { return num_public_; }
  std::size_t num_aux() const { return num_aux_; }
  /// m + 1: every wire including the constant.
  std::size_t num_variables() const { return 1 + num_public_ + num_aux_; }
  std::size_t num_constraints() const { return constraints_.size(); }
  const std::vector<Constraint<F>>& constraints() const { return constraints_; }

  const Digest& layout_hash() const {
    if (!sealed_) throw StateError("layout hash requires a sealed system");
    return layout_hash_;
  }

  /// Index of the first violated constraint, if any.
  std::optional<std::size_t> first_unsatisfied(const Assignment<F>& t) const {
    if (t.size() != num_variables()) {
      throw ShapeError("assignment has " + std::to_string(t.size()) + " wires, system has " +
                       std::to_string(num_variables()));
    }
    if (!t.values[0].is_one()) return 0;
    for (std::size_t j = 0; j < constraints_.size(); ++j) {
      const auto& k = constraints_[j];
      if (k.a.evaluate(t) * k.b.evaluate(t) != k.c.evaluate(t)) return j;
    }
    return std::nullopt;
  }

  bool is_satisfied(const Assignment<F>& t) const { return !first_unsatisfied(t).has_value(); }

  std::vector<std::uint8_t> serialize() const {
    if (!sealed_) throw StateError("only sealed systems serialize");
    ByteWriter w;
    w.tag("R1CS");
    w.u32(kFormatVersion);
    w.bytes(layout_hash_);
    w.bytes(serialize_body());
    return w.take();
  }

  static ConstraintSystem deserialize(ByteReader& r) {
    r.expect_tag("R1CS");
    const std::size_t at_version = r.offset();
    if (r.u32() != kFormatVersion) r.fail("unsupported constraint system version", at_version);
    const std::size_t at_hash = r.offset();
    Digest expected{};
    auto h = r.bytes(32);
    std::copy(h.begin(), h.end(), expected.begin());

    const std::size_t at_name = r.offset();
    const std::uint32_t name_len = r.u32();
    auto name = r.bytes(name_len);
    if (std::string(name.begin(), name.end()) != F::params_type::name) r.fail("constraint system field mismatch", at_name);
    ConstraintSystem cs;
    cs.num_public_ = r.u64();
    cs.num_aux_ = r.u64();
    const std::uint64_t n = r.count(12);
    cs.constraints_.reserve(n);
    for (std::uint64_t j = 0; j < n; ++j) {
      Constraint<F> k;
      for (auto* lc : {&k.a, &k.b, &k.c}) *lc = read_lc(r, cs.num_variables());
      cs.constraints_.push_back(std::move(k));
    }
    cs.sealed_ = true;
    cs.layout_hash_ = sha256(cs.serialize_body());
    if (cs.layout_hash_ != expected) r.fail("constraint system layout hash mismatch", at_hash);
    return cs;
  }

 private:
  void check_open(const char* what) const {
    if (sealed_) throw StateError(std::string("cannot ") + what + " on a sealed constraint system");
  }

  std::vector<std::uint8_t> serialize_body() const {
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(F::params_type::name.size()));
    w.tag(F::params_type::name);
    w.u64(num_public_);
    w.u64(num_aux_);
    w.u64(constraints_.size());
    for (const auto& k : constraints_) {
      for (const auto* lc : {&k.a, &k.b, &k.c}) {
        w.u32(static_cast<std::uint32_t>(lc->terms().size()));
        for (const auto& [i, c] : lc->terms()) {
          w.u32(i);
          w.field(c);
        }
      }
    }
    return w.take();
  }

  static LinearCombination<F> read_lc(ByteReader& r, std::size_t num_vars) {
    const std::size_t at = r.offset();
    const std::uint32_t terms = r.u32();
    if (terms > r.remaining() / (4 + F::kBytes)) r.fail("term count exceeds input size", at);
    LinearCombination<F> lc;
    std::int64_t last = -1;
    for (std::uint32_t t = 0; t < terms; ++t) {
      const std::size_t at_term = r.offset();
      const std::uint32_t i = r.u32();
      const F c = r.field<F>();
      if (i >= num_vars) r.fail("term references unallocated wire", at_term);
      if (static_cast<std::int64_t>(i) <= last || c.is_zero()) r.fail("non-canonical linear combination", at_term);
      last = i;
      lc += LinearCombination<F>(Variable{i}) * c;
    }
    return lc;
  }

  std::size_t num_public_ = 0;
  std::size_t num_aux_ = 0;
  std::vector<Constraint<F>> constraints_;
  bool sealed_ = false;
  Digest layout_hash_{};
};

}  // namespace poa
