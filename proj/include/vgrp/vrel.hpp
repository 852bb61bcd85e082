#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vgrp/error.hpp"
#include "vgrp/quantale.hpp"

namespace vgrp {

/// A V-relation X ⇸ Y: a dense rows × cols matrix of quantale values.
class VRel {
 public:
  VRel(QuantalePtr q, std::size_t rows, std::size_t cols, Value fill)
      : q_(std::move(q)), rows_(rows), cols_(cols), entries_(rows * cols, fill) {
    if (!q_) throw StructuralError("V-relation without a quantale");
    if (fill.index >= q_->size()) throw StructuralError("V-relation fill value out of range");
  }

  VRel(QuantalePtr q, std::size_t rows, std::size_t cols, std::vector<Value> entries)
      : q_(std::move(q)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (!q_) throw StructuralError("V-relation without a quantale");
    if (entries_.size() != rows_ * cols_) throw StructuralError("V-relation entry count mismatch");
    for (Value v : entries_) {
      if (v.index >= q_->size()) throw StructuralError("V-relation entry out of range");
    }
  }

  /// 1_X: k on the diagonal, bottom elsewhere.
  static VRel identity(QuantalePtr q, std::size_t n) {
    VRel r(q, n, n, q->bottom());
    for (std::size_t i = 0; i < n; ++i) r.set(i, i, q->unit());
    return r;
  }

  /// The graph of a function X → Y: k where f(x) = y, bottom elsewhere.
  static VRel from_function(QuantalePtr q, std::span<const std::size_t> map, std::size_t cod_size) {
    VRel r(q, map.size(), cod_size, q->bottom());
    for (std::size_t x = 0; x < map.size(); ++x) {
      if (map[x] >= cod_size) throw StructuralError("function value out of range");
      r.set(x, map[x], q->unit());
    }
    return r;
  }

  [[nodiscard]] const QuantalePtr& quantale() const noexcept { return q_; }
  [[nodiscard]] const Quantale& q() const noexcept { return *q_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  [[nodiscard]] Value operator()(std::size_t x, std::size_t y) const { return entries_[x * cols_ + y]; }
  [[nodiscard]] Value at(std::size_t x, std::size_t y) const {
    if (x >= rows_ || y >= cols_) throw StructuralError("V-relation index out of range");
    return entries_[x * cols_ + y];
  }
  void set(std::size_t x, std::size_t y, Value v) { entries_[x * cols_ + y] = v; }

  [[nodiscard]] const std::vector<Value>& entries() const noexcept { return entries_; }

  bool operator==(const VRel& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && q_->same_as(*o.q_) && entries_ == o.entries_;
  }

 private:
  QuantalePtr q_;
  std::size_t rows_, cols_;
  std::vector<Value> entries_;
};

namespace detail {

inline void require_same_quantale(const VRel& r, const VRel& s, const char* op) {
  if (!r.q().same_as(s.q())) throw StructuralError(std::string(op) + ": quantale mismatch");
}

inline void require_same_shape(const VRel& r, const VRel& s, const char* op) {
  require_same_quantale(r, s, op);
  if (r.rows() != s.rows() || r.cols() != s.cols()) {
    throw StructuralError(std::string(op) + ": shape mismatch");
  }
}

}  // namespace detail

/// s · r, i.e. first r : X ⇸ Y then s : Y ⇸ Z.
/// (s·r)(x,z) = ⋁_y r(x,y) ⊗ s(y,z).
inline VRel compose(const VRel& r, const VRel& s) {
  detail::require_same_quantale(r, s, "compose");
  if (r.cols() != s.rows()) throw StructuralError("compose: inner dimension mismatch");
  const Quantale& q = r.q();
  VRel out(r.quantale(), r.rows(), s.cols(), q.bottom());
  for (std::size_t x = 0; x < r.rows(); ++x) {
    for (std::size_t z = 0; z < s.cols(); ++z) {
      Value acc = q.bottom();
      for (std::size_t y = 0; y < r.cols(); ++y) acc = q.join(acc, q.tensor(r(x, y), s(y, z)));
      out.set(x, z, acc);
    }
  }
  return out;
}

inline VRel converse(const VRel& r) {
  VRel out(r.quantale(), r.cols(), r.rows(), r.q().bottom());
  for (std::size_t x = 0; x < r.rows(); ++x) {
    for (std::size_t y = 0; y < r.cols(); ++y) out.set(y, x, r(x, y));
  }
  return out;
}

inline VRel meet(const VRel& r, const VRel& s) {
  detail::require_same_shape(r, s, "meet");
  VRel out = r;
  for (std::size_t x = 0; x < r.rows(); ++x) {
    for (std::size_t y = 0; y < r.cols(); ++y) out.set(x, y, r.q().meet(r(x, y), s(x, y)));
  }
  return out;
}

/// Pointwise order r ≤ s.
inline bool leq(const VRel& r, const VRel& s) {
  detail::require_same_shape(r, s, "leq");
  for (std::size_t x = 0; x < r.rows(); ++x) {
    for (std::size_t y = 0; y < r.cols(); ++y) {
      if (!r.q().leq(r(x, y), s(x, y))) return false;
    }
  }
  return true;
}

/// f · a · f°: the final structure on the codomain of a surjection.
inline VRel push_forward(const VRel& a, std::span<const std::size_t> map, std::size_t cod_size) {
  VRel f = VRel::from_function(a.quantale(), map, cod_size);
  return compose(compose(converse(f), a), f);
}

/// k° · b · k: the structure induced along an injection.
inline VRel pull_back(const VRel& b, std::span<const std::size_t> map) {
  VRel k = VRel::from_function(b.quantale(), map, b.rows());
  return compose(compose(k, b), converse(k));
}

}  // namespace vgrp
