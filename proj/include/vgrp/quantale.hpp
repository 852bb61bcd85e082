#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vgrp/error.hpp"
#include "vgrp/report.hpp"

namespace vgrp {

/// An element of a finite quantale, identified by its position in the
/// quantale's element list.
struct Value {
  std::uint16_t index{};

  auto operator<=>(const Value&) const = default;
};

/// Raw, unvalidated quantale data as read from a document or written by hand.
struct QuantaleTables {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq;
  std::vector<std::vector<std::size_t>> tensor;
  std::size_t unit = 0;
};

/// The shipped quantale families.
struct BuiltinSpec {
  enum class Kind { boolean, lawvere_chain, ultrametric_chain };
  Kind kind = Kind::boolean;
  unsigned m = 1;

  bool operator==(const BuiltinSpec&) const = default;

  [[nodiscard]] std::string name() const {
    switch (kind) {
      case Kind::boolean: return "boolean";
      case Kind::lawvere_chain: return "lawvere_chain(" + std::to_string(m) + ")";
      case Kind::ultrametric_chain: return "ultrametric_chain(" + std::to_string(m) + ")";
    }
    return "?";
  }
};

namespace detail {

inline void check_square(const QuantaleTables& t) {
  const std::size_t n = t.labels.size();
  if (n == 0) throw StructuralError("quantale: empty element list");
  if (n > 0xffff) throw StructuralError("quantale: too many elements");
  if (t.leq.size() != n) throw StructuralError("quantale: leq table has wrong row count");
  if (t.tensor.size() != n) throw StructuralError("quantale: tensor table has wrong row count");
  for (std::size_t i = 0; i < n; ++i) {
    if (t.leq[i].size() != n) {
      throw StructuralError("quantale: leq row " + std::to_string(i) + " is ragged");
    }
    if (t.tensor[i].size() != n) {
      throw StructuralError("quantale: tensor row " + std::to_string(i) + " is ragged");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (t.tensor[i][j] >= n) {
        throw StructuralError("quantale: tensor entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") out of range");
      }
    }
  }
  if (t.unit >= n) throw StructuralError("quantale: unit index out of range");
}

/// Least upper bound of {u, v} under `leq`, if one exists.
inline std::optional<std::size_t> bound(const QuantaleTables& t, std::size_t u, std::size_t v,
                                        bool upper) {
  const std::size_t n = t.labels.size();
  auto above = [&](std::size_t a, std::size_t b) { return upper ? t.leq[a][b] : t.leq[b][a]; };
  std::optional<std::size_t> best;
  for (std::size_t c = 0; c < n; ++c) {
    if (!above(u, c) || !above(v, c)) continue;
    bool least = true;
    for (std::size_t d = 0; d < n && least; ++d) {
      if (above(u, d) && above(v, d) && !above(c, d)) least = false;
    }
    if (least) {
      best = c;
      break;
    }
  }
  return best;
}

}  // namespace detail

/// Checks every quantale law on `t` exhaustively. Throws StructuralError when
/// the tables are malformed; law failures are returned in the report.
inline Report validate_quantale(const QuantaleTables& t) {
  detail::check_square(t);
  const std::size_t n = t.labels.size();
  Report r;

  for (std::size_t u = 0; u < n; ++u) {
    if (!t.leq[u][u]) r.fail("order:reflexive", witness_of(u));
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && t.leq[u][v] && t.leq[v][u]) r.fail("order:antisymmetric", witness_of(u, v));
      for (std::size_t w = 0; w < n; ++w) {
        if (t.leq[u][v] && t.leq[v][w] && !t.leq[u][w]) {
          r.fail("order:transitive", witness_of(u, v, w));
        }
      }
    }
  }
  // Without a partial order the lattice operations are meaningless.
  if (!r.ok()) return r;

  std::vector<std::size_t> join(n * n), meet(n * n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      auto j = detail::bound(t, u, v, true);
      auto m = detail::bound(t, u, v, false);
      if (!j) r.fail("lattice:join", witness_of(u, v));
      if (!m) r.fail("lattice:meet", witness_of(u, v));
      join[u * n + v] = j.value_or(0);
      meet[u * n + v] = m.value_or(0);
    }
  }
  std::optional<std::size_t> bottom, top;
  for (std::size_t c = 0; c < n; ++c) {
    bool lo = true, hi = true;
    for (std::size_t d = 0; d < n; ++d) {
      lo = lo && t.leq[c][d];
      hi = hi && t.leq[d][c];
    }
    if (lo) bottom = c;
    if (hi) top = c;
  }
  if (!bottom) r.fail("lattice:bottom", {});
  if (!top) r.fail("lattice:top", {});
  if (!r.ok()) return r;

  const std::size_t bot = *bottom;
  if (bot == *top) r.fail("nontrivial", witness_of(bot));

  auto tens = [&](std::size_t a, std::size_t b) { return t.tensor[a][b]; };
  auto jn = [&](std::size_t a, std::size_t b) { return join[a * n + b]; };
  auto mt = [&](std::size_t a, std::size_t b) { return meet[a * n + b]; };

  for (std::size_t u = 0; u < n; ++u) {
    if (tens(t.unit, u) != u || tens(u, t.unit) != u) r.fail("tensor:unit", witness_of(u));
    if (tens(u, bot) != bot) r.fail("tensor:annihilates-bottom", witness_of(u));
    for (std::size_t v = 0; v < n; ++v) {
      if (tens(u, v) != tens(v, u)) r.fail("tensor:commutative", witness_of(u, v));
      for (std::size_t w = 0; w < n; ++w) {
        if (tens(tens(u, v), w) != tens(u, tens(v, w))) {
          r.fail("tensor:associative", witness_of(u, v, w));
        }
        if (tens(u, jn(v, w)) != jn(tens(u, v), tens(u, w))) {
          r.fail("tensor:distributes-over-join", witness_of(u, v, w));
        }
        if (mt(u, jn(v, w)) != jn(mt(u, v), mt(u, w))) {
          r.fail("frame:meet-distributes-over-join", witness_of(u, v, w));
        }
      }
    }
  }
  return r;
}

/// A validated finite commutative unital quantale whose lattice is a frame.
/// Immutable; every operation is a table lookup.
class Quantale {
 public:
  /// Thrown by `make` when the tables are well-formed but break a law.
  class Invalid : public std::runtime_error {
   public:
    explicit Invalid(Report r)
        : std::runtime_error("quantale laws violated: " + r.violations.front().law),
          report_(std::move(r)) {}
    [[nodiscard]] const Report& report() const noexcept { return report_; }

   private:
    Report report_;
  };

  static std::shared_ptr<const Quantale> make(QuantaleTables t,
                                              std::optional<BuiltinSpec> builtin = {}) {
    Report r = validate_quantale(t);
    if (!r.ok()) throw Invalid(std::move(r));
    return std::shared_ptr<const Quantale>(new Quantale(std::move(t), builtin));
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] Value unit() const noexcept { return unit_; }
  [[nodiscard]] Value bottom() const noexcept { return bottom_; }
  [[nodiscard]] Value top() const noexcept { return top_; }

  [[nodiscard]] bool leq(Value u, Value v) const { return leq_[at(u, v)] != 0; }
  [[nodiscard]] Value join(Value u, Value v) const { return join_[at(u, v)]; }
  [[nodiscard]] Value meet(Value u, Value v) const { return meet_[at(u, v)]; }
  [[nodiscard]] Value tensor(Value u, Value v) const { return tensor_[at(u, v)]; }

  /// Join of an arbitrary finite family; the empty join is bottom.
  [[nodiscard]] Value join_all(std::span<const Value> values) const {
    Value acc = bottom_;
    for (Value v : values) acc = join(acc, v);
    return acc;
  }

  [[nodiscard]] bool is_integral() const noexcept { return unit_ == top_; }

  [[nodiscard]] Value element(std::size_t i) const {
    if (i >= n_) throw StructuralError("quantale element index " + std::to_string(i) + " out of range");
    return Value{static_cast<std::uint16_t>(i)};
  }
  [[nodiscard]] const std::string& label(Value u) const { return tables_.labels.at(u.index); }
  [[nodiscard]] std::optional<Value> find(const std::string& label) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (tables_.labels[i] == label) return Value{static_cast<std::uint16_t>(i)};
    }
    return std::nullopt;
  }

  [[nodiscard]] const QuantaleTables& tables() const noexcept { return tables_; }
  [[nodiscard]] const std::optional<BuiltinSpec>& builtin() const noexcept { return builtin_; }
  [[nodiscard]] std::string name() const { return builtin_ ? builtin_->name() : "custom"; }

  /// Same carrier, order, tensor and unit.
  [[nodiscard]] bool same_as(const Quantale& o) const {
    return this == &o || (tables_.leq == o.tables_.leq && tables_.tensor == o.tables_.tensor &&
                          tables_.unit == o.tables_.unit);
  }

 private:
  Quantale(QuantaleTables t, std::optional<BuiltinSpec> builtin)
      : tables_(std::move(t)), builtin_(builtin), n_(tables_.labels.size()) {
    leq_.resize(n_ * n_);
    join_.resize(n_ * n_);
    meet_.resize(n_ * n_);
    tensor_.resize(n_ * n_);
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t v = 0; v < n_; ++v) {
        leq_[u * n_ + v] = tables_.leq[u][v] ? 1 : 0;
        join_[u * n_ + v] = idx(*detail::bound(tables_, u, v, true));
        meet_[u * n_ + v] = idx(*detail::bound(tables_, u, v, false));
        tensor_[u * n_ + v] = idx(tables_.tensor[u][v]);
      }
    }
    for (std::size_t c = 0; c < n_; ++c) {
      bool lo = true, hi = true;
      for (std::size_t d = 0; d < n_; ++d) {
        lo = lo && tables_.leq[c][d];
        hi = hi && tables_.leq[d][c];
      }
      if (lo) bottom_ = idx(c);
      if (hi) top_ = idx(c);
    }
    unit_ = idx(tables_.unit);
  }

  static Value idx(std::size_t i) { return Value{static_cast<std::uint16_t>(i)}; }
  [[nodiscard]] std::size_t at(Value u, Value v) const { return std::size_t{u.index} * n_ + v.index; }

  QuantaleTables tables_;
  std::optional<BuiltinSpec> builtin_;
  std::size_t n_;
  std::vector<unsigned char> leq_;
  std::vector<Value> join_, meet_, tensor_;
  Value unit_, bottom_, top_;
};

using QuantalePtr = std::shared_ptr<const Quantale>;

inline bool is_integral(const Quantale& q) noexcept { return q.is_integral(); }

/// Tables for one of the shipped families. Chains use the carrier {0..m}
/// ordered by reversed numeric order, so 0 is top and m is bottom.
inline QuantaleTables builtin_tables(const BuiltinSpec& spec) {
  QuantaleTables t;
  if (spec.kind == BuiltinSpec::Kind::boolean) {
    t.labels = {"bot", "top"};
    t.leq = {{true, true}, {false, true}};
    t.tensor = {{0, 0}, {0, 1}};
    t.unit = 1;
    return t;
  }
  if (spec.m == 0) {
    throw PreconditionError(spec.name() + " degenerates to the trivial quantale");
  }
  const std::size_t n = spec.m + 1;
  t.labels.resize(n);
  t.leq.assign(n, std::vector<bool>(n));
  t.tensor.assign(n, std::vector<std::size_t>(n));
  for (std::size_t u = 0; u < n; ++u) {
    t.labels[u] = std::to_string(u);
    for (std::size_t v = 0; v < n; ++v) {
      t.leq[u][v] = u >= v;
      t.tensor[u][v] = spec.kind == BuiltinSpec::Kind::lawvere_chain ? std::min<std::size_t>(spec.m, u + v)
                                                                     : std::max(u, v);
    }
  }
  t.unit = 0;
  return t;
}

inline QuantalePtr builtin_quantale(const BuiltinSpec& spec) {
  return Quantale::make(builtin_tables(spec), spec);
}

inline QuantalePtr boolean_quantale() { return builtin_quantale({BuiltinSpec::Kind::boolean, 1}); }
inline QuantalePtr lawvere_chain(unsigned m) {
  return builtin_quantale({BuiltinSpec::Kind::lawvere_chain, m});
}
inline QuantalePtr ultrametric_chain(unsigned m) {
  return builtin_quantale({BuiltinSpec::Kind::ultrametric_chain, m});
}

/// The four basic operations at once.
struct QuantaleOps {
  bool leq;
  Value join, meet, tensor;
};

inline QuantaleOps q_ops(const Quantale& q, Value u, Value v) {
  return {q.leq(u, v), q.join(u, v), q.meet(u, v), q.tensor(u, v)};
}

}  // namespace vgrp
