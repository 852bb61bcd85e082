#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vgrp/error.hpp"
#include "vgrp/report.hpp"

namespace vgrp {

using Elem = std::size_t;

/// A finite group given by its Cayley table. Written additively to match the
/// usual notation for V-groups, though the group need not be abelian.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(trivial_table(), 0, "Z1") {}

  /// Validates the table exhaustively; throws StructuralError on a bad table
  /// and PreconditionError when the group axioms fail.
  FiniteGroup(std::vector<std::vector<Elem>> table, Elem identity, std::string name = {})
      : order_(table.size()), identity_(identity), name_(std::move(name)) {
    if (order_ == 0) throw StructuralError("group: empty carrier");
    if (identity_ >= order_) throw StructuralError("group: identity out of range");
    op_.resize(order_ * order_);
    for (Elem x = 0; x < order_; ++x) {
      if (table[x].size() != order_) throw StructuralError("group: Cayley table row is ragged");
      for (Elem y = 0; y < order_; ++y) {
        if (table[x][y] >= order_) throw StructuralError("group: Cayley table entry out of range");
        op_[x * order_ + y] = table[x][y];
      }
    }
    Report r = check_axioms();
    if (!r.ok()) throw PreconditionError("group axiom violated: " + r.violations.front().law);
  }

  [[nodiscard]] std::size_t order() const noexcept { return order_; }
  [[nodiscard]] Elem identity() const noexcept { return identity_; }
  [[nodiscard]] Elem op(Elem x, Elem y) const { return op_[x * order_ + y]; }
  [[nodiscard]] Elem inv(Elem x) const { return inv_[x]; }
  /// y + (−x)
  [[nodiscard]] Elem diff(Elem y, Elem x) const { return op(y, inv(x)); }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

  [[nodiscard]] std::vector<std::vector<Elem>> table() const {
    std::vector<std::vector<Elem>> t(order_, std::vector<Elem>(order_));
    for (Elem x = 0; x < order_; ++x)
      for (Elem y = 0; y < order_; ++y) t[x][y] = op(x, y);
    return t;
  }

  [[nodiscard]] bool is_abelian() const {
    for (Elem x = 0; x < order_; ++x)
      for (Elem y = 0; y < order_; ++y)
        if (op(x, y) != op(y, x)) return false;
    return true;
  }

  /// Same table and identity; names are cosmetic.
  bool operator==(const FiniteGroup& o) const { return op_ == o.op_ && identity_ == o.identity_; }

 private:
  static std::vector<std::vector<Elem>> trivial_table() { return {{0}}; }

  Report check_axioms() {
    Report r;
    inv_.assign(order_, order_);
    for (Elem x = 0; x < order_; ++x) {
      if (op(identity_, x) != x || op(x, identity_) != x) r.fail("group:identity", witness_of(x));
      for (Elem y = 0; y < order_; ++y) {
        if (op(x, y) == identity_ && op(y, x) == identity_) inv_[x] = y;
        for (Elem z = 0; z < order_; ++z) {
          if (op(op(x, y), z) != op(x, op(y, z))) r.fail("group:associative", witness_of(x, y, z));
        }
      }
      if (inv_[x] == order_) r.fail("group:inverse", witness_of(x));
    }
    return r;
  }

  std::size_t order_;
  Elem identity_;
  std::string name_;
  std::vector<Elem> op_;
  std::vector<Elem> inv_;
};

inline FiniteGroup trivial_group() { return FiniteGroup{}; }

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw PreconditionError("cyclic group of order 0");
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return FiniteGroup(std::move(t), 0, "Z" + std::to_string(n));
}

/// G × H with elements (g, h) at index g·|H| + h.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order() * h.order();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      t[a][b] = g.op(a / h.order(), b / h.order()) * h.order() + h.op(a % h.order(), b % h.order());
    }
  }
  return FiniteGroup(std::move(t), g.identity() * h.order() + h.identity(),
                     g.name() + "x" + h.name());
}

inline FiniteGroup klein_group() {
  FiniteGroup v = direct_product(cyclic_group(2), cyclic_group(2));
  return FiniteGroup(v.table(), v.identity(), "Z2xZ2");
}

/// S₃ as permutations of {0,1,2} listed in lexicographic order; index 0 is
/// the identity. op(x, y) is "x then y" composed as y ∘ x.
inline FiniteGroup symmetric_group3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::array<int, 3>& q) {
    return static_cast<Elem>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<Elem>> t(6, std::vector<Elem>(6));
  for (Elem x = 0; x < 6; ++x) {
    for (Elem y = 0; y < 6; ++y) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[y][perms[x][i]];
      t[x][y] = index_of(c);
    }
  }
  return FiniteGroup(std::move(t), 0, "S3");
}

// --- subgroups and quotients ------------------------------------------------

/// Sorted list of parent elements.
using Subset = std::vector<Elem>;

inline bool contains(const Subset& s, Elem x) { return std::binary_search(s.begin(), s.end(), x); }

inline bool is_subgroup(const FiniteGroup& g, const Subset& s) {
  if (!contains(s, g.identity())) return false;
  for (Elem x : s) {
    if (!contains(s, g.inv(x))) return false;
    for (Elem y : s)
      if (!contains(s, g.op(x, y))) return false;
  }
  return true;
}

/// A pair (x, n) with x + n − x ∉ N, if N is not normal.
inline std::optional<std::pair<Elem, Elem>> conjugation_witness(const FiniteGroup& g, const Subset& n) {
  for (Elem x = 0; x < g.order(); ++x) {
    for (Elem m : n) {
      if (!contains(n, g.op(g.op(x, m), g.inv(x)))) return std::pair{x, m};
    }
  }
  return std::nullopt;
}

inline bool is_normal(const FiniteGroup& g, const Subset& n) {
  return is_subgroup(g, n) && !conjugation_witness(g, n);
}

/// Smallest normal subgroup containing `gens`.
inline Subset normal_closure(const FiniteGroup& g, const Subset& gens) {
  std::vector<bool> in(g.order(), false);
  in[g.identity()] = true;
  for (Elem x : gens) in[x] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Elem a = 0; a < g.order(); ++a) {
      if (!in[a]) continue;
      auto add = [&](Elem e) {
        if (!in[e]) {
          in[e] = true;
          grew = true;
        }
      };
      add(g.inv(a));
      for (Elem x = 0; x < g.order(); ++x) {
        add(g.op(g.op(x, a), g.inv(x)));
        if (in[x]) add(g.op(a, x));
      }
    }
  }
  Subset out;
  for (Elem x = 0; x < g.order(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

/// Every normal subgroup, each as a sorted subset, in lexicographic order.
inline std::vector<Subset> normal_subgroups(const FiniteGroup& g) {
  std::vector<Subset> out;
  // Each normal subgroup is the closure of itself, so closing every singleton
  // and then every pairwise join until stable reaches them all.
  for (Elem x = 0; x < g.order(); ++x) {
    Subset c = normal_closure(g, {x});
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t count = out.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        Subset u = out[i];
        u.insert(u.end(), out[j].begin(), out[j].end());
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        Subset c = normal_closure(g, u);
        if (std::find(out.begin(), out.end(), c) == out.end()) {
          out.push_back(c);
          grew = true;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A subgroup realised as a group in its own right, with its inclusion.
struct SubgroupEmbedding {
  FiniteGroup group;
  std::vector<Elem> inclusion;  // sub index -> parent index
};

inline SubgroupEmbedding make_subgroup(const FiniteGroup& g, const Subset& s, std::string name = {}) {
  if (!is_subgroup(g, s)) throw PreconditionError("subset is not a subgroup");
  std::vector<Elem> back(g.order(), g.order());
  for (std::size_t i = 0; i < s.size(); ++i) back[s[i]] = i;
  std::vector<std::vector<Elem>> t(s.size(), std::vector<Elem>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) t[i][j] = back[g.op(s[i], s[j])];
  return {FiniteGroup(std::move(t), back[g.identity()], std::move(name)), s};
}

/// G/N with cosets ordered by their least element, and the projection.
struct QuotientGroup {
  FiniteGroup group;
  std::vector<Elem> projection;  // parent index -> coset index
  std::vector<Subset> cosets;
};

inline QuotientGroup make_quotient(const FiniteGroup& g, const Subset& n, std::string name = {}) {
  if (auto w = conjugation_witness(g, n); w || !is_subgroup(g, n)) {
    throw PreconditionError("quotient by a non-normal subset");
  }
  std::vector<Elem> proj(g.order(), g.order());
  std::vector<Subset> cosets;
  for (Elem x = 0; x < g.order(); ++x) {
    if (proj[x] != g.order()) continue;
    Subset c;
    for (Elem m : n) c.push_back(g.op(x, m));
    std::sort(c.begin(), c.end());
    for (Elem y : c) proj[y] = cosets.size();
    cosets.push_back(std::move(c));
  }
  const std::size_t k = cosets.size();
  std::vector<std::vector<Elem>> t(k, std::vector<Elem>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) t[i][j] = proj[g.op(cosets[i].front(), cosets[j].front())];
  return {FiniteGroup(std::move(t), proj[g.identity()], std::move(name)), std::move(proj),
          std::move(cosets)};
}

/// Law-checks a map as a group homomorphism; witnesses are (x, y).
inline Report check_group_hom(const FiniteGroup& dom, const FiniteGroup& cod, std::span<const Elem> map) {
  Report r;
  if (map.size() != dom.order()) throw StructuralError("homomorphism: map length differs from domain order");
  for (Elem m : map)
    if (m >= cod.order()) throw StructuralError("homomorphism: map value out of range");
  for (Elem x = 0; x < dom.order(); ++x) {
    for (Elem y = 0; y < dom.order(); ++y) {
      if (map[dom.op(x, y)] != cod.op(map[x], map[y])) {
        r.fail("hom:additive", witness_of(x, y));
        return r;
      }
    }
  }
  return r;
}

}  // namespace vgrp
