#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vgrp/error.hpp"
#include "vgrp/report.hpp"
#include "vgrp/torsion.hpp"
#include "vgrp/vgroup.hpp"

namespace vgrp {

using Integer = boost::multiprecision::cpp_int;

/// An element (z, x) of ℤ × X.
struct CoverElem {
  Integer z;
  Elem x = 0;

  bool operator==(const CoverElem&) const = default;
};

/// ℤ × X with b((z,x),(z',x')) = a(x,x') if z < z', ⊤ if (z,x) = (z',x'),
/// ⊥ otherwise. Nothing is materialized; every query evaluates the formula.
class LazyVGroup {
 public:
  explicit LazyVGroup(VGroupRef base) : base_(std::move(base)) {
    detail::require_integral(base_->q(), "descent cover");
  }

  [[nodiscard]] const VGroupRef& base() const noexcept { return base_; }
  [[nodiscard]] const Quantale& q() const noexcept { return base_->q(); }

  [[nodiscard]] CoverElem zero() const { return {0, base_->group().identity()}; }
  [[nodiscard]] CoverElem op(const CoverElem& p, const CoverElem& r) const {
    return {p.z + r.z, base_->group().op(p.x, r.x)};
  }
  [[nodiscard]] CoverElem neg(const CoverElem& p) const { return {-p.z, base_->group().inv(p.x)}; }

  [[nodiscard]] Value b(const CoverElem& p, const CoverElem& r) const {
    if (p.z < r.z) return base_->a(p.x, r.x);
    if (p == r) return q().top();
    return q().bottom();
  }

  /// f(z, x) = x.
  [[nodiscard]] Elem project(const CoverElem& p) const { return p.x; }
  /// x ↦ (0, x), a set-theoretic section of f.
  [[nodiscard]] CoverElem section(Elem x) const { return {0, x}; }

 private:
  VGroupRef base_;
};

inline LazyVGroup descent_cover(const VGroupRef& g) { return LazyVGroup(g); }

/// The band {−n..n} × X. Not closed under +.
struct Window {
  std::size_t radius = 0;
  std::size_t base_order = 0;
  std::vector<CoverElem> elems;  // z ascending, then x

  [[nodiscard]] std::optional<std::size_t> index_of(const CoverElem& p) const {
    const Integer n = static_cast<std::int64_t>(radius);
    if (p.z < -n || p.z > n || p.x >= base_order) return std::nullopt;
    return static_cast<std::size_t>(static_cast<std::int64_t>(p.z + n)) * base_order + p.x;
  }
};

inline Window window(const LazyVGroup& l, std::size_t n) {
  Window w{n, l.base()->order(), {}};
  const auto r = static_cast<std::int64_t>(n);
  for (std::int64_t z = -r; z <= r; ++z)
    for (Elem x = 0; x < w.base_order; ++x) w.elems.push_back({z, x});
  return w;
}

/// The structure restricted to a window, as a dense matrix.
inline VRel materialize(const LazyVGroup& l, const Window& w) {
  VRel m(l.base()->quantale(), w.elems.size(), w.elems.size(), l.q().bottom());
  for (std::size_t i = 0; i < w.elems.size(); ++i)
    for (std::size_t j = 0; j < w.elems.size(); ++j) m.set(i, j, l.b(w.elems[i], w.elems[j]));
  return m;
}

namespace detail {

inline std::int64_t small(const Integer& z) { return static_cast<std::int64_t>(z); }

/// ⋁ b(y1, y2) over window elements above x1 and x2.
inline Value fibre_join(const LazyVGroup& l, const Window& w, Elem x1, Elem x2) {
  Value acc = l.q().bottom();
  for (const CoverElem& y1 : w.elems) {
    if (l.project(y1) != x1) continue;
    for (const CoverElem& y2 : w.elems)
      if (l.project(y2) == x2) acc = l.q().join(acc, l.b(y1, y2));
  }
  return acc;
}

}  // namespace detail

/// Exhaustive checks of the cover on the window of radius n.
inline Report verify_cover_window(const LazyVGroup& l, std::size_t n) {
  if (n < 1) throw PreconditionError("cover window radius must be at least 1");
  using detail::small;
  const Quantale& q = l.q();
  const VGroup& base = *l.base();
  const Window w = window(l, n);
  const VRel m = materialize(l, w);
  const std::size_t size = w.elems.size();
  Report r;

  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (m(i, j) != l.b(w.elems[i], w.elems[j])) r.fail("window-agrees-with-formula", witness_of(i, j));

  for (const CoverElem& p : w.elems)
    if (!q.leq(q.unit(), l.b(p, p))) r.fail("R", {small(p.z), static_cast<std::int64_t>(p.x)});

  bool transitive = true;
  for (std::size_t i = 0; i < size && transitive; ++i)
    for (std::size_t j = 0; j < size && transitive; ++j)
      for (std::size_t k = 0; k < size; ++k)
        if (!q.leq(q.tensor(m(i, j), m(j, k)), m(i, k))) {
          r.fail("T", witness_of(i, j, k));
          transitive = false;
          break;
        }

  for (const CoverElem& s : w.elems)
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) {
        auto si = w.index_of(l.op(w.elems[i], s));
        auto sj = w.index_of(l.op(w.elems[j], s));
        if (si && sj && m(i, j) != m(*si, *sj)) {
          r.fail("shift-invariance", {small(s.z), static_cast<std::int64_t>(s.x), static_cast<std::int64_t>(i),
                                      static_cast<std::int64_t>(j)});
        }
      }

  const CoverElem zero = l.zero();
  for (const CoverElem& p : w.elems)
    if (!(p == zero) && q.leq(q.unit(), l.b(p, zero)) && q.leq(q.unit(), l.b(zero, p)))
      r.fail("separated", {small(p.z), static_cast<std::int64_t>(p.x)});
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (i != j && q.leq(q.unit(), m(i, j)) && q.leq(q.unit(), m(j, i)))
        r.fail("separated-two-variable", witness_of(i, j));

  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (!q.leq(m(i, j), base.a(l.project(w.elems[i]), l.project(w.elems[j]))))
        r.fail("projection-V-functor", witness_of(i, j));

  const Window wider = window(l, n + 1);
  for (Elem x1 = 0; x1 < base.order(); ++x1) {
    for (Elem x2 = 0; x2 < base.order(); ++x2) {
      const Value witness = l.b({0, x1}, {1, x2});
      const Value joined = detail::fibre_join(l, w, x1, x2);
      if (witness != base.a(x1, x2)) r.fail("finality-witness", witness_of(x1, x2));
      if (joined != base.a(x1, x2)) r.fail("finality", witness_of(x1, x2));
      if (joined != detail::fibre_join(l, wider, x1, x2)) r.fail("finality-stable", witness_of(x1, x2, n));
    }
  }

  for (Elem x = 0; x < base.order(); ++x)
    if (l.project(l.section(x)) != x || !w.index_of(l.section(x))) r.fail("surjective-via-section", witness_of(x));
  return r;
}

// --- Eq(f) ------------------------------------------------------------------------

/// An arrow (y1, y2) of Eq(f): codomain y1, domain y2, same base element.
using CoverArrow = std::pair<CoverElem, CoverElem>;

struct EqFData {
  Window window;
  std::vector<CoverArrow> arrows;
  Report report;
};

/// Kernel pair of f restricted to the window, with structure b ∧ b.
inline EqFData eq_f(const LazyVGroup& l, std::size_t n) {
  const Quantale& q = l.q();
  EqFData d{window(l, n), {}, {}};
  for (const CoverElem& y1 : d.window.elems)
    for (const CoverElem& y2 : d.window.elems)
      if (l.project(y1) == l.project(y2)) d.arrows.emplace_back(y1, y2);

  auto bb = [&](const CoverArrow& p, const CoverArrow& r) {
    return q.meet(l.b(p.first, r.first), l.b(p.second, r.second));
  };
  const std::size_t size = d.arrows.size();
  Report& rep = d.report;

  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const CoverArrow& p = d.arrows[i];
      const CoverArrow& r = d.arrows[j];
      const Value v = bb(p, r);
      if (!q.leq(v, l.b(p.first, r.first))) rep.fail("codomain-V-functor", witness_of(i, j));
      if (!q.leq(v, l.b(p.second, r.second))) rep.fail("domain-V-functor", witness_of(i, j));
      if (i != j && q.leq(q.unit(), v) && q.leq(q.unit(), bb(r, p))) rep.fail("separated", witness_of(i, j));
    }
  }

  const std::vector<CoverElem>& ys = d.window.elems;
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j)
      if (bb({ys[i], ys[i]}, {ys[j], ys[j]}) != l.b(ys[i], ys[j])) rep.fail("diagonal-structure", witness_of(i, j));

  // Composition (y1,y2) ∘ (y2,y3) = (y1,y3) on composable pairs carries the
  // meet of both factors' structures.
  const std::vector<CoverArrow>& as = d.arrows;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (!(as[i].second == as[j].first)) continue;
      for (std::size_t i2 = 0; i2 < size; ++i2) {
        for (std::size_t j2 = 0; j2 < size; ++j2) {
          if (!(as[i2].second == as[j2].first)) continue;
          const Value lhs = q.meet(bb(as[i], as[i2]), bb(as[j], as[j2]));
          if (!q.leq(lhs, bb({as[i].first, as[j].second}, {as[i2].first, as[j2].second}))) {
            rep.fail("composition-V-functor", witness_of(i, j, i2, j2));
          }
        }
      }
    }
  }

  // The reflector fixes Eq(f): its torsion part is trivial on the window.
  const CoverArrow unit{l.zero(), l.zero()};
  for (std::size_t i = 0; i < size; ++i)
    if (!(as[i] == unit) && q.leq(q.unit(), bb(as[i], unit)) && q.leq(q.unit(), bb(unit, as[i])))
      rep.fail("reflector-fixes-Eq(f)", witness_of(i));
  return d;
}

// --- actions ---------------------------------------------------------------------

/// An element (z, a) of the pullback ℤ × A of a covering α : A → X along f.
struct ActionElem {
  Integer z;
  Elem a = 0;

  bool operator==(const ActionElem&) const = default;
};

struct ActionData {
  std::vector<ActionElem> carrier;
  Report report;
};

/// The Eq(f)-action on ℤ × A induced by a covering α : A → X, with
/// π(z, a) = (z, α a) and ξ((y1, y2), e) = (z(y1), a(e)). Requires a
/// separated kernel.
inline ActionData action_of_covering(const VHom& alpha, const LazyVGroup& l, std::size_t n) {
  if (!(*alpha.cod == *l.base())) throw StructuralError("action: covering does not land in the cover's base");
  if (!is_separated(*kernel(alpha).object)) throw PreconditionError("action: the map is not a covering (kernel not separated)");

  const Quantale& q = l.q();
  const VGroup& a = *alpha.dom;
  ActionData d;
  const auto r = static_cast<std::int64_t>(n);
  for (std::int64_t z = -r; z <= r; ++z)
    for (Elem e = 0; e < a.order(); ++e) d.carrier.push_back({z, e});

  auto pi = [&](const ActionElem& e) { return CoverElem{e.z, alpha(e.a)}; };
  auto c = [&](const ActionElem& e, const ActionElem& e2) { return q.meet(l.b(pi(e), pi(e2)), a.a(e.a, e2.a)); };
  auto xi = [&](const CoverArrow& p, const ActionElem& e) { return ActionElem{p.first.z, e.a}; };
  auto bb = [&](const CoverArrow& p, const CoverArrow& p2) {
    return q.meet(l.b(p.first, p2.first), l.b(p.second, p2.second));
  };

  std::vector<CoverArrow> arrows = eq_f(l, n).arrows;
  Report& rep = d.report;

  const std::vector<ActionElem>& es = d.carrier;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (!(xi({pi(es[i]), pi(es[i])}, es[i]) == es[i])) rep.fail("action-unit", witness_of(i));
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (!q.leq(c(es[i], es[j]), l.b(pi(es[i]), pi(es[j])))) rep.fail("projection-V-functor", witness_of(i, j));
      if (i != j && q.leq(q.unit(), c(es[i], es[j])) && q.leq(q.unit(), c(es[j], es[i]))) {
        rep.fail("separated", witness_of(i, j));
      }
    }
  }

  // Witnesses index arrows of Eq(f) and carrier elements.
  for (std::size_t ai = 0; ai < arrows.size(); ++ai) {
    const CoverArrow& p = arrows[ai];
    for (std::size_t i = 0; i < es.size(); ++i) {
      const ActionElem& e = es[i];
      if (!(p.second == pi(e))) continue;
      const ActionElem moved = xi(p, e);
      if (!(pi(moved) == p.first)) rep.fail("action-fibration", witness_of(ai, i));
      for (std::size_t si = 0; si < arrows.size(); ++si) {
        const CoverArrow& s = arrows[si];
        if (!(s.second == p.first)) continue;
        if (!(xi(s, moved) == xi({s.first, p.second}, e))) rep.fail("action-associative", witness_of(si, ai, i));
      }
      for (std::size_t p2i = 0; p2i < arrows.size(); ++p2i) {
        const CoverArrow& p2 = arrows[p2i];
        for (std::size_t j = 0; j < es.size(); ++j) {
          if (!(p2.second == pi(es[j]))) continue;
          if (!q.leq(q.meet(bb(p, p2), c(e, es[j])), c(moved, xi(p2, es[j])))) {
            rep.fail("action-V-functor", witness_of(ai, i, p2i, j));
          }
        }
      }
    }
  }
  return d;
}

}  // namespace vgrp
