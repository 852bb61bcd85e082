#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vgrp/error.hpp"
#include "vgrp/group.hpp"
#include "vgrp/quantale.hpp"
#include "vgrp/report.hpp"
#include "vgrp/vrel.hpp"

namespace vgrp {

/// Candidate enumerations larger than this are refused.
inline constexpr std::size_t kEnumerationCap = 1'000'000;

/// A finite group with a V-relation on its carrier. Construction only checks
/// shapes; use `validate_vgroup` for the axioms.
class VGroup {
 public:
  VGroup(FiniteGroup g, VRel a) : group_(std::move(g)), a_(std::move(a)) {
    if (a_.rows() != group_.order() || a_.cols() != group_.order()) {
      throw StructuralError("V-group: structure is not a square matrix over the carrier");
    }
  }

  [[nodiscard]] const FiniteGroup& group() const noexcept { return group_; }
  [[nodiscard]] const VRel& structure() const noexcept { return a_; }
  [[nodiscard]] const Quantale& q() const noexcept { return a_.q(); }
  [[nodiscard]] const QuantalePtr& quantale() const noexcept { return a_.quantale(); }
  [[nodiscard]] std::size_t order() const noexcept { return group_.order(); }
  [[nodiscard]] Value a(Elem x, Elem y) const { return a_(x, y); }

  bool operator==(const VGroup& o) const { return group_ == o.group_ && a_ == o.a_; }

 private:
  FiniteGroup group_;
  VRel a_;
};

using VGroupRef = std::shared_ptr<const VGroup>;

inline VGroupRef share(VGroup g) { return std::make_shared<const VGroup>(std::move(g)); }

/// A map between V-groups. Construction checks shapes only; `validate_hom`
/// checks the homomorphism and V-functor laws.
struct VHom {
  VGroupRef dom;
  VGroupRef cod;
  std::vector<Elem> map;

  VHom(VGroupRef d, VGroupRef c, std::vector<Elem> m) : dom(std::move(d)), cod(std::move(c)), map(std::move(m)) {
    if (!dom || !cod) throw StructuralError("V-homomorphism without domain or codomain");
    if (map.size() != dom->order()) throw StructuralError("V-homomorphism: map length differs from domain order");
    for (Elem y : map)
      if (y >= cod->order()) throw StructuralError("V-homomorphism: map value out of range");
    if (!dom->q().same_as(cod->q())) throw StructuralError("V-homomorphism: quantale mismatch");
  }

  Elem operator()(Elem x) const { return map[x]; }

  bool operator==(const VHom& o) const { return map == o.map && *dom == *o.dom && *cod == *o.cod; }
};

inline VHom identity_hom(const VGroupRef& g) {
  std::vector<Elem> m(g->order());
  for (Elem x = 0; x < m.size(); ++x) m[x] = x;
  return VHom(g, g, std::move(m));
}

inline VHom zero_hom(const VGroupRef& g, const VGroupRef& h) {
  return VHom(g, h, std::vector<Elem>(g->order(), h->group().identity()));
}

/// f then g.
inline VHom compose(const VHom& f, const VHom& g) {
  if (!(*f.cod == *g.dom)) throw StructuralError("compose: codomain/domain mismatch");
  std::vector<Elem> m(f.map.size());
  for (Elem x = 0; x < m.size(); ++x) m[x] = g.map[f.map[x]];
  return VHom(f.dom, g.cod, std::move(m));
}

// --- axioms ------------------------------------------------------------------

/// Outcome of checking the V-group axioms by both routes.
struct VGroupCheck {
  bool reflexive = true;
  bool transitive = true;
  bool shift_invariant = true;
  bool plus_is_functor = true;
  Report report;

  [[nodiscard]] bool ok() const { return report.ok(); }
  /// (R)+(T)+shift against (R)+"+ is a V-functor".
  [[nodiscard]] bool routes_agree() const {
    return (reflexive && transitive && shift_invariant) == (reflexive && plus_is_functor);
  }
};

/// Checks (R), (T), right shift-invariance and, independently, that
/// + : (X,a)⊗(X,a) → (X,a) is a V-functor. On abelian groups the two routes
/// must agree; a disagreement there throws TheoremCheckFailure. On
/// nonabelian groups right shift-invariance alone does not give left
/// invariance, so a disagreement is recorded as a finding and the direct
/// functor condition decides validity.
inline VGroupCheck validate_vgroup(const VGroup& g) {
  const Quantale& q = g.q();
  const FiniteGroup& grp = g.group();
  const std::size_t n = g.order();
  VGroupCheck c;

  for (Elem x = 0; x < n; ++x) {
    if (!q.leq(q.unit(), g.a(x, x))) {
      c.reflexive = false;
      c.report.fail("R", witness_of(x));
      break;
    }
  }
  for (Elem x = 0; x < n && c.transitive; ++x)
    for (Elem y = 0; y < n && c.transitive; ++y)
      for (Elem z = 0; z < n; ++z)
        if (!q.leq(q.tensor(g.a(x, y), g.a(y, z)), g.a(x, z))) {
          c.transitive = false;
          c.report.fail("T", witness_of(x, y, z));
          break;
        }
  for (Elem s = 0; s < n && c.shift_invariant; ++s)
    for (Elem x = 0; x < n && c.shift_invariant; ++x)
      for (Elem y = 0; y < n; ++y)
        if (g.a(x, y) != g.a(grp.op(x, s), grp.op(y, s))) {
          c.shift_invariant = false;
          c.report.fail("shift-invariance", witness_of(s, x, y));
          break;
        }
  for (Elem x1 = 0; x1 < n && c.plus_is_functor; ++x1)
    for (Elem x2 = 0; x2 < n && c.plus_is_functor; ++x2)
      for (Elem y1 = 0; y1 < n && c.plus_is_functor; ++y1)
        for (Elem y2 = 0; y2 < n; ++y2)
          if (!q.leq(q.tensor(g.a(x1, x2), g.a(y1, y2)), g.a(grp.op(x1, y1), grp.op(x2, y2)))) {
            c.plus_is_functor = false;
            c.report.fail("plus-is-V-functor", witness_of(x1, x2, y1, y2));
            break;
          }

  if (!c.routes_agree()) {
    if (grp.is_abelian()) {
      throw TheoremCheckFailure("shift-invariance and the V-functor condition disagree on an abelian group");
    }
    c.report.note("finding: right shift-invariance with (R),(T) holds but + is not a V-functor (nonabelian carrier)");
  }
  return c;
}

/// a(x, y) := delta(y − x).
inline VGroup structure_from_delta(const FiniteGroup& g, const QuantalePtr& q, std::span<const Value> delta) {
  if (delta.size() != g.order()) throw StructuralError("delta length differs from group order");
  VRel a(q, g.order(), g.order(), q->bottom());
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y) a.set(x, y, q->element(delta[g.diff(y, x)].index));
  return VGroup(g, std::move(a));
}

inline VGroup discrete_vgroup(const FiniteGroup& g, const QuantalePtr& q) {
  return VGroup(g, VRel::identity(q, g.order()));
}

inline VGroup indiscrete_vgroup(const FiniteGroup& g, const QuantalePtr& q) {
  return VGroup(g, VRel(q, g.order(), g.order(), q->top()));
}

// --- object classes ------------------------------------------------------------

struct ObjectClass {
  bool indiscrete = false;
  bool separated = false;
  bool symmetric = false;
  bool discrete = false;

  bool operator==(const ObjectClass&) const = default;
};

inline bool is_indiscrete(const VGroup& g) {
  for (Value v : g.structure().entries())
    if (v != g.q().top()) return false;
  return true;
}

inline bool is_symmetric(const VGroup& g) {
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < x; ++y)
      if (g.a(x, y) != g.a(y, x)) return false;
  return true;
}

/// a(x,x') ≥ k and a(x',x) ≥ k ⟹ x = x'.
inline bool is_separated_pairwise(const VGroup& g) {
  const Quantale& q = g.q();
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y)
      if (x != y && q.leq(q.unit(), g.a(x, y)) && q.leq(q.unit(), g.a(y, x))) return false;
  return true;
}

/// a(x,0) ≥ k and a(0,x) ≥ k ⟹ x = 0.
inline bool is_separated(const VGroup& g) {
  const Quantale& q = g.q();
  const Elem zero = g.group().identity();
  for (Elem x = 0; x < g.order(); ++x)
    if (x != zero && q.leq(q.unit(), g.a(x, zero)) && q.leq(q.unit(), g.a(zero, x))) return false;
  return true;
}

inline bool is_discrete(const VGroup& g) { return g.structure() == VRel::identity(g.quantale(), g.order()); }

/// Expects a valid V-group. The separation flag is computed in the
/// shift-reduced form and cross-checked against the two-variable form.
inline ObjectClass classify_object(const VGroup& g) {
  ObjectClass c{is_indiscrete(g), is_separated(g), is_symmetric(g), is_discrete(g)};
  if (c.separated != is_separated_pairwise(g)) {
    throw TheoremCheckFailure("separation: shift-reduced and two-variable forms disagree");
  }
  return c;
}

// --- homomorphisms -------------------------------------------------------------

/// Group-homomorphism and V-functor laws, a(x,x') ≤ b(f x, f x').
inline Report validate_hom(const VHom& f) {
  Report r = check_group_hom(f.dom->group(), f.cod->group(), f.map);
  const Quantale& q = f.dom->q();
  for (Elem x = 0; x < f.dom->order(); ++x)
    for (Elem y = 0; y < f.dom->order(); ++y)
      if (!q.leq(f.dom->a(x, y), f.cod->a(f(x), f(y)))) {
        r.fail("V-functor", witness_of(x, y));
        return r;
      }
  return r;
}

inline bool is_injective(std::span<const Elem> map, std::size_t cod_size) {
  std::vector<bool> hit(cod_size, false);
  for (Elem y : map) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

inline bool is_surjective(std::span<const Elem> map, std::size_t cod_size) {
  std::vector<bool> hit(cod_size, false);
  for (Elem y : map) hit[y] = true;
  return std::find(hit.begin(), hit.end(), false) == hit.end();
}

inline Subset image_of(const VHom& f) {
  Subset s(f.map.begin(), f.map.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline Subset kernel_of(const VHom& f) {
  Subset s;
  for (Elem x = 0; x < f.dom->order(); ++x)
    if (f(x) == f.cod->group().identity()) s.push_back(x);
  return s;
}

/// b = f · a · f° for a surjective f.
inline bool is_final(const VHom& f) {
  return f.cod->structure() == push_forward(f.dom->structure(), f.map, f.cod->order());
}

/// a = f° · b · f, i.e. a(x,x') = b(f x, f x').
inline bool is_initial(const VHom& f) {
  for (Elem x = 0; x < f.dom->order(); ++x)
    for (Elem y = 0; y < f.dom->order(); ++y)
      if (f.dom->a(x, y) != f.cod->a(f(x), f(y))) return false;
  return true;
}

/// Isomorphism in V-Grp: bijective and structure-preserving both ways.
inline bool is_iso(const VHom& f) {
  return f.dom->order() == f.cod->order() && is_injective(f.map, f.cod->order()) && is_initial(f);
}

struct HomClass {
  bool mono = false;
  bool epi = false;
  bool regular_epi = false;
  bool normal_mono = false;
  /// Regular epis are normal epis when the quantale is integral; empty otherwise.
  std::optional<bool> normal_epi;

  bool operator==(const HomClass&) const = default;
};

inline HomClass classify_hom(const VHom& f) {
  HomClass c;
  c.mono = is_injective(f.map, f.cod->order());
  c.epi = is_surjective(f.map, f.cod->order());
  c.regular_epi = c.epi && is_final(f);
  c.normal_mono = c.mono && is_normal(f.cod->group(), image_of(f)) && is_initial(f);
  if (f.dom->q().is_integral()) c.normal_epi = c.regular_epi;
  return c;
}

// --- sub-objects, quotients, limits, colimits -------------------------------------

/// An object together with a monomorphism into the parent.
struct Subobject {
  VGroupRef object;
  VHom inclusion;
};

/// An object together with a surjection out of the parent.
struct Quotient {
  VGroupRef object;
  VHom projection;
};

/// (S, k°·a·k) for a subgroup S.
inline Subobject induced_subobject(const VGroupRef& g, const Subset& s) {
  SubgroupEmbedding sub = make_subgroup(g->group(), s, g->group().name() + "|sub");
  VRel a = pull_back(g->structure(), sub.inclusion);
  VGroupRef obj = share(VGroup(std::move(sub.group), std::move(a)));
  return {obj, VHom(obj, g, sub.inclusion)};
}

/// (G/N, η·a·η°) for a normal subgroup N.
inline Quotient final_quotient(const VGroupRef& g, const Subset& n) {
  QuotientGroup quo = make_quotient(g->group(), n, g->group().name() + "/N");
  VRel a = push_forward(g->structure(), quo.projection, quo.group.order());
  VGroupRef obj = share(VGroup(std::move(quo.group), std::move(a)));
  return {obj, VHom(g, obj, std::move(quo.projection))};
}

inline Subobject kernel(const VHom& f) { return induced_subobject(f.dom, kernel_of(f)); }

/// Requires a normal image; otherwise reports a conjugation witness (x, y)
/// with x + y − x outside the image.
inline Quotient cokernel(const VHom& f) {
  Subset im = image_of(f);
  if (auto w = conjugation_witness(f.cod->group(), im)) {
    throw PreconditionError("cokernel: image is not normal; conjugating " + std::to_string(w->second) + " by " +
                            std::to_string(w->first) + " leaves it");
  }
  return final_quotient(f.cod, im);
}

/// (X × Y, a ∧ b) with elements (x, y) at index x·|Y| + y.
inline VGroupRef product(const VGroupRef& g, const VGroupRef& h) {
  if (!g->q().same_as(h->q())) throw StructuralError("product: quantale mismatch");
  FiniteGroup grp = direct_product(g->group(), h->group());
  const std::size_t m = h->order();
  VRel a(g->quantale(), grp.order(), grp.order(), g->q().bottom());
  for (Elem p = 0; p < grp.order(); ++p)
    for (Elem r = 0; r < grp.order(); ++r) a.set(p, r, g->q().meet(g->a(p / m, r / m), h->a(p % m, r % m)));
  return share(VGroup(std::move(grp), std::move(a)));
}

struct PullbackCone {
  VGroupRef object;
  VHom proj1;
  VHom proj2;
  /// Pairs (x, y) in carrier order.
  std::vector<std::pair<Elem, Elem>> pairs;
};

/// X ×_Z Y with structure a ∧ b. Pairs are listed lexicographically.
inline PullbackCone pullback(const VHom& f, const VHom& g) {
  if (!(*f.cod == *g.cod)) throw StructuralError("pullback: legs have different codomains");
  const VGroup& x = *f.dom;
  const VGroup& y = *g.dom;
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem i = 0; i < x.order(); ++i)
    for (Elem j = 0; j < y.order(); ++j)
      if (f(i) == g(j)) pairs.emplace_back(i, j);
  auto index_of = [&](std::pair<Elem, Elem> p) {
    return static_cast<Elem>(std::lower_bound(pairs.begin(), pairs.end(), p) - pairs.begin());
  };
  const std::size_t n = pairs.size();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  VRel a(x.quantale(), n, n, x.q().bottom());
  for (Elem p = 0; p < n; ++p) {
    for (Elem r = 0; r < n; ++r) {
      t[p][r] = index_of({x.group().op(pairs[p].first, pairs[r].first), y.group().op(pairs[p].second, pairs[r].second)});
      a.set(p, r, x.q().meet(x.a(pairs[p].first, pairs[r].first), y.a(pairs[p].second, pairs[r].second)));
    }
  }
  FiniteGroup grp(std::move(t), index_of({x.group().identity(), y.group().identity()}),
                  x.group().name() + "x_" + y.group().name());
  VGroupRef obj = share(VGroup(std::move(grp), std::move(a)));
  std::vector<Elem> m1(n), m2(n);
  for (Elem p = 0; p < n; ++p) {
    m1[p] = pairs[p].first;
    m2[p] = pairs[p].second;
  }
  return {obj, VHom(obj, f.dom, std::move(m1)), VHom(obj, g.dom, std::move(m2)), std::move(pairs)};
}

inline Subobject equalizer(const VHom& f, const VHom& g) {
  if (!(*f.dom == *g.dom) || !(*f.cod == *g.cod)) throw StructuralError("equalizer: arrows are not parallel");
  Subset s;
  for (Elem x = 0; x < f.dom->order(); ++x)
    if (f(x) == g(x)) s.push_back(x);
  return induced_subobject(f.dom, s);
}

/// Y / ⟨f(x) − g(x)⟩ with the final structure.
inline Quotient coequalizer(const VHom& f, const VHom& g) {
  if (!(*f.dom == *g.dom) || !(*f.cod == *g.cod)) throw StructuralError("coequalizer: arrows are not parallel");
  Subset gens;
  for (Elem x = 0; x < f.dom->order(); ++x) gens.push_back(f.cod->group().diff(f(x), g(x)));
  return final_quotient(f.cod, normal_closure(f.cod->group(), gens));
}

/// (regular epi, mono) factorization through the set image with its final
/// structure.
struct ImageFactorization {
  VHom e;
  VGroupRef middle;
  VHom m;
};

inline ImageFactorization image_factorize(const VHom& f) {
  Subset im = image_of(f);
  SubgroupEmbedding sub = make_subgroup(f.cod->group(), im, f.cod->group().name() + "|im");
  std::vector<Elem> e_map(f.dom->order());
  for (Elem x = 0; x < e_map.size(); ++x)
    e_map[x] = static_cast<Elem>(std::lower_bound(im.begin(), im.end(), f(x)) - im.begin());
  VRel c = push_forward(f.dom->structure(), e_map, im.size());
  VGroupRef mid = share(VGroup(std::move(sub.group), std::move(c)));
  return {VHom(f.dom, mid, std::move(e_map)), mid, VHom(mid, f.cod, std::move(sub.inclusion))};
}

// --- enumeration -----------------------------------------------------------------

namespace detail {

inline bool power_exceeds(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t acc = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > cap / base) return true;
    acc *= base;
  }
  return acc > cap;
}

/// map(x + y) = map(x) + map(y) for every x, y, x + y ≤ i that involves i.
inline bool additive_upto(const FiniteGroup& g, const FiniteGroup& h, const std::vector<Elem>& map, std::size_t i) {
  for (Elem x = 0; x <= i; ++x)
    for (Elem y = 0; y <= i; ++y) {
      const Elem s = g.op(x, y);
      if (s > i || (x != i && y != i && s != i)) continue;
      if (map[s] != h.op(map[x], map[y])) return false;
    }
  return true;
}

}  // namespace detail

/// Visits every delta array in lexicographic order together with its check.
inline void for_each_candidate_structure(const FiniteGroup& g, const QuantalePtr& q,
                                         const std::function<void(const VGroup&, const VGroupCheck&)>& visit,
                                         std::size_t cap = kEnumerationCap) {
  if (detail::power_exceeds(q->size(), g.order(), cap)) {
    throw CapacityError("structure enumeration over " + g.name() + " and " + q->name() + " exceeds the guard");
  }
  std::vector<Value> delta(g.order(), Value{0});
  while (true) {
    VGroup cand = structure_from_delta(g, q, delta);
    visit(cand, validate_vgroup(cand));
    std::size_t i = g.order();
    while (i > 0) {
      --i;
      if (delta[i].index + 1u < q->size()) {
        delta[i].index++;
        break;
      }
      delta[i].index = 0;
      if (i == 0) return;
    }
  }
}

/// All shift-invariant V-group structures on `g`, lexicographic in delta.
inline std::vector<VGroup> enumerate_structures(const FiniteGroup& g, const QuantalePtr& q,
                                                std::size_t cap = kEnumerationCap) {
  std::vector<VGroup> out;
  for_each_candidate_structure(
      g, q,
      [&](const VGroup& cand, const VGroupCheck& check) {
        if (check.ok()) out.push_back(cand);
      },
      cap);
  return out;
}

/// Every V-homomorphism G → H, lexicographic in the map array.
inline std::vector<VHom> enumerate_homs(const VGroupRef& g, const VGroupRef& h, std::size_t cap = kEnumerationCap) {
  if (!g->q().same_as(h->q())) throw StructuralError("enumerate_homs: quantale mismatch");
  if (detail::power_exceeds(h->order(), g->order(), cap)) {
    throw CapacityError("hom enumeration " + g->group().name() + " -> " + h->group().name() + " exceeds the guard");
  }
  const FiniteGroup& gg = g->group();
  const FiniteGroup& hg = h->group();
  const Quantale& q = g->q();
  const std::size_t n = g->order();
  std::vector<VHom> out;
  std::vector<Elem> map(n, 0);

  // Consistency of position i against every already assigned position.
  auto consistent = [&](std::size_t i) {
    for (Elem j = 0; j <= i; ++j)
      if (!q.leq(g->a(i, j), h->a(map[i], map[j])) || !q.leq(g->a(j, i), h->a(map[j], map[i]))) return false;
    return detail::additive_upto(gg, hg, map, i);
  };

  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) {
      out.emplace_back(g, h, map);
      return;
    }
    for (Elem v = 0; v < h->order(); ++v) {
      map[i] = v;
      if (consistent(i)) extend(i + 1);
    }
  };
  extend(0);
  return out;
}

/// A V-group isomorphism G → H found by exhaustive search, if one exists.
inline std::optional<std::vector<Elem>> find_isomorphism(const VGroup& g, const VGroup& h) {
  if (g.order() != h.order() || !g.q().same_as(h.q())) return std::nullopt;
  const std::size_t n = g.order();
  std::vector<Elem> map(n, 0);
  std::vector<bool> used(n, false);
  std::optional<std::vector<Elem>> found;

  auto consistent = [&](std::size_t i) {
    for (Elem j = 0; j <= i; ++j)
      if (g.a(i, j) != h.a(map[i], map[j]) || g.a(j, i) != h.a(map[j], map[i])) return false;
    return detail::additive_upto(g.group(), h.group(), map, i);
  };

  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (found) return;
    if (i == n) {
      found = map;
      return;
    }
    for (Elem v = 0; v < n && !found; ++v) {
      if (used[v]) continue;
      map[i] = v;
      used[v] = true;
      if (consistent(i)) extend(i + 1);
      used[v] = false;
    }
  };
  extend(0);
  return found;
}

inline bool isomorphic(const VGroup& g, const VGroup& h) { return find_isomorphism(g, h).has_value(); }

}  // namespace vgrp
