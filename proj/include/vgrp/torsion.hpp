#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vgrp/error.hpp"
#include "vgrp/group.hpp"
#include "vgrp/report.hpp"
#include "vgrp/vgroup.hpp"

namespace vgrp {

/// N_X = {x | a(0,x) ≥ k and a(x,0) ≥ k}. Normality is re-verified.
inline Subset torsion_part(const VGroup& g) {
  const Quantale& q = g.q();
  const Elem zero = g.group().identity();
  Subset n;
  for (Elem x = 0; x < g.order(); ++x)
    if (q.leq(q.unit(), g.a(zero, x)) && q.leq(q.unit(), g.a(x, zero))) n.push_back(x);
  if (!is_normal(g.group(), n)) throw TheoremCheckFailure("torsion part is not a normal subgroup");
  return n;
}

namespace detail {

inline void require_integral(const Quantale& q, const char* what) {
  if (!q.is_integral()) {
    throw PreconditionError(std::string(what) + " needs an integral quantale (V-Grp is pointed only when k = top)");
  }
}

}  // namespace detail

/// Checks k = ker(p) and p = coker(k) with the induced and final structures.
inline Report check_short_exact(const VHom& k, const VHom& p) {
  Report r;
  if (!(*k.cod == *p.dom)) throw StructuralError("short exact sequence: middle objects differ");
  if (!is_injective(k.map, k.cod->order())) r.fail("ses:injection-mono", {});
  if (!is_surjective(p.map, p.cod->order())) r.fail("ses:projection-epi", {});
  if (image_of(k) != kernel_of(p)) r.fail("ses:exact-at-middle", {});
  if (!is_initial(k)) r.fail("ses:kernel-structure-induced", {});
  if (!is_final(p)) r.fail("ses:cokernel-structure-final", {});
  if (!is_normal(k.cod->group(), image_of(k))) r.fail("ses:normal-image", {});
  return r;
}

struct TorsionDecomposition {
  VGroupRef object;
  Subobject torsion;  // (N_X, ã) with k_X
  Quotient quotient;  // (X/N_X, ā) with η_X
  Report report;
};

/// (N_X, ã) ↪ (X, a) ↠ (X/N_X, ā), verified.
inline TorsionDecomposition decompose(const VGroupRef& g) {
  detail::require_integral(g->q(), "decompose");
  Subset n = torsion_part(*g);
  Subobject t = induced_subobject(g, n);
  Quotient f = final_quotient(g, n);
  Report r = check_short_exact(t.inclusion, f.projection);
  if (!is_indiscrete(*t.object)) r.fail("torsion-part-indiscrete", {});
  if (!is_separated(*f.object)) r.fail("quotient-separated", {});
  if (!r.ok()) throw TheoremCheckFailure("torsion decomposition failed: " + r.violations.front().law);
  return {g, std::move(t), std::move(f), std::move(r)};
}

/// Normal subgroups N whose induced part is indiscrete and whose final
/// quotient is separated. The torsion theory predicts exactly {N_X}.
inline std::vector<Subset> torsion_splittings(const VGroupRef& g) {
  std::vector<Subset> out;
  for (const Subset& n : normal_subgroups(g->group())) {
    if (is_indiscrete(*induced_subobject(g, n).object) && is_separated(*final_quotient(g, n).object)) {
      out.push_back(n);
    }
  }
  return out;
}

/// Reflection into V-Grp_sep: (X/N_X, ā) with unit η_X.
inline Quotient reflect(const VGroupRef& g) {
  detail::require_integral(g->q(), "reflect");
  return final_quotient(g, torsion_part(*g));
}

/// Coreflection into V-Grp_ind: (N_X, ã) with counit k_X.
inline Subobject coreflect(const VGroupRef& g) {
  detail::require_integral(g->q(), "coreflect");
  return induced_subobject(g, torsion_part(*g));
}

/// F(f) : X/N_X → Y/N_Y, [x] ↦ [f x].
inline VHom reflect_hom(const VHom& f, const Quotient& rx, const Quotient& ry) {
  std::vector<Elem> m(rx.object->order(), 0);
  for (Elem x = f.dom->order(); x-- > 0;) m[rx.projection(x)] = ry.projection(f(x));
  VHom out(rx.object, ry.object, std::move(m));
  if (!validate_hom(out).ok() || !(compose(rx.projection, out) == compose(f, ry.projection))) {
    throw TheoremCheckFailure("reflector: F(f) is not a natural V-homomorphism");
  }
  return out;
}

inline VHom reflect_hom(const VHom& f) { return reflect_hom(f, reflect(f.dom), reflect(f.cod)); }

/// T(f) : N_X → N_Y, the restriction of f.
inline VHom coreflect_hom(const VHom& f, const Subobject& tx, const Subobject& ty) {
  const std::vector<Elem>& ny = ty.inclusion.map;
  std::vector<Elem> m(tx.object->order());
  for (Elem i = 0; i < m.size(); ++i) {
    auto it = std::find(ny.begin(), ny.end(), f(tx.inclusion(i)));
    if (it == ny.end()) throw TheoremCheckFailure("coreflector: f does not map N_X into N_Y");
    m[i] = static_cast<Elem>(it - ny.begin());
  }
  VHom out(tx.object, ty.object, std::move(m));
  if (!validate_hom(out).ok() || !(compose(out, ty.inclusion) == compose(tx.inclusion, f))) {
    throw TheoremCheckFailure("coreflector: T(f) is not a natural V-homomorphism");
  }
  return out;
}

inline VHom coreflect_hom(const VHom& f) { return coreflect_hom(f, coreflect(f.dom), coreflect(f.cod)); }

// --- pretorsion ------------------------------------------------------------------

/// (X, a ∧ a°), validated.
inline VGroupRef symmetric_coreflect(const VGroup& g) {
  VGroupRef s = share(VGroup(g.group(), meet(g.structure(), converse(g.structure()))));
  if (!validate_vgroup(*s).ok() || !is_symmetric(*s)) {
    throw TheoremCheckFailure("symmetric coreflection is not a symmetric V-group");
  }
  return s;
}

/// Symmetric, and a(x,x') ≥ k only when x = x'.
inline bool z_membership(const VGroup& g) {
  if (!is_symmetric(g)) return false;
  const Quantale& q = g.q();
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y)
      if (x != y && q.leq(q.unit(), g.a(x, y))) return false;
  return true;
}

/// Tests membership in 𝒩 through the image of f with its final structure.
/// A true answer is always correct; a false one only says the image route
/// found no factorization.
inline bool n_membership_via_image(const VHom& f) { return z_membership(*image_factorize(f).middle); }

/// Test objects for universal properties: every structure on the trivial
/// group, on Z2 and on the carrier group of `g`, over the quantale of `g`.
inline std::vector<VGroupRef> probe_objects(const VGroup& g) {
  std::vector<VGroupRef> out;
  std::vector<FiniteGroup> groups{trivial_group(), cyclic_group(2)};
  if (!(g.group() == groups[0]) && !(g.group() == groups[1])) groups.push_back(g.group());
  for (const FiniteGroup& grp : groups)
    for (VGroup& s : enumerate_structures(grp, g.quantale())) out.push_back(share(std::move(s)));
  return out;
}

/// k is a 𝒵-kernel of f: f·k ∈ 𝒩, and each α : W → A with f·α ∈ 𝒩 factors
/// uniquely through k, for W over `probes`.
inline Report verify_z_kernel(const VHom& k, const VHom& f, const std::vector<VGroupRef>& probes) {
  Report r;
  if (!(*k.cod == *f.dom)) throw StructuralError("z-kernel: arrows are not composable");
  if (!n_membership_via_image(compose(k, f))) r.fail("z-kernel:composite-in-N", {});
  for (std::size_t w = 0; w < probes.size(); ++w) {
    std::vector<VHom> through = enumerate_homs(probes[w], k.dom);
    for (const VHom& alpha : enumerate_homs(probes[w], f.dom)) {
      if (!n_membership_via_image(compose(alpha, f))) continue;
      std::size_t count = 0;
      for (const VHom& phi : through)
        if (compose(phi, k).map == alpha.map) ++count;
      if (count != 1) {
        std::vector<std::int64_t> wit{static_cast<std::int64_t>(w)};
        wit.insert(wit.end(), alpha.map.begin(), alpha.map.end());
        r.fail(count == 0 ? "z-kernel:existence" : "z-kernel:uniqueness", std::move(wit));
        return r;
      }
    }
  }
  return r;
}

/// c is a 𝒵-cokernel of f: c·f ∈ 𝒩, and each β : B → W with β·f ∈ 𝒩 factors
/// uniquely through c, for W over `probes`.
inline Report verify_z_cokernel(const VHom& c, const VHom& f, const std::vector<VGroupRef>& probes) {
  Report r;
  if (!(*f.cod == *c.dom)) throw StructuralError("z-cokernel: arrows are not composable");
  if (!n_membership_via_image(compose(f, c))) r.fail("z-cokernel:composite-in-N", {});
  for (std::size_t w = 0; w < probes.size(); ++w) {
    std::vector<VHom> through = enumerate_homs(c.cod, probes[w]);
    for (const VHom& beta : enumerate_homs(f.cod, probes[w])) {
      if (!n_membership_via_image(compose(f, beta))) continue;
      std::size_t count = 0;
      for (const VHom& psi : through)
        if (compose(c, psi).map == beta.map) ++count;
      if (count != 1) {
        std::vector<std::int64_t> wit{static_cast<std::int64_t>(w)};
        wit.insert(wit.end(), beta.map.begin(), beta.map.end());
        r.fail(count == 0 ? "z-cokernel:existence" : "z-cokernel:uniqueness", std::move(wit));
        return r;
      }
    }
  }
  return r;
}

struct PretorsionDecomposition {
  VGroupRef object;
  VGroupRef symmetric_part;  // (X, â)
  VHom comparison;           // 1_X : (X, â) → (X, a)
  Quotient quotient;         // (X/N_X, ā) with η_X
  Report report;
};

/// (X, â) → (X, a) ↠ (X/N_X, ā) with both 𝒵-universal properties checked
/// over `probes`, plus the check that every map from a symmetric probe to
/// a separated probe lies in 𝒩.
inline PretorsionDecomposition pretorsion_decompose(const VGroupRef& g, const std::vector<VGroupRef>& probes) {
  VGroupRef sym = symmetric_coreflect(*g);
  std::vector<Elem> id(g->order());
  for (Elem x = 0; x < id.size(); ++x) id[x] = x;
  VHom comparison(sym, g, std::move(id));
  Quotient quo = final_quotient(g, torsion_part(*g));

  Report r;
  if (!is_separated(*quo.object)) r.fail("quotient-separated", {});
  if (!leq(sym->structure(), g->structure())) r.fail("symmetric-part-below", {});
  r.absorb(verify_z_kernel(comparison, quo.projection, probes));
  r.absorb(verify_z_cokernel(quo.projection, comparison, probes));
  for (const VGroupRef& t : probes) {
    if (!is_symmetric(*t)) continue;
    for (const VGroupRef& f : probes) {
      if (!is_separated(*f)) continue;
      for (const VHom& h : enumerate_homs(t, f)) {
        if (!n_membership_via_image(h)) {
          r.fail("hom(sym,sep)-in-N", std::vector<std::int64_t>(h.map.begin(), h.map.end()));
        }
      }
    }
  }
  return {g, sym, std::move(comparison), std::move(quo), std::move(r)};
}

inline PretorsionDecomposition pretorsion_decompose(const VGroupRef& g) {
  return pretorsion_decompose(g, probe_objects(*g));
}

}  // namespace vgrp
