#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vgrp/descent.hpp"
#include "vgrp/error.hpp"
#include "vgrp/report.hpp"
#include "vgrp/torsion.hpp"
#include "vgrp/vgroup.hpp"

namespace vgrp {

inline constexpr std::size_t kDefaultWindow = 3;

struct MorphismClassReport {
  bool in_E = false;
  bool in_M = false;
  bool in_E_prime = false;
  bool in_M_star = false;
  /// Failed sub-conditions of the characterizations, as witnesses.
  Report witnesses;
  /// One line per class stating both routes' verdicts.
  std::vector<std::string> cross_checks;
};

enum class FactorizationSystem { EM, ML };

struct Factorization {
  VHom e;
  VGroupRef middle;
  VHom m;
  FactorizationSystem system;
};

struct ClassifyOptions {
  std::size_t window = kDefaultWindow;
  /// Also pull back along every map from a probe object into the codomain
  /// when testing E′ by its definition.
  bool probe_pullbacks = true;
};

namespace detail {

inline std::size_t pair_index(const PullbackCone& p, Elem x, Elem y) {
  auto it = std::lower_bound(p.pairs.begin(), p.pairs.end(), std::pair{x, y});
  if (it == p.pairs.end() || *it != std::pair{x, y}) throw TheoremCheckFailure("pair missing from pullback");
  return static_cast<std::size_t>(it - p.pairs.begin());
}

/// F(f) is an isomorphism.
inline bool inverted_by_reflector(const VHom& f) { return is_iso(reflect_hom(f)); }

/// The naturality square of the unit at f is a pullback: the comparison
/// X → X/N_X ×_{Y/N_Y} Y is an isomorphism.
inline bool unit_square_is_pullback(const VHom& f) {
  Quotient rx = reflect(f.dom);
  Quotient ry = reflect(f.cod);
  PullbackCone p = pullback(reflect_hom(f, rx, ry), ry.projection);
  std::vector<Elem> cmp(f.dom->order());
  for (Elem x = 0; x < cmp.size(); ++x) cmp[x] = pair_index(p, rx.projection(x), f(x));
  return is_iso(VHom(f.dom, p.object, std::move(cmp)));
}

/// Pullback of f : X → Y along the cover ℤ × Y → Y, seen on the window
/// {−n..n} × X. Elements are (z, x); the map to the cover is (z, f x).
struct CoverPullback {
  LazyVGroup cover;
  const VHom& f;
  std::vector<std::pair<std::int64_t, Elem>> elems;

  CoverPullback(const VHom& g, std::size_t n) : cover(g.cod), f(g) {
    const auto r = static_cast<std::int64_t>(n);
    for (std::int64_t z = -r; z <= r; ++z)
      for (Elem x = 0; x < f.dom->order(); ++x) elems.emplace_back(z, x);
  }

  [[nodiscard]] CoverElem image(std::size_t i) const { return {elems[i].first, f(elems[i].second)}; }

  [[nodiscard]] Value c(std::size_t i, std::size_t j) const {
    return f.dom->q().meet(cover.b(image(i), image(j)), f.dom->a(elems[i].second, elems[j].second));
  }

  /// i − j lies in N_P. Both carry the same z, otherwise it cannot.
  [[nodiscard]] bool related(std::size_t i, std::size_t j, const std::vector<bool>& in_n) const {
    if (elems[i].first != elems[j].first) return false;
    const Elem d = f.dom->group().diff(elems[i].second, elems[j].second);
    return in_n[index(0, d)];
  }

  [[nodiscard]] std::size_t index(std::int64_t z, Elem x) const {
    const auto r = static_cast<std::int64_t>(elems.size() / f.dom->order() / 2);
    return static_cast<std::size_t>(z + r) * f.dom->order() + x;
  }

  /// N_P on the band z = 0, where all of it lives.
  [[nodiscard]] std::vector<bool> torsion() const {
    const Quantale& q = f.dom->q();
    std::vector<bool> in_n(elems.size(), false);
    const std::size_t zero = index(0, f.dom->group().identity());
    for (std::size_t i = 0; i < elems.size(); ++i)
      in_n[i] = q.leq(q.unit(), c(zero, i)) && q.leq(q.unit(), c(i, zero));
    return in_n;
  }

  /// ⋁ c over the N_P-classes of i and j, which stay inside their bands.
  [[nodiscard]] Value class_join(std::size_t i, std::size_t j, const std::vector<bool>& in_n) const {
    Value acc = f.dom->q().bottom();
    const std::size_t order = f.dom->order();
    const std::size_t bi = i - i % order;
    const std::size_t bj = j - j % order;
    for (std::size_t u = bi; u < bi + order; ++u) {
      if (!related(u, i, in_n)) continue;
      for (std::size_t v = bj; v < bj + order; ++v)
        if (related(v, j, in_n)) acc = f.dom->q().join(acc, c(u, v));
    }
    return acc;
  }
};

/// The pulled-back map P → ℤ × Y is inverted by the reflector.
inline bool cover_pullback_in_E(const VHom& f, std::size_t n) {
  if (!is_surjective(f.map, f.cod->order())) return false;
  CoverPullback p(f, n);
  const std::vector<bool> in_n = p.torsion();
  const std::size_t size = p.elems.size();
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (p.image(i) == p.image(j) && !p.related(i, j, in_n)) return false;
  // Classes are now exactly the fibres, so the quotient structure must be
  // the cover's structure on images.
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (p.class_join(i, j, in_n) != p.cover.b(p.image(i), p.image(j))) return false;
  return true;
}

/// The pulled-back map P → ℤ × Y has a pullback unit square. The cover is
/// separated, so that square's lower edge is an identity and the test is
/// that P → P/N_P ×_{ℤ×Y} (ℤ×Y) is bijective and structure-reflecting.
inline bool cover_pullback_in_M(const VHom& f, std::size_t n) {
  CoverPullback p(f, n);
  const std::vector<bool> in_n = p.torsion();
  const std::size_t size = p.elems.size();
  const Quantale& q = f.dom->q();
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (i != j && p.related(i, j, in_n) && p.image(i) == p.image(j)) return false;
      if (p.c(i, j) != q.meet(p.class_join(i, j, in_n), p.cover.b(p.image(i), p.image(j)))) return false;
    }
  }
  return true;
}

/// Every pullback of f along a map from a probe object into Y is in E.
inline bool probe_pullbacks_in_E(const VHom& f) {
  for (const VGroupRef& w : probe_objects(*f.cod)) {
    for (const VHom& g : enumerate_homs(w, f.cod)) {
      PullbackCone p = pullback(f, g);
      if (!inverted_by_reflector(p.proj2)) return false;
    }
  }
  return true;
}

inline void agree(MorphismClassReport& r, const char* cls, bool definition, bool characterization) {
  r.cross_checks.push_back(std::string(cls) + ": definition=" + (definition ? "true" : "false") +
                           " characterization=" + (characterization ? "true" : "false"));
  if (definition != characterization) {
    throw TheoremCheckFailure(std::string("class ") + cls + ": definition and characterization disagree");
  }
}

}  // namespace detail

/// Membership in E, M, E′ and M*, each computed from the definition and from
/// the characterization; any disagreement throws TheoremCheckFailure.
inline MorphismClassReport classify_morphism(const VHom& f, const ClassifyOptions& opt = {}) {
  detail::require_integral(f.dom->q(), "classify_morphism");
  if (!validate_hom(f).ok()) throw PreconditionError("classify_morphism: not a V-homomorphism");
  const Quantale& q = f.dom->q();
  const VGroup& x = *f.dom;
  const VGroup& y = *f.cod;
  MorphismClassReport r;

  const Subset nx = torsion_part(x);
  const Subset ny = torsion_part(y);
  Quotient ry = reflect(f.cod);

  // E: (a) f⁻¹(N_Y) = N_X, (b) ã = b̃ ∧ a, (c) η_Y·f regular epi.
  std::vector<std::int64_t> wa, wb;
  for (Elem e = 0; e < x.order() && wa.empty(); ++e)
    if (contains(ny, f(e)) != contains(nx, e)) wa = {static_cast<std::int64_t>(e)};
  for (Elem n1 : nx)
    for (Elem n2 : nx)
      if (wb.empty() && x.a(n1, n2) != q.meet(y.a(f(n1), f(n2)), x.a(n1, n2))) wb = {std::int64_t(n1), std::int64_t(n2)};
  const bool ea = wa.empty();
  const bool eb = wb.empty();
  const HomClass ec = classify_hom(compose(f, ry.projection));
  if (!ea) r.witnesses.fail("E:preimage-of-torsion", wa);
  if (!eb) r.witnesses.fail("E:torsion-structure", wb);
  if (!ec.regular_epi) r.witnesses.fail("E:unit-composite-regular-epi", {});
  const bool e_char = ea && eb && ec.regular_epi;
  const bool e_def = detail::inverted_by_reflector(f);
  detail::agree(r, "E", e_def, e_char);
  r.in_E = e_def;

  // M: φ : N_X → N_Y bijective and a = b ∧ ā.
  // Witness: two torsion elements with one image, an element outside the
  // image, or the element missing from N_Y.
  std::vector<std::int64_t> wphi;
  for (std::size_t i = 0; i < nx.size() && wphi.empty(); ++i) {
    if (!contains(ny, f(nx[i]))) wphi = {std::int64_t(nx[i])};
    for (std::size_t j = 0; j < i && wphi.empty(); ++j)
      if (f(nx[i]) == f(nx[j])) wphi = {std::int64_t(nx[j]), std::int64_t(nx[i])};
  }
  for (Elem m : ny) {
    if (!wphi.empty()) break;
    bool hit = false;
    for (Elem n : nx) hit = hit || f(n) == m;
    if (!hit) wphi = {std::int64_t(m)};
  }
  const bool phi_bijective = wphi.empty();
  Quotient rx = reflect(f.dom);
  std::vector<std::int64_t> wmeet;
  for (Elem u = 0; u < x.order(); ++u)
    for (Elem v = 0; v < x.order(); ++v)
      if (wmeet.empty() && x.a(u, v) != q.meet(y.a(f(u), f(v)), rx.object->a(rx.projection(u), rx.projection(v))))
        wmeet = {std::int64_t(u), std::int64_t(v)};
  const bool a_meet = wmeet.empty();
  if (!phi_bijective) r.witnesses.fail("M:torsion-restriction-bijective", wphi);
  if (!a_meet) r.witnesses.fail("M:structure-is-meet", wmeet);
  const bool m_char = phi_bijective && a_meet;
  const bool m_def = detail::unit_square_is_pullback(f);
  detail::agree(r, "M", m_def, m_char);
  r.in_M = m_def;

  // E′: normal epi with indiscrete kernel, against E-stability under pullback.
  const HomClass fc = classify_hom(f);
  const Subobject k = kernel(f);
  std::vector<std::int64_t> wind, wsep;
  for (Elem u = 0; u < k.object->order(); ++u)
    for (Elem v = 0; v < k.object->order(); ++v) {
      const auto pair = std::vector<std::int64_t>{std::int64_t(k.inclusion(u)), std::int64_t(k.inclusion(v))};
      if (wind.empty() && k.object->a(u, v) != q.top()) wind = pair;
      if (wsep.empty() && u != v && q.leq(q.unit(), k.object->a(u, v)) && q.leq(q.unit(), k.object->a(v, u))) wsep = pair;
    }
  const bool kernel_indiscrete = wind.empty();
  if (!fc.regular_epi) r.witnesses.fail("E':normal-epi", {});
  if (!kernel_indiscrete) r.witnesses.fail("E':kernel-indiscrete", wind);
  const bool ep_char = fc.regular_epi && kernel_indiscrete;
  bool ep_def = e_def && detail::cover_pullback_in_E(f, opt.window);
  if (ep_def && opt.probe_pullbacks) ep_def = detail::probe_pullbacks_in_E(f);
  detail::agree(r, "E'", ep_def, ep_char);
  r.in_E_prime = ep_def;

  // M*: separated kernel, against membership in M after pulling back along
  // the descent cover.
  const bool ms_char = is_separated(*k.object);
  if (ms_char != wsep.empty()) throw TheoremCheckFailure("classify_morphism: separation witness search disagrees");
  if (!ms_char) r.witnesses.fail("M*:kernel-separated", wsep);
  const bool ms_def = detail::cover_pullback_in_M(f, opt.window);
  detail::agree(r, "M*", ms_def, ms_char);
  r.in_M_star = ms_def;
  return r;
}

/// Kernel separated. This is also the locally semisimple covering predicate.
inline bool is_covering(const VHom& f) {
  detail::require_integral(f.dom->q(), "is_covering");
  return is_separated(*kernel(f).object);
}

namespace detail {

inline void post_verify(const Factorization& fz, const VHom& f, bool ml, const ClassifyOptions& opt) {
  const char* sys = ml ? "monotone-light" : "reflective";
  if (!validate_hom(fz.e).ok() || !validate_hom(fz.m).ok()) {
    throw TheoremCheckFailure(std::string(sys) + " factorization: a factor is not a V-homomorphism");
  }
  if (compose(fz.e, fz.m).map != f.map) {
    throw TheoremCheckFailure(std::string(sys) + " factorization: m after e differs from f");
  }
  MorphismClassReport ce = classify_morphism(fz.e, opt);
  MorphismClassReport cm = classify_morphism(fz.m, opt);
  if (ml ? !(ce.in_E_prime && cm.in_M_star) : !(ce.in_E && cm.in_M)) {
    throw TheoremCheckFailure(std::string(sys) + " factorization: factors are not in the expected classes");
  }
}

}  // namespace detail

/// f = m·e with m the pullback of F(f) along η_Y and e the comparison.
inline Factorization em_factorize(const VHom& f, const ClassifyOptions& opt = {}) {
  detail::require_integral(f.dom->q(), "em_factorize");
  Quotient rx = reflect(f.dom);
  Quotient ry = reflect(f.cod);
  PullbackCone p = pullback(reflect_hom(f, rx, ry), ry.projection);
  std::vector<Elem> e(f.dom->order());
  for (Elem x = 0; x < e.size(); ++x) e[x] = detail::pair_index(p, rx.projection(x), f(x));
  Factorization fz{VHom(f.dom, p.object, std::move(e)), p.object, p.proj2, FactorizationSystem::EM};
  detail::post_verify(fz, f, false, opt);
  return fz;
}

/// f = m·e with e the quotient of X by the torsion part of Ker f.
inline Factorization ml_factorize(const VHom& f, const ClassifyOptions& opt = {}) {
  detail::require_integral(f.dom->q(), "ml_factorize");
  Subobject k = kernel(f);
  Subset n;
  for (Elem i : torsion_part(*k.object)) n.push_back(k.inclusion(i));
  std::sort(n.begin(), n.end());
  if (!is_normal(f.dom->group(), n)) throw TheoremCheckFailure("torsion part of the kernel is not normal in the domain");
  Quotient quo = final_quotient(f.dom, n);
  std::vector<Elem> m(quo.object->order(), 0);
  for (Elem x = 0; x < f.dom->order(); ++x) m[quo.projection(x)] = f(x);
  Factorization fz{quo.projection, quo.object, VHom(quo.object, f.cod, std::move(m)), FactorizationSystem::ML};
  detail::post_verify(fz, f, true, opt);
  return fz;
}

}  // namespace vgrp
