#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vgrp/builders.hpp"
#include "vgrp/descent.hpp"
#include "vgrp/error.hpp"
#include "vgrp/factorization.hpp"
#include "vgrp/torsion.hpp"
#include "vgrp/vgroup.hpp"

namespace vgrp {

/// Tally for one property over a suite.
struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> samples;  // first few failure descriptions
  std::vector<std::string> notes;

  explicit CheckResult(std::string n) : name(std::move(n)) {}

  [[nodiscard]] bool ok() const noexcept { return failures == 0; }

  void pass() { ++cases; }
  void fail(std::string what) {
    ++cases;
    ++failures;
    if (samples.size() < 5) samples.push_back(std::move(what));
  }
  void expect(bool cond, const std::string& what) { cond ? pass() : fail(what); }

  /// Runs `body`, turning a theorem-check failure into a counted failure.
  void guard(const std::string& what, const std::function<void()>& body) {
    try {
      body();
    } catch (const TheoremCheckFailure& e) {
      fail(what + ": " + e.what());
    }
  }
};

/// ⊥ < k < ⊤ with ⊥ absorbing, k the unit and ⊤⊗⊤ = ⊤. Not integral.
inline QuantalePtr nonintegral_chain() {
  QuantaleTables t;
  t.labels = {"bot", "k", "top"};
  t.leq = {{true, true, true}, {false, true, true}, {false, false, true}};
  t.tensor = {{0, 0, 0}, {0, 1, 2}, {0, 2, 2}};
  t.unit = 1;
  return Quantale::make(std::move(t));
}

/// Suite plus lookups shared by the checks.
class SuiteIndex {
 public:
  explicit SuiteIndex(const Suite& s) : suite_(s) {
    for (std::size_t i = 0; i < s.morphisms.size(); ++i) by_pair_[{s.morphisms[i].dom, s.morphisms[i].cod}] = i;
  }

  [[nodiscard]] const Suite& suite() const noexcept { return suite_; }

  [[nodiscard]] const HomSet* homs(std::size_t dom, std::size_t cod) const {
    auto it = by_pair_.find({dom, cod});
    return it == by_pair_.end() ? nullptr : &suite_.morphisms[it->second];
  }

  /// Calls `visit(f)` for every enumerated morphism of the suite.
  void each_hom(const std::function<void(const VHom&)>& visit) const {
    for (const HomSet& h : suite_.morphisms)
      for (const VHom& f : h.homs) visit(f);
  }

 private:
  const Suite& suite_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_pair_;
};

// --- quantale and V-group axioms -------------------------------------------------

inline CheckResult check_builtin_quantales(unsigned max_m = 4) {
  CheckResult r{"quantale-laws"};
  std::vector<QuantalePtr> qs{boolean_quantale(), nonintegral_chain()};
  for (unsigned m = 1; m <= max_m; ++m) {
    qs.push_back(lawvere_chain(m));
    qs.push_back(ultrametric_chain(m));
  }
  for (const QuantalePtr& q : qs) {
    r.expect(validate_quantale(q->tables()).ok(), q->name() + " fails its laws");
    for (std::size_t u = 0; u < q->size(); ++u)
      for (std::size_t u2 = 0; u2 < q->size(); ++u2)
        for (std::size_t v = 0; v < q->size(); ++v) {
          Value a = q->element(u), a2 = q->element(u2), b = q->element(v);
          if (q->leq(a, a2) && !q->leq(q->tensor(a, b), q->tensor(a2, b))) r.fail(q->name() + " tensor not monotone");
        }
  }
  return r;
}

/// (R)+(T)+shift against "+ is a V-functor" on every candidate delta.
inline CheckResult check_shift_agreement(const Suite& s) {
  CheckResult r{"shift-invariance-vs-functor"};
  std::size_t findings = 0;
  for (const QuantalePtr& q : s.quantales) {
    for (const FiniteGroup& g : s.groups) {
      r.guard(g.name() + " over " + q->name(), [&] {
        for_each_candidate_structure(g, q, [&](const VGroup&, const VGroupCheck& c) {
          if (!c.routes_agree()) ++findings;
          r.pass();
        });
      });
    }
  }
  if (findings > 0) {
    r.notes.push_back(std::to_string(findings) + " nonabelian candidates satisfy right shift-invariance but not the "
                                                 "V-functor condition");
  }
  return r;
}

// --- limits, colimits, normal-category lemmas ---------------------------------------

/// Regular epis are cokernels of their kernels; normal monos are kernels of
/// their cokernels.
inline CheckResult check_kernel_cokernel(const SuiteIndex& ix) {
  CheckResult r{"kernel-cokernel-round-trip"};
  ix.each_hom([&](const VHom& f) {
    r.guard("round trip", [&] {
      HomClass c = classify_hom(f);
      if (c.regular_epi) {
        Quotient q = cokernel(kernel(f).inclusion);
        std::vector<Elem> m(q.object->order(), 0);
        for (Elem x = 0; x < f.dom->order(); ++x) m[q.projection(x)] = f(x);
        r.expect(is_iso(VHom(q.object, f.cod, std::move(m))), "coker(ker f) is not the codomain");
      }
      if (c.normal_mono) {
        Quotient q = cokernel(f);
        Subobject k = kernel(q.projection);
        std::vector<Elem> m(f.dom->order());
        const std::vector<Elem>& inc = k.inclusion.map;
        for (Elem x = 0; x < m.size(); ++x)
          m[x] = static_cast<Elem>(std::find(inc.begin(), inc.end(), f(x)) - inc.begin());
        r.expect(is_iso(VHom(f.dom, k.object, std::move(m))), "ker(coker m) is not the domain");
      }
    });
  });
  return r;
}

inline CheckResult check_image_factorization(const SuiteIndex& ix) {
  CheckResult r{"image-factorization"};
  ix.each_hom([&](const VHom& f) {
    ImageFactorization fz = image_factorize(f);
    HomClass ce = classify_hom(fz.e);
    HomClass cm = classify_hom(fz.m);
    r.expect(compose(fz.e, fz.m).map == f.map && ce.regular_epi && cm.mono && validate_hom(fz.e).ok() &&
                 validate_hom(fz.m).ok(),
             "image factorization of a suite morphism");
  });
  return r;
}

/// Pulling a regular epi back along any map gives a regular epi.
inline CheckResult check_pullback_stability(const SuiteIndex& ix) {
  CheckResult r{"regular-epi-pullback-stability"};
  const Suite& s = ix.suite();
  for (const HomSet& hf : s.morphisms) {
    for (const VHom& f : hf.homs) {
      if (!classify_hom(f).regular_epi) continue;
      for (std::size_t w = 0; w < s.objects.size(); ++w) {
        const HomSet* hg = ix.homs(w, hf.cod);
        if (!hg) continue;
        for (const VHom& g : hg->homs) {
          PullbackCone p = pullback(f, g);
          r.expect(classify_hom(p.proj2).regular_epi, "pullback of a regular epi is not a regular epi");
        }
      }
    }
  }
  return r;
}

/// For a morphism of short exact sequences N ↪ X ↠ X/N over v : X → X',
/// the left square is a pullback iff the induced X/N → X'/N' is mono.
inline CheckResult check_normal_lemma(const SuiteIndex& ix) {
  CheckResult r{"ses-left-pullback-iff-right-mono"};
  ix.each_hom([&](const VHom& v) {
    const std::vector<Subset> ns = normal_subgroups(v.dom->group());
    const std::vector<Subset> ns2 = normal_subgroups(v.cod->group());
    for (const Subset& n : ns) {
      for (const Subset& n2 : ns2) {
        bool maps_in = true;
        for (Elem x : n) maps_in = maps_in && contains(n2, v(x));
        if (!maps_in) continue;
        r.guard("ses morphism", [&] {
          Subobject k = induced_subobject(v.dom, n);
          Subobject k2 = induced_subobject(v.cod, n2);
          Quotient q = final_quotient(v.dom, n);
          Quotient q2 = final_quotient(v.cod, n2);
          std::vector<Elem> wm(q.object->order(), 0);
          for (Elem x = 0; x < v.dom->order(); ++x) wm[q.projection(x)] = q2.projection(v(x));
          VHom w(q.object, q2.object, std::move(wm));
          if (!validate_hom(w).ok()) throw TheoremCheckFailure("induced map on quotients is not a V-homomorphism");

          PullbackCone p = pullback(v, k2.inclusion);
          std::vector<Elem> cmp(k.object->order());
          for (Elem i = 0; i < cmp.size(); ++i) {
            const Elem x = k.inclusion(i);
            const std::vector<Elem>& inc = k2.inclusion.map;
            const auto j = static_cast<Elem>(std::find(inc.begin(), inc.end(), v(x)) - inc.begin());
            cmp[i] = static_cast<Elem>(std::lower_bound(p.pairs.begin(), p.pairs.end(), std::pair{x, j}) -
                                       p.pairs.begin());
          }
          const bool left_pullback = is_iso(VHom(k.object, p.object, std::move(cmp)));
          const bool right_mono = is_injective(w.map, w.cod->order());
          r.expect(left_pullback == right_mono, "left square pullback and right vertical mono disagree");
        });
      }
    }
  });
  return r;
}

// --- torsion theory -------------------------------------------------------------

inline CheckResult check_torsion_decomposition(const Suite& s, std::size_t unique_up_to = 4) {
  CheckResult r{"torsion-decomposition"};
  for (const VGroupRef& g : s.objects) {
    if (!g->q().is_integral()) continue;
    r.guard(g->group().name(), [&] {
      TorsionDecomposition d = decompose(g);
      r.expect(d.report.ok() && is_indiscrete(*d.torsion.object) && is_separated(*d.quotient.object),
               "decomposition of " + g->group().name());
      if (g->order() <= unique_up_to) {
        std::vector<Subset> alt = torsion_splittings(g);
        r.expect(alt.size() == 1 && alt.front() == torsion_part(*g), "alternative splitting of " + g->group().name());
      }
    });
  }
  return r;
}

/// Maps from indiscrete to separated objects are all zero.
inline CheckResult check_hom_vanishing(const SuiteIndex& ix) {
  CheckResult r{"hom-vanishing"};
  for (const HomSet& h : ix.suite().morphisms) {
    const VGroup& t = *ix.suite().objects[h.dom];
    const VGroup& f = *ix.suite().objects[h.cod];
    if (!t.q().is_integral() || !is_indiscrete(t) || !is_separated(f)) continue;
    r.expect(h.homs.size() == 1 && h.homs.front().map == zero_hom(h.homs.front().dom, h.homs.front().cod).map,
             "nonzero map from indiscrete " + t.group().name() + " to separated " + f.group().name());
  }
  return r;
}

/// N_X is a normal subgroup over every quantale, integral or not.
inline CheckResult check_torsion_part_normal(const Suite& s, const std::vector<QuantalePtr>& extra) {
  CheckResult r{"torsion-part-normal"};
  auto one = [&](const VGroup& g) {
    r.guard(g.group().name(), [&] {
      torsion_part(g);
      r.pass();
    });
  };
  for (const VGroupRef& g : s.objects) one(*g);
  for (const QuantalePtr& q : extra)
    for (const FiniteGroup& grp : s.groups)
      if (grp.order() <= 4)
        for (const VGroup& g : enumerate_structures(grp, q)) one(g);
  return r;
}

inline CheckResult check_reflector_naturality(const SuiteIndex& ix) {
  CheckResult r{"reflector-coreflector-naturality"};
  ix.each_hom([&](const VHom& f) {
    if (!f.dom->q().is_integral()) return;
    r.guard("naturality", [&] {
      reflect_hom(f);
      coreflect_hom(f);
      r.pass();
    });
  });
  return r;
}

/// â is symmetric, below a, and above every symmetric structure below a.
inline CheckResult check_symmetric_coreflect(const Suite& s, std::size_t up_to = 4) {
  CheckResult r{"symmetric-coreflection-greatest"};
  for (const VGroupRef& g : s.objects) {
    if (g->order() > up_to) continue;
    r.guard(g->group().name(), [&] {
      VGroupRef sym = symmetric_coreflect(*g);
      bool ok = is_symmetric(*sym) && leq(sym->structure(), g->structure());
      for (const VGroup& c : enumerate_structures(g->group(), g->quantale()))
        if (is_symmetric(c) && leq(c.structure(), g->structure()) && !leq(c.structure(), sym->structure())) ok = false;
      r.expect(ok, "symmetric part of " + g->group().name());
    });
  }
  return r;
}

inline CheckResult check_pretorsion(const Suite& s) {
  CheckResult r{"pretorsion"};
  for (const VGroupRef& g : s.objects) {
    r.guard(g->group().name(), [&] {
      PretorsionDecomposition d = pretorsion_decompose(g);
      r.expect(d.report.ok(), "pretorsion decomposition of " + g->group().name() + " over " + g->q().name());
    });
  }
  return r;
}

/// Over the two-element quantale every finite V-group is symmetric.
inline CheckResult check_boolean_symmetric(const Suite& s) {
  CheckResult r{"boolean-objects-symmetric"};
  for (const VGroupRef& g : s.objects)
    if (g->q().size() == 2 && g->q().is_integral()) r.expect(is_symmetric(*g), g->group().name());
  return r;
}

// --- factorization systems --------------------------------------------------------

struct FactorizationChecks {
  CheckResult agreement{"class-definition-vs-characterization"};
  CheckResult implications{"class-implications"};
  CheckResult em{"em-factorize"};
  CheckResult ml{"ml-factorize"};
  CheckResult uniqueness{"factorization-uniqueness"};
  CheckResult covering{"covering-iff-kernel-separated"};
  CheckResult stability{"E'-pullback-stability"};
};

inline FactorizationChecks check_factorizations(const SuiteIndex& ix, const ClassifyOptions& opt = {}) {
  FactorizationChecks out;
  const Suite& s = ix.suite();
  std::vector<std::vector<std::optional<MorphismClassReport>>> cls(s.morphisms.size());
  for (std::size_t h = 0; h < s.morphisms.size(); ++h) {
    cls[h].resize(s.morphisms[h].homs.size());
    if (!s.objects[s.morphisms[h].dom]->q().is_integral()) continue;
    for (std::size_t i = 0; i < s.morphisms[h].homs.size(); ++i) {
      const VHom& f = s.morphisms[h].homs[i];
      out.agreement.guard("classify", [&] {
        cls[h][i] = classify_morphism(f, opt);
        out.agreement.pass();
      });
      if (!cls[h][i]) continue;
      const MorphismClassReport& c = *cls[h][i];
      out.implications.expect((!c.in_E_prime || c.in_E) && (!c.in_M || c.in_M_star), "E' => E or M => M* broken");
      out.covering.expect(is_covering(f) == c.in_M_star &&
                              is_covering(f) == is_separated(*kernel(f).object),
                          "covering predicate");
    }
  }

  for (std::size_t h = 0; h < s.morphisms.size(); ++h) {
    const HomSet& hs = s.morphisms[h];
    if (!s.objects[hs.dom]->q().is_integral()) continue;
    for (std::size_t i = 0; i < hs.homs.size(); ++i) {
      const VHom& f = hs.homs[i];
      std::optional<Factorization> em, ml;
      out.em.guard("em", [&] {
        em = em_factorize(f, opt);
        out.em.pass();
      });
      out.ml.guard("ml", [&] {
        ml = ml_factorize(f, opt);
        out.ml.pass();
      });
      if (!cls[h][i]) continue;

      // Any suite factorization with factors in the right classes has a
      // middle isomorphic to the computed one.
      for (std::size_t w : s.objects_over(f.dom->q())) {
        const HomSet* he = ix.homs(hs.dom, w);
        const HomSet* hm = ix.homs(w, hs.cod);
        if (!he || !hm) continue;
        const std::size_t ie = static_cast<std::size_t>(he - s.morphisms.data());
        const std::size_t im = static_cast<std::size_t>(hm - s.morphisms.data());
        for (std::size_t a = 0; a < he->homs.size(); ++a) {
          if (!cls[ie][a]) continue;
          for (std::size_t b = 0; b < hm->homs.size(); ++b) {
            if (!cls[im][b]) continue;
            if (compose(he->homs[a], hm->homs[b]).map != f.map) continue;
            if (em && cls[ie][a]->in_E && cls[im][b]->in_M) {
              out.uniqueness.expect(isomorphic(*s.objects[w], *em->middle), "EM middle not unique");
            }
            if (ml && cls[ie][a]->in_E_prime && cls[im][b]->in_M_star) {
              out.uniqueness.expect(isomorphic(*s.objects[w], *ml->middle), "ML middle not unique");
            }
          }
        }
      }

      // E′ maps stay in E under every suite pullback.
      if (cls[h][i]->in_E_prime) {
        for (std::size_t w : s.objects_over(f.dom->q())) {
          const HomSet* hg = ix.homs(w, hs.cod);
          if (!hg) continue;
          for (const VHom& g : hg->homs) {
            out.stability.guard("pullback", [&] {
              out.stability.expect(is_iso(reflect_hom(pullback(f, g).proj2)), "pullback of an E' map left E");
            });
          }
        }
      }
    }
  }
  return out;
}

// --- descent ---------------------------------------------------------------------

struct DescentChecks {
  CheckResult cover{"cover-window"};
  CheckResult eq{"eq-f"};
  CheckResult action{"covering-actions"};
};

inline DescentChecks check_descent(const SuiteIndex& ix, std::size_t min_radius = 1, std::size_t max_radius = 4) {
  DescentChecks out;
  const Suite& s = ix.suite();
  for (std::size_t o = 0; o < s.objects.size(); ++o) {
    const VGroupRef& g = s.objects[o];
    if (!g->q().is_integral()) continue;
    LazyVGroup l = descent_cover(g);
    for (std::size_t n = min_radius; n <= max_radius; ++n) {
      Report rep = verify_cover_window(l, n);
      out.cover.expect(rep.ok(), g->group().name() + " radius " + std::to_string(n) +
                                     (rep.ok() ? "" : ": " + rep.violations.front().law));
    }
    EqFData e = eq_f(l, 2);
    out.eq.expect(e.report.ok(), g->group().name() + (e.report.ok() ? "" : ": " + e.report.violations.front().law));
    for (std::size_t a : s.objects_over(g->q())) {
      const HomSet* h = ix.homs(a, o);
      if (!h) continue;
      for (const VHom& alpha : h->homs) {
        if (!is_covering(alpha)) continue;
        ActionData d = action_of_covering(alpha, l, 1);
        out.action.expect(d.report.ok(), "action " + (d.report.ok() ? "" : d.report.violations.front().law));
      }
    }
  }
  return out;
}

// --- whole battery ---------------------------------------------------------------

struct BatteryResult {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool ok() const {
    for (const CheckResult& c : checks)
      if (!c.ok()) return false;
    return true;
  }
};

inline BatteryResult run_battery(SuiteLevel level) {
  Suite s = standard_suite(level);
  SuiteIndex ix(s);
  BatteryResult b;
  b.checks.push_back(check_builtin_quantales());
  b.checks.push_back(check_shift_agreement(s));
  b.checks.push_back(check_kernel_cokernel(ix));
  b.checks.push_back(check_image_factorization(ix));
  b.checks.push_back(check_pullback_stability(ix));
  b.checks.push_back(check_normal_lemma(ix));
  b.checks.push_back(check_torsion_decomposition(s));
  b.checks.push_back(check_hom_vanishing(ix));
  b.checks.push_back(check_torsion_part_normal(s, {nonintegral_chain()}));
  b.checks.push_back(check_reflector_naturality(ix));
  b.checks.push_back(check_symmetric_coreflect(s));
  b.checks.push_back(check_pretorsion(s));
  b.checks.push_back(check_boolean_symmetric(s));
  FactorizationChecks fc = check_factorizations(ix);
  for (CheckResult* c : {&fc.agreement, &fc.implications, &fc.em, &fc.ml, &fc.uniqueness, &fc.covering, &fc.stability})
    b.checks.push_back(std::move(*c));
  DescentChecks dc = check_descent(ix);
  for (CheckResult* c : {&dc.cover, &dc.eq, &dc.action}) b.checks.push_back(std::move(*c));
  return b;
}

}  // namespace vgrp
