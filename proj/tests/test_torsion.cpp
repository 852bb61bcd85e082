#include <gtest/gtest.h>

#include <vector>

#include "oracle.hpp"
#include "support.hpp"
#include "vgrp/battery.hpp"
#include "vgrp/torsion.hpp"

using namespace vgrp;

namespace {

std::vector<VGroupRef> objects_over(const QuantalePtr& q, std::size_t max_order = 4) {
  std::vector<VGroupRef> out;
  for (const auto& g : {trivial_group(), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_group()})
    if (g.order() <= max_order)
      for (VGroup& x : enumerate_structures(g, q)) out.push_back(share(std::move(x)));
  return out;
}

}  // namespace

TEST(TorsionPart, Examples) {
  auto q = boolean_quantale();
  auto ind = share(indiscrete_vgroup(cyclic_group(4), q));
  EXPECT_EQ(torsion_part(*ind), (Subset{0, 1, 2, 3}));
  auto disc = share(discrete_vgroup(cyclic_group(4), q));
  EXPECT_EQ(torsion_part(*disc), Subset{0});
  EXPECT_EQ(torsion_part(*support::z4_boolean()), (Subset{0, 2}));
}

TEST(TorsionPart, AgreesWithOracleAndIsNormal) {
  for (const auto& q : {boolean_quantale(), lawvere_chain(2), ultrametric_chain(3)})
    for (const auto& g : objects_over(q)) {
      Subset n = torsion_part(*g);
      EXPECT_EQ(n, oracle::torsion_part(support::oracle_of(*q), support::mat_of(*g)));
      EXPECT_TRUE(is_normal(g->group(), n));
    }
}

TEST(Decompose, Z4Example) {
  TorsionDecomposition d = decompose(support::z4_boolean());
  EXPECT_TRUE(d.report.ok());
  EXPECT_EQ(d.torsion.inclusion.map, (Subset{0, 2}));
  EXPECT_TRUE(is_indiscrete(*d.torsion.object));
  EXPECT_EQ(d.quotient.object->order(), 2u);
  EXPECT_TRUE(is_discrete(*d.quotient.object));
}

TEST(Decompose, Extremes) {
  auto q = lawvere_chain(2);
  auto sep = support::z4_lawvere();
  TorsionDecomposition ds = decompose(sep);
  EXPECT_EQ(ds.torsion.object->order(), 1u);
  EXPECT_TRUE(is_iso(ds.quotient.projection));
  auto ind = share(indiscrete_vgroup(cyclic_group(3), q));
  TorsionDecomposition di = decompose(ind);
  EXPECT_TRUE(is_iso(di.torsion.inclusion));
  EXPECT_EQ(di.quotient.object->order(), 1u);
}

TEST(Decompose, StructureEquationsAgainstOracle) {
  for (const auto& q : {boolean_quantale(), lawvere_chain(2), ultrametric_chain(3)}) {
    const oracle::Q o = support::oracle_of(*q);
    for (const auto& g : objects_over(q)) {
      TorsionDecomposition d = decompose(g);
      ASSERT_TRUE(d.report.ok());
      EXPECT_TRUE(is_indiscrete(*d.torsion.object));
      EXPECT_TRUE(is_separated(*d.quotient.object));
      const oracle::Mat a = support::mat_of(*g);
      const oracle::Mat fin =
          oracle::final_structure(o, a, d.quotient.projection.map, d.quotient.object->order());
      EXPECT_EQ(support::mat_of(*d.quotient.object), fin);
      for (Elem i = 0; i < d.torsion.object->order(); ++i)
        for (Elem j = 0; j < d.torsion.object->order(); ++j)
          EXPECT_EQ(d.torsion.object->a(i, j).index, a[d.torsion.inclusion(i)][d.torsion.inclusion(j)]);
    }
  }
}

TEST(Decompose, NonintegralIsPrecondition) {
  auto g = share(discrete_vgroup(cyclic_group(2), nonintegral_chain()));
  EXPECT_THROW(decompose(g), PreconditionError);
}

TEST(Decompose, UniqueAmongAllSplittings) {
  for (const auto& q : {boolean_quantale(), lawvere_chain(2)})
    for (const auto& g : objects_over(q)) {
      std::vector<Subset> s = torsion_splittings(g);
      ASSERT_EQ(s.size(), 1u);
      EXPECT_EQ(s[0], torsion_part(*g));
    }
}

TEST(HomVanishing, IndiscreteToSeparatedIsZero) {
  for (const auto& q : {boolean_quantale(), lawvere_chain(2)}) {
    auto objs = objects_over(q);
    for (const auto& t : objs) {
      if (!is_indiscrete(*t)) continue;
      for (const auto& f : objs) {
        if (!is_separated(*f)) continue;
        auto homs = enumerate_homs(t, f);
        ASSERT_EQ(homs.size(), 1u);
        EXPECT_EQ(homs[0].map, zero_hom(t, f).map);
      }
    }
  }
}

TEST(Reflector, Examples) {
  auto sep = support::z4_lawvere();
  EXPECT_TRUE(is_iso(reflect(sep).projection));
  auto ind = share(indiscrete_vgroup(cyclic_group(4), boolean_quantale()));
  EXPECT_TRUE(is_iso(coreflect(ind).inclusion));
  Quotient r = reflect(support::z4_boolean());
  EXPECT_TRUE(isomorphic(*r.object, *support::z2_discrete()));
}

TEST(Reflector, NaturalityOnQ) {
  VHom q = support::q_map();
  VHom fq = reflect_hom(q);
  EXPECT_TRUE(is_iso(fq));
  EXPECT_EQ(compose(reflect(q.dom).projection, fq).map, compose(q, reflect(q.cod).projection).map);
  VHom tq = coreflect_hom(q);
  EXPECT_EQ(tq.cod->order(), 1u);
}

TEST(SymmetricCoreflect, Examples) {
  auto sym = support::z4_boolean();
  EXPECT_EQ(symmetric_coreflect(*sym)->structure(), sym->structure());
  auto ind = share(indiscrete_vgroup(cyclic_group(3), lawvere_chain(2)));
  EXPECT_TRUE(is_indiscrete(*symmetric_coreflect(*ind)));
  auto l = support::z4_lawvere();
  auto hat = symmetric_coreflect(*l);
  EXPECT_EQ(hat->structure(), support::from_delta(cyclic_group(4), lawvere_chain(2), {"0", "2", "2", "2"})->structure());
}

TEST(SymmetricCoreflect, GreatestSymmetricBelow) {
  for (const auto& q : {boolean_quantale(), lawvere_chain(2), lawvere_chain(3)})
    for (const auto& g : objects_over(q)) {
      auto hat = symmetric_coreflect(*g);
      EXPECT_TRUE(is_symmetric(*hat));
      EXPECT_TRUE(leq(hat->structure(), g->structure()));
      for (const VGroup& s : enumerate_structures(g->group(), q))
        if (is_symmetric(s) && leq(s.structure(), g->structure())) { EXPECT_TRUE(leq(s.structure(), hat->structure())); }
    }
}

TEST(ZMembership, Examples) {
  EXPECT_TRUE(z_membership(*support::z2_discrete()));
  EXPECT_FALSE(z_membership(*support::z2_indiscrete()));
  auto l = support::from_delta(cyclic_group(2), lawvere_chain(2), {"0", "1"});
  EXPECT_TRUE(z_membership(*l));
}

TEST(NMembership, Examples) {
  auto z4 = support::z4_lawvere();
  auto triv = share(discrete_vgroup(trivial_group(), lawvere_chain(2)));
  EXPECT_TRUE(n_membership_via_image(zero_hom(z4, triv)));
  auto ind = support::z2_indiscrete();
  EXPECT_FALSE(n_membership_via_image(identity_hom(ind)));
  for (const auto& q : {boolean_quantale(), lawvere_chain(2)}) {
    auto objs = objects_over(q, 3);
    for (const auto& t : objs) {
      if (!is_symmetric(*t)) continue;
      for (const auto& f : objs) {
        if (!is_separated(*f)) continue;
        for (const VHom& h : enumerate_homs(t, f)) EXPECT_TRUE(n_membership_via_image(h));
      }
    }
  }
}

TEST(ZKernels, ComparisonAndUnit) {
  for (const auto& g : {support::z4_lawvere(), support::z4_boolean()}) {
    auto probes = probe_objects(*g);
    VGroupRef sym = symmetric_coreflect(*g);
    VHom comparison(sym, g, {0, 1, 2, 3});
    Quotient eta = reflect(g);
    EXPECT_TRUE(verify_z_kernel(comparison, eta.projection, probes).ok());
    EXPECT_TRUE(verify_z_cokernel(eta.projection, comparison, probes).ok());
  }
}

TEST(ZKernels, ZeroFromTrivialIsNotAZKernel) {
  auto g = support::z4_boolean();
  auto triv = share(discrete_vgroup(trivial_group(), boolean_quantale()));
  Report r = verify_z_kernel(zero_hom(triv, g), reflect(g).projection, probe_objects(*g));
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(r.violates("z-kernel:existence") || r.violates("z-kernel:uniqueness"));
  EXPECT_FALSE(r.violations.front().witness.empty());
}

TEST(Pretorsion, Examples) {
  PretorsionDecomposition s = pretorsion_decompose(support::z4_boolean());
  EXPECT_TRUE(s.report.ok());
  EXPECT_EQ(s.comparison.map, (std::vector<Elem>{0, 1, 2, 3}));
  EXPECT_EQ(s.symmetric_part->structure(), s.object->structure());

  PretorsionDecomposition l = pretorsion_decompose(support::z4_lawvere());
  EXPECT_TRUE(l.report.ok());
  EXPECT_TRUE(is_iso(l.quotient.projection));
  EXPECT_EQ(l.symmetric_part->a(0, 1).index, 2);
}

TEST(Pretorsion, AllSmallObjects) {
  for (const auto& q : {boolean_quantale(), lawvere_chain(2)})
    for (const auto& g : objects_over(q, 3)) EXPECT_TRUE(pretorsion_decompose(g).report.ok());
}

TEST(Pretorsion, NonintegralChain) {
  auto q = nonintegral_chain();
  for (const auto& grp : {trivial_group(), cyclic_group(2), cyclic_group(3)})
    for (VGroup& x : enumerate_structures(grp, q)) {
      PretorsionDecomposition d = pretorsion_decompose(share(std::move(x)));
      EXPECT_TRUE(d.report.ok());
    }
}
