#include <gtest/gtest.h>

#include <vector>

#include "oracle.hpp"
#include "support.hpp"
#include "vgrp/builders.hpp"

using namespace vgrp;

namespace {

std::size_t count_over(const Suite& s, const Quantale& q, const FiniteGroup& g) {
  std::size_t n = 0;
  for (std::size_t i : s.objects_over(q))
    if (s.objects[i]->group() == g) ++n;
  return n;
}

}  // namespace

TEST(Suite, SmokeCounts) {
  Suite s = standard_suite(SuiteLevel::smoke);
  ASSERT_EQ(s.quantales.size(), 2u);
  const Quantale& b = *s.quantales[0];
  const Quantale& l = *s.quantales[1];
  EXPECT_EQ(count_over(s, b, cyclic_group(2)), 2u);
  EXPECT_EQ(count_over(s, l, cyclic_group(2)), 3u);
  EXPECT_EQ(count_over(s, b, trivial_group()), 1u);
  EXPECT_EQ(count_over(s, l, trivial_group()), 1u);
  for (const auto& q : s.quantales)
    for (const auto& g : s.groups)
      EXPECT_EQ(count_over(s, *q, g), oracle::structures(support::oracle_of(*q), support::table_of(g)).size());
  EXPECT_TRUE(s.notes.empty());
}

TEST(Suite, EveryObjectValidAndHomSetsComplete) {
  Suite s = standard_suite(SuiteLevel::smoke);
  for (const auto& x : s.objects) EXPECT_TRUE(validate_vgroup(*x).ok());
  std::size_t pairs = 0;
  for (const auto& q : s.quantales) pairs += s.objects_over(*q).size() * s.objects_over(*q).size();
  EXPECT_EQ(s.morphisms.size(), pairs);
  for (const HomSet& h : s.morphisms) {
    EXPECT_FALSE(h.truncated);
    for (const VHom& f : h.homs) EXPECT_TRUE(validate_hom(f).ok());
  }
}

TEST(Suite, Deterministic) {
  Suite a = standard_suite(SuiteLevel::smoke);
  Suite b = standard_suite(SuiteLevel::smoke);
  ASSERT_EQ(a.objects.size(), b.objects.size());
  for (std::size_t i = 0; i < a.objects.size(); ++i) EXPECT_EQ(*a.objects[i], *b.objects[i]);
  ASSERT_EQ(a.morphisms.size(), b.morphisms.size());
  for (std::size_t i = 0; i < a.morphisms.size(); ++i) {
    ASSERT_EQ(a.morphisms[i].homs.size(), b.morphisms[i].homs.size());
    for (std::size_t j = 0; j < a.morphisms[i].homs.size(); ++j)
      EXPECT_EQ(a.morphisms[i].homs[j].map, b.morphisms[i].homs[j].map);
  }
}

TEST(Suite, BooleanObjectsAreSymmetric) {
  Suite s = standard_suite(SuiteLevel::full, false);
  for (std::size_t i : s.objects_over(*boolean_quantale())) EXPECT_TRUE(is_symmetric(*s.objects[i]));
}

TEST(Suite, FullLevelGroupsAndQuantales) {
  Suite s = standard_suite(SuiteLevel::full, false);
  EXPECT_EQ(s.quantales.size(), 4u);
  EXPECT_EQ(s.groups.size(), 8u);
  bool has_s3 = false;
  for (const auto& g : s.groups) has_s3 = has_s3 || !g.is_abelian();
  EXPECT_TRUE(has_s3);
}

TEST(Suite, TruncationIsExplicit) {
  Suite s = standard_suite(SuiteLevel::smoke, true, 20);
  bool truncated = false;
  for (const HomSet& h : s.morphisms)
    if (h.truncated) {
      truncated = true;
      EXPECT_TRUE(h.homs.empty());
    }
  EXPECT_TRUE(truncated);
  EXPECT_FALSE(s.objects.empty());
}
