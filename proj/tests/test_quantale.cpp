#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "oracle.hpp"
#include "support.hpp"
#include "vgrp/battery.hpp"
#include "vgrp/quantale.hpp"

using namespace vgrp;

namespace {

QuantaleTables boolean_tables() { return builtin_tables({BuiltinSpec::Kind::boolean, 1}); }

void expect_only_builtin_laws(const QuantalePtr& q) {
  const oracle::Q o = support::oracle_of(*q);
  ASSERT_EQ(static_cast<int>(q->size()), o.size());
  for (int u = 0; u < o.size(); ++u)
    for (int v = 0; v < o.size(); ++v) {
      const Value a = q->element(u), b = q->element(v);
      EXPECT_EQ(q->leq(a, b), o.leq(u, v)) << q->name() << " leq " << u << "," << v;
      EXPECT_EQ(q->tensor(a, b).index, o.tensor(u, v)) << q->name() << " tensor " << u << "," << v;
      EXPECT_EQ(q->join(a, b).index, o.join(u, v)) << q->name();
      EXPECT_EQ(q->meet(a, b).index, o.meet(u, v)) << q->name();
    }
  EXPECT_EQ(q->unit().index, o.unit());
  EXPECT_EQ(q->top().index, o.top());
  EXPECT_EQ(q->bottom().index, o.bottom());
}

}  // namespace

TEST(Quantale, BooleanIsValid) {
  auto q = boolean_quantale();
  EXPECT_TRUE(validate_quantale(q->tables()).ok());
  EXPECT_EQ(q->size(), 2u);
  EXPECT_EQ(q->unit(), q->top());
  EXPECT_EQ(q->label(q->unit()), "top");
}

TEST(Quantale, BuiltinsMatchArithmetic) {
  expect_only_builtin_laws(boolean_quantale());
  for (unsigned m = 1; m <= 4; ++m) {
    expect_only_builtin_laws(lawvere_chain(m));
    expect_only_builtin_laws(ultrametric_chain(m));
  }
}

TEST(Quantale, TensorExamples) {
  auto l = lawvere_chain(2);
  EXPECT_EQ(l->label(l->tensor(*l->find("1"), *l->find("1"))), "2");
  auto u = ultrametric_chain(2);
  EXPECT_EQ(u->label(u->tensor(*u->find("1"), *u->find("2"))), "2");
}

TEST(Quantale, JoinExamples) {
  auto b = boolean_quantale();
  EXPECT_EQ(b->join(*b->find("bot"), *b->find("top")), b->top());
  auto l = lawvere_chain(2);
  EXPECT_EQ(l->label(l->join(*l->find("1"), *l->find("2"))), "1");
  for (const auto& q : {b, l, ultrametric_chain(3)}) EXPECT_EQ(q->join_all({}), q->bottom());
}

TEST(Quantale, Integrality) {
  EXPECT_TRUE(boolean_quantale()->is_integral());
  for (unsigned m = 1; m <= 4; ++m) {
    EXPECT_TRUE(lawvere_chain(m)->is_integral());
    EXPECT_TRUE(ultrametric_chain(m)->is_integral());
  }
  EXPECT_FALSE(nonintegral_chain()->is_integral());
}

TEST(Quantale, ThreeElementChainWithUnitBelowTopIsValid) {
  auto q = nonintegral_chain();
  EXPECT_TRUE(validate_quantale(q->tables()).ok());
  EXPECT_LT(q->unit(), q->top());
}

TEST(QuantaleCorrupt, BottomNotAnnihilating) {
  QuantaleTables t = boolean_tables();
  t.tensor[1][0] = 1;
  t.tensor[0][1] = 1;
  Report r = validate_quantale(t);
  const Violation* v = r.first("tensor:annihilates-bottom");
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->witness, std::vector<std::int64_t>{1});
  EXPECT_THROW(Quantale::make(t), Quantale::Invalid);
}

TEST(QuantaleCorrupt, UnitLaw) {
  QuantaleTables t = builtin_tables({BuiltinSpec::Kind::lawvere_chain, 2});
  t.unit = 1;
  Report r = validate_quantale(t);
  ASSERT_TRUE(r.violates("tensor:unit"));
  EXPECT_EQ(r.first("tensor:unit")->witness, std::vector<std::int64_t>{0});
}

TEST(QuantaleCorrupt, NotCommutative) {
  QuantaleTables t = builtin_tables({BuiltinSpec::Kind::ultrametric_chain, 3});
  t.tensor[1][2] = 3;
  Report r = validate_quantale(t);
  ASSERT_TRUE(r.violates("tensor:commutative"));
  EXPECT_EQ(r.first("tensor:commutative")->witness, (std::vector<std::int64_t>{1, 2}));
}

TEST(QuantaleCorrupt, NotAssociative) {
  // lawvere_chain(3) with 1⊗2 = 2: (1⊗1)⊗2 = 3 but 1⊗(1⊗2) = 2.
  QuantaleTables t = builtin_tables({BuiltinSpec::Kind::lawvere_chain, 3});
  t.tensor[1][2] = 2;
  t.tensor[2][1] = 2;
  Report r = validate_quantale(t);
  ASSERT_TRUE(r.violates("tensor:associative"));
  EXPECT_EQ(r.first("tensor:associative")->witness, (std::vector<std::int64_t>{1, 1, 2}));
  EXPECT_FALSE(r.violates("tensor:commutative"));
}

TEST(QuantaleCorrupt, NotAntisymmetric) {
  QuantaleTables t = boolean_tables();
  t.leq[1][0] = true;
  Report r = validate_quantale(t);
  ASSERT_TRUE(r.violates("order:antisymmetric"));
  EXPECT_EQ(r.first("order:antisymmetric")->witness, (std::vector<std::int64_t>{0, 1}));
}

TEST(QuantaleCorrupt, MissingJoin) {
  // bot below two incomparable atoms with nothing above them.
  QuantaleTables t;
  t.labels = {"bot", "a", "b"};
  t.leq = {{true, true, true}, {false, true, false}, {false, false, true}};
  t.tensor = {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}};
  t.unit = 1;
  Report r = validate_quantale(t);
  ASSERT_TRUE(r.violates("lattice:join"));
  EXPECT_EQ(r.first("lattice:join")->witness, (std::vector<std::int64_t>{1, 2}));
}

TEST(QuantaleCorrupt, NotDistributive) {
  // Diamond with tensor = meet except a⊗a = bot; a⊗(a∨b) = a ≠ bot ∨ bot.
  QuantaleTables t;
  t.labels = {"bot", "a", "b", "top"};
  t.leq = {{true, true, true, true}, {false, true, false, true}, {false, false, true, true}, {false, false, false, true}};
  t.tensor = {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}};
  t.unit = 3;
  Report r = validate_quantale(t);
  EXPECT_TRUE(r.violates("tensor:distributes-over-join"));
}

TEST(QuantaleCorrupt, MalformedIsStructural) {
  QuantaleTables t = boolean_tables();
  t.leq.pop_back();
  EXPECT_THROW(validate_quantale(t), StructuralError);
}

TEST(Quantale, LabelLookup) {
  auto q = lawvere_chain(3);
  for (std::size_t i = 0; i < q->size(); ++i) EXPECT_EQ(q->find(q->label(q->element(i))), q->element(i));
  EXPECT_FALSE(q->find("nope").has_value());
}
