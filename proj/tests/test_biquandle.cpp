#include "hbk/biquandle.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/corpus.hpp"

using namespace hbk;
using namespace hbk::testsupport;

TEST(AlexanderBiquandle, GoldenTypes) {
  // the four field/unit configurations and their types, each confirmed by
  // direct powering below
  EXPECT_EQ(gf81_family().type(), 10u);
  EXPECT_EQ(gf9_family().type(), 8u);
  EXPECT_EQ(gf25_family().type(), 24u);
  EXPECT_EQ(gf9_family_alt().type(), 8u);
  EXPECT_EQ(gf4_family().type(), 3u);
}

TEST(AlexanderBiquandle, TypeByDirectPowering) {
  for (const auto& ab : {gf4_family(), gf9_family(), gf25_family(), gf9_family_alt(),
                         gf81_family()}) {
    const Field& f = ab.field();
    FieldElement s = ab.s(), t = f.t();
    // s^type = t^type = 1 and no smaller positive n achieves both
    EXPECT_TRUE(s.pow(static_cast<int64_t>(ab.type())).is_one());
    EXPECT_TRUE(t.pow(static_cast<int64_t>(ab.type())).is_one());
    for (uint64_t n = 1; n < ab.type(); ++n)
      EXPECT_FALSE(s.pow(static_cast<int64_t>(n)).is_one() &&
                   t.pow(static_cast<int64_t>(n)).is_one())
          << "type not minimal at n=" << n;
  }
}

TEST(AlexanderBiquandle, RejectsZeroS) {
  Field f = Field::make(2, {1, 1, 1});
  try {
    AlexanderBiquandle::make(f, f.zero());
    FAIL() << "expected SNotUnit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "SNotUnit");
  }
}

TEST(NFoldOps, BaseCases) {
  auto ab = gf4_family();
  const Field& f = ab.field();
  FieldElement a = f.t(), b = f.one();
  EXPECT_EQ(ab.underop_n(a, b, 0), a);
  EXPECT_EQ(ab.overop_n(a, b, 0), a);
  // in GF(4) with s = 1: 1 <u> 0 = t*1 + (1-t)*0 = t
  EXPECT_EQ(ab.underop_n(f.one(), f.zero(), 1), f.t());
}

TEST(NFoldOps, ClosedFormMatchesRecursion) {
  // a <u>^[n] b must equal n-fold application of the defining recursion
  for (const auto& ab : {gf4_family(), gf9_family(), gf25_family()}) {
    const Field& f = ab.field();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<uint64_t> pick(0, f.order() - 1);
    for (int trial = 0; trial < 50; ++trial) {
      FieldElement a = f.element_by_index(pick(rng));
      FieldElement b = f.element_by_index(pick(rng));
      // a <u>^[n+1] b = (a <u>^[n] b) <u> (b <u>^[n] b), and b <u>^[n] b = s^n b
      FieldElement ua = a, oa = a, bn = b;
      for (uint64_t n = 0; n <= 2 * ab.type(); ++n) {
        EXPECT_EQ(ab.underop_n(a, b, static_cast<int64_t>(n)), ua);
        EXPECT_EQ(ab.overop_n(a, b, static_cast<int64_t>(n)), oa);
        ua = ab.underop(ua, bn);
        oa = ab.overop(oa, bn);
        bn = ab.s() * bn;
      }
    }
  }
}

TEST(NFoldOps, ExponentAdditivity) {
  auto ab = gf9_family();
  const Field& f = ab.field();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<uint64_t> pick(0, f.order() - 1);
  std::uniform_int_distribution<int64_t> exp(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    FieldElement a = f.element_by_index(pick(rng));
    FieldElement b = f.element_by_index(pick(rng));
    int64_t i = exp(rng), j = exp(rng);
    EXPECT_EQ(ab.underop_n(a, b, i + j),
              ab.underop_n(ab.underop_n(a, b, i), ab.underop_n(b, b, i), j));
  }
}

TEST(NFoldOps, TypeIsIdentity) {
  for (const auto& ab : {gf4_family(), gf9_family(), gf25_family(), gf81_family()}) {
    const Field& f = ab.field();
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<uint64_t> pick(0, f.order() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      FieldElement a = f.element_by_index(pick(rng));
      FieldElement b = f.element_by_index(pick(rng));
      EXPECT_EQ(ab.underop_n(a, b, static_cast<int64_t>(ab.type())), a);
      EXPECT_EQ(ab.overop_n(a, b, static_cast<int64_t>(ab.type())), a);
    }
  }
}

TEST(NFoldOps, QuandleDegenerationWhenSIsOne) {
  // with s = 1 the over operation is the identity in its first argument
  auto ab = gf4_family();
  const Field& f = ab.field();
  for (uint64_t i = 0; i < f.order(); ++i)
    for (uint64_t j = 0; j < f.order(); ++j)
      EXPECT_EQ(ab.overop(f.element_by_index(i), f.element_by_index(j)),
                f.element_by_index(i));
}

TEST(BiquandleAxioms, AlexanderGf4TablePasses) {
  auto table = alexander_table(gf4_family());
  auto report = check_biquandle_axioms(table);
  EXPECT_TRUE(report.all_passed()) << report.to_string();
}

TEST(BiquandleAxioms, AlexanderGf9TablePasses) {
  auto table = alexander_table(gf9_family());
  auto report = check_biquandle_axioms(table);
  EXPECT_TRUE(report.all_passed()) << report.to_string();
}

TEST(BiquandleAxioms, BrokenTableFails) {
  auto table = alexander_table(gf4_family());
  table.under_table[1][2] = table.under_table[0][2];  // break row bijectivity
  auto report = check_biquandle_axioms(table);
  EXPECT_FALSE(report.all_passed());
}

TEST(GFamilyAxioms, Gf4ExhaustivePasses) {
  auto report = check_gfamily_axioms(gf4_family(), 3);
  EXPECT_TRUE(report.all_passed()) << report.to_string();
}

TEST(GFamilyAxioms, Gf4WithM6Passes) {
  auto report = check_gfamily_axioms(gf4_family(), 6);
  EXPECT_TRUE(report.all_passed()) << report.to_string();
}

TEST(GFamilyAxioms, Gf9SampledPasses) {
  auto report = check_gfamily_axioms(gf9_family(), 8, /*seed=*/42, /*samples=*/10000,
                                     /*exhaustive_budget=*/1000);
  EXPECT_TRUE(report.all_passed()) << report.to_string();
}

TEST(GFamilyAxioms, RejectsBadModulus) {
  try {
    check_gfamily_axioms(gf4_family(), 2);  // type 3 does not divide 2
    FAIL() << "expected NotZmFamily";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NotZmFamily");
  }
}
