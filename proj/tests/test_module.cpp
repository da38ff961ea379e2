#include "support.hpp"

#include "perp/error.hpp"
#include "perp/oracle.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace perp;
using test::codes;
using test::ring;
using test::span_of;

TEST(FreeModule, Sizes)
{
  auto const z4 = ring("zmod 4");
  EXPECT_EQ(free_module(z4, 1, Side::right)->size(), 4u);
  EXPECT_EQ(free_module(z4, 2, Side::right)->size(), 16u);
  EXPECT_EQ(free_module(ring("tri 2 over gf 2 1"), 2, Side::right)->size(), 64u);
  EXPECT_THROW(free_module(ring("zmod 9"), 4, Side::right), GuardExceeded);
}

TEST(FreeModule, ElementsInLexOrder)
{
  auto const m = free_module(ring("zmod 2"), 2, Side::right);
  ASSERT_EQ(m->size(), 4u);
  std::vector<std::string> shown;
  for (Code c : enumerate_elements(m)) { shown.push_back(m->format(c)); }
  EXPECT_EQ(shown, (std::vector<std::string>{"(0, 0)", "(0, 1)", "(1, 0)", "(1, 1)"}));
}

TEST(Quotient, ByIdeal)
{
  auto const z4 = ring("zmod 4");
  auto const m  = free_module(z4, 1, Side::right);
  auto const x  = span_of(m, "[2]");
  auto const q  = quotient_module(m, x);
  EXPECT_EQ(q.module->size(), 2u);
  EXPECT_EQ(codes(q.module->elements()), (std::vector<Code>{0, 1}));
  EXPECT_EQ(q.projection, (std::vector<Code>{0, 1, 0, 1}));
}

TEST(Quotient, ByZeroAndWhole)
{
  for (auto const *spec : {"zmod 4", "tri 2 over gf 2 1"}) {
    auto const m = free_module(ring(spec), 2, Side::left);
    auto const q = quotient_module(m, zero_submodule(m)).module;
    EXPECT_EQ(codes(q->elements()), codes(m->elements()));
    auto const w = quotient_module(m, whole_module(m)).module;
    EXPECT_EQ(w->size(), 1u);
    EXPECT_TRUE(w->is_zero_module());
  }
}

TEST(Quotient, CanonicalIsCosetMinimum)
{
  auto const r    = ring(test::local_ring);
  auto const free = free_module(r, 2, Side::right);
  for (auto const &k : enumerate_submodules(free)) {
    auto const q = quotient_module(free, k).module;
    for (Code c = 0; c < free->cover_size(); ++c) {
      Code least = c;
      for (Code rel : k.elements()) { least = std::min(least, free->free_add(c, rel)); }
      ASSERT_EQ(q->canonical(c), least);
    }
    ASSERT_EQ(free->size() % q->size(), 0u);
    ASSERT_EQ(free->size() / q->size(), k.size());
  }
}

TEST(Generated, Examples)
{
  auto const z4 = ring("zmod 4");
  auto const m1 = free_module(z4, 1, Side::right);
  EXPECT_TRUE(submodule_generated(m1, {}).is_zero());
  EXPECT_EQ(codes(span_of(m1, "[2]").elements()), (std::vector<Code>{0, 2}));

  auto const m2 = free_module(z4, 2, Side::right);
  auto const x  = span_of(m2, "[1, 0]");
  std::vector<std::string> shown;
  for (Code c : x.elements()) { shown.push_back(m2->format(c)); }
  EXPECT_EQ(shown, (std::vector<std::string>{"(0, 0)", "(1, 0)", "(2, 0)", "(3, 0)"}));
}

TEST(Generated, LeftAndRightDifferOverTri)
{
  auto const r     = ring(test::tri_ring);
  auto const right = free_module(r, 1, Side::right);
  auto const left  = free_module(r, 1, Side::left);
  // e11 = (1 0 0): e11.R and R.e11 are different subsets.
  auto const xr = span_of(right, "[(1 0 0)]");
  auto const xl = span_of(left, "[(1 0 0)]");
  EXPECT_NE(codes(xr.elements()), codes(xl.elements()));
  EXPECT_EQ(xr.size(), 4u);
  EXPECT_EQ(xl.size(), 2u);
}

TEST(Lattice, SumAndIntersect)
{
  auto const z4 = ring("zmod 4");
  auto const m  = free_module(z4, 1, Side::right);
  auto const x  = span_of(m, "[2]");
  auto const w  = whole_module(m);
  EXPECT_EQ(submodule_sum(std::vector{x, x}), x);
  EXPECT_EQ(submodule_sum(std::vector{zero_submodule(m), x}), x);
  EXPECT_EQ(submodule_intersect(std::vector{x, x}), x);
  EXPECT_EQ(submodule_intersect(std::vector{x, w}), x);

  auto const z2 = free_module(ring("zmod 2"), 2, Side::right);
  EXPECT_EQ(submodule_sum(std::vector{span_of(z2, "[1, 0]"), span_of(z2, "[0, 1]")}).size(), 4u);
  EXPECT_TRUE(submodule_intersect(std::vector{span_of(z2, "[1, 1]"), span_of(z2, "[1, 0]")}).is_zero());
}

TEST(Lattice, Counts)
{
  EXPECT_EQ(enumerate_submodules(free_module(ring("zmod 4"), 1, Side::right)).size(), 3u);
  EXPECT_EQ(enumerate_submodules(free_module(ring("gf 2 1"), 2, Side::right)).size(), 5u);
  EXPECT_EQ(enumerate_submodules(zero_module(ring("zmod 4"), Side::right)).size(), 1u);
  EXPECT_EQ(codes(enumerate_elements(zero_module(ring("zmod 4"), Side::left))), std::vector<Code>{0});
}

// Lattice sizes obtained from the brute-force oracle enumeration.
TEST(Lattice, FrozenCorpusCounts)
{
  struct Row
  {
    char const *spec;
    std::size_t r1, r2;
  };
  for (auto const &row : {Row{"zmod 2", 2, 5}, Row{"zmod 4", 3, 15}, Row{"zmod 6", 4, 30}, Row{"zmod 8", 4, 37},
                          Row{"zmod 9", 3, 0}, Row{"gf 2 2 x^2+x+1", 2, 7}, Row{"quot gf2 [x]/(x^2)", 3, 15},
                          Row{"quot gf2 [x,y]/(x^2,xy,y^2)", 6, 101}, Row{"tri 2 over gf 2 1", 7, 120}}) {
    auto const r = ring(row.spec);
    for (Side side : {Side::right, Side::left}) {
      EXPECT_EQ(enumerate_submodules(free_module(r, 1, side)).size(), row.r1) << row.spec;
      if (row.r2) { EXPECT_EQ(enumerate_submodules(free_module(r, 2, side)).size(), row.r2) << row.spec; }
    }
  }
  // (Z/p^2)^2 has p^2 + 3p + 5 subgroups.
  EXPECT_EQ(enumerate_submodules(free_module(ring("zmod 9"), 2, Side::right)).size(), 23u);
}

TEST(Lattice, EnumerationIsSortedAndDistinct)
{
  auto const subs = enumerate_submodules(free_module(ring(test::tri_ring), 2, Side::left));
  EXPECT_TRUE(std::is_sorted(subs.begin(), subs.end()));
  EXPECT_EQ(std::adjacent_find(subs.begin(), subs.end()), subs.end());
  EXPECT_TRUE(subs.front().is_zero());
  EXPECT_EQ(subs.back().size(), 64u);
}

TEST(Lattice, GuardOnModuleSize)
{
  EXPECT_THROW(free_module(ring("zmod 8"), 2, Side::right, Guards{256, 32}), GuardExceeded);
  auto const m = free_module(ring("zmod 8"), 2, Side::right, Guards{256, 64});
  EXPECT_EQ(enumerate_submodules(m).size(), 37u);
}

class LatticeLaws : public testing::TestWithParam<char const *>
{
};

TEST_P(LatticeLaws, ClosureOperatorAndLattice)
{
  auto const r = ring(GetParam());
  for (Side side : {Side::right, Side::left}) {
    auto const m    = free_module(r, 2, side);
    auto const subs = enumerate_submodules(m);
    for (auto const &x : subs) {
      ASSERT_EQ(m->size() % x.size(), 0u);
      ASSERT_TRUE(is_submodule_set(m, x.elements()));
      ASSERT_EQ(submodule_generated(m, x.generators()), x);
      ASSERT_EQ(submodule_generated(m, x.elements()), x);
    }
    for (std::size_t i = 0; i < subs.size(); i += 3) {
      for (std::size_t j = 0; j < subs.size(); j += 2) {
        auto const &a = subs[i];
        auto const &b = subs[j];
        auto const  s = submodule_sum(std::vector{a, b});
        auto const  n = submodule_intersect(std::vector{a, b});
        ASSERT_EQ(s, submodule_sum(std::vector{b, a}));
        ASSERT_EQ(n, submodule_intersect(std::vector{b, a}));
        ASSERT_EQ(submodule_sum(std::vector{a, n}), a);
        ASSERT_EQ(submodule_intersect(std::vector{a, s}), a);
        ASSERT_TRUE(a.is_subset_of(s));
        ASSERT_TRUE(n.is_subset_of(b));
        if (a.is_subset_of(b)) {
          std::vector<Code> both(a.elements().begin(), a.elements().end());
          both.insert(both.end(), b.generators().begin(), b.generators().end());
          ASSERT_EQ(submodule_generated(m, both), b);
        }
        auto const &c = subs[(i + j) % subs.size()];
        ASSERT_EQ(submodule_sum(std::vector{submodule_sum(std::vector{a, b}), c}),
                  submodule_sum(std::vector{a, submodule_sum(std::vector{b, c})}));
        ASSERT_EQ(submodule_intersect(std::vector{submodule_intersect(std::vector{a, b}), c}),
                  submodule_intersect(std::vector{a, submodule_intersect(std::vector{b, c})}));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, LatticeLaws,
                         testing::Values("zmod 4", "zmod 6", "gf 2 2 x^2+x+1", "quot gf2 [x,y]/(x^2,xy,y^2)",
                                         "tri 2 over gf 2 1"));

TEST(ModuleSpec, Parses)
{
  auto const r = ring("zmod 4");
  auto const m = parse_module_spec(r, Side::right, "free 2 / [2, 0; 0, 2]");
  EXPECT_EQ(m->size(), 4u);
  EXPECT_EQ(parse_module_spec(r, Side::left, "free 3")->size(), 64u);
  EXPECT_THROW(parse_module_spec(r, Side::right, "free 2 / [1]"), Error);
  EXPECT_THROW(parse_module_spec(r, Side::right, "cofree 2"), Error);
  EXPECT_THROW(parse_vectors(free_module(r, 1, Side::right), "[x]"), Error);
  EXPECT_EQ(codes(parse_vectors(free_module(r, 1, Side::right), "[7; -1]")), (std::vector<Code>{3, 3}));

  auto const tri = ring(test::tri_ring);
  auto const mt  = parse_module_spec(tri, Side::right, "free 2 / [(1 0 0), (0 0 1)]");
  EXPECT_EQ(mt->size(), 64u / span_of(free_module(tri, 2, Side::right), "[(1 0 0), (0 0 1)]").size());
}

TEST(ModuleArithmetic, MatchesCoordinates)
{
  auto const r = ring(test::tri_ring);
  for (Side side : {Side::right, Side::left}) {
    auto const  m = free_module(r, 2, side);
    auto const &A = r.acting(side);
    for (Code a : m->elements()) {
      for (Elem s = 0; s < 8; ++s) {
        auto const c = m->coordinates(m->act(a, s));
        auto const d = m->coordinates(a);
        for (std::size_t i = 0; i < 2; ++i) { ASSERT_EQ(c[i], A.mul(d[i], s)); }
        if (side == Side::left) {
          for (std::size_t i = 0; i < 2; ++i) { ASSERT_EQ(c[i], r.base().mul(s, d[i])); }
        }
      }
      ASSERT_EQ(m->add(a, m->neg(a)), 0u);
    }
  }
}

TEST(ModuleFingerprint, DependsOnSideAndRelations)
{
  auto const r = ring("zmod 4");
  EXPECT_EQ(free_module(r, 2, Side::right)->fingerprint(), free_module(r, 2, Side::right)->fingerprint());
  EXPECT_NE(free_module(r, 2, Side::right)->fingerprint(), free_module(r, 2, Side::left)->fingerprint());
  EXPECT_NE(free_module(r, 2, Side::right)->fingerprint(),
            parse_module_spec(r, Side::right, "free 2 / [2, 0]")->fingerprint());
}
