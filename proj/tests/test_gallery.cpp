#include "perp/error.hpp"
#include "perp/gallery.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace perp::gallery;

namespace {

EvTailFunctional ef(std::vector<Scalar> prefix, Scalar tail = 0) { return {std::move(prefix), tail}; }

FinSuppVector fv(std::map<std::size_t, Scalar> c) { return {std::move(c)}; }

// Plain Gauss-Jordan mod p on a copy; returns the nullspace dimension and
// whether the nullspace is exactly span{e_k} for the given k (or zero when k < 0).
struct Kernel
{
  std::size_t dim = 0;
  std::vector<std::vector<Scalar>> basis;
};

Scalar inv(Scalar a, Scalar p)
{
  Scalar r = 1;
  for (Scalar e = p - 2, b = a % p; e; e >>= 1, b = b * b % p) {
    if (e & 1) { r = r * b % p; }
  }
  return r;
}

Kernel dense_kernel(std::vector<std::vector<Scalar>> a, std::size_t n, Scalar p)
{
  std::vector<int> pivot_col;
  std::size_t      row = 0;
  for (std::size_t c = 0; c < n && row < a.size(); ++c) {
    std::size_t k = row;
    while (k < a.size() && a[k][c] % p == 0) { ++k; }
    if (k == a.size()) { continue; }
    std::swap(a[k], a[row]);
    Scalar const iv = inv(a[row][c], p);
    for (auto &x : a[row]) { x = x * iv % p; }
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) { continue; }
      Scalar const f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) { a[r][j] = (a[r][j] + (p - f) * a[row][j]) % p; }
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  Kernel out;
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) { is_pivot[c] = true; }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) { continue; }
    std::vector<Scalar> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) { v[pivot_col[r]] = (p - a[r][free]) % p; }
    out.basis.push_back(v);
  }
  out.dim = out.basis.size();
  return out;
}

// Rows of the generators of each family restricted to [0, m), built from the definitions.
std::vector<std::vector<Scalar>> rows_h(std::size_t m)
{
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t n = 0; n < m; ++n) {
    rows.emplace_back(m, 0);
    rows.back()[n] = 1;
  }
  return rows;
}

std::vector<std::vector<Scalar>> rows_l(std::size_t m)
{
  auto rows = rows_h(m);
  rows.erase(rows.begin());
  rows.emplace_back(m, 1);
  return rows;
}

std::vector<std::vector<Scalar>> rows_hl(std::size_t m)
{
  auto rows = rows_h(m);
  rows.erase(rows.begin());
  return rows;
}

std::vector<std::vector<Scalar>> rows_window(std::size_t m, std::size_t p)
{
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t n = 0; n < m; ++n) {
    rows.emplace_back(m, 0);
    for (std::size_t k = n; k <= n + p && k < m; ++k) { rows.back()[k] = 1; }
  }
  return rows;
}

std::vector<Scalar> dense(FinSuppVector const &v, std::size_t m)
{
  std::vector<Scalar> out(m, 0);
  for (auto const &[i, c] : v.coefficients) { out.at(i) = c; }
  return out;
}

} // namespace

TEST(Eval, Examples)
{
  EXPECT_EQ(eval_functional(EvTailFunctional::all_ones(), FinSuppVector::basis(3), 2), 1u);
  EXPECT_EQ(eval_functional(EvTailFunctional::dual_basis(2), FinSuppVector::basis(3), 2), 0u);
  EXPECT_EQ(eval_functional(ef({1, 1}), fv({{0, 1}, {1, 1}}), 2), 0u);
  EXPECT_EQ(eval_functional(ef({1, 1}), fv({{0, 1}, {1, 1}}), 3), 2u);
}

TEST(Eval, Bilinear)
{
  std::mt19937                          gen(7);
  std::uniform_int_distribution<Scalar> coef(0, 4);
  Scalar const                          p = 5;
  for (int trial = 0; trial < 200; ++trial) {
    auto random_f = [&] {
      std::vector<Scalar> pre(1 + trial % 6);
      for (auto &x : pre) { x = coef(gen); }
      return ef(pre, coef(gen));
    };
    auto random_v = [&] {
      FinSuppVector v;
      for (std::size_t i = 0; i < 8; ++i) { v.coefficients[i * (1 + trial % 3)] = coef(gen); }
      v.normalize(p);
      return v;
    };
    auto const f = random_f(), g = random_f();
    auto const v = random_v(), w = random_v();
    Scalar const a = coef(gen);

    FinSuppVector vw = v;
    for (auto const &[i, c] : w.coefficients) { vw.coefficients[i] = (vw.coefficients[i] + a * c) % p; }
    vw.normalize(p);
    ASSERT_EQ(eval_functional(f, vw, p), (eval_functional(f, v, p) + a * eval_functional(f, w, p)) % p);

    std::size_t const   len = std::max(f.prefix.size(), g.prefix.size());
    std::vector<Scalar> pre(len);
    for (std::size_t i = 0; i < len; ++i) { pre[i] = (f.coefficient(i) + a * g.coefficient(i)) % p; }
    auto const fg = ef(pre, (f.tail + a * g.tail) % p);
    ASSERT_EQ(eval_functional(fg, v, p), (eval_functional(f, v, p) + a * eval_functional(g, v, p)) % p);
  }
}

TEST(Functional, Canonicalize)
{
  auto f = ef({1, 0, 1, 1, 1}, 1);
  f.canonicalize();
  EXPECT_EQ(f, ef({1, 0}, 1));
  auto z = ef({0, 0}, 0);
  z.canonicalize();
  EXPECT_EQ(z, ef({}, 0));
}

TEST(FamilyPerp, Examples)
{
  for (Scalar p : {2u, 3u}) {
    for (std::size_t m : {1u, 5u, 8u, 13u}) {
      EXPECT_TRUE(family_perp(FunctionalFamily::standard_duals(), m, p).empty());
      EXPECT_TRUE(family_perp(FunctionalFamily::l_with_all_ones(), m, p).empty());
      for (std::size_t w = 0; w <= 8; ++w) { EXPECT_TRUE(family_perp(FunctionalFamily::window_sums(w), m, p).empty()); }
      EXPECT_TRUE(family_perp(FunctionalFamily::chain(std::nullopt), m, p).empty());
      EXPECT_EQ(family_perp(FunctionalFamily::chain(3), m, p).size(), m > 3 ? m - 3 : 0);
    }
    auto const hl = family_perp(FunctionalFamily::standard_duals(1), 8, p);
    ASSERT_EQ(hl.size(), 1u);
    EXPECT_EQ(hl.front(), FinSuppVector::basis(0));
  }
}

TEST(FamilyPerp, MatchesDenseOracleForExampleTwo)
{
  for (Scalar p : {2u, 3u}) {
    for (std::size_t m : {8u, 16u, 32u}) {
      auto const h  = dense_kernel(rows_h(m), m, p);
      auto const l  = dense_kernel(rows_l(m), m, p);
      auto const hl = dense_kernel(rows_hl(m), m, p);
      EXPECT_EQ(h.dim, family_perp(FunctionalFamily::standard_duals(), m, p).size());
      EXPECT_EQ(l.dim, family_perp(FunctionalFamily::l_with_all_ones(), m, p).size());
      auto const main = family_perp(FunctionalFamily::standard_duals(1), m, p);
      ASSERT_EQ(hl.dim, main.size());
      ASSERT_EQ(hl.dim, 1u);
      EXPECT_EQ(hl.basis[0], dense(main[0], m));
      EXPECT_EQ(h.dim, 0u);
      EXPECT_EQ(l.dim, 0u);
      for (std::size_t w = 1; w <= 8; ++w) {
        EXPECT_EQ(dense_kernel(rows_window(m, w), m, p).dim, family_perp(FunctionalFamily::window_sums(w), m, p).size());
      }
    }
  }
}

TEST(FamilyPerp, StableAcrossHorizons)
{
  std::vector<FunctionalFamily> const fams{
      FunctionalFamily::chain(0),          FunctionalFamily::chain(4),          FunctionalFamily::chain(std::nullopt),
      FunctionalFamily::standard_duals(),  FunctionalFamily::standard_duals(1), FunctionalFamily::standard_duals(3),
      FunctionalFamily::l_with_all_ones(), FunctionalFamily::window_sums(1),    FunctionalFamily::window_sums(3)};
  for (Scalar p : {2u, 3u}) {
    for (auto const &fam : fams) {
      for (std::size_t m = 1; m < 20; ++m) {
        auto const small = family_perp(fam, m, p);
        auto const big   = family_perp(fam, m + 1, p);
        bool       hits_m = false;
        std::vector<std::vector<Scalar>> rows;
        for (auto const &v : big) {
          hits_m = hits_m || v.coefficients.contains(m);
          rows.push_back(dense(v, m + 1));
        }
        ASSERT_EQ(small.size() + (hits_m ? 1 : 0), big.size()) << fam.describe() << " m=" << m;
        auto const base_rank = rank_mod_p(rows, p);
        for (auto const &v : small) {
          ASSERT_LT(v.support_bound(), m + 1);
          rows.push_back(dense(v, m + 1));
        }
        ASSERT_EQ(rank_mod_p(rows, p), base_rank) << fam.describe() << " m=" << m;
      }
    }
  }
}

TEST(Membership, Examples)
{
  for (Scalar p : {2u, 3u}) {
    auto const ones = membership_in_family(EvTailFunctional::all_ones(), FunctionalFamily::chain(std::nullopt), p);
    EXPECT_FALSE(ones.member);
    EXPECT_EQ(ones.horizons.size(), 3u);
    EXPECT_TRUE(membership_in_family(EvTailFunctional::dual_basis(5), FunctionalFamily::standard_duals(), p).member);
    EXPECT_FALSE(membership_in_family(EvTailFunctional::dual_basis(0), FunctionalFamily::standard_duals(1), p).member);
    EXPECT_TRUE(membership_in_family(EvTailFunctional::all_ones(), FunctionalFamily::l_with_all_ones(), p).member);
    EXPECT_FALSE(membership_in_family(EvTailFunctional::all_ones(), FunctionalFamily::standard_duals(), p).member);
    EXPECT_TRUE(membership_in_family(ef({1, 1}), FunctionalFamily::window_sums(1), p).member);
    EXPECT_FALSE(membership_in_family(EvTailFunctional::dual_basis(0), FunctionalFamily::window_sums(1), p).member);
    EXPECT_FALSE(membership_in_family(ef({1, 1}), FunctionalFamily::window_sums(2), p).member);
    EXPECT_TRUE(membership_in_family(ef({1, 0, 1}), FunctionalFamily::chain(3), p).member);
    EXPECT_FALSE(membership_in_family(ef({1, 0, 0, 1}), FunctionalFamily::chain(3), p).member);
  }
}

TEST(Membership, TruncationAgreesWithCriterion)
{
  std::vector<EvTailFunctional> probes{EvTailFunctional::all_ones(), EvTailFunctional::dual_basis(0),
                                       EvTailFunctional::dual_basis(3), ef({1, 1}), ef({1, 0, 1}, 1), ef({0, 1}, 1),
                                       ef({1, 1, 1, 1})};
  std::vector<FunctionalFamily> fams{FunctionalFamily::chain(2),        FunctionalFamily::chain(std::nullopt),
                                     FunctionalFamily::standard_duals(), FunctionalFamily::standard_duals(1),
                                     FunctionalFamily::l_with_all_ones(), FunctionalFamily::window_sums(1),
                                     FunctionalFamily::window_sums(3)};
  for (auto const &f : probes) {
    for (auto const &fam : fams) {
      auto const v = membership_in_family(f, fam, 2);
      for (std::size_t h : {12u, 24u}) { EXPECT_EQ(truncated_membership(f, fam, h, 2), v.member) << fam.describe(); }
    }
  }
}

TEST(Density, ZeroPerpFamiliesPassProbe)
{
  std::vector<EvTailFunctional> probes{EvTailFunctional::all_ones(), EvTailFunctional::dual_basis(0), ef({1, 1}),
                                       ef({0, 1, 0, 1}, 1)};
  std::vector<FunctionalFamily> fams{FunctionalFamily::standard_duals(), FunctionalFamily::l_with_all_ones(),
                                     FunctionalFamily::chain(std::nullopt)};
  for (std::size_t w = 1; w <= 4; ++w) { fams.push_back(FunctionalFamily::window_sums(w)); }
  for (Scalar p : {2u, 3u}) {
    for (auto const &fam : fams) {
      ASSERT_TRUE(family_perp(fam, 16, p).empty());
      for (auto const &f : probes) { EXPECT_TRUE(density_probe(fam, f, p)) << fam.describe(); }
    }
    // span{e_n*, n >= 1} has perp span{e_0} and misses e_0* on {e_0}.
    EXPECT_FALSE(density_probe(FunctionalFamily::standard_duals(1), EvTailFunctional::dual_basis(0), p));
  }
}

TEST(Examples, PassOverSmallFields)
{
  for (Scalar p : {2u, 3u, 5u}) {
    for (auto const *which : {"i", "ii", "iii"}) {
      GalleryParams params;
      params.p   = p;
      auto const r = run_example(which, params);
      EXPECT_TRUE(r.passed()) << which << " p=" << p;
      EXPECT_FALSE(r.checks.empty());
      EXPECT_FALSE(r.horizons.empty());
      EXPECT_EQ(r.field, p);
    }
  }
}

TEST(Examples, RejectBadParameters)
{
  GalleryParams params;
  params.p = 4;
  EXPECT_THROW(run_example("i", params), perp::PreconditionError);
  EXPECT_THROW(run_example("iv"), perp::PreconditionError);
}

TEST(LinearAlgebra, RankAndNullspace)
{
  EXPECT_EQ(rank_mod_p({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 2), 2u);
  EXPECT_EQ(rank_mod_p({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 3), 3u);
  auto const ns = nullspace_mod_p({{1, 1, 0}, {0, 1, 1}}, 3, 2);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(ns[0], (std::vector<Scalar>{1, 1, 1}));
}
