#include "perp/gallery.hpp"

#include "perp/error.hpp"
#include "perp/polynomial.hpp"

#include <algorithm>
#include <bit>

namespace perp::gallery {

FinSuppVector FinSuppVector::basis(std::size_t n)
{
  FinSuppVector v;
  v.coefficients[n] = 1;
  return v;
}

void FinSuppVector::normalize(Scalar p)
{
  for (auto it = coefficients.begin(); it != coefficients.end();) {
    it->second %= p;
    it = it->second == 0 ? coefficients.erase(it) : std::next(it);
  }
}

std::size_t FinSuppVector::support_bound() const
{
  return coefficients.empty() ? 0 : coefficients.rbegin()->first + 1;
}

EvTailFunctional EvTailFunctional::dual_basis(std::size_t n)
{
  EvTailFunctional f;
  f.prefix.assign(n + 1, 0);
  f.prefix[n] = 1;
  return f;
}

EvTailFunctional EvTailFunctional::all_ones() { return {{}, 1}; }

void EvTailFunctional::canonicalize()
{
  while (!prefix.empty() && prefix.back() == tail) { prefix.pop_back(); }
}

Scalar eval_functional(EvTailFunctional const &f, FinSuppVector const &v, Scalar p)
{
  Scalar acc = 0;
  for (auto const &[i, c] : v.coefficients) { acc = (acc + (f.coefficient(i) % p) * (c % p)) % p; }
  return acc;
}

std::string FunctionalFamily::describe() const
{
  switch (kind) {
  case FamilyKind::vn_perp_chain:
    return parameter ? "V_" + std::to_string(*parameter) + "^perp" : "union of V_n^perp";
  case FamilyKind::standard_duals:
    return *parameter == 0 ? "H" : "span{e_n* : n >= " + std::to_string(*parameter) + "}";
  case FamilyKind::l_with_all_ones: return "L";
  case FamilyKind::window_sums: return "H_" + std::to_string(*parameter);
  }
  return {};
}

namespace {

EvTailFunctional window(std::size_t start, std::size_t length)
{
  EvTailFunctional f;
  f.prefix.assign(start + length + 1, 0);
  for (std::size_t i = start; i <= start + length; ++i) { f.prefix[i] = 1; }
  return f;
}

std::vector<Scalar> restrict_to(EvTailFunctional const &f, std::size_t horizon, Scalar p)
{
  std::vector<Scalar> row(horizon);
  for (std::size_t i = 0; i < horizon; ++i) { row[i] = f.coefficient(i) % p; }
  return row;
}

Scalar mod_inverse(Scalar a, Scalar p) { return poly::inverse_mod(a % p, p); }

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(std::vector<std::vector<Scalar>> &rows, std::size_t columns, Scalar p)
{
  std::vector<std::size_t> pivots;
  std::size_t              r = 0;
  for (std::size_t c = 0; c < columns && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] % p == 0) { ++sel; }
    if (sel == rows.size()) { continue; }
    std::swap(rows[r], rows[sel]);
    Scalar const inv = mod_inverse(rows[r][c], p);
    for (auto &x : rows[r]) { x = (x % p) * inv % p; }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] % p == 0) { continue; }
      Scalar const factor = rows[i][c] % p;
      for (std::size_t j = 0; j < columns; ++j) { rows[i][j] = (rows[i][j] % p + p * p - factor * rows[r][j]) % p; }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

bool divisible_by_window(std::vector<Scalar> a, std::size_t w, Scalar p)
{
  if (std::all_of(a.begin(), a.end(), [p](Scalar c) { return c % p == 0; })) { return true; }
  std::vector<poly::Coeff> divisor(w + 1, 1);
  auto const               r = poly::remainder(std::move(a), divisor, p);
  return std::all_of(r.begin(), r.end(), [p](Scalar c) { return c % p == 0; });
}

bool criterion(EvTailFunctional const &f, FunctionalFamily const &fam, Scalar p)
{
  switch (fam.kind) {
  case FamilyKind::vn_perp_chain: return f.tail == 0 && (!fam.parameter || f.prefix.size() <= *fam.parameter);
  case FamilyKind::standard_duals:
    if (f.tail != 0) { return false; }
    for (std::size_t i = 0; i < std::min(*fam.parameter, f.prefix.size()); ++i) {
      if (f.prefix[i] != 0) { return false; }
    }
    return true;
  case FamilyKind::l_with_all_ones: return f.coefficient(0) == f.tail;
  case FamilyKind::window_sums: return f.tail == 0 && divisible_by_window(f.prefix, *fam.parameter, p);
  }
  throw PreconditionError("unknown family kind");
}

void require_prime(Scalar p)
{
  if (!poly::is_prime(p)) { throw PreconditionError("field characteristic " + std::to_string(p) + " is not prime"); }
}

} // namespace

std::vector<EvTailFunctional> generators(FunctionalFamily const &fam, std::size_t horizon)
{
  std::vector<EvTailFunctional> out;
  switch (fam.kind) {
  case FamilyKind::vn_perp_chain: {
    std::size_t const n = fam.parameter ? std::min(*fam.parameter, horizon) : horizon;
    for (std::size_t i = 0; i < n; ++i) { out.push_back(EvTailFunctional::dual_basis(i)); }
    break;
  }
  case FamilyKind::standard_duals:
    for (std::size_t i = *fam.parameter; i < horizon; ++i) { out.push_back(EvTailFunctional::dual_basis(i)); }
    break;
  case FamilyKind::l_with_all_ones:
    out.push_back(EvTailFunctional::all_ones());
    for (std::size_t i = 1; i < horizon; ++i) { out.push_back(EvTailFunctional::dual_basis(i)); }
    break;
  case FamilyKind::window_sums:
    for (std::size_t n = 0; n < horizon; ++n) { out.push_back(window(n, *fam.parameter)); }
    break;
  }
  return out;
}

std::vector<EvTailFunctional> generators_within(FunctionalFamily const &fam, std::size_t horizon)
{
  auto all = generators(fam, horizon);
  std::erase_if(all, [horizon](EvTailFunctional const &g) { return g.prefix.size() > horizon; });
  return all;
}

std::size_t rank_mod_p(std::vector<std::vector<Scalar>> rows, Scalar p)
{
  std::size_t const columns = rows.empty() ? 0 : rows.front().size();
  return echelon(rows, columns, p).size();
}

std::vector<std::vector<Scalar>> nullspace_mod_p(std::vector<std::vector<Scalar>> rows, std::size_t columns, Scalar p)
{
  auto const        pivots = echelon(rows, columns, p);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : pivots) { is_pivot[c] = true; }
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) { continue; }
    std::vector<Scalar> v(columns, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) { v[pivots[r]] = (p - rows[r][free] % p) % p; }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<FinSuppVector> family_perp(FunctionalFamily const &fam, std::size_t m, Scalar p)
{
  require_prime(p);
  if (m < 1) { throw PreconditionError("support bound must be at least 1"); }
  std::vector<std::vector<Scalar>> rows;
  for (auto const &g : generators(fam, m)) { rows.push_back(restrict_to(g, m, p)); }
  std::vector<FinSuppVector> out;
  for (auto const &v : nullspace_mod_p(std::move(rows), m, p)) {
    FinSuppVector fv;
    for (std::size_t i = 0; i < m; ++i) {
      if (v[i] != 0) { fv.coefficients[i] = v[i]; }
    }
    out.push_back(std::move(fv));
  }
  return out;
}

bool truncated_membership(EvTailFunctional const &f, FunctionalFamily const &fam, std::size_t horizon, Scalar p)
{
  if (f.prefix.size() > horizon) { throw PreconditionError("horizon is shorter than the functional's prefix"); }
  auto extended = [&](EvTailFunctional const &g) {
    auto row = restrict_to(g, horizon, p);
    row.push_back(g.tail % p);
    return row;
  };
  std::vector<std::vector<Scalar>> rows;
  for (auto const &g : generators_within(fam, horizon)) { rows.push_back(extended(g)); }
  std::size_t const before = rows.empty() ? 0 : rank_mod_p(rows, p);
  rows.push_back(extended(f));
  return rank_mod_p(std::move(rows), p) == before;
}

MembershipVerdict membership_in_family(EvTailFunctional f, FunctionalFamily const &fam, Scalar p)
{
  require_prime(p);
  for (auto &c : f.prefix) { c %= p; }
  f.tail %= p;
  f.canonicalize();
  MembershipVerdict verdict;
  verdict.member      = criterion(f, fam, p);
  std::size_t const L = std::max<std::size_t>(f.prefix.size(), 1);
  for (std::size_t h : {L, 2 * L, 3 * L}) {
    if (truncated_membership(f, fam, h, p) != verdict.member) {
      throw InternalError("membership criterion for " + fam.describe() + " disagrees with row reduction at horizon " +
                          std::to_string(h));
    }
    verdict.horizons.push_back(h);
  }
  return verdict;
}

bool density_probe(FunctionalFamily const &fam, EvTailFunctional const &f, Scalar p, std::size_t window,
                   std::size_t max_set)
{
  require_prime(p);
  auto const gens = generators(fam, window);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << window); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_set) { continue; }
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < window; ++i) {
      if (mask >> i & 1U) { s.push_back(i); }
    }
    // Columns are generators; f restricted to S must lie in their span.
    std::vector<std::vector<Scalar>> rows;
    for (auto const &g : gens) {
      std::vector<Scalar> row;
      for (auto i : s) { row.push_back(g.coefficient(i) % p); }
      rows.push_back(std::move(row));
    }
    std::size_t const before = rows.empty() ? 0 : rank_mod_p(rows, p);
    std::vector<Scalar> target;
    for (auto i : s) { target.push_back(f.coefficient(i) % p); }
    rows.push_back(std::move(target));
    if (rank_mod_p(std::move(rows), p) != before) { return false; }
  }
  return true;
}

bool GalleryReport::passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](auto const &c) { return c.passed; });
}

namespace {

std::string describe_basis(std::vector<FinSuppVector> const &basis)
{
  if (basis.empty()) { return "0"; }
  std::string out = "span{";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) { out += ", "; }
    bool first = true;
    for (auto const &[idx, c] : basis[i].coefficients) {
      if (!first) { out += "+"; }
      first = false;
      out += (c == 1 ? "" : std::to_string(c)) + "e_" + std::to_string(idx);
    }
  }
  return out + "}";
}

GalleryCheck member_check(std::string name, EvTailFunctional const &f, FunctionalFamily const &fam, bool expected,
                          Scalar p)
{
  auto const v = membership_in_family(f, fam, p);
  return {std::move(name), v.horizons.back(), v.member == expected,
          std::string(v.member ? "member of " : "not a member of ") + fam.describe()};
}

void example_i(GalleryReport &r, GalleryParams const &params)
{
  Scalar const p    = params.p;
  auto const   ones = EvTailFunctional::all_ones();
  r.horizons["V_n^perp"] =
      "only e_i* with i < m are nonzero on vectors supported below m, so the system over those columns is exact";
  for (auto m : params.bounds) {
    auto const meet = family_perp(FunctionalFamily::chain(m), m, p);
    r.checks.push_back({"intersection of V_n is 0, so its perp is V*", m, meet.empty(), describe_basis(meet)});
    bool outside_stages = true;
    for (std::size_t n = 0; n <= m; ++n) {
      outside_stages = outside_stages && !membership_in_family(ones, FunctionalFamily::chain(n), p).member;
    }
    bool nonzero_everywhere = true;
    for (std::size_t n = 0; n < m; ++n) {
      nonzero_everywhere = nonzero_everywhere && eval_functional(ones, FinSuppVector::basis(n), p) == 1;
    }
    r.checks.push_back({"all-ones is outside every V_n^perp", m, outside_stages && nonzero_everywhere,
                        "all-ones(e_n) = 1 for n < " + std::to_string(m)});
  }
  r.checks.push_back(member_check("all-ones is outside the sum of the V_n^perp", ones, FunctionalFamily::chain({}),
                                  false, p));
  r.notes.push_back("strict inclusion: sum of V_n^perp is a proper subspace of (intersection of V_n)^perp = V*, "
                    "witnessed by the all-ones functional");
}

void example_ii(GalleryReport &r, GalleryParams const &params)
{
  Scalar const p = params.p;
  auto const   H = FunctionalFamily::standard_duals(0);
  auto const   L = FunctionalFamily::l_with_all_ones();
  auto const   HL = FunctionalFamily::standard_duals(1);
  r.horizons["H"]   = "e_n* with n < m are the only generators nonzero below m";
  r.horizons["L"]   = "all-ones restricted to [0, m) together with e_n*, 1 <= n < m";
  r.horizons["H∩L"] = "e_n* with 1 <= n < m";
  for (auto m : params.bounds) {
    auto const hp  = family_perp(H, m, p);
    auto const lp  = family_perp(L, m, p);
    auto const hlp = family_perp(HL, m, p);
    r.checks.push_back({"H^perp = 0", m, hp.empty(), describe_basis(hp)});
    r.checks.push_back({"L^perp = 0", m, lp.empty(), describe_basis(lp)});
    r.checks.push_back({"(H∩L)^perp = span{e_0}", m, hlp.size() == 1 && hlp.front() == FinSuppVector::basis(0),
                        describe_basis(hlp)});
    r.checks.push_back({"H^perp + L^perp != (H∩L)^perp", m, hp.size() + lp.size() == 0 && !hlp.empty(),
                        "0 versus " + describe_basis(hlp)});
  }
  auto const ones = EvTailFunctional::all_ones();
  auto const e0   = EvTailFunctional::dual_basis(0);
  auto const e5   = EvTailFunctional::dual_basis(5);
  r.checks.push_back(member_check("all-ones in L", ones, L, true, p));
  r.checks.push_back(member_check("all-ones not in H", ones, H, false, p));
  r.checks.push_back(member_check("e_0* in H", e0, H, true, p));
  r.checks.push_back(member_check("e_0* not in L", e0, L, false, p));
  r.checks.push_back(member_check("e_0* not in H∩L", e0, HL, false, p));
  r.checks.push_back(member_check("e_5* in H", e5, H, true, p));
  r.checks.push_back(member_check("e_5* in L", e5, L, true, p));
  r.checks.push_back(member_check("e_5* in H∩L", e5, HL, true, p));
  r.notes.push_back("H∩L is spanned by e_n*, n >= 1; its perp is span{e_0} while H^perp + L^perp = 0");
}

void example_iii(GalleryReport &r, GalleryParams const &params)
{
  Scalar const p = params.p;
  r.horizons["H_p"] = "windows starting below m are the only generators nonzero below m; the window starting at "
                      "m-1 pins the last coordinate, and back-substitution is exact";
  for (auto m : params.bounds) {
    bool        all_zero = true;
    std::string detail;
    for (std::size_t w = 0; w <= params.p_max; ++w) {
      auto const perp = family_perp(FunctionalFamily::window_sums(w), m, p);
      if (!perp.empty()) {
        all_zero = false;
        detail += "H_" + std::to_string(w) + "^perp = " + describe_basis(perp) + "; ";
      }
    }
    r.checks.push_back({"H_p^perp = 0 for p <= " + std::to_string(params.p_max), m, all_zero,
                        all_zero ? "all zero" : detail});
  }
  EvTailFunctional e0_e1{{1, 1}, 0};
  for (auto const &[name, f] :
       std::vector<std::pair<std::string, EvTailFunctional>>{{"e_0*", EvTailFunctional::dual_basis(0)},
                                                             {"e_0*+e_1*", e0_e1}}) {
    std::optional<std::size_t> outside;
    for (std::size_t w = 0; w <= params.p_max && !outside; ++w) {
      if (!membership_in_family(f, FunctionalFamily::window_sums(w), p).member) { outside = w; }
    }
    r.checks.push_back({name + " is not in the intersection of the H_p", 0, outside.has_value(),
                        outside ? "not a member of H_" + std::to_string(*outside) : "member of every H_p checked"});
  }
  std::vector<EvTailFunctional> probes{EvTailFunctional::dual_basis(0), EvTailFunctional::dual_basis(3),
                                       EvTailFunctional::all_ones(), e0_e1};
  bool dense = true;
  for (std::size_t w = 0; w <= params.p_max; ++w) {
    for (auto const &f : probes) { dense = dense && density_probe(FunctionalFamily::window_sums(w), f, p); }
  }
  r.checks.push_back({"each H_p agrees with every probe functional on every set of at most 6 of e_0..e_7", 8, dense,
                      dense ? "dense" : "probe failed"});
  r.notes.push_back("H_p^perp = 0, so each H_p is dense in V* (its closure is V*); H_p is a proper subspace, "
                    "hence not closed");
}

} // namespace

GalleryReport run_example(std::string const &which, GalleryParams const &params)
{
  require_prime(params.p);
  if (params.bounds.empty()) { throw PreconditionError("at least one support bound is needed"); }
  for (auto m : params.bounds) {
    if (m < 1 || m > 4096) { throw PreconditionError("support bounds must lie in [1, 4096]"); }
  }
  if (params.p_max > 256) { throw PreconditionError("p-max must be at most 256"); }
  GalleryReport r;
  r.example = which;
  r.field   = params.p;
  r.bounds  = params.bounds;
  r.p_max   = which == "iii" ? params.p_max : 0;
  if (which == "i") {
    example_i(r, params);
  } else if (which == "ii") {
    example_ii(r, params);
  } else if (which == "iii") {
    example_iii(r, params);
  } else {
    throw PreconditionError("unknown example '" + which + "' (expected i, ii or iii)");
  }
  return r;
}

} // namespace perp::gallery
