// Brute-force counterparts of the module and duality code. Nothing here calls
// the main closure, canonicalization or perp routines; the presentation is
// read only through its raw data (ring tables, side, rank, carrier predicate,
// relation set).

#include "perp/oracle.hpp"

#include "perp/duality.hpp"
#include "perp/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace perp::oracle {

namespace {

using Tuple = std::vector<Elem>;
using Mask  = std::uint64_t;

Mask bit(std::size_t i) { return Mask{1} << i; }

struct OracleModule
{
  FiniteRing const *ring   = nullptr; // additive structure
  FiniteRing const *acting = nullptr;
  std::size_t       rank   = 0;

  std::vector<Code>             carrier_codes; // ascending
  std::map<Tuple, std::size_t>  coset_of;      // every carrier tuple
  std::vector<Tuple>            reps;
  std::vector<Code>             min_code; // per coset
  std::vector<std::vector<std::size_t>> add;
  std::vector<std::vector<std::size_t>> act;
  std::size_t                   zero = 0;

  std::size_t size() const { return reps.size(); }
};

Tuple decode(Code c, std::size_t rank, std::size_t q)
{
  Tuple t(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    t[rank - 1 - i] = static_cast<Elem>(c % q);
    c               = static_cast<Code>(c / q);
  }
  return t;
}

Tuple tuple_add(FiniteRing const &R, Tuple const &a, Tuple const &b)
{
  Tuple s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) { s[i] = R.add(a[i], b[i]); }
  return s;
}

OracleModule build(Module const &m)
{
  OracleModule o;
  o.ring   = &m->ring().base();
  o.acting = &m->scalars();
  o.rank   = m->rank();
  std::size_t const q = o.ring->order();

  std::set<Tuple> carrier;
  for (Code c = 0; c < m->cover_size(); ++c) {
    if (m->in_carrier(c)) {
      o.carrier_codes.push_back(c);
      carrier.insert(decode(c, o.rank, q));
    }
  }
  std::vector<Tuple> relations;
  for (Code k : m->relations()) { relations.push_back(decode(k, o.rank, q)); }

  // Cosets discovered from the largest tuple down.
  for (auto it = carrier.rbegin(); it != carrier.rend(); ++it) {
    if (o.coset_of.contains(*it)) { continue; }
    std::size_t const id = o.reps.size();
    o.reps.push_back(*it);
    for (auto const &k : relations) {
      auto const t = tuple_add(*o.ring, *it, k);
      if (!carrier.contains(t)) { throw InternalError("oracle: relation leaves the carrier"); }
      o.coset_of[t] = id;
    }
    if (o.reps.size() > bound) { throw GuardExceeded("oracle bound of 64 elements exceeded"); }
  }
  o.min_code.assign(o.size(), ModulePresentation::none);
  for (Code c : o.carrier_codes) {
    auto &slot = o.min_code[o.coset_of.at(decode(c, o.rank, q))];
    slot       = std::min(slot, c);
  }
  o.zero = o.coset_of.at(Tuple(o.rank, 0));

  o.add.assign(o.size(), std::vector<std::size_t>(o.size()));
  o.act.assign(o.size(), std::vector<std::size_t>(q));
  for (std::size_t a = 0; a < o.size(); ++a) {
    for (std::size_t b = 0; b < o.size(); ++b) { o.add[a][b] = o.coset_of.at(tuple_add(*o.ring, o.reps[a], o.reps[b])); }
    for (Elem r = 0; r < q; ++r) {
      Tuple t(o.rank);
      for (std::size_t i = 0; i < o.rank; ++i) { t[i] = o.acting->mul(o.reps[a][i], r); }
      o.act[a][r] = o.coset_of.at(t);
    }
  }
  return o;
}

// Generic finite module on indices 0..n-1 given by tables.
struct Tables
{
  std::size_t                           n = 0;
  std::size_t                           zero = 0;
  std::size_t                           scalars = 0;
  std::vector<std::vector<std::size_t>> add;
  std::vector<std::vector<std::size_t>> act;
};

Tables tables_of(OracleModule const &o) { return {o.size(), o.zero, o.ring->order(), o.add, o.act}; }

Mask close(Tables const &t, Mask s)
{
  s |= bit(t.zero);
  while (true) {
    Mask next = s;
    for (std::size_t a = 0; a < t.n; ++a) {
      if (!(s & bit(a))) { continue; }
      for (std::size_t r = 0; r < t.scalars; ++r) { next |= bit(t.act[a][r]); }
      for (std::size_t b = 0; b < t.n; ++b) {
        if (s & bit(b)) { next |= bit(t.add[a][b]); }
      }
    }
    if (next == s) { return s; }
    s = next;
  }
}

bool is_closed(Tables const &t, Mask s)
{
  if (!(s & bit(t.zero))) { return false; }
  for (std::size_t a = 0; a < t.n; ++a) {
    if (!(s & bit(a))) { continue; }
    for (std::size_t r = 0; r < t.scalars; ++r) {
      if (!(s & bit(t.act[a][r]))) { return false; }
    }
    for (std::size_t b = 0; b < t.n; ++b) {
      if ((s & bit(b)) && !(s & bit(t.add[a][b]))) { return false; }
    }
  }
  return true;
}

std::vector<Mask> saturate(Tables const &t)
{
  if (t.n > bound) { throw GuardExceeded("oracle bound of 64 elements exceeded"); }
  std::set<Mask> cyclic;
  for (std::size_t g = 0; g < t.n; ++g) { cyclic.insert(close(t, bit(g))); }
  std::set<Mask>   found(cyclic.begin(), cyclic.end());
  std::deque<Mask> work(found.begin(), found.end());
  while (!work.empty()) {
    Mask const s = work.front();
    work.pop_front();
    for (Mask c : cyclic) {
      Mask const j = close(t, s | c);
      if (found.insert(j).second) { work.push_back(j); }
    }
  }
  std::vector<Mask> out;
  for (Mask s : found) {
    if (!is_closed(t, s)) { throw InternalError("oracle: saturation produced a non-submodule"); }
    out.push_back(s);
  }
  return out;
}

CodeSet codes_over(OracleModule const &o, Mask s)
{
  CodeSet out;
  std::size_t const q = o.ring->order();
  for (Code c : o.carrier_codes) {
    if (s & bit(o.coset_of.at(decode(c, o.rank, q)))) { out.push_back(c); }
  }
  return out;
}

Mask mask_of(OracleModule const &o, CodeSet const &x)
{
  std::size_t const q = o.ring->order();
  Mask              s = 0;
  for (Code c : x) { s |= bit(o.coset_of.at(decode(c, o.rank, q))); }
  return s;
}

// Maps as value tables indexed by coset of the source.
std::vector<std::vector<std::size_t>> homs(OracleModule const &src, OracleModule const &dst)
{
  if (src.acting->fingerprint() != dst.acting->fingerprint()) { throw MismatchError("oracle: modules on different sides"); }
  auto const        st = tables_of(src);
  std::vector<std::size_t> gens;
  Mask              span = close(st, 0);
  for (std::size_t e = 0; e < src.size(); ++e) {
    if (span & bit(e)) { continue; }
    gens.push_back(e);
    span = close(st, span | bit(e));
  }
  double assignments = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) { assignments *= static_cast<double>(dst.size()); }
  if (assignments > 1 << 20) { throw GuardExceeded("oracle hom enumeration too large"); }

  std::size_t const q = src.ring->order();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t>              images(gens.size(), 0);
  while (true) {
    constexpr std::size_t unset = ~std::size_t{0};
    std::vector<std::size_t> f(src.size(), unset);
    f[src.zero] = dst.zero;
    std::deque<std::size_t> queue{src.zero};
    bool                    ok = true;
    while (!queue.empty() && ok) {
      std::size_t const m = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < gens.size() && ok; ++j) {
        for (Elem r = 0; r < q; ++r) {
          std::size_t const m2 = src.add[m][src.act[gens[j]][r]];
          std::size_t const v  = dst.add[f[m]][dst.act[images[j]][r]];
          if (f[m2] == unset) {
            f[m2] = v;
            queue.push_back(m2);
          } else if (f[m2] != v) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) {
      for (std::size_t a = 0; a < src.size() && ok; ++a) {
        for (std::size_t b = 0; b < src.size() && ok; ++b) { ok = f[src.add[a][b]] == dst.add[f[a]][f[b]]; }
        for (Elem r = 0; r < q && ok; ++r) { ok = f[src.act[a][r]] == dst.act[f[a]][r]; }
      }
    }
    if (ok) { out.push_back(std::move(f)); }

    std::size_t i = 0;
    while (i < images.size() && ++images[i] == dst.size()) { images[i++] = 0; }
    if (i == images.size()) { break; }
  }
  return out;
}

HomTable table_over_codes(OracleModule const &src, std::vector<std::size_t> const &f, OracleModule const &dst)
{
  HomTable          t;
  std::size_t const q = src.ring->order();
  for (Code c : src.carrier_codes) { t.push_back(dst.min_code[f[src.coset_of.at(decode(c, src.rank, q))]]); }
  return t;
}

OracleModule regular(Module const &m) { return build(free_module(m->ring(), 1, m->side(), m->guards())); }

struct DualData
{
  OracleModule                          base;
  OracleModule                          target;
  std::vector<std::vector<std::size_t>> maps;
  std::vector<HomTable>                 tables;
  std::map<HomTable, std::size_t>       index;
};

DualData dual_data(Module const &m)
{
  DualData d{build(m), regular(m), {}, {}, {}};
  d.maps = homs(d.base, d.target);
  for (auto const &f : d.maps) {
    d.index[table_over_codes(d.base, f, d.target)] = d.tables.size();
    d.tables.push_back(table_over_codes(d.base, f, d.target));
  }
  return d;
}

// Hom(M, R) as a module on the other side: pointwise sum, scalars applied to values.
Tables dual_tables(DualData const &d)
{
  Tables            t;
  FiniteRing const &A = *d.base.acting;
  t.n                 = d.maps.size();
  t.scalars           = A.order();
  t.add.assign(t.n, std::vector<std::size_t>(t.n));
  t.act.assign(t.n, std::vector<std::size_t>(t.scalars));
  std::map<std::vector<std::size_t>, std::size_t> idx;
  for (std::size_t i = 0; i < t.n; ++i) { idx[d.maps[i]] = i; }
  for (std::size_t i = 0; i < t.n; ++i) {
    bool zero = true;
    for (std::size_t v : d.maps[i]) { zero = zero && v == d.target.zero; }
    if (zero) { t.zero = i; }
    for (std::size_t j = 0; j < t.n; ++j) {
      std::vector<std::size_t> s(d.base.size());
      for (std::size_t m = 0; m < s.size(); ++m) {
        s[m] = d.target.coset_of.at({d.target.ring->add(d.target.reps[d.maps[i][m]][0], d.target.reps[d.maps[j][m]][0])});
      }
      t.add[i][j] = idx.at(s);
    }
    for (Elem r = 0; r < t.scalars; ++r) {
      std::vector<std::size_t> s(d.base.size());
      for (std::size_t m = 0; m < s.size(); ++m) {
        s[m] = d.target.coset_of.at({A.mul(r, d.target.reps[d.maps[i][m]][0])});
      }
      t.act[i][r] = idx.at(s);
    }
  }
  return t;
}

std::string show(CodeSet const &s)
{
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) { out += (i ? "," : "") + std::to_string(s[i]); }
  return out + "}";
}

std::string show(std::set<HomTable> const &s)
{
  std::string out = "{";
  bool        first = true;
  for (auto const &t : s) {
    out += first ? "" : ",";
    first = false;
    out += "[";
    for (std::size_t i = 0; i < t.size(); ++i) { out += (i ? " " : "") + std::to_string(t[i]); }
    out += "]";
  }
  return out + "}";
}

} // namespace

std::vector<CodeSet> oracle_submodules(Module const &m)
{
  auto const           o = build(m);
  std::vector<CodeSet> out;
  for (Mask s : saturate(tables_of(o))) { out.push_back(codes_over(o, s)); }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HomTable> oracle_hom_set(Module const &m, Module const &n)
{
  auto const            src = build(m);
  auto const            dst = build(n);
  std::vector<HomTable> out;
  for (auto const &f : homs(src, dst)) { out.push_back(table_over_codes(src, f, dst)); }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HomTable> oracle_perp(Module const &m, CodeSet const &x)
{
  auto const            d    = dual_data(m);
  Mask const            mask = mask_of(d.base, x);
  std::vector<HomTable> out;
  for (std::size_t i = 0; i < d.maps.size(); ++i) {
    bool vanishes = true;
    for (std::size_t e = 0; e < d.base.size(); ++e) {
      if ((mask & bit(e)) && d.maps[i][e] != d.target.zero) { vanishes = false; }
    }
    if (vanishes) { out.push_back(d.tables[i]); }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CodeSet oracle_perp(Module const &m, std::vector<HomTable> const &y)
{
  auto const d = dual_data(m);
  Mask       killed = 0;
  for (std::size_t e = 0; e < d.base.size(); ++e) {
    bool all = true;
    for (auto const &t : y) {
      if (d.maps[d.index.at(t)][e] != d.target.zero) { all = false; }
    }
    if (all) { killed |= bit(e); }
  }
  return codes_over(d.base, killed);
}

std::vector<std::vector<HomTable>> oracle_dual_submodules(Module const &m)
{
  auto const                         d = dual_data(m);
  std::vector<std::vector<HomTable>> out;
  for (Mask s : saturate(dual_tables(d))) {
    std::vector<HomTable> sub;
    for (std::size_t i = 0; i < d.tables.size(); ++i) {
      if (s & bit(i)) { sub.push_back(d.tables[i]); }
    }
    std::sort(sub.begin(), sub.end());
    out.push_back(std::move(sub));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CrossCheckReport cross_check(Module const &m, std::string target)
{
  CrossCheckReport report;
  report.target = std::move(target);
  if (m->size() > bound) { throw GuardExceeded("oracle bound of 64 elements exceeded by " + report.target); }

  std::vector<Code> carrier;
  for (Code c = 0; c < m->cover_size(); ++c) {
    if (m->in_carrier(c)) { carrier.push_back(c); }
  }
  auto const main_codes = [&](Submodule const &x) {
    CodeSet out;
    for (Code c : carrier) {
      if (x.contains(m->canonical(c))) { out.push_back(c); }
    }
    return out;
  };
  auto const dual       = dual_module(m);
  if (dual.module()->size() > bound) {
    throw GuardExceeded("oracle bound of 64 elements exceeded by the dual of " + report.target);
  }
  auto const main_table = [&](Code f) {
    HomTable t;
    for (Code c : carrier) { t.push_back(dual.eval(f, m->canonical(c))); }
    return t;
  };
  auto const main_tables = [&](Submodule const &y) {
    std::set<HomTable> out;
    for (Code f : y.elements()) { out.insert(main_table(f)); }
    return out;
  };
  auto mismatch = [&](std::string check, std::string a, std::string b) {
    report.mismatches.push_back({std::move(check), std::move(a), std::move(b)});
  };

  // Submodule lattices.
  auto const xs = enumerate_submodules(m);
  std::set<CodeSet> main_lattice;
  for (auto const &x : xs) { main_lattice.insert(main_codes(x)); }
  auto const        oracle_list = oracle_submodules(m);
  std::set<CodeSet> oracle_lattice(oracle_list.begin(), oracle_list.end());
  ++report.checks;
  if (main_lattice != oracle_lattice || oracle_list.size() != oracle_lattice.size()) {
    mismatch("submodule lattice", std::to_string(main_lattice.size()) + " submodules",
             std::to_string(oracle_lattice.size()) + " submodules");
  }

  // Dual carrier.
  auto const         oracle_duals = oracle_hom_set(m, free_module(m->ring(), 1, m->side(), m->guards()));
  std::set<HomTable> main_dual;
  for (Code f : dual.module()->elements()) { main_dual.insert(main_table(f)); }
  std::set<HomTable> oracle_dual(oracle_duals.begin(), oracle_duals.end());
  ++report.checks;
  if (main_dual != oracle_dual || main_dual.size() != dual.module()->size()) {
    mismatch("dual carrier", std::to_string(dual.module()->size()) + " maps", std::to_string(oracle_dual.size()) + " maps");
  }

  // X -> X^perp.
  for (auto const &x : xs) {
    auto const codes    = main_codes(x);
    auto const main_p   = main_tables(perp_of_submodule(dual, x));
    auto const o        = oracle_perp(m, codes);
    std::set<HomTable> oracle_p(o.begin(), o.end());
    ++report.checks;
    if (main_p != oracle_p) { mismatch("perp of " + show(codes), show(main_p), show(oracle_p)); }
  }

  // Dual lattice and Y -> Y^perp.
  auto const ys = enumerate_submodules(dual.module());
  std::set<std::set<HomTable>> main_dual_lattice;
  for (auto const &y : ys) { main_dual_lattice.insert(main_tables(y)); }
  std::set<std::set<HomTable>> oracle_dual_lattice;
  for (auto const &y : oracle_dual_submodules(m)) { oracle_dual_lattice.insert({y.begin(), y.end()}); }
  ++report.checks;
  if (main_dual_lattice != oracle_dual_lattice) {
    mismatch("dual submodule lattice", std::to_string(main_dual_lattice.size()) + " submodules",
             std::to_string(oracle_dual_lattice.size()) + " submodules");
  }
  for (auto const &y : ys) {
    auto const tables = main_tables(y);
    auto const main_p = main_codes(perp_of_dual_submodule(dual, y));
    auto const o      = oracle_perp(m, std::vector<HomTable>(tables.begin(), tables.end()));
    ++report.checks;
    if (main_p != o) { mismatch("perp of dual submodule " + show(tables), show(main_p), show(o)); }
  }
  return report;
}

} // namespace perp::oracle
