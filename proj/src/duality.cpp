#include "perp/duality.hpp"

#include "perp/error.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace perp {

namespace {

std::size_t checked_cover(std::size_t q, std::size_t k, Guards const &guards)
{
  std::size_t cover = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (cover > guards.max_module_order / q) {
      throw GuardExceeded("dual computation needs R^" + std::to_string(k) + ", beyond the module guard of " +
                          std::to_string(guards.max_module_order));
    }
    cover *= q;
  }
  return cover;
}

bool includes(std::span<Code const> big, std::span<Code const> small)
{
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<Code> to_vector(std::span<Code const> s) { return {s.begin(), s.end()}; }

struct ElementsHash
{
  std::size_t operator()(std::vector<Code> const &v) const
  {
    std::size_t h = 1469598103934665603ULL;
    for (Code c : v) { h = (h ^ c) * 1099511628211ULL; }
    return h;
  }
};

using LatticeIndex = std::unordered_map<std::vector<Code>, std::size_t, ElementsHash>;

LatticeIndex index_lattice(std::vector<Submodule> const &subs)
{
  LatticeIndex idx;
  for (std::size_t i = 0; i < subs.size(); ++i) { idx.emplace(to_vector(subs[i].elements()), i); }
  return idx;
}

std::size_t lookup(LatticeIndex const &idx, Submodule const &s)
{
  auto it = idx.find(to_vector(s.elements()));
  if (it == idx.end()) { throw InternalError("perp is missing from the enumerated lattice"); }
  return it->second;
}

} // namespace

DualModule::DualModule(Module base, Module module, std::vector<Code> generators, std::vector<Code> lifts)
    : base_(std::move(base)), module_(std::move(module)), generators_(std::move(generators)), lifts_(std::move(lifts))
{
}

Elem DualModule::eval(Code f, Code m) const
{
  FiniteRing const &A = base_->scalars();
  std::size_t const q = A.order();
  Code              r = lifts_[base_->position(m)];
  Elem              acc = 0;
  for (std::size_t i = 0; i < module_->rank(); ++i) {
    acc = A.add(acc, A.mul(static_cast<Elem>(f % q), static_cast<Elem>(r % q)));
    f   = static_cast<Code>(f / q);
    r   = static_cast<Code>(r / q);
  }
  return acc;
}

std::vector<Elem> DualModule::table(Code f) const
{
  std::vector<Elem> out;
  out.reserve(base_->size());
  for (Code m : base_->elements()) { out.push_back(eval(f, m)); }
  return out;
}

std::vector<Code> minimal_generators(Module const &m)
{
  auto const        whole = whole_module(m);
  std::vector<Code> kept(whole.generators().begin(), whole.generators().end());
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<Code> rest = kept;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (submodule_generated(m, rest).size() == m->size()) {
      kept = std::move(rest);
    } else {
      ++i;
    }
  }
  return kept;
}

DualModule dual_module(Module const &m)
{
  FiniteRing const &A = m->scalars();
  std::size_t const q = A.order();
  Side const        dual_side = opposite(m->side());

  std::vector<Code> generators;
  std::vector<Code> lifts(m->size(), ModulePresentation::none);
  std::vector<Code> syzygies;
  std::size_t       k = 0;

  if (m->full_carrier()) {
    k = m->rank();
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Elem> e(k, 0);
      e[i] = A.one();
      generators.push_back(m->canonical(m->encode(e)));
    }
    for (Code c : m->elements()) { lifts[m->position(c)] = c; }
    syzygies.assign(m->relations().begin(), m->relations().end());
  } else {
    generators = minimal_generators(m);
    if (generators.empty()) { generators.push_back(0); }
    k                       = generators.size();
    std::size_t const cover = checked_cover(q, k, m->guards());
    for (Code c = 0; c < cover; ++c) {
      Code rest  = c;
      Code image = 0;
      for (std::size_t i = k; i-- > 0;) {
        image = m->add(image, m->act(generators[i], static_cast<Elem>(rest % q)));
        rest  = static_cast<Code>(rest / q);
      }
      if (image == 0) { syzygies.push_back(c); }
      auto &slot = lifts[m->position(image)];
      if (slot == ModulePresentation::none) { slot = c; }
    }
  }

  std::size_t const cover = checked_cover(q, k, m->guards());
  auto const        free  = free_module(m->ring(), k, m->side(), m->guards());
  auto const        syz   = submodule_from_elements(free, syzygies);

  std::vector<Code> carrier;
  for (Code x = 0; x < cover; ++x) {
    bool kills = true;
    for (Code r : syz.generators()) {
      Elem acc = 0;
      Code xs = x, rs = r;
      for (std::size_t i = 0; i < k; ++i) {
        acc = A.add(acc, A.mul(static_cast<Elem>(xs % q), static_cast<Elem>(rs % q)));
        xs  = static_cast<Code>(xs / q);
        rs  = static_cast<Code>(rs / q);
      }
      if (acc != 0) {
        kills = false;
        break;
      }
    }
    if (kills) { carrier.push_back(x); }
  }
  std::optional<std::vector<Code>> carrier_opt;
  if (carrier.size() != cover) { carrier_opt = std::move(carrier); }
  auto module = make_module(m->ring(), dual_side, k, std::move(carrier_opt), {0}, m->guards());
  return DualModule(m, std::move(module), std::move(generators), std::move(lifts));
}

Submodule perp_of_set(DualModule const &dual, std::span<Code const> elements)
{
  std::vector<Code> out;
  for (Code f : dual.module()->elements()) {
    bool vanishes = true;
    for (Code x : elements) {
      if (dual.eval(f, x) != 0) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) { out.push_back(f); }
  }
  return submodule_from_elements(dual.module(), std::move(out));
}

Submodule perp_of_submodule(DualModule const &dual, Submodule const &x)
{
  if (x.module()->fingerprint() != dual.base()->fingerprint()) {
    throw MismatchError("submodule does not belong to the dual's base module");
  }
  return perp_of_set(dual, x.generators());
}

Submodule perp_of_dual_submodule(DualModule const &dual, Submodule const &y)
{
  if (y.module()->fingerprint() != dual.module()->fingerprint()) {
    throw MismatchError("submodule does not belong to the dual module");
  }
  std::vector<Code> out;
  for (Code m : dual.base()->elements()) {
    bool killed = true;
    for (Code f : y.generators()) {
      if (dual.eval(f, m) != 0) {
        killed = false;
        break;
      }
    }
    if (killed) { out.push_back(m); }
  }
  return submodule_from_elements(dual.base(), std::move(out));
}

ClosureResult closure(DualModule const &dual, Submodule const &y)
{
  std::set<std::vector<Elem>> tables;
  for (Code g : y.elements()) { tables.insert(dual.table(g)); }
  std::vector<Code> out;
  for (Code f : dual.module()->elements()) {
    if (tables.contains(dual.table(f))) { out.push_back(f); }
  }
  bool const certified = out.size() == y.size();
  return {submodule_from_elements(dual.module(), std::move(out)), certified};
}

PhiMap phi_map(Module const &m)
{
  auto dual   = dual_module(m);
  auto bidual = dual_module(dual.module());
  auto const &B = bidual.module();

  std::vector<Code> image;
  image.reserve(m->size());
  std::vector<Elem> coords(B->rank());
  for (Code x : m->elements()) {
    for (std::size_t j = 0; j < coords.size(); ++j) { coords[j] = dual.eval(bidual.generators()[j], x); }
    Code const c = B->encode(coords);
    if (!B->in_carrier(c)) { throw InternalError("evaluation functional is not an element of the bidual"); }
    image.push_back(B->canonical(c));
  }

  bool verified = true;
  for (std::size_t i = 0; i < m->size() && verified; ++i) {
    for (Code f : dual.module()->elements()) {
      if (bidual.eval(image[i], f) != dual.eval(f, m->elements()[i])) {
        verified = false;
        break;
      }
    }
  }
  std::vector<Code> distinct = image;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  PhiMap phi{m, std::move(dual), std::move(bidual), std::move(image)};
  phi.evaluation_verified = verified;
  phi.injective           = distinct.size() == m->size();
  phi.surjective          = distinct.size() == phi.bidual.module()->size();
  return phi;
}

Submodule phi_kernel(PhiMap const &phi)
{
  std::vector<Code> out;
  for (std::size_t i = 0; i < phi.image.size(); ++i) {
    if (phi.image[i] == 0) { out.push_back(phi.domain->elements()[i]); }
  }
  return submodule_from_elements(phi.domain, std::move(out));
}

Submodule phi_kernel(Module const &m) { return phi_kernel(phi_map(m)); }

void LawReport::merge(LawReport const &other)
{
  for (auto const &[law, n] : other.instances) { instances[law] += n; }
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  strict.insert(strict.end(), other.strict.begin(), other.strict.end());
}

LawReport check_galois_laws(Module const &m)
{
  auto const dual = dual_module(m);
  auto const xs   = enumerate_submodules(m);
  auto const ys   = enumerate_submodules(dual.module());
  auto const xidx = index_lattice(xs);
  auto const yidx = index_lattice(ys);

  std::vector<std::size_t> perp_x(xs.size()), perp_y(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) { perp_x[i] = lookup(yidx, perp_of_submodule(dual, xs[i])); }
  for (std::size_t j = 0; j < ys.size(); ++j) { perp_y[j] = lookup(xidx, perp_of_dual_submodule(dual, ys[j])); }

  LawReport report;
  auto      fail = [&](char const *law, Submodule const &a, Submodule const &b) {
    report.violations.push_back({law, to_vector(a.elements()), to_vector(b.elements())});
  };

  for (std::size_t i = 0; i < xs.size(); ++i) {
    poll_deadline();
    for (std::size_t i2 = 0; i2 < xs.size(); ++i2) {
      if (i == i2 || !xs[i].is_subset_of(xs[i2])) { continue; }
      ++report.instances["antitone"];
      if (!ys[perp_x[i2]].is_subset_of(ys[perp_x[i]])) { fail("antitone", xs[i], xs[i2]); }
    }
    ++report.instances["double-perp-extensive"];
    if (!xs[i].is_subset_of(xs[perp_y[perp_x[i]]])) { fail("double-perp-extensive", xs[i], xs[perp_y[perp_x[i]]]); }
    ++report.instances["triple-perp"];
    if (perp_x[perp_y[perp_x[i]]] != perp_x[i]) { fail("triple-perp", xs[i], ys[perp_x[i]]); }
  }
  for (std::size_t j = 0; j < ys.size(); ++j) {
    poll_deadline();
    for (std::size_t j2 = 0; j2 < ys.size(); ++j2) {
      if (j == j2 || !ys[j].is_subset_of(ys[j2])) { continue; }
      ++report.instances["dual-antitone"];
      if (!xs[perp_y[j2]].is_subset_of(xs[perp_y[j]])) { fail("dual-antitone", ys[j], ys[j2]); }
    }
    ++report.instances["dual-double-perp-extensive"];
    if (!ys[j].is_subset_of(ys[perp_x[perp_y[j]]])) { fail("dual-double-perp-extensive", ys[j], ys[perp_x[perp_y[j]]]); }
    ++report.instances["dual-triple-perp"];
    if (perp_y[perp_x[perp_y[j]]] != perp_y[j]) { fail("dual-triple-perp", ys[j], xs[perp_y[j]]); }
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    poll_deadline();
    for (std::size_t j = 0; j < ys.size(); ++j) {
      ++report.instances["galois-connection"];
      bool const lhs = ys[j].is_subset_of(ys[perp_x[i]]);
      bool const rhs = xs[i].is_subset_of(xs[perp_y[j]]);
      if (lhs != rhs) { fail("galois-connection", xs[i], ys[j]); }
    }
  }
  return report;
}

LawReport check_sum_intersect_laws(Module const                                &m,
                                   std::vector<std::vector<std::size_t>> const &families,
                                   std::vector<std::vector<std::size_t>> const &dual_families,
                                   LawHypotheses                                hypotheses)
{
  auto const dual = dual_module(m);
  auto const xs   = enumerate_submodules(m);
  auto const ys   = enumerate_submodules(dual.module());

  std::vector<Submodule> perp_x, perp_y;
  for (auto const &x : xs) { perp_x.push_back(perp_of_submodule(dual, x)); }
  for (auto const &y : ys) { perp_y.push_back(perp_of_dual_submodule(dual, y)); }

  LawReport report;
  auto      record = [](std::vector<LawViolation> &into, char const *law, Submodule const &a, Submodule const &b) {
    into.push_back({law, to_vector(a.elements()), to_vector(b.elements())});
  };

  // One direction: lattice `subs` with perps `perps` landing in `target`.
  auto check = [&](std::vector<std::vector<std::size_t>> const &fams, std::vector<Submodule> const &subs,
                   std::vector<Submodule> const &perps, auto perp_fn, bool equality, char const *sum_law,
                   char const *inclusion_law, char const *equality_law) {
    for (auto const &fam : fams) {
      poll_deadline();
      if (fam.empty()) { continue; }
      std::vector<Submodule> parts, part_perps;
      for (auto i : fam) {
        parts.push_back(subs.at(i));
        part_perps.push_back(perps.at(i));
      }
      auto const sum          = submodule_sum(parts);
      auto const meet         = submodule_intersect(parts);
      auto const perp_sum     = perp_fn(sum);
      auto const perp_meet    = perp_fn(meet);
      auto const meet_of_perp = submodule_intersect(part_perps);
      auto const sum_of_perp  = submodule_sum(part_perps);

      ++report.instances[sum_law];
      if (perp_sum.elements().size() != meet_of_perp.size() ||
          !std::equal(perp_sum.elements().begin(), perp_sum.elements().end(), meet_of_perp.elements().begin())) {
        record(report.violations, sum_law, perp_sum, meet_of_perp);
      }
      ++report.instances[inclusion_law];
      if (!includes(perp_meet.elements(), sum_of_perp.elements())) {
        record(report.violations, inclusion_law, perp_meet, sum_of_perp);
      } else if (perp_meet.size() != sum_of_perp.size()) {
        if (equality) {
          record(report.violations, equality_law, perp_meet, sum_of_perp);
        } else {
          record(report.strict, equality_law, perp_meet, sum_of_perp);
        }
      }
      if (equality) { ++report.instances[equality_law]; }
    }
  };

  check(families, xs, perp_x, [&](Submodule const &s) { return perp_of_submodule(dual, s); },
        hypotheses.coefficient_injective, "perp-of-sum", "perp-of-intersection-contains-sum",
        "perp-of-intersection-equals-sum");
  check(dual_families, ys, perp_y, [&](Submodule const &s) { return perp_of_dual_submodule(dual, s); },
        hypotheses.ring_pf, "dual-perp-of-sum", "dual-perp-of-intersection-contains-sum",
        "dual-perp-of-intersection-equals-sum");
  return report;
}

LawReport check_sum_intersect_laws(Module const &m, LawHypotheses hypotheses)
{
  auto const dual     = dual_module(m);
  auto const x_count  = enumerate_submodules(m).size();
  auto const y_count  = enumerate_submodules(dual.module()).size();
  auto       families = [](std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) { out.push_back({i, j}); }
    }
    if (n <= 24) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          for (std::size_t k = j + 1; k < n; ++k) { out.push_back({i, j, k}); }
        }
      }
    }
    return out;
  };
  return check_sum_intersect_laws(m, families(x_count), families(y_count), hypotheses);
}

bool is_dense(DualModule const &dual, Submodule const &y, bool ring_pf)
{
  if (!ring_pf && !dual.base()->ring().base().is_division_ring()) {
    throw PreconditionError("density test needs a PF ring or a division ring");
  }
  bool const dense = perp_of_dual_submodule(dual, y).is_zero();
  if (dense != (y.size() == dual.module()->size())) {
    throw InternalError("zero perp and Y == M* disagree over a PF ring");
  }
  return dense;
}

} // namespace perp
