#include "perp/pf.hpp"

#include "perp/error.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <unordered_map>

namespace perp {

namespace {

std::vector<Code> to_vector(std::span<Code const> s) { return {s.begin(), s.end()}; }

std::string free_label(std::size_t rank, Side side)
{
  std::string const power = rank == 1 ? "R" : "R^" + std::to_string(rank);
  return side == Side::right ? power + "_R" : "_R " + power;
}

std::string quotient_label(Module const &free, Submodule const &k)
{
  std::string label = free_label(free->rank(), free->side());
  if (k.is_zero()) { return label; }
  label += "/<";
  for (std::size_t i = 0; i < k.generators().size(); ++i) {
    if (i) { label += ", "; }
    label += free->format(k.generators()[i]);
  }
  return label + ">";
}

template <typename Fn>
auto timed(std::map<std::string, double> &timings, std::string const &name, Fn fn)
{
  auto const start  = std::chrono::steady_clock::now();
  auto       result = fn();
  timings[name]     = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// The ideal as a module in its own right, with codes shared with R.
Module ideal_module(Ring const &ring, Side side, Submodule const &ideal, Guards const &guards)
{
  std::optional<std::vector<Code>> carrier;
  if (ideal.size() != ring.base().order()) { carrier = to_vector(ideal.elements()); }
  return make_module(ring, side, 1, std::move(carrier), {0}, guards);
}

std::vector<Code> set_difference(std::span<Code const> big, std::span<Code const> small)
{
  std::vector<Code> out;
  std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(out));
  return out;
}

} // namespace

InjectivityResult is_self_injective(Ring const &ring, Side side, Guards const &guards)
{
  FiniteRing const &A      = ring.acting(side);
  auto const        free   = free_module(ring, 1, side, guards);
  auto const        ideals = enumerate_submodules(free);

  InjectivityResult result;
  for (auto it = ideals.rbegin(); it != ideals.rend(); ++it) {
    poll_deadline();
    auto const ideal = ideal_module(ring, side, *it, guards);
    auto const dual  = dual_module(ideal);
    auto const gens  = dual.generators();

    std::set<std::vector<Elem>> multiplications;
    for (Elem a = 0; a < A.order(); ++a) {
      std::vector<Elem> values;
      for (Code g : gens) { values.push_back(A.mul(a, static_cast<Elem>(g))); }
      multiplications.insert(std::move(values));
    }
    ++result.ideals_checked;
    for (Code h : dual.module()->elements()) {
      ++result.homs_checked;
      std::vector<Elem> values;
      for (Code g : gens) { values.push_back(dual.eval(h, g)); }
      if (!multiplications.contains(values)) {
        result.holds   = false;
        result.witness = BaerWitness{side, Submodule(free, to_vector(gens), to_vector(it->elements())), values};
        return result;
      }
    }
  }
  return result;
}

KaschResult is_kasch(Ring const &ring, Side side, Guards const &guards)
{
  auto const free   = free_module(ring, 1, side, guards);
  auto const ideals = enumerate_submodules(free);
  auto const dual   = dual_module(free);

  KaschResult result;
  std::size_t const proper = ideals.size() - 1;
  for (std::size_t i = 0; i < proper; ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < proper && maximal; ++j) {
      if (j != i && ideals[j].size() > ideals[i].size() && ideals[i].is_subset_of(ideals[j])) { maximal = false; }
    }
    if (!maximal) { continue; }
    ++result.maximal_ideals;
    if (result.holds && perp_of_submodule(dual, ideals[i]).is_zero()) {
      result.holds   = false;
      result.witness = KaschWitness{side, ideals[i]};
    }
  }
  return result;
}

PFReport is_pf(Ring const &ring, Guards const &guards)
{
  PFReport report;
  report.ring_hash       = ring.base().fingerprint();
  report.right_injective = timed(report.timings, "right_self_injective",
                                 [&] { return is_self_injective(ring, Side::right, guards); });
  report.left_injective  = timed(report.timings, "left_self_injective",
                                 [&] { return is_self_injective(ring, Side::left, guards); });
  report.right_kasch = timed(report.timings, "right_kasch", [&] { return is_kasch(ring, Side::right, guards); });
  report.left_kasch  = timed(report.timings, "left_kasch", [&] { return is_kasch(ring, Side::left, guards); });
  report.is_pf = report.right_injective.holds && report.left_injective.holds && report.right_kasch.holds &&
                 report.left_kasch.holds;
  return report;
}

PerpEquivalence has_perp_equivalence(Module const &m, std::string label)
{
  auto const dual = dual_module(m);
  auto const xs   = enumerate_submodules(m);
  auto const ys   = enumerate_submodules(dual.module());

  PerpEquivalence result;
  result.submodules      = xs.size();
  result.dual_submodules = ys.size();

  std::vector<Submodule> perp_x, perp_y;
  for (auto const &x : xs) {
    poll_deadline();
    perp_x.push_back(perp_of_submodule(dual, x));
    auto const back = perp_of_dual_submodule(dual, perp_x.back());
    if (back == x) { continue; }
    result.submodules_closed = false;
    if (!result.witness) {
      result.witness = Witness{label, m, false, x, back, set_difference(back.elements(), x.elements())};
    }
  }
  for (auto const &y : ys) {
    poll_deadline();
    perp_y.push_back(perp_of_dual_submodule(dual, y));
    auto const back = perp_of_submodule(dual, perp_y.back());
    if (back == y) { continue; }
    result.dual_submodules_closed = false;
    if (!result.witness) {
      result.witness = Witness{label, m, true, y, back, set_difference(back.elements(), y.elements())};
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i != j && xs[i].is_subset_of(xs[j]) && !perp_x[j].is_subset_of(perp_x[i])) {
        throw InternalError("perp failed to reverse an inclusion of submodules");
      }
    }
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (i != j && ys[i].is_subset_of(ys[j]) && !perp_y[j].is_subset_of(perp_y[i])) {
        throw InternalError("perp failed to reverse an inclusion of dual submodules");
      }
    }
  }
  return result;
}

namespace {

ScopeModule analyze_module(Module const &free, Submodule const &k)
{
  auto const  q = quotient_module(free, k).module;
  ScopeModule sm{quotient_label(free, k), k, q, has_perp_equivalence(q, quotient_label(free, k))};

  auto const phi = phi_map(q);
  auto const zdp = perp_of_dual_submodule(phi.dual, perp_of_submodule(phi.dual, zero_submodule(q)));
  auto const ker = phi_kernel(phi);
  sm.zero_double_perp = zdp.size();
  sm.phi_injective    = phi.injective;
  sm.phi_surjective   = phi.surjective;
  sm.phi_verified     = phi.evaluation_verified;
  sm.phi_kernel       = ker.size();
  sm.kernel_matches   = ker == zdp;

  std::set<std::vector<Elem>> images;
  auto const                  functionals = phi.dual.module()->elements();
  for (Code x : q->elements()) {
    std::vector<Elem> tuple;
    tuple.reserve(functionals.size());
    for (Code f : functionals) { tuple.push_back(phi.dual.eval(f, x)); }
    images.insert(std::move(tuple));
  }
  sm.embeds_in_power = images.size() == q->size();
  return sm;
}

SideScope analyze_side(Ring const &ring, std::size_t rank, Side side, Guards const &guards)
{
  SideScope s{side, free_module(ring, rank, side, guards), {}, {}};
  s.lattice = enumerate_submodules(s.free);
  for (auto const &k : s.lattice) {
    poll_deadline();
    s.modules.push_back(analyze_module(s.free, k));
  }
  return s;
}

std::optional<Witness> first_witness(std::vector<ScopeModule> const &modules, bool submodules_only)
{
  for (auto const &m : modules) {
    bool const fails = submodules_only ? !m.equivalence.submodules_closed : !m.equivalence.holds();
    if (fails) { return m.equivalence.witness; }
  }
  return std::nullopt;
}

bool all_hold(std::vector<ScopeModule> const &modules)
{
  return std::all_of(modules.begin(), modules.end(), [](auto const &m) { return m.equivalence.holds(); });
}

} // namespace

Scope analyze_scope(Ring const &ring, std::size_t rank, Guards const &guards)
{
  return Scope{rank, analyze_side(ring, rank, Side::right, guards), analyze_side(ring, rank, Side::left, guards)};
}

TheoremReport verify_main_theorem(Ring const &ring, Guards const &guards)
{
  auto pf = is_pf(ring, guards);
  return verify_main_theorem(ring, std::move(pf), analyze_scope(ring, 2, guards));
}

TheoremReport verify_main_theorem(Ring const &, PFReport pf, Scope const &scope)
{
  TheoremReport report;
  auto         &st = report.statements;

  st["v"] = {pf.is_pf, "exhaustive Baer and Kasch tests on both sides", std::nullopt};

  auto const &r2_right = scope.right.modules.front();
  auto const &r2_left  = scope.left.modules.front();
  st["vii"]            = {r2_right.equivalence.holds() && r2_left.equivalence.holds(), "R^2 on both sides",
                          r2_right.equivalence.witness ? r2_right.equivalence.witness : r2_left.equivalence.witness};

  st["ii"] = {all_hold(scope.right.modules), "every quotient of R^2 as a right module",
              first_witness(scope.right.modules, false)};
  st["iv"] = {all_hold(scope.left.modules), "every quotient of R^2 as a left module",
              first_witness(scope.left.modules, false)};

  auto vi_witness = first_witness(scope.right.modules, true);
  if (!vi_witness) { vi_witness = first_witness(scope.left.modules, true); }
  st["vi"] = {!vi_witness.has_value(), "every submodule of every quotient of R^2, both sides", vi_witness};

  st["i"]       = st["ii"];
  st["i"].scope = "right modules, checked on the 2-generated scope only";
  st["iii"]       = st["iv"];
  st["iii"].scope = "left modules, checked on the 2-generated scope only";

  bool const first     = st.begin()->second.holds;
  report.consistent    = std::all_of(st.begin(), st.end(), [&](auto const &kv) { return kv.second.holds == first; });
  report.pf            = std::move(pf);
  return report;
}

LemmaF8Report verify_lemma_f8(Scope const &scope)
{
  auto side_report = [](SideScope const &s) {
    LemmaF8Side r{s.side};
    r.free_holds     = s.modules.front().equivalence.holds();
    r.quotients_hold = all_hold(s.modules);
    r.quotients      = s.modules.size();
    return r;
  };
  return LemmaF8Report{scope.rank, side_report(scope.right), side_report(scope.left)};
}

LemmaF8Report verify_lemma_f8(Ring const &ring, std::size_t n, Guards const &guards)
{
  if (n < 1) { throw PreconditionError("lemma check needs n >= 1"); }
  return verify_lemma_f8(analyze_scope(ring, n, guards));
}

PhiIsoReport verify_phi_iso_fg(bool ring_pf, Scope const &scope)
{
  PhiIsoReport report;
  report.ring_pf = ring_pf;
  for (auto const *side : {&scope.right, &scope.left}) {
    for (auto const &m : side->modules) {
      ++report.modules;
      if (!m.phi_verified) { throw InternalError("evaluation map failed its table check on " + m.label); }
      if (m.phi_injective && m.phi_surjective) { continue; }
      if (report.all_bijective) {
        report.counterexample        = m.label;
        report.counterexample_kernel = m.phi_kernel;
      }
      report.all_bijective = false;
    }
  }
  report.expectation_met = ring_pf ? report.all_bijective : !report.all_bijective;
  return report;
}

PhiIsoReport verify_phi_iso_fg(Ring const &ring, Guards const &guards)
{
  bool const pf = is_pf(ring, guards).is_pf;
  return verify_phi_iso_fg(pf, analyze_scope(ring, 2, guards));
}

CogenerationReport verify_cogeneration_equivalences(Scope const &scope)
{
  CogenerationReport report;
  for (auto const *side : {&scope.right, &scope.left}) {
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;
    for (std::size_t i = 0; i < side->lattice.size(); ++i) { by_hash[side->lattice[i].hash()].push_back(i); }
    auto const find = [&](std::vector<Code> const &elements) -> ScopeModule const & {
      Submodule const probe(side->free, {}, elements);
      for (auto i : by_hash[probe.hash()]) {
        if (side->lattice[i] == probe) { return side->modules[i]; }
      }
      throw InternalError("quotient preimage is missing from the lattice");
    };

    bool all_closed = true, all_cogenerated = true;
    for (auto const &m : side->modules) {
      poll_deadline();
      ++report.modules;
      bool const zero_trivial = m.zero_double_perp == 1;
      if (zero_trivial != m.phi_injective || zero_trivial != m.embeds_in_power) {
        report.disagreements.push_back(m.label);
      }
      all_closed      = all_closed && m.equivalence.submodules_closed;
      all_cogenerated = all_cogenerated && zero_trivial;

      bool quotients_trivial = true;
      for (auto const &x : enumerate_submodules(m.module)) {
        std::vector<Code> preimage;
        for (Code c = 0; c < m.module->cover_size(); ++c) {
          if (x.contains(m.module->canonical(c))) { preimage.push_back(c); }
        }
        if (find(preimage).zero_double_perp != 1) {
          quotients_trivial = false;
          break;
        }
      }
      if (quotients_trivial != m.equivalence.submodules_closed) { report.quotient_disagreements.push_back(m.label); }
    }
    if (all_closed != all_cogenerated) { report.class_level_agree = false; }
  }
  return report;
}

CogenerationReport verify_cogeneration_equivalences(Ring const &ring, Guards const &guards)
{
  return verify_cogeneration_equivalences(analyze_scope(ring, 2, guards));
}

std::optional<Witness> find_witness(Ring const &ring, Scope const &scope, Guards const &guards)
{
  for (Side side : {Side::right, Side::left}) {
    auto const r = has_perp_equivalence(free_module(ring, 1, side, guards), free_label(1, side));
    if (r.witness) { return r.witness; }
  }
  for (auto const *side : {&scope.right, &scope.left}) {
    if (side->modules.front().equivalence.witness) { return side->modules.front().equivalence.witness; }
  }
  for (auto const *side : {&scope.right, &scope.left}) {
    for (auto const &m : side->modules) {
      if (m.equivalence.witness) { return m.equivalence.witness; }
    }
  }
  return std::nullopt;
}

std::optional<Witness> find_witness(Ring const &ring, Guards const &guards)
{
  for (Side side : {Side::right, Side::left}) {
    auto const r = has_perp_equivalence(free_module(ring, 1, side, guards), free_label(1, side));
    if (r.witness) { return r.witness; }
  }
  std::vector<std::pair<Module, std::vector<Submodule>>> sides;
  for (Side side : {Side::right, Side::left}) {
    auto free = free_module(ring, 2, side, guards);
    auto r    = has_perp_equivalence(free, free_label(2, side));
    if (r.witness) { return r.witness; }
    sides.emplace_back(free, enumerate_submodules(free));
  }
  for (auto const &[free, lattice] : sides) {
    for (auto const &k : lattice) {
      if (k.is_zero()) { continue; }
      poll_deadline();
      auto const q = quotient_module(free, k).module;
      auto const r = has_perp_equivalence(q, quotient_label(free, k));
      if (r.witness) { return r.witness; }
    }
  }
  return std::nullopt;
}

} // namespace perp
