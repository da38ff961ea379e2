#pragma once

#include "perp/duality.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace perp {

/// A one-sided ideal I with a map h: I -> R that is not multiplication by any
/// ring element. `images[i]` is h(ideal.generators()[i]).
struct BaerWitness
{
  Side              side;
  Submodule         ideal;
  std::vector<Elem> images;
};

struct InjectivityResult
{
  bool                       holds = true;
  std::optional<BaerWitness> witness;
  std::size_t                ideals_checked = 0;
  std::size_t                homs_checked   = 0;
};

/// Baer test for R over itself on `side`: every hom from every one-sided
/// ideal must be multiplication by a ring element (on the left for right
/// ideals). Ideals are tried from the largest down.
InjectivityResult is_self_injective(Ring const &ring, Side side, Guards const &guards = {});

/// A maximal one-sided ideal with zero annihilator.
struct KaschWitness
{
  Side      side;
  Submodule maximal_ideal;
};

struct KaschResult
{
  bool                        holds = true;
  std::optional<KaschWitness> witness;
  std::size_t                 maximal_ideals = 0;
};

/// Every maximal ideal on `side` has a nonzero perp.
KaschResult is_kasch(Ring const &ring, Side side, Guards const &guards = {});

struct PFReport
{
  std::uint64_t     ring_hash = 0;
  InjectivityResult right_injective;
  InjectivityResult left_injective;
  KaschResult       right_kasch;
  KaschResult       left_kasch;
  bool              is_pf = false;
  /// Milliseconds per check.
  std::map<std::string, double> timings;
};

/// Self-injective and Kasch on both sides.
PFReport is_pf(Ring const &ring, Guards const &guards = {});

/// A submodule (of M, or of M* when `in_dual`) whose double perp differs.
struct Witness
{
  std::string       module_label;
  Module            module;
  bool              in_dual = false;
  Submodule         submodule;
  Submodule         double_perp;
  /// Elements of the double perp that are missing from the submodule.
  std::vector<Code> discrepancy;
};

struct PerpEquivalence
{
  /// X^perp^perp == X for every X <= M.
  bool                   submodules_closed = true;
  /// Y^perp^perp == Y for every Y <= M*.
  bool                   dual_submodules_closed = true;
  std::optional<Witness> witness;
  std::size_t            submodules      = 0;
  std::size_t            dual_submodules = 0;

  bool holds() const { return submodules_closed && dual_submodules_closed; }
};

/// Checks both double-perp identities and that the perp maps reverse
/// inclusions. The witness is the first failure, X before Y, in lattice order.
PerpEquivalence has_perp_equivalence(Module const &m, std::string label = "M");

/// Per-module data for all quotients R^n/K on one side.
struct ScopeModule
{
  std::string     label;
  Submodule       relations;
  Module          module;
  PerpEquivalence equivalence;
  /// |(0^perp)^perp|.
  std::size_t     zero_double_perp = 0;
  bool            phi_injective    = false;
  bool            phi_surjective   = false;
  bool            phi_verified     = false;
  std::size_t     phi_kernel       = 0;
  /// ker Phi == (0^perp)^perp as sets.
  bool            kernel_matches   = false;
  /// x |-> (f(x))_f into R^{M*} is injective.
  bool            embeds_in_power  = false;
};

struct SideScope
{
  Side                     side;
  Module                   free;
  std::vector<Submodule>   lattice;
  std::vector<ScopeModule> modules;
};

struct Scope
{
  std::size_t rank = 2;
  SideScope   right;
  SideScope   left;

  SideScope const &on(Side s) const { return s == Side::right ? right : left; }
};

/// All quotients of R^rank on both sides, fully analysed. The module for
/// K = 0 is R^rank itself.
Scope analyze_scope(Ring const &ring, std::size_t rank = 2, Guards const &guards = {});

struct StatementVerdict
{
  bool                   holds = false;
  std::string            scope;
  std::optional<Witness> witness;
};

struct TheoremReport
{
  /// Keyed by roman numeral "i" .. "vii".
  std::map<std::string, StatementVerdict> statements;
  bool                                    consistent = false;
  PFReport                                pf;
};

TheoremReport verify_main_theorem(Ring const &ring, Guards const &guards = {});
TheoremReport verify_main_theorem(Ring const &ring, PFReport pf, Scope const &scope);

struct LemmaF8Side
{
  Side        side;
  bool        free_holds      = false;
  bool        quotients_hold  = false;
  std::size_t quotients       = 0;

  bool agree() const { return free_holds == quotients_hold; }
};

struct LemmaF8Report
{
  std::size_t rank = 0;
  LemmaF8Side right;
  LemmaF8Side left;

  bool agree() const { return right.agree() && left.agree(); }
};

/// R^n has perp equivalence iff every quotient of R^n does, on each side.
LemmaF8Report verify_lemma_f8(Ring const &ring, std::size_t n, Guards const &guards = {});
LemmaF8Report verify_lemma_f8(Scope const &scope);

struct PhiIsoReport
{
  bool                       ring_pf = false;
  std::size_t                modules = 0;
  bool                       all_bijective = true;
  std::optional<std::string> counterexample;
  std::size_t                counterexample_kernel = 0;
  /// PF: everything bijective. Not PF: some map failed to be bijective.
  bool                       expectation_met = false;
};

/// Bijectivity of the evaluation map over the scope. Over a non-PF ring the
/// check runs in expect-failure mode.
PhiIsoReport verify_phi_iso_fg(Ring const &ring, Guards const &guards = {});
PhiIsoReport verify_phi_iso_fg(bool ring_pf, Scope const &scope);

struct CogenerationReport
{
  std::size_t              modules = 0;
  /// Modules where zero double perp, Phi injectivity and the embedding disagree.
  std::vector<std::string> disagreements;
  /// Modules where "X^perp^perp = X for all X" differs from "every quotient
  /// has zero double perp".
  std::vector<std::string> quotient_disagreements;
  /// Class-level: all closed <=> all zero double perps trivial, per side.
  bool                     class_level_agree = true;

  bool ok() const { return disagreements.empty() && quotient_disagreements.empty() && class_level_agree; }
};

CogenerationReport verify_cogeneration_equivalences(Ring const &ring, Guards const &guards = {});
CogenerationReport verify_cogeneration_equivalences(Scope const &scope);

/// Searches R_R, _R R, R^2 on both sides, then right and left quotients of R^2
/// in lattice order for a failing double perp.
std::optional<Witness> find_witness(Ring const &ring, Guards const &guards = {});
std::optional<Witness> find_witness(Ring const &ring, Scope const &scope, Guards const &guards = {});

} // namespace perp
