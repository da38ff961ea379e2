#pragma once

#include "perp/module.hpp"

#include <map>
#include <string>
#include <vector>

namespace perp {

/// Hom(M, R) for a one-sided module M, encoded by coordinate vectors.
///
/// With generators g_1..g_k of M and A the ring acting on M, a vector
/// x in R^k stands for the map sum g_i r_i |-> sum x_i *_A r_i. The valid
/// vectors form the carrier of `module`, a module on the opposite side.
/// For a plain presentation R^n/K the generators are the standard basis, so
/// x is the usual phi_x (right M) or psi_x (left M).
class DualModule
{
public:
  DualModule(Module base, Module module, std::vector<Code> generators, std::vector<Code> lifts);

  Module const &base() const { return base_; }
  /// The dual as a module in its own right; its elements are the maps.
  Module const &module() const { return module_; }
  std::span<Code const> generators() const { return generators_; }

  /// f(m) for f an element of module() and m an element of base().
  Elem eval(Code f, Code m) const;

  /// Values of f on base()->elements(), in element order.
  std::vector<Elem> table(Code f) const;

private:
  Module            base_;
  Module            module_;
  std::vector<Code> generators_;
  /// lifts_[position(m)] is a code of R^k mapping onto m.
  std::vector<Code> lifts_;
};

DualModule dual_module(Module const &m);

/// An irredundant generating list of m, preferring small codes.
std::vector<Code> minimal_generators(Module const &m);

/// X^perp: maps vanishing on X (only the generators of X are tested).
Submodule perp_of_submodule(DualModule const &dual, Submodule const &x);
/// Same, for an arbitrary set of elements of the base module.
Submodule perp_of_set(DualModule const &dual, std::span<Code const> elements);
/// Y^perp: elements of the base killed by every map in Y.
Submodule perp_of_dual_submodule(DualModule const &dual, Submodule const &y);

/// Finite-topology closure of Y. For a finite base this is computed by
/// comparing complete value tables; `certified` is false if some map outside
/// Y agreed with a member of Y on all of M.
struct ClosureResult
{
  Submodule closure;
  bool      certified = false;
};
ClosureResult closure(DualModule const &dual, Submodule const &y);

/// Evaluation map m |-> (f |-> f(m)) into the dual of the dual.
struct PhiMap
{
  Module            domain;
  DualModule        dual;
  DualModule        bidual;
  /// image[i] is the image of domain->elements()[i], an element of bidual.module().
  std::vector<Code> image;
  /// Phi(m)(f) == f(m) was checked for every m and f.
  bool              evaluation_verified = false;
  bool              injective           = false;
  bool              surjective          = false;

  bool bijective() const { return injective && surjective; }
};
PhiMap phi_map(Module const &m);

Submodule phi_kernel(PhiMap const &phi);
Submodule phi_kernel(Module const &m);

struct LawViolation
{
  std::string       law;
  std::vector<Code> first;
  std::vector<Code> second;
};

struct LawReport
{
  /// Instances checked per law name.
  std::map<std::string, std::size_t> instances;
  std::vector<LawViolation>          violations;
  /// Inclusions that held strictly where equality was not asserted.
  std::vector<LawViolation>          strict;

  bool ok() const { return violations.empty(); }
  void merge(LawReport const &other);
};

/// Antitonicity, X <= X^perp^perp, Y <= Y^perp^perp, the triple-perp
/// identities and Y <= X^perp <=> X <= Y^perp, over every submodule of M
/// and of its dual.
LawReport check_galois_laws(Module const &m);

struct LawHypotheses
{
  /// R is self-injective on the side of M: equality in the sum/intersection law.
  bool coefficient_injective = false;
  /// R is PF on both sides: equality in the dual law.
  bool ring_pf = false;
};

/// Sum/intersection laws for each family of submodules of M, and the dual
/// laws for each family of submodules of M*. Families are lists of indices
/// into enumerate_submodules of M and of the dual module respectively.
LawReport check_sum_intersect_laws(Module const                          &m,
                                   std::vector<std::vector<std::size_t>> const &families,
                                   std::vector<std::vector<std::size_t>> const &dual_families,
                                   LawHypotheses                          hypotheses);

/// All pairs (and the diagonal) of submodules on both sides.
LawReport check_sum_intersect_laws(Module const &m, LawHypotheses hypotheses);

/// Y^perp == 0. Throws PreconditionError unless `ring_pf` or the ring is a
/// division ring. Over a finite base this coincides with Y == M*; an
/// InternalError is raised if that fails under the hypothesis.
bool is_dense(DualModule const &dual, Submodule const &y, bool ring_pf);

} // namespace perp
