#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace perp::gallery {

using Scalar = std::uint64_t;

/// Finitely supported vector over GF(p) in the basis e_0, e_1, ...
struct FinSuppVector
{
  std::map<std::size_t, Scalar> coefficients;

  static FinSuppVector basis(std::size_t n);
  /// Drops zero coefficients after reduction mod p.
  void normalize(Scalar p);
  std::size_t support_bound() const;
  friend bool operator==(FinSuppVector const &, FinSuppVector const &) = default;
};

/// Functional that is given explicitly on indices below prefix.size() and
/// constant `tail` from there on.
struct EvTailFunctional
{
  std::vector<Scalar> prefix;
  Scalar              tail = 0;

  static EvTailFunctional dual_basis(std::size_t n);
  static EvTailFunctional all_ones();

  Scalar coefficient(std::size_t i) const { return i < prefix.size() ? prefix[i] : tail; }
  /// Removes trailing prefix entries equal to the tail.
  void canonicalize();
  friend bool operator==(EvTailFunctional const &, EvTailFunctional const &) = default;
};

Scalar eval_functional(EvTailFunctional const &f, FinSuppVector const &v, Scalar p);

enum class FamilyKind
{
  /// e_0*, ..., e_{n-1}*, the perp of span{e_k : k >= n}; unbounded = the union.
  vn_perp_chain,
  /// e_n* for n >= start.
  standard_duals,
  /// The all-ones functional together with e_n* for n >= 1.
  l_with_all_ones,
  /// e_n* + ... + e_{n+p}* for n >= 0.
  window_sums,
};

struct FunctionalFamily
{
  FamilyKind                 kind;
  /// Chain stage n (nullopt for the union), start index, or window length p.
  std::optional<std::size_t> parameter;

  static FunctionalFamily chain(std::optional<std::size_t> n) { return {FamilyKind::vn_perp_chain, n}; }
  static FunctionalFamily standard_duals(std::size_t start = 0) { return {FamilyKind::standard_duals, start}; }
  static FunctionalFamily l_with_all_ones() { return {FamilyKind::l_with_all_ones, std::nullopt}; }
  static FunctionalFamily window_sums(std::size_t p) { return {FamilyKind::window_sums, p}; }

  std::string describe() const;
};

/// Generators that are nonzero somewhere below `horizon`, each one exact.
std::vector<EvTailFunctional> generators(FunctionalFamily const &fam, std::size_t horizon);

/// Generators whose values are fully determined by indices below `horizon`
/// and the tail: those with every non-tail entry below the horizon.
std::vector<EvTailFunctional> generators_within(FunctionalFamily const &fam, std::size_t horizon);

/// Basis (reduced, sorted by pivot) of {v : support below m, g(v) = 0 for all generators g}.
std::vector<FinSuppVector> family_perp(FunctionalFamily const &fam, std::size_t m, Scalar p);

struct MembershipVerdict
{
  bool                     member = false;
  /// Horizons at which truncated row reduction agreed with the criterion.
  std::vector<std::size_t> horizons;
};

/// Decides f in span(generators) with the closed-form criterion of the kind
/// and checks it against row reduction at horizons L, 2L and 3L, where L is
/// the canonical prefix length (at least 1). Throws InternalError on disagreement.
MembershipVerdict membership_in_family(EvTailFunctional f, FunctionalFamily const &fam, Scalar p);

/// Truncated row reduction alone: f restricted to [0, horizon) plus its tail,
/// against the generators that are exact at that horizon.
bool truncated_membership(EvTailFunctional const &f, FunctionalFamily const &fam, std::size_t horizon, Scalar p);

/// For every S of at most `max_set` indices below `window`, some combination
/// of generators agrees with f on {e_s : s in S}.
bool density_probe(FunctionalFamily const &fam, EvTailFunctional const &f, Scalar p, std::size_t window = 8,
                   std::size_t max_set = 6);

struct GalleryCheck
{
  std::string name;
  std::size_t bound = 0;
  bool        passed = false;
  std::string detail;
};

struct GalleryParams
{
  Scalar                   p = 2;
  std::vector<std::size_t> bounds{8, 16, 32};
  std::size_t              p_max = 8;
};

struct GalleryReport
{
  std::string               example;
  Scalar                    field = 2;
  std::vector<std::size_t>  bounds;
  std::size_t               p_max = 0;
  std::vector<GalleryCheck> checks;
  std::vector<std::string>  notes;
  /// Horizon rule applied, per family.
  std::map<std::string, std::string> horizons;

  bool passed() const;
};

/// which is "i", "ii" or "iii". Throws PreconditionError for bad parameters.
GalleryReport run_example(std::string const &which, GalleryParams const &params = {});

/// Dense Gaussian elimination mod p.
std::size_t rank_mod_p(std::vector<std::vector<Scalar>> rows, Scalar p);
/// Basis of {v : rows . v = 0} in reduced form.
std::vector<std::vector<Scalar>> nullspace_mod_p(std::vector<std::vector<Scalar>> rows, std::size_t columns, Scalar p);

} // namespace perp::gallery
