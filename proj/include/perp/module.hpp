#pragma once

#include "perp/guards.hpp"
#include "perp/ring.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perp {

enum class Side
{
  right,
  left
};

inline Side opposite(Side s) { return s == Side::right ? Side::left : Side::right; }
inline char const *to_string(Side s) { return s == Side::right ? "right" : "left"; }

/// Shared handle to a ring together with its opposite ring. Left R-modules are
/// right modules over the opposite ring, so every module action goes through
/// `acting(side)`.
class Ring
{
public:
  explicit Ring(FiniteRing ring);

  FiniteRing const &base() const { return *base_; }
  FiniteRing const &opposite() const { return *opposite_; }
  FiniteRing const &acting(Side side) const { return side == Side::right ? *base_ : *opposite_; }

private:
  std::shared_ptr<FiniteRing const> base_;
  std::shared_ptr<FiniteRing const> opposite_;
};

/// Encoding of a vector of R^n: mixed radix in base |R|, first coordinate most
/// significant, so numeric order is lexicographic order by element index.
using Code = std::uint32_t;

class ModulePresentation;
using Module = std::shared_ptr<ModulePresentation const>;

/// A finitely generated one-sided module C/K, where K <= C are submodules of
/// the free module R^n. Plain presentations have C = R^n; the carrier form is
/// used for duals, whose elements are coordinate vectors constrained to C.
///
/// Elements are canonical coset representatives: the numerically smallest code
/// of each coset. All arithmetic takes and returns canonical codes.
class ModulePresentation
{
  struct Key
  {
  };

public:
  ModulePresentation(Key,
                     Ring                ring,
                     Side                side,
                     std::size_t         rank,
                     std::vector<Code>   carrier,
                     bool                full_carrier,
                     std::vector<Code>   relations,
                     Guards              guards);

  Ring const       &ring() const { return ring_; }
  Side              side() const { return side_; }
  std::size_t       rank() const { return rank_; }
  FiniteRing const &scalars() const { return ring_.acting(side_); }
  Guards const     &guards() const { return guards_; }

  std::size_t size() const { return elements_.size(); }
  /// |R|^rank.
  std::size_t cover_size() const { return cover_size_; }

  std::span<Code const> elements() const { return elements_; }
  /// Sorted elements of the relation submodule K (codes of R^n).
  std::span<Code const> relations() const { return relations_; }
  bool                  full_carrier() const { return full_carrier_; }
  bool                  in_carrier(Code free) const { return canonical_[free] != none; }

  /// Canonical representative of the coset of a carrier code.
  Code        canonical(Code free) const { return canonical_[free]; }
  std::size_t position(Code element) const { return position_[element]; }
  bool        is_zero_module() const { return elements_.size() == 1; }

  Code add(Code a, Code b) const;
  Code neg(Code a) const;
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  /// Right action by a scalar of the acting ring (a left action r.m for left modules).
  Code act(Code a, Elem r) const;

  Elem              coordinate(Code c, std::size_t i) const;
  std::vector<Elem> coordinates(Code c) const;
  Code              encode(std::span<Elem const> coords) const;

  /// Raw operations on codes of the free cover, no canonicalization.
  Code free_add(Code a, Code b) const;
  Code free_act(Code a, Elem r) const;

  std::uint64_t fingerprint() const { return fingerprint_; }
  std::string   format(Code c) const;
  std::string   describe() const;

  static constexpr Code none = ~Code{0};

private:
  friend Module make_module(Ring, Side, std::size_t, std::optional<std::vector<Code>>, std::vector<Code>, Guards);

  Ring              ring_;
  Side              side_;
  std::size_t       rank_;
  std::size_t       cover_size_;
  bool              full_carrier_;
  std::vector<Code> relations_;
  std::vector<Code> canonical_;
  std::vector<Code> elements_;
  std::vector<std::size_t> position_;
  Guards            guards_;
  std::uint64_t     fingerprint_;
};

/// Builds C/K from element sets of the free module R^n. `carrier` empty means
/// C = R^n. Both sets must already be submodules; this is not re-verified.
Module make_module(Ring                             ring,
                   Side                             side,
                   std::size_t                      rank,
                   std::optional<std::vector<Code>> carrier,
                   std::vector<Code>                relations,
                   Guards                           guards = {});

/// The free module R^n on the given side.
Module free_module(Ring const &ring, std::size_t rank, Side side, Guards const &guards = {});

/// The one-element module R/R.
Module zero_module(Ring const &ring, Side side, Guards const &guards = {});

/// A submodule: sorted canonical element codes together with generators.
class Submodule
{
public:
  Submodule(Module owner, std::vector<Code> generators, std::vector<Code> elements);

  Module const         &module() const { return owner_; }
  std::span<Code const> generators() const { return generators_; }
  std::span<Code const> elements() const { return elements_; }
  std::size_t           size() const { return elements_.size(); }

  bool contains(Code c) const;
  bool is_subset_of(Submodule const &other) const;
  bool is_zero() const { return elements_.size() == 1; }

  /// FNV-1a of the sorted element codes.
  std::uint64_t hash() const;

  friend bool operator==(Submodule const &a, Submodule const &b);
  /// Orders by (cardinality, element list).
  friend bool operator<(Submodule const &a, Submodule const &b);

private:
  Module            owner_;
  std::vector<Code> generators_;
  std::vector<Code> elements_;
};

struct SubmoduleHash
{
  std::size_t operator()(Submodule const &s) const { return static_cast<std::size_t>(s.hash()); }
};

Submodule zero_submodule(Module const &m);
Submodule whole_module(Module const &m);

/// Smallest submodule containing `generators` (codes of elements of m).
Submodule submodule_generated(Module const &m, std::span<Code const> generators);

/// Wraps a set already known to be a submodule; generators are chosen greedily.
Submodule submodule_from_elements(Module const &m, std::vector<Code> elements);

/// True when the set contains zero and is closed under addition and the action.
bool is_submodule_set(Module const &m, std::span<Code const> elements);

/// All elements of the cyclic submodule m.R.
std::vector<Code> cyclic_elements(Module const &m, Code generator);

Submodule submodule_sum(std::span<Submodule const> parts);
Submodule submodule_intersect(std::span<Submodule const> parts);

/// Every submodule of m, each exactly once, sorted by (cardinality, elements).
/// Throws GuardExceeded when m has more elements than its module guard.
std::vector<Submodule> enumerate_submodules(Module const &m);

/// Canonical representatives in increasing order.
std::span<Code const> enumerate_elements(Module const &m);

struct Quotient
{
  Module            module;
  /// projection[i] is the image of m.elements()[i].
  std::vector<Code> projection;
};

/// M/X, with relations the preimage of X in the free cover.
Quotient quotient_module(Module const &m, Submodule const &x);

/// Reads "free N" or "free N / [v1; v2; ...]", each vi a comma-separated list
/// of N ring literals.
Module parse_module_spec(Ring const &ring, Side side, std::string_view text, Guards const &guards = {});

/// Reads "[v1; v2; ...]" into element codes of m (canonicalized).
std::vector<Code> parse_vectors(Module const &m, std::string_view text);

/// Persistent store for submodule lattices, keyed by module fingerprint.
class LatticeCache
{
public:
  virtual ~LatticeCache() = default;
  virtual std::optional<std::vector<Submodule>> load(Module const &m)                                    = 0;
  virtual void                                  store(Module const &m, std::vector<Submodule> const &subs) = 0;
};

/// Installs (or clears, with nullptr) the process-wide lattice cache used by
/// enumerate_submodules.
void set_lattice_cache(std::shared_ptr<LatticeCache> cache);

} // namespace perp
