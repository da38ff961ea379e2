#pragma once

#include "perp/guards.hpp"
#include "perp/ring_spec.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perp {

/// Index of an element in a FiniteRing's universe. 0 is always the zero element.
using Elem = std::uint32_t;

/// A finite unital ring given by full addition and multiplication tables over
/// the universe 0..order-1. Immutable once constructed.
class FiniteRing
{
public:
  using LiteralParser = std::function<std::optional<Elem>(std::string_view)>;

  /// Tables are row-major: add[a * order + b] = a + b. The tables are taken as
  /// given; use ring_axiom_audit to check them.
  FiniteRing(std::string              name,
             std::vector<std::string> labels,
             std::vector<Elem>        add,
             std::vector<Elem>        mul,
             Elem                     one,
             LiteralParser            parser = {});

  std::size_t order() const { return order_; }
  Elem        one() const { return one_; }
  static constexpr Elem zero() { return 0; }

  Elem add(Elem a, Elem b) const { return add_[a * order_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * order_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  bool is_commutative() const { return commutative_; }
  bool is_unit(Elem a) const;
  /// Every nonzero element is a unit.
  bool is_division_ring() const;

  std::string const &name() const { return name_; }
  std::string const &label(Elem a) const { return labels_[a]; }

  /// Reads an element literal in the syntax of the ring's kind (integers for
  /// zmod, polynomials for gf/quot, parenthesised tuples for tri/mat/prod).
  std::optional<Elem> parse_element(std::string_view text) const;
  LiteralParser const &literal_parser() const { return parser_; }

  std::span<Elem const> add_table() const { return add_; }
  std::span<Elem const> mul_table() const { return mul_; }

  /// FNV-1a over the order, the unit and both tables; stable across runs.
  std::uint64_t fingerprint() const { return fingerprint_; }

private:
  std::string              name_;
  std::size_t              order_;
  std::vector<std::string> labels_;
  std::vector<Elem>        add_;
  std::vector<Elem>        mul_;
  std::vector<Elem>        neg_;
  Elem                     one_;
  bool                     commutative_;
  LiteralParser            parser_;
  std::uint64_t            fingerprint_;
};

/// Materializes the ring described by `spec`. Throws GuardExceeded when the
/// order exceeds guards.max_ring_order and SpecError for invalid specs.
FiniteRing build_ring(RingSpec const &spec, Guards const &guards = {});

/// Convenience: parse then build.
FiniteRing make_ring(std::string_view text, Guards const &guards = {});

struct AxiomViolation
{
  std::string         axiom;
  std::array<Elem, 3> elements{};
};

struct AuditReport
{
  std::size_t                 order = 0;
  std::size_t                 instances_checked = 0;
  std::vector<AxiomViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Exhaustively checks the ring axioms on every tuple of elements.
AuditReport ring_axiom_audit(FiniteRing const &ring);

/// Same universe and addition, multiplication reversed.
FiniteRing opposite_ring(FiniteRing const &ring);

} // namespace perp
