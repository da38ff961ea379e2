#include "perp/ring.hpp"

#include "perp/error.hpp"
#include "perp/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <unordered_map>

namespace perp {

namespace {

constexpr std::uint64_t fnv_offset = 14695981039346656037ULL;
constexpr std::uint64_t fnv_prime  = 1099511628211ULL;

void fnv_mix(std::uint64_t &h, std::uint64_t v)
{
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= fnv_prime;
  }
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) { s.remove_prefix(1); }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) { s.remove_suffix(1); }
  return s;
}

// Splits "(a b (c d))" into its top-level entries; nullopt if not parenthesised.
std::optional<std::vector<std::string_view>> split_tuple(std::string_view text)
{
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') { return std::nullopt; }
  text = text.substr(1, text.size() - 2);
  std::vector<std::string_view> parts;
  int                           depth = 0;
  std::size_t                   start = 0;
  bool                          in_token = false;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char const c = i < text.size() ? text[i] : ' ';
    if (c == '(') { ++depth; }
    if (c == ')') { --depth; }
    if (depth < 0) { return std::nullopt; }
    bool const separator = depth == 0 && (std::isspace(static_cast<unsigned char>(c)) || c == ',');
    if (!separator && !in_token) {
      start    = i;
      in_token = true;
    } else if (separator && in_token) {
      parts.push_back(text.substr(start, i - start));
      in_token = false;
    }
  }
  if (depth != 0) { return std::nullopt; }
  return parts;
}

struct Tables
{
  std::vector<std::string> labels;
  std::vector<Elem>        add;
  std::vector<Elem>        mul;
  Elem                     one = 0;
};

template <typename AddFn, typename MulFn>
Tables fill_tables(std::size_t order, AddFn add_fn, MulFn mul_fn)
{
  Tables t;
  t.add.resize(order * order);
  t.mul.resize(order * order);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      t.add[a * order + b] = add_fn(static_cast<Elem>(a), static_cast<Elem>(b));
      t.mul[a * order + b] = mul_fn(static_cast<Elem>(a), static_cast<Elem>(b));
    }
  }
  return t;
}

// Coefficient vectors over Z/q indexed by sum c_i q^i.
struct CoefficientSpace
{
  std::uint64_t q;
  std::size_t   dim;

  std::vector<poly::Coeff> decode(std::uint64_t index) const
  {
    std::vector<poly::Coeff> c(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      c[i] = index % q;
      index /= q;
    }
    return c;
  }
  Elem encode(std::vector<poly::Coeff> const &c) const
  {
    std::uint64_t index = 0;
    for (std::size_t i = dim; i-- > 0;) { index = index * q + (i < c.size() ? c[i] % q : 0); }
    return static_cast<Elem>(index);
  }
  std::size_t order() const
  {
    std::size_t o = 1;
    for (std::size_t i = 0; i < dim; ++i) { o *= q; }
    return o;
  }
};

FiniteRing build_zmod(RingSpec const &spec)
{
  auto const n = spec.params[0];
  Tables     t = fill_tables(
      n, [n](Elem a, Elem b) { return static_cast<Elem>((a + b) % n); },
      [n](Elem a, Elem b) { return static_cast<Elem>((std::uint64_t{a} * b) % n); });
  for (std::uint64_t i = 0; i < n; ++i) { t.labels.push_back(std::to_string(i)); }
  auto parser = [n](std::string_view text) -> std::optional<Elem> {
    text = trim(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
      negative = text.front() == '-';
      text.remove_prefix(1);
    }
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(c); })) {
      return std::nullopt;
    }
    std::uint64_t v = 0;
    for (char c : text) { v = (v * 10 + static_cast<std::uint64_t>(c - '0')) % n; }
    return static_cast<Elem>(negative ? (n - v) % n : v);
  };
  return FiniteRing(spec.to_string(), std::move(t.labels), std::move(t.add), std::move(t.mul), 1, parser);
}

// Shared construction for gf and quot: a commutative algebra over Z/q with a
// monomial basis and a normal-form routine.
FiniteRing build_monomial_algebra(RingSpec const &spec, std::uint64_t q, std::vector<poly::Monomial> basis,
                                  std::function<poly::Poly(poly::Poly)> normal_form)
{
  auto const                  vars = spec.variables;
  CoefficientSpace const      space{q, basis.size()};
  std::size_t const           order = space.order();
  std::map<poly::Monomial, std::size_t> position;
  for (std::size_t i = 0; i < basis.size(); ++i) { position[basis[i]] = i; }

  auto to_vector = [&](poly::Poly const &p) {
    std::vector<poly::Coeff> c(basis.size(), 0);
    for (auto const &[m, coeff] : p) { c[position.at(m)] = coeff; }
    return c;
  };
  // Structure constants: product of basis monomials a and b.
  std::vector<std::vector<poly::Coeff>> structure(basis.size() * basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      poly::Monomial m(vars.size());
      for (std::size_t v = 0; v < vars.size(); ++v) {
        m[v] = static_cast<std::uint16_t>(basis[a][v] + basis[b][v]);
      }
      poly::Poly p;
      p.emplace(m, 1);
      structure[a * basis.size() + b] = to_vector(normal_form(p));
    }
  }
  std::vector<std::vector<poly::Coeff>> decoded(order);
  for (std::size_t i = 0; i < order; ++i) { decoded[i] = space.decode(i); }

  Tables t = fill_tables(
      order,
      [&](Elem a, Elem b) {
        std::vector<poly::Coeff> c(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) { c[i] = (decoded[a][i] + decoded[b][i]) % q; }
        return space.encode(c);
      },
      [&](Elem a, Elem b) {
        std::vector<poly::Coeff> c(basis.size(), 0);
        for (std::size_t i = 0; i < basis.size(); ++i) {
          if (decoded[a][i] == 0) { continue; }
          for (std::size_t j = 0; j < basis.size(); ++j) {
            if (decoded[b][j] == 0) { continue; }
            poly::Coeff const s = (decoded[a][i] * decoded[b][j]) % q;
            auto const       &sc = structure[i * basis.size() + j];
            for (std::size_t k = 0; k < basis.size(); ++k) { c[k] = (c[k] + s * sc[k]) % q; }
          }
        }
        return space.encode(c);
      });
  for (std::size_t i = 0; i < order; ++i) {
    poly::Poly p;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (decoded[i][k] != 0) { p.emplace(basis[k], decoded[i][k]); }
    }
    t.labels.push_back(poly::format(p, vars));
  }
  std::vector<poly::Coeff> one(basis.size(), 0);
  one[position.at(poly::Monomial(vars.size(), 0))] = 1;

  auto parser = [vars, q, space, position, normal_form](std::string_view text) -> std::optional<Elem> {
    poly::Poly p;
    try {
      p = normal_form(poly::parse(trim(text), vars, q));
    } catch (Error const &) {
      return std::nullopt;
    }
    std::vector<poly::Coeff> c(space.dim, 0);
    for (auto const &[m, coeff] : p) { c[position.at(m)] = coeff; }
    return space.encode(c);
  };
  return FiniteRing(spec.to_string(), std::move(t.labels), std::move(t.add), std::move(t.mul), space.encode(one),
                    parser);
}

FiniteRing build_gf(RingSpec const &spec)
{
  auto const p = spec.params[0], k = spec.params[1];
  auto const modulus = poly::to_dense(poly::parse(spec.polynomials.front(), spec.variables, p));
  std::vector<poly::Monomial> basis;
  for (std::uint16_t d = 0; d < k; ++d) { basis.push_back({d}); }
  auto nf = [modulus, p](poly::Poly f) {
    auto const    r = poly::remainder(poly::to_dense(f), modulus, p);
    poly::Poly out;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] != 0) { out.emplace(poly::Monomial{static_cast<std::uint16_t>(i)}, r[i]); }
    }
    return out;
  };
  return build_monomial_algebra(spec, p, basis, nf);
}

FiniteRing build_quot(RingSpec const &spec)
{
  std::uint64_t const     q = spec.children.front().params[0];
  std::vector<poly::Poly> gens;
  for (auto const &text : spec.polynomials) { gens.push_back(poly::parse(text, spec.variables, q)); }
  if (poly::is_prime(q)) {
    auto const basis = poly::groebner_basis(gens, q);
    auto       mons  = poly::standard_monomials(basis, spec.variables.size());
    if (!mons || mons->empty()) { throw SpecError("quotient '" + spec.to_string() + "' is not a finite nonzero ring"); }
    auto nf = [basis, q](poly::Poly f) { return poly::normal_form(std::move(f), basis, q); };
    return build_monomial_algebra(spec, q, *mons, nf);
  }
  auto const modulus = poly::to_dense(gens.front());
  std::vector<poly::Monomial> basis;
  for (std::uint16_t d = 0; d + 1u < modulus.size(); ++d) { basis.push_back({d}); }
  auto nf = [modulus, q](poly::Poly f) {
    auto const    r = poly::remainder(poly::to_dense(f), modulus, q);
    poly::Poly out;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] != 0) { out.emplace(poly::Monomial{static_cast<std::uint16_t>(i)}, r[i]); }
    }
    return out;
  };
  return build_monomial_algebra(spec, q, basis, nf);
}

// Tuples of component elements, first component most significant.
struct TupleSpace
{
  std::vector<std::size_t> radices;

  std::size_t order() const
  {
    std::size_t o = 1;
    for (auto r : radices) { o *= r; }
    return o;
  }
  std::vector<Elem> decode(std::size_t index) const
  {
    std::vector<Elem> e(radices.size());
    for (std::size_t i = radices.size(); i-- > 0;) {
      e[i] = static_cast<Elem>(index % radices[i]);
      index /= radices[i];
    }
    return e;
  }
  Elem encode(std::vector<Elem> const &e) const
  {
    std::size_t index = 0;
    for (std::size_t i = 0; i < radices.size(); ++i) { index = index * radices[i] + e[i]; }
    return static_cast<Elem>(index);
  }
};

std::string tuple_label(std::vector<Elem> const &e, std::vector<std::shared_ptr<FiniteRing const>> const &rings)
{
  std::string out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) { out += " "; }
    out += rings[i]->label(e[i]);
  }
  return out + ")";
}

FiniteRing::LiteralParser tuple_parser(TupleSpace space, std::vector<std::shared_ptr<FiniteRing const>> rings)
{
  return [space, rings](std::string_view text) -> std::optional<Elem> {
    auto parts = split_tuple(text);
    if (!parts || parts->size() != rings.size()) { return std::nullopt; }
    std::vector<Elem> e(rings.size());
    for (std::size_t i = 0; i < rings.size(); ++i) {
      auto v = rings[i]->parse_element((*parts)[i]);
      if (!v) { return std::nullopt; }
      e[i] = *v;
    }
    return space.encode(e);
  };
}

FiniteRing build_matrix(RingSpec const &spec, Guards const &guards)
{
  auto const  entry = std::make_shared<FiniteRing const>(build_ring(spec.children.front(), guards));
  std::size_t const m          = spec.params[0];
  bool const        triangular = spec.kind == RingKind::tri;
  // (row, col) of each stored entry, row-major.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::vector<std::vector<int>>                    slot_of(m, std::vector<int>(m, -1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = triangular ? i : 0; j < m; ++j) {
      slot_of[i][j] = static_cast<int>(slots.size());
      slots.emplace_back(i, j);
    }
  }
  TupleSpace const space{std::vector<std::size_t>(slots.size(), entry->order())};
  std::size_t const order = space.order();
  std::vector<std::vector<Elem>> decoded(order);
  for (std::size_t i = 0; i < order; ++i) { decoded[i] = space.decode(i); }

  auto const &R = *entry;
  Tables      t = fill_tables(
      order,
      [&](Elem a, Elem b) {
        std::vector<Elem> e(slots.size());
        for (std::size_t s = 0; s < slots.size(); ++s) { e[s] = R.add(decoded[a][s], decoded[b][s]); }
        return space.encode(e);
      },
      [&](Elem a, Elem b) {
        std::vector<Elem> e(slots.size(), 0);
        for (std::size_t s = 0; s < slots.size(); ++s) {
          auto const [i, j] = slots[s];
          Elem acc          = 0;
          for (std::size_t k = 0; k < m; ++k) {
            int const left  = slot_of[i][k];
            int const right = slot_of[k][j];
            if (left < 0 || right < 0) { continue; }
            acc = R.add(acc, R.mul(decoded[a][static_cast<std::size_t>(left)], decoded[b][static_cast<std::size_t>(right)]));
          }
          e[s] = acc;
        }
        return space.encode(e);
      });
  std::vector<std::shared_ptr<FiniteRing const>> rings(slots.size(), entry);
  for (std::size_t i = 0; i < order; ++i) { t.labels.push_back(tuple_label(decoded[i], rings)); }
  std::vector<Elem> identity(slots.size(), 0);
  for (std::size_t i = 0; i < m; ++i) { identity[static_cast<std::size_t>(slot_of[i][i])] = R.one(); }
  return FiniteRing(spec.to_string(), std::move(t.labels), std::move(t.add), std::move(t.mul),
                    space.encode(identity), tuple_parser(space, rings));
}

FiniteRing build_product(RingSpec const &spec, Guards const &guards)
{
  std::vector<std::shared_ptr<FiniteRing const>> rings;
  TupleSpace                                     space;
  for (auto const &c : spec.children) {
    rings.push_back(std::make_shared<FiniteRing const>(build_ring(c, guards)));
    space.radices.push_back(rings.back()->order());
  }
  std::size_t const              order = space.order();
  std::vector<std::vector<Elem>> decoded(order);
  for (std::size_t i = 0; i < order; ++i) { decoded[i] = space.decode(i); }
  auto componentwise = [&](bool multiply) {
    return [&, multiply](Elem a, Elem b) {
      std::vector<Elem> e(rings.size());
      for (std::size_t k = 0; k < rings.size(); ++k) {
        e[k] = multiply ? rings[k]->mul(decoded[a][k], decoded[b][k]) : rings[k]->add(decoded[a][k], decoded[b][k]);
      }
      return space.encode(e);
    };
  };
  Tables t = fill_tables(order, componentwise(false), componentwise(true));
  for (std::size_t i = 0; i < order; ++i) { t.labels.push_back(tuple_label(decoded[i], rings)); }
  std::vector<Elem> one;
  for (auto const &r : rings) { one.push_back(r->one()); }
  return FiniteRing(spec.to_string(), std::move(t.labels), std::move(t.add), std::move(t.mul), space.encode(one),
                    tuple_parser(space, rings));
}

} // namespace

FiniteRing::FiniteRing(std::string              name,
                       std::vector<std::string> labels,
                       std::vector<Elem>        add,
                       std::vector<Elem>        mul,
                       Elem                     one,
                       LiteralParser            parser)
    : name_(std::move(name)), order_(labels.size()), labels_(std::move(labels)), add_(std::move(add)),
      mul_(std::move(mul)), neg_(order_, 0), one_(one), commutative_(true), parser_(std::move(parser)),
      fingerprint_(fnv_offset)
{
  if (add_.size() != order_ * order_ || mul_.size() != order_ * order_) {
    throw SpecError("ring tables do not match the element count");
  }
  for (std::size_t a = 0; a < order_; ++a) {
    neg_[a] = static_cast<Elem>(a);
    for (std::size_t b = 0; b < order_; ++b) {
      if (add_[a * order_ + b] == 0) {
        neg_[a] = static_cast<Elem>(b);
        break;
      }
    }
    for (std::size_t b = 0; b < order_; ++b) {
      if (mul_[a * order_ + b] != mul_[b * order_ + a]) { commutative_ = false; }
    }
  }
  fnv_mix(fingerprint_, order_);
  fnv_mix(fingerprint_, one_);
  for (auto v : add_) { fnv_mix(fingerprint_, v); }
  for (auto v : mul_) { fnv_mix(fingerprint_, v); }
}

bool FiniteRing::is_unit(Elem a) const
{
  for (std::size_t b = 0; b < order_; ++b) {
    if (mul(a, static_cast<Elem>(b)) == one_ && mul(static_cast<Elem>(b), a) == one_) { return true; }
  }
  return false;
}

bool FiniteRing::is_division_ring() const
{
  for (std::size_t a = 1; a < order_; ++a) {
    if (!is_unit(static_cast<Elem>(a))) { return false; }
  }
  return one_ != 0;
}

std::optional<Elem> FiniteRing::parse_element(std::string_view text) const
{
  if (parser_) { return parser_(text); }
  auto const t  = trim(text);
  auto const it = std::find(labels_.begin(), labels_.end(), t);
  if (it == labels_.end()) { return std::nullopt; }
  return static_cast<Elem>(it - labels_.begin());
}

FiniteRing build_ring(RingSpec const &spec, Guards const &guards)
{
  validate_ring_spec(spec);
  if (predicted_order(spec, guards.max_ring_order) == 0) {
    throw GuardExceeded("ring '" + spec.to_string() + "' exceeds the ring order guard of " +
                        std::to_string(guards.max_ring_order));
  }
  switch (spec.kind) {
  case RingKind::zmod: return build_zmod(spec);
  case RingKind::gf: return build_gf(spec);
  case RingKind::quot: return build_quot(spec);
  case RingKind::tri:
  case RingKind::mat: return build_matrix(spec, guards);
  case RingKind::prod: return build_product(spec, guards);
  }
  throw SpecError("unknown ring kind");
}

FiniteRing make_ring(std::string_view text, Guards const &guards) { return build_ring(parse_ring_spec(text), guards); }

AuditReport ring_axiom_audit(FiniteRing const &ring)
{
  AuditReport report;
  auto const  n = ring.order();
  report.order  = n;
  auto record   = [&](char const *axiom, Elem a, Elem b, Elem c) { report.violations.push_back({axiom, {a, b, c}}); };

  for (std::size_t i = 0; i < n * n; ++i) {
    if (ring.add_table()[i] >= n) { record("add-table-range", static_cast<Elem>(i / n), static_cast<Elem>(i % n), 0); }
    if (ring.mul_table()[i] >= n) { record("mul-table-range", static_cast<Elem>(i / n), static_cast<Elem>(i % n), 0); }
  }
  if (ring.one() >= n) { record("unit-range", ring.one(), 0, 0); }
  if (!report.ok()) { return report; }

  for (Elem a = 0; a < n; ++a) {
    if (ring.add(a, 0) != a || ring.add(0, a) != a) { record("additive-identity", a, 0, 0); }
    if (ring.add(a, ring.neg(a)) != 0) { record("additive-inverse", a, 0, 0); }
    if (ring.mul(a, ring.one()) != a || ring.mul(ring.one(), a) != a) { record("multiplicative-identity", a, 0, 0); }
    for (Elem b = 0; b < n; ++b) {
      if (ring.add(a, b) != ring.add(b, a)) { record("additive-commutativity", a, b, 0); }
      for (Elem c = 0; c < n; ++c) {
        if (ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c))) { record("additive-associativity", a, b, c); }
        if (ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c))) {
          record("multiplicative-associativity", a, b, c);
        }
        if (ring.mul(a, ring.add(b, c)) != ring.add(ring.mul(a, b), ring.mul(a, c))) {
          record("left-distributivity", a, b, c);
        }
        if (ring.mul(ring.add(a, b), c) != ring.add(ring.mul(a, c), ring.mul(b, c))) {
          record("right-distributivity", a, b, c);
        }
      }
    }
  }
  report.instances_checked = n * n * n;
  return report;
}

FiniteRing opposite_ring(FiniteRing const &ring)
{
  auto const               n = ring.order();
  std::vector<Elem>        add(ring.add_table().begin(), ring.add_table().end());
  std::vector<Elem>        mul(n * n);
  std::vector<std::string> labels;
  for (Elem a = 0; a < n; ++a) {
    labels.push_back(ring.label(a));
    for (Elem b = 0; b < n; ++b) { mul[a * n + b] = ring.mul(b, a); }
  }
  std::string name = ring.name();
  if (name.starts_with("op(") && name.ends_with(")")) {
    name = name.substr(3, name.size() - 4);
  } else {
    name = "op(" + name + ")";
  }
  return FiniteRing(std::move(name), std::move(labels), std::move(add), std::move(mul), ring.one(),
                    ring.literal_parser());
}

} // namespace perp
