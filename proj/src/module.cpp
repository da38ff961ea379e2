#include "perp/module.hpp"

#include "perp/error.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <unordered_set>

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

std::mutex                    cache_mutex;
std::shared_ptr<LatticeCache> lattice_cache;

std::shared_ptr<LatticeCache> current_cache()
{
  std::lock_guard lock(cache_mutex);
  return lattice_cache;
}

bool sorted_contains(std::span<Code const> v, Code c) { return std::binary_search(v.begin(), v.end(), c); }

// Minkowski sum of two submodules given as sorted element lists.
std::vector<Code> sum_sets(ModulePresentation const &m, std::span<Code const> a, std::span<Code const> b,
                           std::vector<std::uint8_t> &marks)
{
  std::fill(marks.begin(), marks.end(), 0);
  std::vector<Code> out;
  for (Code x : a) {
    for (Code y : b) {
      Code const s = m.add(x, y);
      auto      &flag = marks[m.position(s)];
      if (!flag) {
        flag = 1;
        out.push_back(s);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) { s.remove_prefix(1); }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) { s.remove_suffix(1); }
  return s;
}

// Splits at `sep` outside parentheses.
std::vector<std::string_view> split_top(std::string_view s, char sep)
{
  std::vector<std::string_view> parts;
  int                           depth = 0;
  std::size_t                   start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') { ++depth; }
    if (s[i] == ')') { --depth; }
    if (s[i] == sep && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

} // namespace

Ring::Ring(FiniteRing ring)
    : base_(std::make_shared<FiniteRing const>(std::move(ring))),
      opposite_(std::make_shared<FiniteRing const>(opposite_ring(*base_)))
{
}

ModulePresentation::ModulePresentation(Key,
                                       Ring              ring,
                                       Side              side,
                                       std::size_t       rank,
                                       std::vector<Code> carrier,
                                       bool              full_carrier,
                                       std::vector<Code> relations,
                                       Guards            guards)
    : ring_(std::move(ring)), side_(side), rank_(rank), cover_size_(1), full_carrier_(full_carrier),
      relations_(std::move(relations)), guards_(guards), fingerprint_(fnv_offset)
{
  std::size_t const q = ring_.base().order();
  for (std::size_t i = 0; i < rank_; ++i) {
    if (cover_size_ > guards_.max_module_order / q) {
      throw GuardExceeded("free module of rank " + std::to_string(rank_) + " over a ring of order " +
                          std::to_string(q) + " exceeds the module guard of " +
                          std::to_string(guards_.max_module_order));
    }
    cover_size_ *= q;
  }
  std::sort(relations_.begin(), relations_.end());
  canonical_.assign(cover_size_, none);
  position_.assign(cover_size_, 0);

  auto visit = [&](Code c) {
    if (canonical_[c] != none) { return; }
    position_[c] = elements_.size();
    elements_.push_back(c);
    for (Code k : relations_) { canonical_[free_add(c, k)] = c; }
    canonical_[c] = c;
  };
  if (full_carrier_) {
    for (Code c = 0; c < cover_size_; ++c) { visit(c); }
  } else {
    std::sort(carrier.begin(), carrier.end());
    for (Code c : carrier) { visit(c); }
  }

  fnv_mix(fingerprint_, ring_.base().fingerprint());
  fnv_mix(fingerprint_, side_ == Side::right ? 1 : 2);
  fnv_mix(fingerprint_, rank_);
  fnv_mix(fingerprint_, full_carrier_ ? 1 : 0);
  if (!full_carrier_) {
    fnv_mix(fingerprint_, carrier.size());
    for (Code c : carrier) { fnv_mix(fingerprint_, c); }
  }
  fnv_mix(fingerprint_, relations_.size());
  for (Code k : relations_) { fnv_mix(fingerprint_, k); }
}

Elem ModulePresentation::coordinate(Code c, std::size_t i) const
{
  std::size_t const q = ring_.base().order();
  for (std::size_t j = rank_ - 1; j > i; --j) { c = static_cast<Code>(c / q); }
  return static_cast<Elem>(c % q);
}

std::vector<Elem> ModulePresentation::coordinates(Code c) const
{
  std::size_t const q = ring_.base().order();
  std::vector<Elem> out(rank_);
  for (std::size_t i = rank_; i-- > 0;) {
    out[i] = static_cast<Elem>(c % q);
    c      = static_cast<Code>(c / q);
  }
  return out;
}

Code ModulePresentation::encode(std::span<Elem const> coords) const
{
  std::size_t const q = ring_.base().order();
  Code              c = 0;
  for (Elem e : coords) { c = static_cast<Code>(c * q + e); }
  return c;
}

Code ModulePresentation::free_add(Code a, Code b) const
{
  FiniteRing const &R = ring_.base();
  std::size_t const q = R.order();
  Code              out = 0, scale = 1;
  for (std::size_t i = 0; i < rank_; ++i) {
    out += static_cast<Code>(R.add(static_cast<Elem>(a % q), static_cast<Elem>(b % q)) * scale);
    a = static_cast<Code>(a / q);
    b = static_cast<Code>(b / q);
    scale = static_cast<Code>(scale * q);
  }
  return out;
}

Code ModulePresentation::free_act(Code a, Elem r) const
{
  FiniteRing const &S = scalars();
  std::size_t const q = S.order();
  Code              out = 0, scale = 1;
  for (std::size_t i = 0; i < rank_; ++i) {
    out += static_cast<Code>(S.mul(static_cast<Elem>(a % q), r) * scale);
    a     = static_cast<Code>(a / q);
    scale = static_cast<Code>(scale * q);
  }
  return out;
}

Code ModulePresentation::add(Code a, Code b) const { return canonical_[free_add(a, b)]; }

Code ModulePresentation::neg(Code a) const
{
  FiniteRing const &R = ring_.base();
  std::size_t const q = R.order();
  Code              out = 0, scale = 1;
  for (std::size_t i = 0; i < rank_; ++i) {
    out += static_cast<Code>(R.neg(static_cast<Elem>(a % q)) * scale);
    a     = static_cast<Code>(a / q);
    scale = static_cast<Code>(scale * q);
  }
  return canonical_[out];
}

Code ModulePresentation::act(Code a, Elem r) const { return canonical_[free_act(a, r)]; }

std::string ModulePresentation::format(Code c) const
{
  auto const  coords = coordinates(c);
  std::string out    = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) { out += ", "; }
    out += ring_.base().label(coords[i]);
  }
  return out + ")";
}

std::string ModulePresentation::describe() const
{
  std::string out = std::string(to_string(side_)) + " module over " + ring_.base().name() + ": ";
  out += full_carrier_ ? "R^" + std::to_string(rank_) : "submodule of R^" + std::to_string(rank_);
  if (relations_.size() > 1) { out += " modulo " + std::to_string(relations_.size()) + " relations"; }
  out += " (" + std::to_string(size()) + " elements)";
  return out;
}

Module make_module(Ring                             ring,
                   Side                             side,
                   std::size_t                      rank,
                   std::optional<std::vector<Code>> carrier,
                   std::vector<Code>                relations,
                   Guards                           guards)
{
  if (rank < 1) { throw PreconditionError("module rank must be at least 1"); }
  if (relations.empty()) { relations.push_back(0); }
  bool const full = !carrier.has_value();
  return std::make_shared<ModulePresentation const>(ModulePresentation::Key{}, std::move(ring), side, rank,
                                                    full ? std::vector<Code>{} : std::move(*carrier), full,
                                                    std::move(relations), guards);
}

Module free_module(Ring const &ring, std::size_t rank, Side side, Guards const &guards)
{
  return make_module(ring, side, rank, std::nullopt, {0}, guards);
}

Module zero_module(Ring const &ring, Side side, Guards const &guards)
{
  std::vector<Code> all(ring.base().order());
  for (std::size_t i = 0; i < all.size(); ++i) { all[i] = static_cast<Code>(i); }
  return make_module(ring, side, 1, std::nullopt, std::move(all), guards);
}

Submodule::Submodule(Module owner, std::vector<Code> generators, std::vector<Code> elements)
    : owner_(std::move(owner)), generators_(std::move(generators)), elements_(std::move(elements))
{
}

bool Submodule::contains(Code c) const { return sorted_contains(elements_, c); }

bool Submodule::is_subset_of(Submodule const &other) const
{
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

std::uint64_t Submodule::hash() const
{
  std::uint64_t h = fnv_offset;
  for (Code c : elements_) { fnv_mix(h, c); }
  return h;
}

bool operator==(Submodule const &a, Submodule const &b)
{
  return a.owner_->fingerprint() == b.owner_->fingerprint() && a.elements_ == b.elements_;
}

bool operator<(Submodule const &a, Submodule const &b)
{
  if (a.size() != b.size()) { return a.size() < b.size(); }
  return a.elements_ < b.elements_;
}

Submodule zero_submodule(Module const &m) { return Submodule(m, {}, {0}); }

Submodule whole_module(Module const &m)
{
  return submodule_from_elements(m, std::vector<Code>(m->elements().begin(), m->elements().end()));
}

std::vector<Code> cyclic_elements(Module const &m, Code generator)
{
  std::vector<Code> out;
  auto const        n = m->scalars().order();
  out.reserve(n);
  for (Elem r = 0; r < n; ++r) { out.push_back(m->act(generator, r)); }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Submodule submodule_generated(Module const &m, std::span<Code const> generators)
{
  std::vector<std::uint8_t> marks(m->size());
  std::vector<Code>         elements{0};
  std::vector<Code>         gens;
  for (Code g : generators) {
    if (!m->in_carrier(g)) { throw MismatchError("generator " + std::to_string(g) + " is not an element of the module"); }
    g = m->canonical(g);
    gens.push_back(g);
    if (sorted_contains(elements, g)) { continue; }
    elements = sum_sets(*m, elements, cyclic_elements(m, g), marks);
  }
  return Submodule(m, std::move(gens), std::move(elements));
}

Submodule submodule_from_elements(Module const &m, std::vector<Code> elements)
{
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<std::uint8_t> marks(m->size());
  std::vector<Code>         span_so_far{0};
  std::vector<Code>         gens;
  for (Code e : elements) {
    if (sorted_contains(span_so_far, e)) { continue; }
    gens.push_back(e);
    span_so_far = sum_sets(*m, span_so_far, cyclic_elements(m, e), marks);
  }
  if (span_so_far != elements) { throw InternalError("element set is not a submodule"); }
  return Submodule(m, std::move(gens), std::move(elements));
}

bool is_submodule_set(Module const &m, std::span<Code const> elements)
{
  if (!sorted_contains(elements, 0)) { return false; }
  for (Code a : elements) {
    for (Elem r = 0; r < m->scalars().order(); ++r) {
      if (!sorted_contains(elements, m->act(a, r))) { return false; }
    }
    for (Code b : elements) {
      if (!sorted_contains(elements, m->add(a, b))) { return false; }
    }
  }
  return true;
}

Submodule submodule_sum(std::span<Submodule const> parts)
{
  if (parts.empty()) { throw PreconditionError("submodule_sum needs at least one part"); }
  auto const       &m = parts.front().module();
  std::vector<Code> gens;
  for (auto const &p : parts) {
    if (p.module()->fingerprint() != m->fingerprint()) { throw MismatchError("submodules of different modules"); }
    gens.insert(gens.end(), p.generators().begin(), p.generators().end());
  }
  return submodule_generated(m, gens);
}

Submodule submodule_intersect(std::span<Submodule const> parts)
{
  if (parts.empty()) { throw PreconditionError("submodule_intersect needs at least one part"); }
  auto const       &m = parts.front().module();
  std::vector<Code> common(parts.front().elements().begin(), parts.front().elements().end());
  for (auto const &p : parts.subspan(1)) {
    if (p.module()->fingerprint() != m->fingerprint()) { throw MismatchError("submodules of different modules"); }
    std::vector<Code> next;
    std::set_intersection(common.begin(), common.end(), p.elements().begin(), p.elements().end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  return submodule_from_elements(m, std::move(common));
}

std::vector<Submodule> enumerate_submodules(Module const &m)
{
  if (m->size() > m->guards().max_module_order) {
    throw GuardExceeded("module with " + std::to_string(m->size()) + " elements exceeds the enumeration guard");
  }
  auto cache = current_cache();
  if (cache) {
    if (auto hit = cache->load(m)) { return *hit; }
  }

  struct VectorHash
  {
    std::size_t operator()(std::vector<Code> const &v) const
    {
      std::uint64_t h = fnv_offset;
      for (Code c : v) { fnv_mix(h, c); }
      return static_cast<std::size_t>(h);
    }
  };

  // Distinct cyclic submodules, each with its smallest generator.
  std::vector<std::pair<Code, std::vector<Code>>>            cyclics;
  std::unordered_set<std::vector<Code>, VectorHash>          seen_cyclic;
  for (Code e : m->elements()) {
    if (e == 0) { continue; }
    auto c = cyclic_elements(m, e);
    if (seen_cyclic.insert(c).second) { cyclics.emplace_back(e, std::move(c)); }
  }

  std::vector<std::uint8_t>                         marks(m->size());
  std::unordered_set<std::vector<Code>, VectorHash> seen;
  std::vector<Submodule>                            lattice;
  lattice.push_back(zero_submodule(m));
  seen.insert({0});
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    poll_deadline();
    for (auto const &[g, cyc] : cyclics) {
      // Copy: push_back below may reallocate `lattice`.
      auto const base_elements = std::vector<Code>(lattice[i].elements().begin(), lattice[i].elements().end());
      if (sorted_contains(base_elements, g)) { continue; }
      auto joined = sum_sets(*m, base_elements, cyc, marks);
      if (seen.insert(joined).second) {
        std::vector<Code> gens(lattice[i].generators().begin(), lattice[i].generators().end());
        gens.push_back(g);
        lattice.emplace_back(m, std::move(gens), std::move(joined));
      }
    }
  }
  std::sort(lattice.begin(), lattice.end());
  if (cache) { cache->store(m, lattice); }
  return lattice;
}

std::span<Code const> enumerate_elements(Module const &m)
{
  if (m->size() > m->guards().max_module_order) {
    throw GuardExceeded("module with " + std::to_string(m->size()) + " elements exceeds the enumeration guard");
  }
  return m->elements();
}

Quotient quotient_module(Module const &m, Submodule const &x)
{
  if (x.module()->fingerprint() != m->fingerprint()) {
    throw MismatchError("quotient by a submodule of a different module");
  }
  std::vector<Code> preimage;
  std::vector<Code> carrier;
  for (Code c = 0; c < m->cover_size(); ++c) {
    if (!m->in_carrier(c)) { continue; }
    if (!m->full_carrier()) { carrier.push_back(c); }
    if (x.contains(m->canonical(c))) { preimage.push_back(c); }
  }
  std::optional<std::vector<Code>> carrier_opt;
  if (!m->full_carrier()) { carrier_opt = std::move(carrier); }
  Quotient q;
  q.module = make_module(m->ring(), m->side(), m->rank(), std::move(carrier_opt), std::move(preimage), m->guards());
  for (Code e : m->elements()) { q.projection.push_back(q.module->canonical(e)); }
  return q;
}

std::vector<Code> parse_vectors(Module const &m, std::string_view text)
{
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ParseError("expected '[' v1; v2; ... ']'", 0);
  }
  auto const        body = trim(text.substr(1, text.size() - 2));
  std::vector<Code> out;
  if (body.empty()) { return out; }
  std::size_t offset = 1;
  for (auto const row : split_top(body, ';')) {
    auto const entries = split_top(row, ',');
    if (entries.size() != m->rank()) {
      throw ParseError("vector '" + std::string(row) + "' needs " + std::to_string(m->rank()) + " entries", offset);
    }
    std::vector<Elem> coords;
    for (auto const entry : entries) {
      auto v = m->ring().base().parse_element(entry);
      if (!v) { throw ParseError("cannot read ring element '" + std::string(entry) + "'", offset); }
      coords.push_back(*v);
    }
    Code const c = m->encode(coords);
    if (!m->in_carrier(c)) { throw MismatchError("vector '" + std::string(row) + "' is not in the module"); }
    out.push_back(m->canonical(c));
    offset += row.size() + 1;
  }
  return out;
}

Module parse_module_spec(Ring const &ring, Side side, std::string_view text, Guards const &guards)
{
  text = trim(text);
  if (!text.starts_with("free")) { throw ParseError("module spec must start with 'free'", 0); }
  std::size_t pos = 4;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) { ++pos; }
  std::size_t const start = pos;
  std::size_t       rank  = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    rank = rank * 10 + static_cast<std::size_t>(text[pos] - '0');
    ++pos;
    if (rank > 64) { throw ParseError("rank too large", start); }
  }
  if (pos == start) { throw ParseError("expected module rank", pos); }
  if (rank < 1) { throw ParseError("module rank must be at least 1", start); }
  auto free = free_module(ring, rank, side, guards);
  auto rest = trim(text.substr(pos));
  if (rest.empty()) { return free; }
  if (rest.front() != '/') { throw ParseError("expected '/' before relations", text.size() - rest.size()); }
  auto const gens      = parse_vectors(free, rest.substr(1));
  auto const relations = submodule_generated(free, gens);
  return quotient_module(free, relations).module;
}

void set_lattice_cache(std::shared_ptr<LatticeCache> cache)
{
  std::lock_guard lock(cache_mutex);
  lattice_cache = std::move(cache);
}

} // namespace perp
