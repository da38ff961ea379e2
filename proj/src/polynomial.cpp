#include "perp/polynomial.hpp"

#include "perp/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <utility>

namespace perp::poly {

namespace {

int total_degree(Monomial const &m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(Monomial const &a, Monomial const &b)
{
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) { return false; }
  }
  return true;
}

Monomial quotient(Monomial const &b, Monomial const &a)
{
  Monomial q(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) { q[i] = static_cast<std::uint16_t>(b[i] - a[i]); }
  return q;
}

Monomial lcm(Monomial const &a, Monomial const &b)
{
  Monomial l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) { l[i] = std::max(a[i], b[i]); }
  return l;
}

Monomial times(Monomial const &a, Monomial const &b)
{
  Monomial p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) { p[i] = static_cast<std::uint16_t>(a[i] + b[i]); }
  return p;
}

void accumulate_term(Poly &p, Monomial const &m, Coeff c, Coeff modulus)
{
  c %= modulus;
  if (c == 0) { return; }
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
    return;
  }
  it->second = (it->second + c) % modulus;
  if (it->second == 0) { p.erase(it); }
}

// p -= c * m * q
void subtract_scaled(Poly &p, Poly const &q, Monomial const &m, Coeff c, Coeff modulus)
{
  for (auto const &[qm, qc] : q) {
    Coeff const t = (c * qc) % modulus;
    accumulate_term(p, times(qm, m), (modulus - t) % modulus, modulus);
  }
}

Poly make_monic(Poly p, Coeff prime)
{
  if (p.empty()) { return p; }
  Coeff const inv = inverse_mod(p.begin()->second, prime);
  for (auto &[m, c] : p) { c = (c * inv) % prime; }
  return p;
}

} // namespace

bool grlex_less(Monomial const &a, Monomial const &b)
{
  int const da = total_degree(a);
  int const db = total_degree(b);
  if (da != db) { return da < db; }
  // Same degree: the larger exponent in the first differing variable is larger.
  return a < b;
}

bool GrlexGreater::operator()(Monomial const &a, Monomial const &b) const { return grlex_less(b, a); }

Poly parse(std::string_view text, std::span<char const> variables, Coeff modulus, std::size_t offset)
{
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) { ++pos; }
  };
  auto read_int = [&]() -> std::uint64_t {
    std::uint64_t v = 0;
    std::size_t const start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (v > (UINT64_MAX - 9) / 10) { throw ParseError("integer too large in polynomial", offset + start); }
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      ++pos;
    }
    if (pos == start) { throw ParseError("expected integer in polynomial", offset + pos); }
    return v;
  };

  Poly result;
  skip_ws();
  if (pos == text.size()) { throw ParseError("empty polynomial", offset + pos); }
  bool first = true;
  while (true) {
    skip_ws();
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      negative = text[pos] == '-';
      ++pos;
      skip_ws();
    } else if (!first) {
      break;
    }
    first = false;

    Coeff    coefficient = 1;
    bool     seen_any    = false;
    Monomial mono(variables.size(), 0);
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coefficient = read_int() % modulus;
      seen_any    = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
      }
    }
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
      auto const var = std::find(variables.begin(), variables.end(), text[pos]);
      if (var == variables.end()) {
        throw ParseError(std::string("unknown variable '") + text[pos] + "'", offset + pos);
      }
      ++pos;
      std::uint64_t exponent = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip_ws();
        exponent = read_int();
        if (exponent > 1000) { throw ParseError("exponent too large", offset + pos); }
      }
      auto &slot = mono[static_cast<std::size_t>(var - variables.begin())];
      slot       = static_cast<std::uint16_t>(slot + exponent);
      seen_any   = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
      }
    }
    if (!seen_any) { throw ParseError("expected polynomial term", offset + pos); }
    Coeff const c = negative ? (modulus - coefficient % modulus) % modulus : coefficient % modulus;
    accumulate_term(result, mono, c, modulus);
  }
  skip_ws();
  if (pos != text.size()) { throw ParseError("unexpected character in polynomial", offset + pos); }
  return result;
}

std::string format_monomial(Monomial const &m, std::span<char const> variables)
{
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) { continue; }
    out += variables[i];
    if (m[i] > 1) { out += "^" + std::to_string(m[i]); }
  }
  return out.empty() ? "1" : out;
}

std::string format(Poly const &p, std::span<char const> variables)
{
  if (p.empty()) { return "0"; }
  std::string out;
  for (auto const &[m, c] : p) {
    if (!out.empty()) { out += "+"; }
    bool const constant = std::all_of(m.begin(), m.end(), [](auto e) { return e == 0; });
    if (constant) {
      out += std::to_string(c);
    } else {
      if (c != 1) { out += std::to_string(c); }
      out += format_monomial(m, variables);
    }
  }
  return out;
}

Poly multiply(Poly const &a, Poly const &b, Coeff modulus)
{
  Poly out;
  for (auto const &[ma, ca] : a) {
    for (auto const &[mb, cb] : b) { accumulate_term(out, times(ma, mb), (ca * cb) % modulus, modulus); }
  }
  return out;
}

Poly add(Poly const &a, Poly const &b, Coeff modulus)
{
  Poly out = a;
  for (auto const &[m, c] : b) { accumulate_term(out, m, c, modulus); }
  return out;
}

std::vector<Coeff> to_dense(Poly const &p)
{
  std::vector<Coeff> out;
  for (auto const &[m, c] : p) {
    std::size_t const d = m.empty() ? 0 : m[0];
    if (out.size() <= d) { out.resize(d + 1, 0); }
    out[d] = c;
  }
  return out;
}

Coeff inverse_mod(Coeff a, Coeff modulus)
{
  // Extended Euclid on signed values.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(modulus), new_r = static_cast<std::int64_t>(a % modulus);
  while (new_r != 0) {
    std::int64_t const q = r / new_r;
    t                    = std::exchange(new_t, t - q * new_t);
    r                    = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) { throw SpecError("element " + std::to_string(a) + " is not invertible mod " + std::to_string(modulus)); }
  if (t < 0) { t += static_cast<std::int64_t>(modulus); }
  return static_cast<Coeff>(t);
}

bool is_prime(std::uint64_t n)
{
  if (n < 2) { return false; }
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) { return false; }
  }
  return true;
}

std::vector<Coeff> remainder(std::vector<Coeff> a, std::vector<Coeff> const &divisor, Coeff modulus)
{
  auto trim = [](std::vector<Coeff> &v) {
    while (!v.empty() && v.back() == 0) { v.pop_back(); }
  };
  std::vector<Coeff> d = divisor;
  trim(a);
  trim(d);
  if (d.empty()) { throw SpecError("division by the zero polynomial"); }
  Coeff const lead_inv = inverse_mod(d.back(), modulus);
  while (a.size() >= d.size()) {
    Coeff const       factor = (a.back() * lead_inv) % modulus;
    std::size_t const shift  = a.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i) {
      a[shift + i] = (a[shift + i] + modulus - (factor * d[i]) % modulus) % modulus;
    }
    trim(a);
  }
  return a;
}

bool is_irreducible(std::vector<Coeff> const &f, Coeff prime)
{
  std::vector<Coeff> g = f;
  while (!g.empty() && g.back() == 0) { g.pop_back(); }
  if (g.size() < 2) { return false; }
  std::size_t const degree = g.size() - 1;
  for (std::size_t d = 1; d <= degree / 2; ++d) {
    // All monic divisors of degree d: coefficient vectors of length d counted in base `prime`.
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) { count *= prime; }
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Coeff> divisor(d + 1, 0);
      std::uint64_t      c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = c % prime;
        c /= prime;
      }
      divisor[d] = 1;
      if (remainder(g, divisor, prime).empty()) { return false; }
    }
  }
  return true;
}

Poly normal_form(Poly p, std::vector<Poly> const &basis, Coeff prime)
{
  Poly out;
  while (!p.empty()) {
    auto const [lm, lc] = *p.begin();
    bool reduced        = false;
    for (auto const &g : basis) {
      if (g.empty()) { continue; }
      auto const &[gm, gc] = *g.begin();
      if (divides(gm, lm)) {
        Coeff const factor = (lc * inverse_mod(gc, prime)) % prime;
        subtract_scaled(p, g, quotient(lm, gm), factor, prime);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      out.emplace(lm, lc);
      p.erase(p.begin());
    }
  }
  return out;
}

std::vector<Poly> groebner_basis(std::vector<Poly> generators, Coeff prime)
{
  std::vector<Poly> basis;
  for (auto &g : generators) {
    if (!g.empty()) { basis.push_back(make_monic(std::move(g), prime)); }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) { pairs.emplace_back(i, j); }
  }
  while (!pairs.empty()) {
    auto const [i, j] = pairs.back();
    pairs.pop_back();
    auto const &mi = basis[i].begin()->first;
    auto const &mj = basis[j].begin()->first;
    Monomial const l = lcm(mi, mj);
    if (times(mi, mj) == l) { continue; } // coprime leading monomials reduce to zero
    Poly s;
    subtract_scaled(s, basis[i], quotient(l, mi), prime - 1, prime);
    subtract_scaled(s, basis[j], quotient(l, mj), 1, prime);
    Poly r = normal_form(std::move(s), basis, prime);
    if (!r.empty()) {
      basis.push_back(make_monic(std::move(r), prime));
      for (std::size_t k = 0; k + 1 < basis.size(); ++k) { pairs.emplace_back(k, basis.size() - 1); }
    }
  }
  // Minimize, then inter-reduce.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) { continue; }
      auto const &mi = basis[i].begin()->first;
      auto const &mj = basis[j].begin()->first;
      if (divides(mj, mi) && (mj != mi || j < i)) { redundant = true; }
    }
    if (!redundant) { minimal.push_back(basis[i]); }
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) { others.push_back(minimal[j]); }
    }
    Poly head;
    head.emplace(*minimal[i].begin());
    Poly tail = minimal[i];
    tail.erase(tail.begin());
    reduced.push_back(add(head, normal_form(tail, others, prime), prime));
  }
  std::sort(reduced.begin(), reduced.end(), [](Poly const &a, Poly const &b) {
    return grlex_less(a.begin()->first, b.begin()->first);
  });
  return reduced;
}

std::optional<std::vector<Monomial>> standard_monomials(std::vector<Poly> const &basis, std::size_t variables)
{
  std::vector<std::uint16_t> bound(variables, 0);
  for (auto const &g : basis) {
    auto const &m = g.begin()->first;
    std::size_t nonzero = 0, which = 0;
    for (std::size_t i = 0; i < variables; ++i) {
      if (m[i] != 0) {
        ++nonzero;
        which = i;
      }
    }
    if (nonzero == 0) { return std::vector<Monomial>{}; } // unit ideal
    if (nonzero == 1 && (bound[which] == 0 || m[which] < bound[which])) { bound[which] = m[which]; }
  }
  for (auto b : bound) {
    if (b == 0) { return std::nullopt; }
  }
  std::vector<Monomial> out;
  Monomial              m(variables, 0);
  while (true) {
    bool const standard = std::none_of(basis.begin(), basis.end(),
                                       [&](Poly const &g) { return divides(g.begin()->first, m); });
    if (standard) { out.push_back(m); }
    std::size_t i = 0;
    while (i < variables && ++m[i] == bound[i]) {
      m[i] = 0;
      ++i;
    }
    if (i == variables) { break; }
  }
  // Reading order: degree ascending, then x-heavy monomials first (1, x, y, x^2, xy, ...).
  std::sort(out.begin(), out.end(), [](Monomial const &a, Monomial const &b) {
    int const da = total_degree(a);
    int const db = total_degree(b);
    return da != db ? da < db : a > b;
  });
  return out;
}

} // namespace perp::poly
