#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perp::poly {

using Coeff    = std::uint64_t;
using Monomial = std::vector<std::uint16_t>;

/// Graded lexicographic order, first variable largest. Sorting a map with this
/// comparator descending puts the leading term first.
struct GrlexGreater
{
  bool operator()(Monomial const &a, Monomial const &b) const;
};

bool grlex_less(Monomial const &a, Monomial const &b);

/// Sparse polynomial with coefficients in Z/modulus, leading term first.
using Poly = std::map<Monomial, Coeff, GrlexGreater>;

/// Parses `text` over the given single-letter variables, reducing integer
/// coefficients modulo `modulus`. `offset` shifts reported error columns.
Poly parse(std::string_view text, std::span<char const> variables, Coeff modulus, std::size_t offset = 0);

std::string format(Poly const &p, std::span<char const> variables);

std::string format_monomial(Monomial const &m, std::span<char const> variables);

Poly multiply(Poly const &a, Poly const &b, Coeff modulus);

Poly add(Poly const &a, Poly const &b, Coeff modulus);

/// Coefficients low degree first; only valid for one variable.
std::vector<Coeff> to_dense(Poly const &p);

/// Dense univariate remainder of `a` by a polynomial whose leading coefficient is a unit.
std::vector<Coeff> remainder(std::vector<Coeff> a, std::vector<Coeff> const &divisor, Coeff modulus);

/// Exhaustive factor search over all monic polynomials of degree <= deg/2.
bool is_irreducible(std::vector<Coeff> const &f, Coeff prime);

Coeff inverse_mod(Coeff a, Coeff modulus);

bool is_prime(std::uint64_t n);

/// Reduced monic Groebner basis over the prime field GF(prime) (Buchberger).
std::vector<Poly> groebner_basis(std::vector<Poly> generators, Coeff prime);

Poly normal_form(Poly p, std::vector<Poly> const &basis, Coeff prime);

/// Monomials not divisible by any leading monomial of `basis`, by degree and then
/// with earlier variables first (1, x, y, x^2, xy, y^2, ...).
/// Empty optional when the quotient is infinite-dimensional.
std::optional<std::vector<Monomial>> standard_monomials(std::vector<Poly> const &basis, std::size_t variables);

} // namespace perp::poly
