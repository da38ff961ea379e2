#pragma once

#include "perp/module.hpp"

#include <array>
#include <string>
#include <vector>

namespace perp::test {

inline constexpr std::array<char const *, 9> corpus{
    "zmod 2",
    "zmod 4",
    "zmod 6",
    "zmod 8",
    "zmod 9",
    "gf 2 2 x^2+x+1",
    "quot gf2 [x]/(x^2)",
    "quot gf2 [x,y]/(x^2,xy,y^2)",
    "tri 2 over gf 2 1",
};

inline constexpr std::array<char const *, 7> pf_corpus{
    "zmod 2", "zmod 4", "zmod 6", "zmod 8", "zmod 9", "gf 2 2 x^2+x+1", "quot gf2 [x]/(x^2)",
};

inline constexpr char const *local_ring = "quot gf2 [x,y]/(x^2,xy,y^2)";
inline constexpr char const *tri_ring   = "tri 2 over gf 2 1";

inline Ring ring(std::string const &spec) { return Ring(make_ring(spec)); }

inline std::vector<Code> codes(std::span<Code const> s) { return {s.begin(), s.end()}; }

inline Elem elem(Ring const &r, std::string const &literal) { return *r.base().parse_element(literal); }

inline Submodule span_of(Module const &m, std::string const &vectors)
{
  auto const gens = parse_vectors(m, vectors);
  return submodule_generated(m, gens);
}

/// R and every quotient of R^2, on both sides.
inline std::vector<Module> scope_modules(Ring const &r)
{
  std::vector<Module> out;
  for (Side side : {Side::right, Side::left}) {
    out.push_back(free_module(r, 1, side));
    auto const free = free_module(r, 2, side);
    for (auto const &k : enumerate_submodules(free)) { out.push_back(quotient_module(free, k).module); }
  }
  return out;
}

} // namespace perp::test
