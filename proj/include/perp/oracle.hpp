#pragma once

#include "perp/module.hpp"

#include <string>
#include <vector>

namespace perp::oracle {

/// Largest module (and dual) the oracle accepts.
inline constexpr std::size_t bound = 64;

/// A submodule as the sorted carrier codes of the free cover lying over it.
using CodeSet = std::vector<Code>;

/// A map out of M, as its value on each carrier code of M's free cover in
/// increasing order. Values are ring elements for maps into R and smallest
/// carrier codes of the image coset for maps into other modules.
using HomTable = std::vector<Code>;

/// Every submodule of m, found by saturating joins of cyclic submodules.
std::vector<CodeSet> oracle_submodules(Module const &m);

/// Every module map m -> n (same side), by extending generator images.
std::vector<HomTable> oracle_hom_set(Module const &m, Module const &n);

/// Maps m -> R vanishing on x.
std::vector<HomTable> oracle_perp(Module const &m, CodeSet const &x);

/// Elements of m killed by every map in y.
CodeSet oracle_perp(Module const &m, std::vector<HomTable> const &y);

/// Every submodule of Hom(m, R), each as a sorted list of tables.
std::vector<std::vector<HomTable>> oracle_dual_submodules(Module const &m);

struct Mismatch
{
  std::string check;
  std::string main;
  std::string oracle;
};

struct CrossCheckReport
{
  std::string           target;
  std::size_t           checks = 0;
  std::vector<Mismatch> mismatches;

  bool pass() const { return mismatches.empty(); }
};

/// Compares submodule lattices, the dual carrier, the dual lattice and both
/// perp directions between the main path and the oracle.
CrossCheckReport cross_check(Module const &m, std::string target = "M");

} // namespace perp::oracle
