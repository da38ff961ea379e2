#pragma once

#include "perp/module.hpp"

#include <atomic>
#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace perp {

/// Submodule lattices on disk, one file per (module hash, tag) under a
/// directory. Entries start with a versioned header; anything unreadable is
/// reported on `warnings`, ignored and later overwritten. Reads and writes
/// hold an advisory lock on a sidecar file.
class FileLatticeCache : public LatticeCache
{
public:
  static constexpr std::string_view header = "perpcalc-cache 1";
  static constexpr std::string_view tag    = "lattice";

  explicit FileLatticeCache(std::filesystem::path dir, std::ostream *warnings = nullptr);

  std::optional<std::vector<Submodule>> load(Module const &m) override;
  void                                  store(Module const &m, std::vector<Submodule> const &subs) override;

  std::filesystem::path entry_path(Module const &m) const;

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  std::size_t rejected() const { return rejected_; }

private:
  void warn(std::string const &message) const;

  std::filesystem::path    dir_;
  std::ostream            *warnings_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
  std::atomic<std::size_t> rejected_{0};
};

} // namespace perp
