#include "perp/cache.hpp"

#include "perp/report.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace perp {

namespace {

class FileLock
{
public:
  FileLock(std::filesystem::path const &path, int op) : fd_(::open(path.c_str(), O_RDWR | O_CREAT, 0644))
  {
    if (fd_ >= 0) { ::flock(fd_, op); }
  }
  ~FileLock()
  {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(FileLock const &)            = delete;
  FileLock &operator=(FileLock const &) = delete;

private:
  int fd_;
};

std::vector<Code> read_codes(std::string const &text)
{
  std::istringstream in(text);
  std::vector<Code>  out;
  long long          v = 0;
  while (in >> v) {
    if (v < 0 || v >= static_cast<long long>(ModulePresentation::none)) { throw std::runtime_error("code out of range"); }
    out.push_back(static_cast<Code>(v));
  }
  if (!in.eof()) { throw std::runtime_error("malformed code list"); }
  return out;
}

bool is_element(Module const &m, Code c) { return c < m->cover_size() && m->in_carrier(c) && m->canonical(c) == c; }

} // namespace

FileLatticeCache::FileLatticeCache(std::filesystem::path dir, std::ostream *warnings)
    : dir_(std::move(dir)), warnings_(warnings)
{
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) { warn("cannot create cache directory " + dir_.string() + ": " + ec.message()); }
}

std::filesystem::path FileLatticeCache::entry_path(Module const &m) const
{
  return dir_ / (report::hex_hash(m->fingerprint()) + "." + std::string(tag));
}

void FileLatticeCache::warn(std::string const &message) const
{
  if (warnings_) { *warnings_ << "warning: cache: " << message << "\n"; }
}

std::optional<std::vector<Submodule>> FileLatticeCache::load(Module const &m)
{
  auto const path = entry_path(m);
  if (!std::filesystem::exists(path)) {
    ++misses_;
    return std::nullopt;
  }
  FileLock      lock(path.string() + ".lock", LOCK_SH);
  std::ifstream in(path);
  try {
    std::string line;
    if (!std::getline(in, line) || line != header) { throw std::runtime_error("bad version header"); }
    if (!std::getline(in, line) || line != "tag " + std::string(tag)) { throw std::runtime_error("bad tag"); }
    if (!std::getline(in, line) || line != "key " + report::hex_hash(m->fingerprint())) {
      throw std::runtime_error("key mismatch");
    }
    if (!std::getline(in, line) || line.rfind("count ", 0) != 0) { throw std::runtime_error("missing count"); }
    std::size_t const count = std::stoul(line.substr(6));
    if (count == 0 || count > (std::size_t{1} << 24)) { throw std::runtime_error("bad count"); }

    std::vector<Submodule> subs;
    for (std::size_t i = 0; i < count; ++i) {
      if (!std::getline(in, line)) { throw std::runtime_error("truncated entry"); }
      auto const bar = line.find('|');
      if (bar == std::string::npos) { throw std::runtime_error("malformed line"); }
      auto gens  = read_codes(line.substr(0, bar));
      auto elems = read_codes(line.substr(bar + 1));
      if (elems.empty() || elems.front() != 0 || !std::is_sorted(elems.begin(), elems.end()) ||
          std::adjacent_find(elems.begin(), elems.end()) != elems.end()) {
        throw std::runtime_error("element list not canonical");
      }
      for (Code c : elems) {
        if (!is_element(m, c)) { throw std::runtime_error("element outside the module"); }
      }
      for (Code g : gens) {
        if (!std::binary_search(elems.begin(), elems.end(), g)) { throw std::runtime_error("generator outside submodule"); }
      }
      if (!std::ranges::equal(submodule_generated(m, gens).elements(), elems)) {
        throw std::runtime_error("entry is not the span of its generators");
      }
      subs.emplace_back(m, std::move(gens), std::move(elems));
    }
    if (!std::getline(in, line) || line != "end") { throw std::runtime_error("missing end marker"); }
    if (!std::is_sorted(subs.begin(), subs.end()) || std::adjacent_find(subs.begin(), subs.end()) != subs.end()) {
      throw std::runtime_error("lattice not sorted");
    }
    if (subs.front().size() != 1 || subs.back().size() != m->size()) { throw std::runtime_error("lattice lacks 0 or M"); }
    ++hits_;
    return subs;
  } catch (std::exception const &e) {
    ++rejected_;
    ++misses_;
    warn("ignoring " + path.string() + " (" + e.what() + "), recomputing");
    return std::nullopt;
  }
}

void FileLatticeCache::store(Module const &m, std::vector<Submodule> const &subs)
{
  auto const path = entry_path(m);
  auto const tmp  = path.string() + ".tmp";
  FileLock   lock(path.string() + ".lock", LOCK_EX);
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << header << "\n"
        << "tag " << tag << "\n"
        << "key " << report::hex_hash(m->fingerprint()) << "\n"
        << "count " << subs.size() << "\n";
    for (auto const &s : subs) {
      for (std::size_t i = 0; i < s.generators().size(); ++i) { out << (i ? " " : "") << s.generators()[i]; }
      out << " |";
      for (Code c : s.elements()) { out << " " << c; }
      out << "\n";
    }
    out << "end\n";
    if (!out) {
      warn("cannot write " + tmp);
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) { warn("cannot replace " + path.string() + ": " + ec.message()); }
}

} // namespace perp
