#include "perp/guards.hpp"

#include "perp/error.hpp"

#include <atomic>

namespace perp {

namespace {
std::atomic<std::chrono::steady_clock::rep> deadline_ticks{0};
std::atomic<bool>                           deadline_set{false};
} // namespace

void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline)
{
  if (deadline) {
    deadline_ticks.store(deadline->time_since_epoch().count());
    deadline_set.store(true);
  } else {
    deadline_set.store(false);
  }
}

void poll_deadline()
{
  if (!deadline_set.load(std::memory_order_relaxed)) { return; }
  auto const now = std::chrono::steady_clock::now().time_since_epoch().count();
  if (now > deadline_ticks.load(std::memory_order_relaxed)) {
    throw Timeout("timeout: deadline reached during enumeration");
  }
}

} // namespace perp
