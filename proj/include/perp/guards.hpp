#pragma once

#include <chrono>
#include <cstddef>
#include <optional>

namespace perp {

/// Size limits applied when rings and modules are materialized.
struct Guards
{
  std::size_t max_ring_order = 256;
  std::size_t max_module_order = 4096;
};

/// Cooperative deadline shared by the long enumerations. Unset means no limit.
void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline);

/// Throws perp::Timeout once the deadline has passed.
void poll_deadline();

} // namespace perp
