#pragma once

#include <cstdint>
#include <stdexcept>

namespace rideflow::sim {

class SimError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// World parameters. Defaults are sized so a desk-scale run finishes in
/// seconds and yields a few hundred training rows.
struct SimConfig {
  std::uint32_t n_drivers = 10;
  double world_size = 100.0;       // square side, distance units
  double request_rate = 0.2;       // expected new requests per tick (Poisson)
  double driver_speed = 1.0;       // distance units per tick
  double cancel_probability = 0.05;
  std::uint64_t seed = 42;
  std::uint64_t ticks = 2000;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Throws SimError on any out-of-range parameter.
void validate(const SimConfig& config);

} // namespace rideflow::sim
