#pragma once

#include <cstdint>
#include <vector>

#include "boolelim/fixtures.hpp"

namespace boolelim::cli {

/// Golden fixtures plus reduced-size property suites; deterministic in seed.
std::vector<FixtureResult> run_selftest(std::uint64_t seed);

}  // namespace boolelim::cli
