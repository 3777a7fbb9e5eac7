#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "covdyn/system.hpp"

namespace covdyn::testing {

// Example 3's system: a 2-cycle {0,1} plus the fixed point 2.
inline DynamicalSystem sys_a() { return build_system({1, 0, 2}); }

// 4-cycle {0,1,2,3}, 2-cycle {4,5}, transient 6 -> 0.
inline DynamicalSystem sys_c() { return build_system({1, 2, 3, 0, 5, 4, 0}); }

// The two-attractor system of the 4-cycle-to-2-cycle witness figure.
inline DynamicalSystem sys_two_attractors() { return build_system({1, 2, 3, 0, 5, 4}); }

// Chain 0 -> 1 -> 2 -> 3 (fixed point), with 4 -> 3.
inline DynamicalSystem sys_chain() { return build_system({1, 2, 3, 3, 3}); }

inline DynamicalSystem random_system(std::size_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<State> dist(0, static_cast<State>(m - 1));
  std::vector<State> successor(m);
  for (auto& s : successor) s = dist(rng);
  return build_system(std::move(successor));
}

// All M^M successor tables over M states, in lexicographic order.
inline std::vector<DynamicalSystem> all_systems(std::size_t m) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < m; ++k) total *= m;
  std::vector<DynamicalSystem> out;
  out.reserve(total);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::vector<State> successor(m);
    std::uint64_t rest = index;
    for (std::size_t j = m; j-- > 0;) {
      successor[j] = static_cast<State>(rest % m);
      rest /= m;
    }
    out.push_back(build_system(std::move(successor)));
  }
  return out;
}

}  // namespace covdyn::testing
