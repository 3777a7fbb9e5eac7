#pragma once

#include <cstdint>
#include <vector>

#include "covdyn/det_conversion.hpp"
#include "covdyn/system.hpp"

namespace covdyn {

// Brute-force ground truth: enumerate every function table between two
// systems in lexicographic order (f(0) most significant digit) and keep the
// covariant ones. The OpenMP kernels partition the index space; the *_serial
// twins are the reference implementations the tests compare against.

inline constexpr std::uint64_t kDefaultMapCap = 10'000'000;

// Deterministic cursor over the M2^M1 function tables.
class MapEnumerator {
 public:
  MapEnumerator(std::size_t source_size, std::size_t target_size,
                std::uint64_t cap = kDefaultMapCap);

  std::uint64_t total() const { return total_; }
  // Table of the index-th function in lexicographic order.
  std::vector<State> table_for(std::uint64_t index) const;

 private:
  std::size_t source_size_, target_size_;
  std::uint64_t total_;
};

// All covariant maps sys1 -> sys2 in lexicographic table order.
std::vector<DetMap> enumerate_covariant(const DynamicalSystem& sys1,
                                        const DynamicalSystem& sys2,
                                        std::uint64_t cap = kDefaultMapCap);
std::vector<DetMap> enumerate_covariant_serial(const DynamicalSystem& sys1,
                                               const DynamicalSystem& sys2,
                                               std::uint64_t cap = kDefaultMapCap);

// True iff some covariant self-map sends s to s_prime (exhaustive search).
bool oracle_convertible(const DynamicalSystem& sys, State s, State s_prime,
                        std::uint64_t cap = kDefaultMapCap);

// Pairwise reachability under covariant self-maps: entry s * M + s' is 1 iff
// some covariant map sends s to s'. One sweep over the search space.
std::vector<char> oracle_convertible_table(const DynamicalSystem& sys,
                                           std::uint64_t cap = kDefaultMapCap);
std::vector<char> oracle_convertible_table_serial(const DynamicalSystem& sys,
                                                  std::uint64_t cap = kDefaultMapCap);

// { s : phi(s) = s }.
std::vector<State> oracle_fixed_points(const DynamicalSystem& sys);

}  // namespace covdyn
