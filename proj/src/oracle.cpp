#include "covdyn/oracle.hpp"

#include <algorithm>

namespace covdyn {

namespace {

std::uint64_t checked_space_size(std::size_t source_size, std::size_t target_size,
                                 std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < source_size; ++i) {
    if (total > cap / target_size + 1) {
      throw_error("SearchSpaceTooLarge", std::to_string(target_size) + "^" +
                                             std::to_string(source_size) + " maps exceed cap " +
                                             std::to_string(cap));
    }
    total *= target_size;
  }
  if (total > cap) {
    throw_error("SearchSpaceTooLarge", std::to_string(total) + " maps exceed cap " +
                                           std::to_string(cap));
  }
  return total;
}

inline void decode_table(std::uint64_t index, std::size_t source_size,
                         std::size_t target_size, std::vector<State>& table) {
  for (std::size_t j = source_size; j-- > 0;) {
    table[j] = static_cast<State>(index % target_size);
    index /= target_size;
  }
}

inline bool table_is_covariant(const DynamicalSystem& sys1, const DynamicalSystem& sys2,
                               const std::vector<State>& table) {
  for (State s = 0; s < sys1.size(); ++s) {
    if (table[sys1.step(s)] != sys2.step(table[s])) return false;
  }
  return true;
}

}  // namespace

MapEnumerator::MapEnumerator(std::size_t source_size, std::size_t target_size,
                             std::uint64_t cap)
    : source_size_(source_size),
      target_size_(target_size),
      total_(checked_space_size(source_size, target_size, cap)) {}

std::vector<State> MapEnumerator::table_for(std::uint64_t index) const {
  std::vector<State> table(source_size_);
  decode_table(index, source_size_, target_size_, table);
  return table;
}

std::vector<DetMap> enumerate_covariant_serial(const DynamicalSystem& sys1,
                                               const DynamicalSystem& sys2,
                                               std::uint64_t cap) {
  const std::uint64_t total = checked_space_size(sys1.size(), sys2.size(), cap);
  std::vector<DetMap> hits;
  std::vector<State> table(sys1.size());
  for (std::uint64_t index = 0; index < total; ++index) {
    decode_table(index, sys1.size(), sys2.size(), table);
    if (table_is_covariant(sys1, sys2, table)) hits.push_back(DetMap{sys1, sys2, table});
  }
  return hits;
}

std::vector<DetMap> enumerate_covariant(const DynamicalSystem& sys1,
                                        const DynamicalSystem& sys2, std::uint64_t cap) {
  const std::uint64_t total = checked_space_size(sys1.size(), sys2.size(), cap);
  std::vector<std::pair<std::uint64_t, std::vector<State>>> hits;
#pragma omp parallel
  {
    std::vector<std::pair<std::uint64_t, std::vector<State>>> local;
    std::vector<State> table(sys1.size());
#pragma omp for schedule(static) nowait
    for (std::int64_t index = 0; index < static_cast<std::int64_t>(total); ++index) {
      decode_table(static_cast<std::uint64_t>(index), sys1.size(), sys2.size(), table);
      if (table_is_covariant(sys1, sys2, table)) {
        local.emplace_back(static_cast<std::uint64_t>(index), table);
      }
    }
#pragma omp critical
    hits.insert(hits.end(), local.begin(), local.end());
  }
  std::sort(hits.begin(), hits.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<DetMap> maps;
  maps.reserve(hits.size());
  for (auto& [index, table] : hits) maps.push_back(DetMap{sys1, sys2, std::move(table)});
  return maps;
}

bool oracle_convertible(const DynamicalSystem& sys, State s, State s_prime,
                        std::uint64_t cap) {
  if (s >= sys.size() || s_prime >= sys.size()) {
    throw_error("OutOfRangeState", "oracle states out of range");
  }
  const std::uint64_t total = checked_space_size(sys.size(), sys.size(), cap);
  bool found = false;
#pragma omp parallel
  {
    std::vector<State> table(sys.size());
#pragma omp for schedule(static)
    for (std::int64_t index = 0; index < static_cast<std::int64_t>(total); ++index) {
      if (found) continue;
      decode_table(static_cast<std::uint64_t>(index), sys.size(), sys.size(), table);
      if (table[s] == s_prime && table_is_covariant(sys, sys, table)) {
#pragma omp atomic write
        found = true;
      }
    }
  }
  return found;
}

std::vector<char> oracle_convertible_table_serial(const DynamicalSystem& sys,
                                                  std::uint64_t cap) {
  const std::size_t m = sys.size();
  const std::uint64_t total = checked_space_size(m, m, cap);
  std::vector<char> reachable(m * m, 0);
  std::vector<State> table(m);
  for (std::uint64_t index = 0; index < total; ++index) {
    decode_table(index, m, m, table);
    if (!table_is_covariant(sys, sys, table)) continue;
    for (State s = 0; s < m; ++s) reachable[s * m + table[s]] = 1;
  }
  return reachable;
}

std::vector<char> oracle_convertible_table(const DynamicalSystem& sys, std::uint64_t cap) {
  const std::size_t m = sys.size();
  const std::uint64_t total = checked_space_size(m, m, cap);
  std::vector<char> reachable(m * m, 0);
#pragma omp parallel
  {
    std::vector<char> local(m * m, 0);
    std::vector<State> table(m);
#pragma omp for schedule(static) nowait
    for (std::int64_t index = 0; index < static_cast<std::int64_t>(total); ++index) {
      decode_table(static_cast<std::uint64_t>(index), m, m, table);
      if (!table_is_covariant(sys, sys, table)) continue;
      for (State s = 0; s < m; ++s) local[s * m + table[s]] = 1;
    }
#pragma omp critical
    for (std::size_t k = 0; k < local.size(); ++k) {
      if (local[k]) reachable[k] = 1;
    }
  }
  return reachable;
}

std::vector<State> oracle_fixed_points(const DynamicalSystem& sys) {
  std::vector<State> fixed;
  for (State s = 0; s < sys.size(); ++s) {
    if (sys.step(s) == s) fixed.push_back(s);
  }
  return fixed;
}

}  // namespace covdyn
