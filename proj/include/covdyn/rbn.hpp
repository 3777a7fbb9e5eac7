#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covdyn/system.hpp"

namespace covdyn {

// Boolean network description (N genes, per-gene parent list and truth
// table). Truth-table rows are indexed by reading the parent values as a
// binary number with the FIRST listed parent as the most significant bit.
struct BooleanNode {
  std::vector<std::uint32_t> parents;
  std::vector<std::uint8_t> truth_table;  // 2^K bits
};

struct BooleanNetwork {
  std::uint32_t num_genes = 0;
  std::vector<BooleanNode> nodes;
};

// Parses {"n": N, "nodes": [{"parents": [...], "tt": [...]}, ...]}.
// Throws SchemaError / ParentOutOfRange / TruthTableSizeMismatch.
BooleanNetwork parse_network(const std::string& json_text);

inline constexpr std::uint32_t kDefaultGeneCap = 20;

// State space expansion to a 2^N-state system; gene 0 is the least
// significant bit of the state index. The default kernel evaluates states
// in parallel partitions; the serial twin is the reference for tests.
DynamicalSystem expand(const BooleanNetwork& net, std::uint32_t gene_cap = kDefaultGeneCap);
DynamicalSystem expand_serial(const BooleanNetwork& net,
                              std::uint32_t gene_cap = kDefaultGeneCap);

// Seeded generator used by tests and the benchmark: every gene gets
// 1..max_parents distinct parents and a random truth table.
BooleanNetwork random_network(std::uint32_t num_genes, std::uint32_t max_parents,
                              std::uint64_t seed);

}  // namespace covdyn
