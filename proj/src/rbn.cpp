#include "covdyn/rbn.hpp"

#include <algorithm>
#include <random>

#include <json.hpp>

namespace covdyn {

namespace {

void validate(const BooleanNetwork& net) {
  if (net.nodes.size() != net.num_genes) {
    throw_error("SchemaError", "expected " + std::to_string(net.num_genes) + " nodes, got " +
                                   std::to_string(net.nodes.size()));
  }
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const auto& node = net.nodes[i];
    if (node.parents.size() >= 31) {
      throw_error("SchemaError", "node " + std::to_string(i) + " has too many parents");
    }
    for (std::uint32_t p : node.parents) {
      if (p >= net.num_genes) {
        throw_error("ParentOutOfRange", "node " + std::to_string(i) + " lists parent " +
                                            std::to_string(p));
      }
    }
    const std::size_t expected = std::size_t{1} << node.parents.size();
    if (node.truth_table.size() != expected) {
      throw_error("TruthTableSizeMismatch",
                  "node " + std::to_string(i) + " has " +
                      std::to_string(node.truth_table.size()) + " truth table rows, expected " +
                      std::to_string(expected));
    }
    for (std::uint8_t bit : node.truth_table) {
      if (bit > 1) throw_error("SchemaError", "truth table entries must be bits");
    }
  }
}

inline State successor_of(const BooleanNetwork& net, State g) {
  State next = 0;
  for (std::uint32_t i = 0; i < net.num_genes; ++i) {
    const auto& node = net.nodes[i];
    std::size_t row = 0;
    for (std::uint32_t p : node.parents) {  // first parent = most significant bit
      row = (row << 1) | ((g >> p) & 1u);
    }
    next |= static_cast<State>(node.truth_table[row]) << i;
  }
  return next;
}

std::size_t expansion_size(const BooleanNetwork& net, std::uint32_t gene_cap) {
  validate(net);
  if (net.num_genes == 0) throw_error("SchemaError", "network needs at least one gene");
  if (net.num_genes > gene_cap) {
    throw_error("NetworkTooLarge", std::to_string(net.num_genes) + " genes exceed cap " +
                                       std::to_string(gene_cap));
  }
  return std::size_t{1} << net.num_genes;
}

}  // namespace

BooleanNetwork parse_network(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw_error("SchemaError", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("nodes") ||
      !doc["n"].is_number_unsigned() || !doc["nodes"].is_array()) {
    throw_error("SchemaError", "expected {\"n\": N, \"nodes\": [...]}");
  }
  BooleanNetwork net;
  net.num_genes = doc["n"].get<std::uint32_t>();
  for (const auto& entry : doc["nodes"]) {
    if (!entry.is_object() || !entry.contains("parents") || !entry.contains("tt") ||
        !entry["parents"].is_array() || !entry["tt"].is_array()) {
      throw_error("SchemaError", "each node needs \"parents\" and \"tt\" arrays");
    }
    BooleanNode node;
    for (const auto& p : entry["parents"]) {
      if (!p.is_number_unsigned()) throw_error("SchemaError", "parents must be indices");
      node.parents.push_back(p.get<std::uint32_t>());
    }
    for (const auto& b : entry["tt"]) {
      if (!b.is_number_unsigned() || b.get<std::uint32_t>() > 1) {
        throw_error("SchemaError", "tt entries must be bits");
      }
      node.truth_table.push_back(static_cast<std::uint8_t>(b.get<std::uint32_t>()));
    }
    net.nodes.push_back(std::move(node));
  }
  validate(net);
  return net;
}

DynamicalSystem expand_serial(const BooleanNetwork& net, std::uint32_t gene_cap) {
  const std::size_t m = expansion_size(net, gene_cap);
  std::vector<State> successor(m);
  for (std::size_t g = 0; g < m; ++g) successor[g] = successor_of(net, static_cast<State>(g));
  return build_system(std::move(successor));
}

DynamicalSystem expand(const BooleanNetwork& net, std::uint32_t gene_cap) {
  const std::size_t m = expansion_size(net, gene_cap);
  std::vector<State> successor(m);
#pragma omp parallel for schedule(static)
  for (std::int64_t g = 0; g < static_cast<std::int64_t>(m); ++g) {
    successor[static_cast<std::size_t>(g)] = successor_of(net, static_cast<State>(g));
  }
  return build_system(std::move(successor));
}

BooleanNetwork random_network(std::uint32_t num_genes, std::uint32_t max_parents,
                              std::uint64_t seed) {
  if (num_genes == 0) throw_error("SchemaError", "network needs at least one gene");
  std::mt19937_64 rng(seed);
  max_parents = std::min(max_parents, num_genes);
  std::uniform_int_distribution<std::uint32_t> k_dist(1, std::max(1u, max_parents));
  BooleanNetwork net;
  net.num_genes = num_genes;
  std::vector<std::uint32_t> pool(num_genes);
  for (std::uint32_t i = 0; i < num_genes; ++i) pool[i] = i;
  for (std::uint32_t i = 0; i < num_genes; ++i) {
    BooleanNode node;
    const std::uint32_t k = k_dist(rng);
    std::shuffle(pool.begin(), pool.end(), rng);
    node.parents.assign(pool.begin(), pool.begin() + k);
    node.truth_table.resize(std::size_t{1} << k);
    for (auto& bit : node.truth_table) {
      bit = static_cast<std::uint8_t>(rng() & 1u);
    }
    net.nodes.push_back(std::move(node));
  }
  return net;
}

}  // namespace covdyn
