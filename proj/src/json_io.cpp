#include "covdyn/json_io.hpp"

namespace covdyn {

DynamicalSystem system_from_json(const std::string& text) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw_error("SchemaError", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("states") || !doc.contains("phi") ||
      !doc["states"].is_number_unsigned() || !doc["phi"].is_array()) {
    throw_error("SchemaError", "expected {\"states\": M, \"phi\": [...]}");
  }
  const std::size_t m = doc["states"].get<std::size_t>();
  std::vector<State> successor;
  for (const auto& entry : doc["phi"]) {
    if (!entry.is_number_unsigned()) throw_error("SchemaError", "phi entries must be indices");
    successor.push_back(entry.get<State>());
  }
  if (successor.size() != m) {
    throw_error("SchemaError", "phi has " + std::to_string(successor.size()) +
                                   " entries, expected " + std::to_string(m));
  }
  std::vector<std::string> names;
  if (doc.contains("names")) {
    if (!doc["names"].is_array()) throw_error("SchemaError", "names must be an array");
    for (const auto& entry : doc["names"]) {
      if (!entry.is_string()) throw_error("SchemaError", "names must be strings");
      names.push_back(entry.get<std::string>());
    }
  }
  return build_system(std::move(successor), std::move(names));
}

OrderedJson system_to_json(const DynamicalSystem& sys) {
  OrderedJson doc;
  doc["states"] = sys.size();
  doc["phi"] = sys.successor;
  if (!sys.state_names.empty()) doc["names"] = sys.state_names;
  return doc;
}

ProbVec prob_vec_from_json(const OrderedJson& doc) {
  if (!doc.is_array()) throw_error("SchemaError", "probability vector must be an array");
  std::vector<Rat> entries;
  for (const auto& entry : doc) {
    if (!entry.is_string()) {
      throw_error("SchemaError", "probabilities must be rational strings like \"1/2\"");
    }
    entries.push_back(rat_from_string(entry.get<std::string>()));
  }
  return make_prob_vec(std::move(entries));
}

OrderedJson prob_vec_to_json(const ProbVec& p) {
  OrderedJson out = OrderedJson::array();
  for (const Rat& e : p.p) out.push_back(rat_to_string(e));
  return out;
}

OrderedJson stoch_matrix_to_json(const StochMatrix& f) {
  OrderedJson cols = OrderedJson::array();
  for (std::size_t j = 0; j < f.size(); ++j) {
    OrderedJson col = OrderedJson::array();
    for (std::size_t i = 0; i < f.size(); ++i) col.push_back(rat_to_string(f.m.at(i, j)));
    cols.push_back(std::move(col));
  }
  return cols;
}

}  // namespace covdyn
