#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "covdyn/stoch.hpp"
#include "covdyn/system.hpp"

namespace covdyn {

using OrderedJson = nlohmann::ordered_json;

// System document: {"states": M, "phi": [j0, j1, ...], "names": [...]?}.
DynamicalSystem system_from_json(const std::string& text);
OrderedJson system_to_json(const DynamicalSystem& sys);

// Rationals travel as "n/d" strings, probability vectors as arrays of them,
// matrices as arrays of columns.
ProbVec prob_vec_from_json(const OrderedJson& doc);
OrderedJson prob_vec_to_json(const ProbVec& p);
OrderedJson stoch_matrix_to_json(const StochMatrix& f);

}  // namespace covdyn
