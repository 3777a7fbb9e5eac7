#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covdyn/system.hpp"

namespace covdyn {

// A deterministic influence: a total map from source states to target states.
// Within one system source and target coincide.
struct DetMap {
  DynamicalSystem source;
  DynamicalSystem target;
  std::vector<State> table;  // table[s] = f(s)
};

// True iff f(phi1(s)) = phi2(f(s)) for every source state.
// Throws SystemMismatch when the table does not fit the systems.
bool is_covariant(const DetMap& f);

enum class FailKind {
  ProgenyIncrease,
  LengthNotDivisor,
  AncestryDecrease,
  NoCovariantMapsExist,
};

struct FailedCondition {
  FailKind kind;
  std::optional<std::uint32_t> n;  // set for AncestryDecrease
  std::string to_string() const;
  bool operator==(const FailedCondition&) const = default;
};

struct ConversionVerdict {
  bool convertible = false;
  std::vector<FailedCondition> failed;  // every violated condition, in order
  std::optional<DetMap> witness;        // present iff convertible
};

// Decides s -> s' within one system: d' <= d, l' | l, and
// a(phi^n(s')) >= a(phi^n(s)) for n = 0..d'-1. On success the verdict
// carries a covariant witness with witness(s) = s'.
ConversionVerdict convertible(const DynamicalSystem& sys, State s, State s_prime);

// The constructive side of the decision: identity outside the basin of s,
// the forward chain of s mapped onto the forward chain of s', side chains
// mapped through farthest predecessors or onto the target cycle.
// Throws NotConvertible when the conditions fail.
DetMap construct_witness(const DynamicalSystem& sys, State s, State s_prime);

// True iff every attractor length of sys1 has a divisor among the attractor
// lengths of sys2 (the existence condition for covariant maps sys1 -> sys2).
bool exists_covariant_maps(const DynamicalSystem& sys1, const DynamicalSystem& sys2);

// Cross-system conversion: the same three per-state conditions plus the
// existence of covariant maps at all.
ConversionVerdict convertible_cross(const DynamicalSystem& sys1, State s,
                                    const DynamicalSystem& sys2, State s_prime);

DetMap construct_witness_cross(const DynamicalSystem& sys1, State s,
                               const DynamicalSystem& sys2, State s_prime);

}  // namespace covdyn
