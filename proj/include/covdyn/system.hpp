#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "covdyn/errors.hpp"
#include "covdyn/matrix.hpp"

namespace covdyn {

using State = std::uint32_t;

// Ancestry of a state: the maximum length of a path in the dynamical graph
// ending at the state. Attractor states carry the distinguished infinite
// value, which compares greater than every finite value.
class Ancestry {
 public:
  static Ancestry finite(std::uint64_t n) { return Ancestry(false, n); }
  static Ancestry infinite() { return Ancestry(true, 0); }

  bool is_infinite() const { return infinite_; }
  std::uint64_t value() const {
    if (infinite_) throw_error("InfiniteAncestry", "no finite value for attractor state");
    return value_;
  }

  bool operator==(const Ancestry& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }
  bool operator<(const Ancestry& o) const {
    if (infinite_) return false;
    if (o.infinite_) return true;
    return value_ < o.value_;
  }
  bool operator>=(const Ancestry& o) const { return !(*this < o); }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

 private:
  Ancestry(bool inf, std::uint64_t v) : infinite_(inf), value_(v) {}
  bool infinite_;
  std::uint64_t value_;
};

// A finite discrete dynamical system: M states and the generator phi given
// as a successor table (entry j is phi(s_j)). Immutable after construction;
// all operations on it are pure.
struct DynamicalSystem {
  std::vector<State> successor;
  std::vector<std::string> state_names;  // empty, or one display name per state

  std::size_t size() const { return successor.size(); }
  State step(State s) const { return successor[s]; }
};

// Validates the successor table (nonempty, entries in range) and returns the
// system. Throws EmptySystem / OutOfRangeSuccessor.
DynamicalSystem build_system(std::vector<State> successor,
                             std::vector<std::string> state_names = {});

// phi^n(s). Cost is O(min(n, M)): the walk shortcuts around the cycle once
// the orbit revisits a state.
State iterate(const DynamicalSystem& sys, State s, std::uint64_t n);

// Per-state structural features plus the attractor list. Basin and attractor
// ids coincide by construction (basins and attractors are in bijection) and
// are numbered in increasing order of the smallest state index on the cycle.
struct FeatureTable {
  std::vector<int> basin_id;
  std::vector<int> attractor_id;
  std::vector<std::uint32_t> length;   // attractor length of the state's basin
  std::vector<std::uint32_t> progeny;  // steps to reach the cycle; 0 on the cycle
  std::vector<Ancestry> ancestry;
  std::vector<std::vector<State>> attractors;  // each cycle in phi-order from its
                                               // smallest state index

  std::size_t num_attractors() const { return attractors.size(); }
  bool on_attractor(State s) const { return progeny[s] == 0; }
};

FeatureTable analyze(const DynamicalSystem& sys);

// Column j of the dynamical matrix is the canonical basis vector of phi(j).
RatMatrix dynamical_matrix(const DynamicalSystem& sys);

// DOT rendering of the dynamical graph, one edge per state. When `labels`
// is nonempty it must hold M rationals; they are printed on the vertices.
std::string export_dot(const DynamicalSystem& sys, std::span<const Rat> labels = {});

}  // namespace covdyn
