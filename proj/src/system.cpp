#include "covdyn/system.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace covdyn {

DynamicalSystem build_system(std::vector<State> successor,
                             std::vector<std::string> state_names) {
  if (successor.empty()) throw_error("EmptySystem", "a system needs at least one state");
  const std::size_t m = successor.size();
  for (std::size_t j = 0; j < m; ++j) {
    if (successor[j] >= m) {
      throw_error("OutOfRangeSuccessor", "successor of state " + std::to_string(j) +
                                             " is " + std::to_string(successor[j]) +
                                             ", valid range is [0, " + std::to_string(m) + ")");
    }
  }
  if (!state_names.empty() && state_names.size() != m) {
    throw_error("LabelLengthMismatch", "expected " + std::to_string(m) + " state names");
  }
  return DynamicalSystem{std::move(successor), std::move(state_names)};
}

State iterate(const DynamicalSystem& sys, State s, std::uint64_t n) {
  if (s >= sys.size()) {
    throw_error("OutOfRangeState", "state " + std::to_string(s) + " out of range");
  }
  // Walk until done or until the orbit revisits a state, then reduce the
  // remaining steps modulo the cycle it entered.
  std::unordered_map<State, std::uint64_t> first_seen;
  State cur = s;
  std::uint64_t done = 0;
  while (done < n) {
    auto [it, inserted] = first_seen.try_emplace(cur, done);
    if (!inserted) {
      const std::uint64_t cycle_len = done - it->second;
      std::uint64_t rem = (n - done) % cycle_len;
      while (rem-- > 0) cur = sys.step(cur);
      return cur;
    }
    cur = sys.step(cur);
    ++done;
  }
  return cur;
}

FeatureTable analyze(const DynamicalSystem& sys) {
  const std::size_t m = sys.size();
  FeatureTable ft;
  ft.basin_id.assign(m, -1);
  ft.attractor_id.assign(m, -1);
  ft.length.assign(m, 0);
  ft.progeny.assign(m, 0);
  ft.ancestry.assign(m, Ancestry::finite(0));

  // Locate cycle states: walk unexplored paths, a path that runs into itself
  // closes a new cycle.
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> color(m, kWhite);
  std::vector<char> on_cycle(m, 0);
  std::vector<State> path;
  for (State start = 0; start < m; ++start) {
    if (color[start] != kWhite) continue;
    path.clear();
    State cur = start;
    while (color[cur] == kWhite) {
      color[cur] = kGrey;
      path.push_back(cur);
      cur = sys.step(cur);
    }
    if (color[cur] == kGrey) {
      // `cur` is on the current path: everything from its first occurrence
      // onward is a cycle.
      auto it = std::find(path.begin(), path.end(), cur);
      for (; it != path.end(); ++it) on_cycle[*it] = 1;
    }
    for (State v : path) color[v] = kBlack;
  }

  // Number attractors by their smallest state index; collect each cycle in
  // phi-order starting from that state.
  std::vector<char> assigned(m, 0);
  for (State s = 0; s < m; ++s) {
    if (!on_cycle[s] || assigned[s]) continue;
    const int id = static_cast<int>(ft.attractors.size());
    std::vector<State> cycle;
    State cur = s;
    do {
      assigned[cur] = 1;
      ft.attractor_id[cur] = id;
      ft.basin_id[cur] = id;
      cycle.push_back(cur);
      cur = sys.step(cur);
    } while (cur != s);
    ft.attractors.push_back(std::move(cycle));
  }

  // Predecessor lists drive both the basin sweep and the ancestry pass.
  std::vector<std::vector<State>> preds(m);
  for (State s = 0; s < m; ++s) preds[sys.step(s)].push_back(s);

  // Basins and progeny by reverse BFS from each cycle.
  std::vector<State> queue;
  queue.reserve(m);
  for (const auto& cycle : ft.attractors) {
    for (State s : cycle) queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const State u = queue[head];
    for (State p : preds[u]) {
      if (on_cycle[p]) continue;
      ft.basin_id[p] = ft.basin_id[u];
      ft.attractor_id[p] = ft.attractor_id[u];
      ft.progeny[p] = ft.progeny[u] + 1;
      queue.push_back(p);
    }
  }

  for (State s = 0; s < m; ++s) {
    ft.length[s] = static_cast<std::uint32_t>(ft.attractors[ft.basin_id[s]].size());
  }

  // Ancestry: longest path into each state. Attractor states are formally
  // infinite; transient states form a forest (predecessors of a transient
  // state are transient), processed leaves-first.
  std::vector<std::uint32_t> pending(m, 0);
  std::vector<std::uint64_t> longest(m, 0);
  std::vector<State> ready;
  for (State s = 0; s < m; ++s) {
    if (on_cycle[s]) continue;
    std::uint32_t cnt = 0;
    for (State p : preds[s]) {
      if (!on_cycle[p]) ++cnt;  // cycle states never precede a transient one
    }
    pending[s] = cnt;
    if (cnt == 0) ready.push_back(s);
  }
  for (std::size_t head = 0; head < ready.size(); ++head) {
    const State u = ready[head];
    const State v = sys.step(u);
    if (on_cycle[v]) continue;
    longest[v] = std::max(longest[v], longest[u] + 1);
    if (--pending[v] == 0) ready.push_back(v);
  }
  for (State s = 0; s < m; ++s) {
    ft.ancestry[s] = on_cycle[s] ? Ancestry::infinite() : Ancestry::finite(longest[s]);
  }
  return ft;
}

RatMatrix dynamical_matrix(const DynamicalSystem& sys) {
  const std::size_t m = sys.size();
  RatMatrix phi(m, m);
  for (State j = 0; j < m; ++j) phi.at(sys.step(j), j) = 1;
  return phi;
}

std::string export_dot(const DynamicalSystem& sys, std::span<const Rat> labels) {
  if (!labels.empty() && labels.size() != sys.size()) {
    throw_error("LabelLengthMismatch", "expected " + std::to_string(sys.size()) +
                                           " labels, got " + std::to_string(labels.size()));
  }
  std::ostringstream out;
  out << "digraph dds {\n";
  for (State s = 0; s < sys.size(); ++s) {
    out << "  s" << s << " [label=\"";
    if (!sys.state_names.empty()) {
      out << sys.state_names[s];
    } else {
      out << s;
    }
    if (!labels.empty()) out << "\\n" << rat_to_string(labels[s]);
    out << "\"];\n";
  }
  for (State s = 0; s < sys.size(); ++s) {
    out << "  s" << s << " -> s" << sys.step(s) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace covdyn
