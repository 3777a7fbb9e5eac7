#include "covdyn/det_conversion.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace covdyn {

namespace {

void require_state(const DynamicalSystem& sys, State s) {
  if (s >= sys.size()) {
    throw_error("OutOfRangeState", "state " + std::to_string(s) + " out of range [0, " +
                                       std::to_string(sys.size()) + ")");
  }
}

// The three per-state conditions of the conversion theorem. Every violated
// condition is reported, ancestry violations one entry per offending n.
std::vector<FailedCondition> per_state_conditions(const DynamicalSystem& sys1,
                                                  const FeatureTable& ft1, State s,
                                                  const DynamicalSystem& sys2,
                                                  const FeatureTable& ft2, State s_prime) {
  std::vector<FailedCondition> failed;
  const std::uint32_t d = ft1.progeny[s];
  const std::uint32_t d2 = ft2.progeny[s_prime];
  if (d2 > d) failed.push_back({FailKind::ProgenyIncrease, std::nullopt});
  if (ft1.length[s] % ft2.length[s_prime] != 0) {
    failed.push_back({FailKind::LengthNotDivisor, std::nullopt});
  }
  State u = s;
  State v = s_prime;
  for (std::uint32_t n = 0; n < d2; ++n) {
    if (!(ft2.ancestry[v] >= ft1.ancestry[u])) {
      failed.push_back({FailKind::AncestryDecrease, n});
    }
    u = sys1.step(u);
    v = sys2.step(v);
  }
  return failed;
}

// Constructive proof of sufficiency, filling `table` on the basin of s.
//
// The forward chain s_n = phi^n(s), n in [0, d+l), goes to phi'^n(s').
// Every other basin state w reaches the chain first at some s_n with n <= d;
// writing delta for its distance to s_n:
//   n < d'  : w maps into the exact-depth-a(s_n) predecessors of phi'^n(s'),
//             descending along a longest path (exists since the ancestry
//             condition gives a'(phi'^n(s')) >= a(s_n));
//   n >= d' : w maps onto the target attractor at cycle phase n - delta.
// Keeping the second rule on the attractor (rather than wrapping through the
// transient prefix of the s'-orbit) is what makes deep side chains commute.
void map_basin(const DynamicalSystem& sys1, const FeatureTable& ft1, State s,
               const DynamicalSystem& sys2, const FeatureTable& ft2, State s_prime,
               std::vector<State>& table) {
  const std::uint32_t d = ft1.progeny[s];
  const std::uint32_t len = ft1.length[s];
  const std::uint32_t d2 = ft2.progeny[s_prime];
  const std::uint32_t len2 = ft2.length[s_prime];
  const int basin = ft1.basin_id[s];
  constexpr std::int64_t kUnset = -1;

  // Forward chain of s and its image.
  std::vector<std::int64_t> chain_pos(sys1.size(), kUnset);
  {
    State u = s;
    State v = s_prime;
    for (std::uint32_t n = 0; n < d + len; ++n) {
      chain_pos[u] = n;
      table[u] = v;
      u = sys1.step(u);
      v = sys2.step(v);
    }
  }

  // Target cycle in phi'-order from the cycle entry phi'^{d'}(s').
  std::vector<State> cycle(len2);
  {
    State v = s_prime;
    for (std::uint32_t k = 0; k < d2; ++k) v = sys2.step(v);
    for (std::uint32_t k = 0; k < len2; ++k) {
      cycle[k] = v;
      v = sys2.step(v);
    }
  }
  const auto cycle_phase = [&](std::int64_t p) {
    std::int64_t k = (p - static_cast<std::int64_t>(d2)) % static_cast<std::int64_t>(len2);
    if (k < 0) k += len2;
    return cycle[static_cast<std::size_t>(k)];
  };

  // Predecessor lists of the target, for the farthest-predecessor anchors.
  std::vector<std::vector<State>> preds2(sys2.size());
  for (State t = 0; t < sys2.size(); ++t) preds2[sys2.step(t)].push_back(t);

  // anchor[n], n < d': the smallest-index exact-depth-a(s_n) predecessor of
  // phi'^n(s'), resolved lazily.
  std::vector<std::int64_t> anchor(d2, kUnset);
  std::vector<std::uint64_t> anchor_depth(d2, 0);
  const auto resolve_anchor = [&](std::uint32_t n) {
    if (anchor[n] != kUnset) return;
    State sn = s;
    State target = s_prime;
    for (std::uint32_t k = 0; k < n; ++k) {
      sn = sys1.step(sn);
      target = sys2.step(target);
    }
    const std::uint64_t depth = ft1.ancestry[sn].value();
    std::vector<char> level(sys2.size(), 0);
    level[target] = 1;
    for (std::uint64_t step = 0; step < depth; ++step) {
      std::vector<char> next(sys2.size(), 0);
      for (State t = 0; t < sys2.size(); ++t) {
        if (!level[t]) continue;
        for (State p : preds2[t]) next[p] = 1;
      }
      level.swap(next);
    }
    State best = 0;
    bool found = false;
    for (State t = 0; t < sys2.size(); ++t) {
      if (level[t]) {
        best = t;
        found = true;
        break;
      }
    }
    if (!found) throw_error("InternalError", "ancestry precondition violated");
    anchor[n] = best;
    anchor_depth[n] = depth;
  };

  // Entry point and distance to it for every remaining basin state, filled
  // by path-walking with backfill so each state is visited once.
  std::vector<std::int64_t> entry_n(sys1.size(), kUnset);
  std::vector<std::uint64_t> entry_delta(sys1.size(), 0);
  std::vector<State> path;
  for (State w = 0; w < sys1.size(); ++w) {
    if (ft1.basin_id[w] != basin || chain_pos[w] != kUnset || entry_n[w] != kUnset) continue;
    path.clear();
    State cur = w;
    while (chain_pos[cur] == kUnset && entry_n[cur] == kUnset) {
      path.push_back(cur);
      cur = sys1.step(cur);
    }
    std::int64_t n;
    std::uint64_t delta;
    if (chain_pos[cur] != kUnset) {
      const std::int64_t m = chain_pos[cur];
      if (m <= static_cast<std::int64_t>(d)) {
        n = m;
        delta = 0;
      } else {
        n = d;
        delta = static_cast<std::uint64_t>((static_cast<std::int64_t>(d) - m +
                                            static_cast<std::int64_t>(len)) %
                                           static_cast<std::int64_t>(len));
      }
    } else {
      n = entry_n[cur];
      delta = entry_delta[cur];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      ++delta;
      entry_n[*it] = n;
      entry_delta[*it] = delta;
    }
  }

  for (State w = 0; w < sys1.size(); ++w) {
    if (ft1.basin_id[w] != basin || chain_pos[w] != kUnset) continue;
    const std::int64_t n = entry_n[w];
    const std::uint64_t delta = entry_delta[w];
    if (n < static_cast<std::int64_t>(d2)) {
      resolve_anchor(static_cast<std::uint32_t>(n));
      State image = static_cast<State>(anchor[n]);
      for (std::uint64_t k = delta; k < anchor_depth[n]; ++k) image = sys2.step(image);
      table[w] = image;
    } else {
      table[w] = cycle_phase(n - static_cast<std::int64_t>(delta));
    }
  }
}

ConversionVerdict decide(const DynamicalSystem& sys1, State s, const DynamicalSystem& sys2,
                         State s_prime, bool cross) {
  require_state(sys1, s);
  require_state(sys2, s_prime);
  const FeatureTable ft1 = analyze(sys1);
  const FeatureTable ft2 = cross ? analyze(sys2) : ft1;

  ConversionVerdict verdict;
  if (cross && !exists_covariant_maps(sys1, sys2)) {
    verdict.failed.push_back({FailKind::NoCovariantMapsExist, std::nullopt});
  }
  auto per_state = per_state_conditions(sys1, ft1, s, sys2, ft2, s_prime);
  verdict.failed.insert(verdict.failed.end(), per_state.begin(), per_state.end());
  verdict.convertible = verdict.failed.empty();
  if (!verdict.convertible) return verdict;

  DetMap witness{sys1, sys2, std::vector<State>(sys1.size())};
  if (!cross) {
    // Identity outside the basin of s.
    std::iota(witness.table.begin(), witness.table.end(), State{0});
    map_basin(sys1, ft1, s, sys2, ft2, s_prime, witness.table);
  } else {
    map_basin(sys1, ft1, s, sys2, ft2, s_prime, witness.table);
    // Remaining basins: anchor each source attractor on its smallest state
    // and send it to the lowest-numbered target attractor of dividing length.
    for (std::size_t a = 0; a < ft1.num_attractors(); ++a) {
      const State anchor_src = ft1.attractors[a][0];
      if (ft1.basin_id[anchor_src] == ft1.basin_id[s]) continue;
      const std::uint32_t len = static_cast<std::uint32_t>(ft1.attractors[a].size());
      State anchor_dst = 0;
      bool found = false;
      for (const auto& target_cycle : ft2.attractors) {
        if (len % target_cycle.size() == 0) {
          anchor_dst = target_cycle[0];
          found = true;
          break;
        }
      }
      if (!found) throw_error("InternalError", "divisor condition violated");
      map_basin(sys1, ft1, anchor_src, sys2, ft2, anchor_dst, witness.table);
    }
  }
  verdict.witness = std::move(witness);
  return verdict;
}

}  // namespace

bool is_covariant(const DetMap& f) {
  if (f.table.size() != f.source.size()) {
    throw_error("SystemMismatch", "map table has " + std::to_string(f.table.size()) +
                                      " entries for a source of " +
                                      std::to_string(f.source.size()) + " states");
  }
  for (State image : f.table) {
    if (image >= f.target.size()) {
      throw_error("SystemMismatch", "map image " + std::to_string(image) + " out of range");
    }
  }
  for (State s = 0; s < f.source.size(); ++s) {
    if (f.table[f.source.step(s)] != f.target.step(f.table[s])) return false;
  }
  return true;
}

std::string FailedCondition::to_string() const {
  switch (kind) {
    case FailKind::ProgenyIncrease:
      return "ProgenyIncrease";
    case FailKind::LengthNotDivisor:
      return "LengthNotDivisor";
    case FailKind::AncestryDecrease:
      return "AncestryDecrease(" + std::to_string(n.value()) + ")";
    case FailKind::NoCovariantMapsExist:
      return "NoCovariantMapsExist";
  }
  return "?";
}

ConversionVerdict convertible(const DynamicalSystem& sys, State s, State s_prime) {
  return decide(sys, s, sys, s_prime, /*cross=*/false);
}

DetMap construct_witness(const DynamicalSystem& sys, State s, State s_prime) {
  auto verdict = decide(sys, s, sys, s_prime, /*cross=*/false);
  if (!verdict.convertible) {
    throw_error("NotConvertible", "no covariant influence sends " + std::to_string(s) +
                                      " to " + std::to_string(s_prime));
  }
  return std::move(*verdict.witness);
}

bool exists_covariant_maps(const DynamicalSystem& sys1, const DynamicalSystem& sys2) {
  const FeatureTable ft1 = analyze(sys1);
  const FeatureTable ft2 = analyze(sys2);
  for (const auto& cycle1 : ft1.attractors) {
    bool matched = false;
    for (const auto& cycle2 : ft2.attractors) {
      if (cycle1.size() % cycle2.size() == 0) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

ConversionVerdict convertible_cross(const DynamicalSystem& sys1, State s,
                                    const DynamicalSystem& sys2, State s_prime) {
  return decide(sys1, s, sys2, s_prime, /*cross=*/true);
}

DetMap construct_witness_cross(const DynamicalSystem& sys1, State s,
                               const DynamicalSystem& sys2, State s_prime) {
  auto verdict = decide(sys1, s, sys2, s_prime, /*cross=*/true);
  if (!verdict.convertible) {
    throw_error("NotConvertible", "no covariant map sends " + std::to_string(s) + " to " +
                                      std::to_string(s_prime));
  }
  return std::move(*verdict.witness);
}

}  // namespace covdyn
