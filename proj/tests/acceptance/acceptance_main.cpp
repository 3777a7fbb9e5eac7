// Acceptance suite: ten structural criteria, one pass/fail line each.
// Exits nonzero when any criterion fails.

#include <omp.h>

#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "covdyn/det_conversion.hpp"
#include "covdyn/linalg.hpp"
#include "covdyn/logistic.hpp"
#include "covdyn/oracle.hpp"
#include "covdyn/rbn.hpp"
#include "covdyn/stoch.hpp"
#include "covdyn/system.hpp"

namespace {

using namespace covdyn;

struct CriterionFailure : std::runtime_error {
  explicit CriterionFailure(const std::string& msg) : std::runtime_error(msg) {}
};

void require(bool condition, const std::string& message) {
  if (!condition) throw CriterionFailure(message);
}

std::vector<DynamicalSystem> all_systems(std::size_t m) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < m; ++k) total *= m;
  std::vector<DynamicalSystem> out;
  out.reserve(total);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::vector<State> successor(m);
    std::uint64_t rest = index;
    for (std::size_t j = m; j-- > 0;) {
      successor[j] = static_cast<State>(rest % m);
      rest /= m;
    }
    out.push_back(build_system(std::move(successor)));
  }
  return out;
}

std::vector<DynamicalSystem> seeded_random_systems(std::size_t m, int count,
                                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<State> dist(0, static_cast<State>(m - 1));
  std::vector<DynamicalSystem> out;
  for (int k = 0; k < count; ++k) {
    std::vector<State> successor(m);
    for (auto& s : successor) s = dist(rng);
    out.push_back(build_system(std::move(successor)));
  }
  return out;
}

DynamicalSystem sys_a() { return build_system({1, 0, 2}); }

// Criterion 1's system families, shared with criteria 2 and 7.
const std::vector<DynamicalSystem>& criterion1_families() {
  static const std::vector<DynamicalSystem> families = [] {
    std::vector<DynamicalSystem> systems = all_systems(4);
    for (auto& sys : seeded_random_systems(5, 200, 20240501)) {
      systems.push_back(std::move(sys));
    }
    return systems;
  }();
  return families;
}

struct ConversionSweep {
  std::size_t comparisons = 0;
  std::size_t witnesses = 0;
  std::string verdict_error;  // criterion 1
  std::string witness_error;  // criterion 2
};

// One sweep over the criterion-1 families serves both criteria: verdict
// agreement with the oracle, and soundness of every returned witness.
const ConversionSweep& conversion_sweep() {
  static const ConversionSweep sweep = [] {
    ConversionSweep result;
    const auto& systems = criterion1_families();
    std::size_t comparisons = 0;
    std::size_t witnesses = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : comparisons, witnesses)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(systems.size()); ++k) {
      const DynamicalSystem& sys = systems[static_cast<std::size_t>(k)];
      const std::size_t m = sys.size();
      const auto reachable = oracle_convertible_table_serial(sys);
      for (State s = 0; s < m; ++s) {
        for (State t = 0; t < m; ++t) {
          const auto verdict = convertible(sys, s, t);
          ++comparisons;
          if (verdict.convertible != static_cast<bool>(reachable[s * m + t])) {
#pragma omp critical
            if (result.verdict_error.empty()) {
              std::ostringstream msg;
              msg << "disagreement on system " << k << " pair " << s << "->" << t;
              result.verdict_error = msg.str();
            }
            continue;
          }
          if (!verdict.convertible) continue;
          const DetMap& witness = *verdict.witness;
          if (witness.table[s] != t || !is_covariant(witness)) {
#pragma omp critical
            if (result.witness_error.empty()) {
              std::ostringstream msg;
              msg << "unsound witness on system " << k << " pair " << s << "->" << t;
              result.witness_error = msg.str();
            }
            continue;
          }
          ++witnesses;
        }
      }
    }
    result.comparisons = comparisons;
    result.witnesses = witnesses;
    return result;
  }();
  return sweep;
}

void criterion1() {
  const auto& sweep = conversion_sweep();
  require(sweep.verdict_error.empty(), sweep.verdict_error);
  require(sweep.comparisons == 256 * 16 + 200 * 25, "unexpected comparison count");
  std::printf("       (%zu oracle comparisons)\n", sweep.comparisons);
}

void criterion2() {
  const auto& sweep = conversion_sweep();
  require(sweep.witness_error.empty(), sweep.witness_error);
  require(sweep.witnesses > 0, "no witnesses exercised");
  std::printf("       (%zu witnesses verified covariant)\n", sweep.witnesses);
}

void criterion3() {
  const DynamicalSystem sys = build_system({1, 2, 3, 0, 5, 4});
  const DetMap witness = construct_witness(sys, 0, 4);
  require(witness.table[0] == 4, "f(s) != s'");
  require(witness.table[1] == 5, "f(s1) != s1'");
  require(witness.table[2] == 4, "f(s2) != s'");
  require(witness.table[3] == 5, "f(s3) != s1'");
  require(is_covariant(witness), "figure witness is not covariant");
}

void criterion4() {
  // Row space of the commutant constraints on the 9 entries of F, in
  // variable order F00 F01 F02 F10 F11 F12 F20 F21 F22.
  const DynamicalSystem sys = sys_a();
  std::vector<std::vector<Rat>> g_rows;
  for (const RatMatrix& g : commutant_constraints(sys)) {
    std::vector<Rat> row;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) row.push_back(g.at(i, j));
    }
    g_rows.push_back(std::move(row));
  }
  const auto unit = [](int a, int b) {
    std::vector<Rat> row(9, Rat(0));
    row[a] = 1;
    row[b] = -1;
    return row;
  };
  // p(1|1)=p(2|2), p(2|1)=p(1|2), p(3|1)=p(3|2), p(1|3)=p(2|3).
  const std::vector<std::vector<Rat>> paper_rows = {
      unit(0, 4),  // F00 - F11
      unit(3, 1),  // F10 - F01
      unit(6, 7),  // F20 - F21
      unit(2, 5),  // F02 - F12
  };
  require(rank(g_rows) == 4, "commutant rank is not 4");
  require(rank(paper_rows) == 4, "paper equalities are not independent");
  for (const auto& row : paper_rows) {
    require(in_row_span(g_rows, row), "paper equality missing from the commutant hull");
  }
  for (const auto& row : g_rows) {
    require(in_row_span(paper_rows, row), "commutant implies more than the paper equalities");
  }
  // No constraint on p(3|3): every constraint has a zero F22 coefficient.
  for (const auto& row : g_rows) {
    require(row[8] == 0, "unexpected constraint on p(3|3)");
  }
}

void criterion5() {
  const ProbVec source = ProbVec::point_mass(3, 2);
  const ProbVec target = make_prob_vec({Rat(1, 2), Rat(1, 2), Rat(0)});
  const auto stochastic = decide_conversion(sys_a(), source, target);
  require(stochastic.feasible, "stochastic conversion must be feasible");
  require(apply(*stochastic.witness, source).p == target.p, "witness action mismatch");
  require(is_covariant_stoch(sys_a(), *stochastic.witness), "witness not covariant");

  const auto deterministic = convertible(sys_a(), 2, 0);
  require(!deterministic.convertible, "deterministic conversion must fail");
  bool divisor_failure = false;
  for (const auto& f : deterministic.failed) {
    if (f.kind == FailKind::LengthNotDivisor) divisor_failure = true;
  }
  require(divisor_failure, "expected the divisibility condition to fail");
}

void criterion6() {
  const auto systems = all_systems(4);
  std::string first_error;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(systems.size()); ++k) {
    const DynamicalSystem& sys = systems[static_cast<std::size_t>(k)];
    const FeatureTable ft = analyze(sys);
    for (State s = 0; s < 4; ++s) {
      for (State t = 0; t < 4; ++t) {
        bool theorem2 = ft.progeny[t] <= ft.progeny[s];
        for (std::uint32_t n = 0; theorem2 && n < ft.progeny[t]; ++n) {
          if (!(ft.ancestry[iterate(sys, t, n)] >= ft.ancestry[iterate(sys, s, n)])) {
            theorem2 = false;
          }
        }
        const Rat optimum = max_transition_probability(sys, s, t);
        std::string error;
        if (!theorem2 && optimum != 0) {
          error = "positive optimum despite a violated necessary condition";
        }
        if (convertible(sys, s, t).convertible && optimum != 1) {
          error = "optimum below the deterministic witness entry";
        }
        if (!error.empty()) {
#pragma omp critical
          if (first_error.empty()) first_error = error;
        }
      }
    }
  }
  require(first_error.empty(), first_error);
}

void criterion7() {
  // Probability grid with entry denominators <= 4.
  const std::vector<Rat> grid_values = {Rat(0),    Rat(1, 4), Rat(1, 3), Rat(1, 2),
                                        Rat(2, 3), Rat(3, 4), Rat(1)};
  const auto grid_vectors = [&](std::size_t m) {
    std::vector<ProbVec> out;
    std::vector<Rat> current(m);
    const auto recurse = [&](auto&& self, std::size_t idx, Rat sum) -> void {
      if (idx == m) {
        if (sum == 1) out.push_back(make_prob_vec(current));
        return;
      }
      for (const Rat& v : grid_values) {
        if (sum + v > 1) continue;
        current[idx] = v;
        self(self, idx + 1, sum + v);
      }
    };
    recurse(recurse, 0, Rat(0));
    return out;
  };
  const auto grid4 = grid_vectors(4);
  const auto grid5 = grid_vectors(5);

  const auto& systems = criterion1_families();
  std::string first_error;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(systems.size()); ++k) {
    const DynamicalSystem& sys = systems[static_cast<std::size_t>(k)];
    const RatMatrix phi = dynamical_matrix(sys);
    const auto basis = free_state_basis(sys);
    const FeatureTable ft = analyze(sys);
    std::string error;

    for (const ProbVec& p : sys.size() == 4 ? grid4 : grid5) {
      const bool invariant = phi * p.p == p.p;
      if (invariant != is_uniform(sys, p)) {
        error = "invariance and uniformity disagree";
        break;
      }
      if (invariant) {
        // Convex decomposition over the basis: weight per attractor.
        std::vector<Rat> reconstructed(sys.size(), Rat(0));
        for (std::size_t a = 0; a < basis.size(); ++a) {
          Rat weight = 0;
          for (State s : ft.attractors[a]) weight += p.p[s];
          if (weight < 0) error = "negative attractor weight";
          for (State s = 0; s < sys.size(); ++s) {
            reconstructed[s] += weight * basis[a].p[s];
          }
        }
        if (reconstructed != p.p) error = "invariant vector outside the basis hull";
        if (!error.empty()) break;
      }
    }
    if (error.empty()) {
      // The basis vectors themselves are invariant, uniform, and extreme
      // (pairwise disjoint supports).
      for (std::size_t a = 0; a < basis.size(); ++a) {
        if (!(phi * basis[a].p == basis[a].p) || !is_uniform(sys, basis[a])) {
          error = "basis vector not an invariant uniform state";
        }
        for (std::size_t b = a + 1; b < basis.size(); ++b) {
          for (State s = 0; s < sys.size(); ++s) {
            if (basis[a].p[s] != 0 && basis[b].p[s] != 0) error = "basis supports overlap";
          }
        }
      }
      if (basis.size() != ft.num_attractors()) error = "basis size != attractor count";
    }
    if (!error.empty()) {
#pragma omp critical
      if (first_error.empty()) first_error = error;
    }
  }
  require(first_error.empty(), first_error);
  std::printf("       (%zu + %zu grid vectors per system)\n", grid4.size(), grid5.size());
}

void criterion8() {
  const DynamicalSystem three_cycle = build_system({1, 2, 0});
  const DynamicalSystem two_cycle = build_system({1, 0});
  require(!exists_covariant_maps(three_cycle, two_cycle), "3-cycle -> 2-cycle must be empty");
  require(!exists_covariant_maps(two_cycle, three_cycle), "2-cycle -> 3-cycle must be empty");

  // A 3-cycle plus a 4-cycle cannot map into a single 2-cycle, even though
  // the chosen states satisfy the per-state conditions.
  const DynamicalSystem mixed = build_system({1, 2, 0, 4, 5, 6, 3});
  const auto verdict = convertible_cross(mixed, 3, two_cycle, 0);
  require(!verdict.convertible, "cross conversion must fail");
  bool no_maps = false;
  for (const auto& f : verdict.failed) {
    if (f.kind == FailKind::NoCovariantMapsExist) no_maps = true;
  }
  require(no_maps, "expected NoCovariantMapsExist");
}

void criterion9() {
  const auto equations = covariance_equations(2);
  const MultiPoly r = MultiPoly::variable(Sym::R);
  const MultiPoly zero = MultiPoly::constant(Rat(0));
  const MultiPoly one = MultiPoly::constant(Rat(1));

  require(verify_solution(equations, {{Sym::A, zero}, {Sym::B, one}, {Sym::C, zero}}),
          "identity influence rejected");
  require(verify_solution(equations, {{Sym::A, zero - r}, {Sym::B, r}, {Sym::C, zero}}),
          "rescaling influence rejected");

  // 100 seeded random constant assignments outside the covariant set
  // {identity, rescaling-at-constant (impossible), zero influence}.
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  int rejected = 0;
  while (rejected < 100) {
    const Rat a(num(rng), den(rng));
    const Rat b(num(rng), den(rng));
    const Rat c(num(rng), den(rng));
    if (a == 0 && c == 0 && (b == 1 || b == 0)) continue;  // known covariant triples
    require(!verify_solution(equations, {{Sym::A, MultiPoly::constant(a)},
                                         {Sym::B, MultiPoly::constant(b)},
                                         {Sym::C, MultiPoly::constant(c)}}),
            "random non-solution accepted");
    ++rejected;
  }

  const CubicReport cubic = cubic_inconsistency_check({Rat(2), Rat(3), Rat(5, 2)});
  require(!cubic.any_cubic_branch, "a rational cubic branch survived");

  for (const Rat& good : {Rat(0), Rat(1, 2), Rat(1)}) {
    require(linear_case_range(good, 16).status == RangeStatus::WellPosed,
            "linear case should be well-posed for r = " + rat_to_string(good));
  }
  for (const Rat& bad : {Rat(3, 2), Rat(2)}) {
    require(linear_case_range(bad, 16).status == RangeStatus::Escapes,
            "linear case should escape for r = " + rat_to_string(bad));
  }

  for (double rr : {0.25, 0.5, 0.75}) {
    for (double x0 : {0.1, 0.5, 0.9}) {
      const double x = iterate_linear_influenced(rr, x0, 200);
      require(x > 1.0 - 1e-6 && x < 1.0 + 1e-6, "saturation not reached");
    }
  }
}

void criterion10() {
  const BooleanNetwork swap_net = parse_network(
      R"({"n":2,"nodes":[{"parents":[1],"tt":[0,1]},{"parents":[0],"tt":[0,1]}]})");
  const DynamicalSystem swap_sys = expand(swap_net);
  require(swap_sys.successor == std::vector<State>{0, 2, 1, 3}, "swap expansion mismatch");
  const FeatureTable ft = analyze(swap_sys);
  std::multiset<std::size_t> lengths;
  for (const auto& cycle : ft.attractors) lengths.insert(cycle.size());
  require(lengths == std::multiset<std::size_t>{1, 1, 2}, "swap attractor lengths mismatch");

  const BooleanNetwork net10 = random_network(10, 3, 77);
  const double t0 = omp_get_wtime();
  const DynamicalSystem sys10 = expand(net10);
  const double elapsed = omp_get_wtime() - t0;
  require(elapsed < 5.0, "N = 10 expansion exceeded 5 s");
  require(sys10.size() == 1024, "expected 1024 states");
  for (State s : sys10.successor) {
    require(s < sys10.size(), "successor out of range");
  }
  require(sys10.successor.size() == 1024, "every state needs exactly one successor");
}

bool run_criterion(int number, const std::string& title, const std::function<void()>& body) {
  const double t0 = omp_get_wtime();
  try {
    body();
    std::printf("[PASS] criterion %2d: %s (%.2f s)\n", number, title.c_str(),
                omp_get_wtime() - t0);
    return true;
  } catch (const std::exception& e) {
    std::printf("[FAIL] criterion %2d: %s: %s\n", number, title.c_str(), e.what());
    return false;
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "deterministic conversion agrees with exhaustive search",
                      criterion1);
  ok &= run_criterion(2, "every returned witness is covariant and maps s to s'", criterion2);
  ok &= run_criterion(3, "4-cycle to 2-cycle witness matches the documented pattern",
                      criterion3);
  ok &= run_criterion(4, "commutant hull on the 2-cycle + fixed point system", criterion4);
  ok &= run_criterion(5, "randomness activates the fixed-point-to-cycle transition",
                      criterion5);
  ok &= run_criterion(6, "transition LP optimum: 0 under violated necessary conditions, "
                         "1 on deterministic conversions",
                      criterion6);
  ok &= run_criterion(7, "invariant vectors = uniform vectors = hull of the free basis",
                      criterion7);
  ok &= run_criterion(8, "cross-system conversions blocked by missing covariant maps",
                      criterion8);
  ok &= run_criterion(9, "logistic-map covariance: parameter sets, cubic branches, range, "
                         "saturation",
                      criterion9);
  ok &= run_criterion(10, "Boolean network expansion pipeline", criterion10);
  return ok ? 0 : 1;
}
