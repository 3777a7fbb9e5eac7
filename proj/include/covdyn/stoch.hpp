#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covdyn/det_conversion.hpp"
#include "covdyn/matrix.hpp"
#include "covdyn/ratlp.hpp"
#include "covdyn/system.hpp"

namespace covdyn {

// Exact probability vector over the states of a system.
struct ProbVec {
  std::vector<Rat> p;

  std::size_t size() const { return p.size(); }
  static ProbVec point_mass(std::size_t m, State s);
};

// Validates nonnegativity and sum-to-one exactly.
ProbVec make_prob_vec(std::vector<Rat> entries);

// Column-stochastic M x M matrix of exact rationals; entry (i, j) is the
// transition probability p(i|j).
struct StochMatrix {
  RatMatrix m;

  std::size_t size() const { return m.rows(); }
  static StochMatrix identity(std::size_t n) { return StochMatrix{RatMatrix::identity(n)}; }
};

// Validates shape, entry range and exact column sums.
StochMatrix make_stoch_matrix(RatMatrix cells);

// F p, revalidated as a probability vector.
ProbVec apply(const StochMatrix& f, const ProbVec& p);

// Uniform states: zero mass on transients, equal mass within each attractor.
bool is_uniform(const DynamicalSystem& sys, const ProbVec& p);

// One uniform vector per attractor (weight 1/l on its l cycle states);
// every free stochastic state is a convex combination of these.
std::vector<ProbVec> free_state_basis(const DynamicalSystem& sys);

// Exact commutation test [F, Phi] = 0.
bool is_covariant_stoch(const DynamicalSystem& sys, const StochMatrix& f);

// The M^2 commutant matrices G_ij = e_i e_phi(j)^T - sum_{k in phi^-1(i)} e_k e_j^T,
// indexed i * M + j. For every F: [F, Phi] = 0 iff all tr[F G_ij^T] vanish.
std::vector<RatMatrix> commutant_constraints(const DynamicalSystem& sys);

// Equality LP over the M^2 nonnegative entries of F (variable i * M + j is
// F_ij): column sums = 1, commutation rows, and the action rows F p = q.
LpProblem encode_conversion_lp(const DynamicalSystem& sys, const ProbVec& p,
                               const ProbVec& q);

struct StochVerdict {
  bool feasible = false;
  std::optional<StochMatrix> witness;     // present iff feasible
  std::optional<std::string> certificate; // infeasible: phase-1 optimum note
  std::optional<Rat> phase1_optimum;
};

// Decides p -> q under covariant stochastic influences; a feasible witness is
// re-verified entrywise before being returned.
StochVerdict decide_conversion(const DynamicalSystem& sys, const ProbVec& p,
                               const ProbVec& q);

enum class TransitionKind { Forbidden, PossiblyAllowed, AllowedWithWitness };

struct TransitionVerdict {
  TransitionKind kind = TransitionKind::Forbidden;
  std::vector<FailedCondition> reasons;  // violated necessary conditions
  bool lp_certificate = false;           // forbidden with exact LP optimum 0
  std::optional<Rat> max_probability;    // optimum of F_{s',s} when the LP ran
  std::optional<StochMatrix> witness;    // maximizer when allowed
};

// Deterministic-state transition s -> s' under stochastic covariant
// influences: the necessary conditions (d' <= d and the ancestry monotone)
// first, then the exact LP maximizing F_{s',s}. With run_lp = false the
// check stops after the necessary conditions and may answer PossiblyAllowed.
TransitionVerdict transition_allowed(const DynamicalSystem& sys, State s, State s_prime,
                                     bool run_lp = true);

// Exact maximum of F_{s',s} over all covariant column-stochastic F,
// regardless of the necessary conditions (they hold iff this is positive
// only in one direction; the optimum itself is the ground truth).
Rat max_transition_probability(const DynamicalSystem& sys, State s, State s_prime);

// The stacked homogeneous constraint matrix of the conversion problem,
// (M^2 + 2M - 1) x M^2: column-sum-difference rows, commutant rows, and
// action rows homogenized against the first column sum. Exposed for
// inspection; the decision procedure uses the normalized LP above.
RatMatrix homogeneous_conversion_matrix(const DynamicalSystem& sys, const ProbVec& p,
                                        const ProbVec& q);

}  // namespace covdyn
