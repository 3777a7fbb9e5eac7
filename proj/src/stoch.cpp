#include "covdyn/stoch.hpp"

#include <sstream>

namespace covdyn {

namespace {

void require_state(const DynamicalSystem& sys, State s) {
  if (s >= sys.size()) {
    throw_error("OutOfRangeState", "state " + std::to_string(s) + " out of range");
  }
}

std::vector<std::vector<State>> preimages(const DynamicalSystem& sys) {
  std::vector<std::vector<State>> pre(sys.size());
  for (State s = 0; s < sys.size(); ++s) pre[sys.step(s)].push_back(s);
  return pre;
}

// Column sums = 1 and commutation rows; the common core of the conversion
// LP and the transition-probability LP.
LpProblem stochastic_covariance_lp(const DynamicalSystem& sys) {
  const std::size_t m = sys.size();
  const auto var = [m](std::size_t i, std::size_t j) { return i * m + j; };
  LpProblem lp;
  lp.num_vars = m * m;

  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rat> row(lp.num_vars, Rat(0));
    for (std::size_t i = 0; i < m; ++i) row[var(i, j)] = 1;
    lp.rows.push_back(std::move(row));
    lp.rhs.emplace_back(1);
  }

  const auto pre = preimages(sys);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      // tr[F G_ij^T] = F_{i,phi(j)} - sum_{k in phi^-1(i)} F_{kj} = 0
      std::vector<Rat> row(lp.num_vars, Rat(0));
      row[var(i, sys.step(static_cast<State>(j)))] += 1;
      for (State k : pre[i]) row[var(k, j)] -= 1;
      lp.rows.push_back(std::move(row));
      lp.rhs.emplace_back(0);
    }
  }
  return lp;
}

// Maximize F_{s',s} under column sums and commutation; always feasible
// (the identity) and bounded by 1.
LpOutcome solve_transition_lp(const DynamicalSystem& sys, State s, State s_prime) {
  LpProblem lp = stochastic_covariance_lp(sys);
  lp.objective.assign(lp.num_vars, Rat(0));
  lp.objective[static_cast<std::size_t>(s_prime) * sys.size() + s] = 1;
  const LpOutcome outcome = lp_solve(lp);
  if (outcome.status != LpStatus::Optimal) {
    throw_error("InternalError", "transition LP must be feasible and bounded");
  }
  return outcome;
}

StochMatrix matrix_from_assignment(std::size_t m, const std::vector<Rat>& x) {
  RatMatrix f(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) f.at(i, j) = x[i * m + j];
  }
  return make_stoch_matrix(std::move(f));
}

// Independent post-solve verification of a claimed witness.
void verify_witness(const DynamicalSystem& sys, const StochMatrix& f, const ProbVec& p,
                    const ProbVec& q) {
  if (!is_covariant_stoch(sys, f)) {
    throw_error("InternalError", "LP witness fails the commutation re-check");
  }
  const ProbVec image = apply(f, p);
  if (image.p != q.p) throw_error("InternalError", "LP witness fails F p = q re-check");
}

}  // namespace

ProbVec ProbVec::point_mass(std::size_t m, State s) {
  std::vector<Rat> entries(m, Rat(0));
  entries.at(s) = 1;
  return ProbVec{std::move(entries)};
}

ProbVec make_prob_vec(std::vector<Rat> entries) {
  if (entries.empty()) throw_error("LengthMismatch", "empty probability vector");
  Rat total = 0;
  for (const Rat& e : entries) {
    if (e < 0) throw_error("NegativeProbability", "entry " + rat_to_string(e) + " < 0");
    total += e;
  }
  if (total != 1) {
    throw_error("NotNormalized", "entries sum to " + rat_to_string(total) + ", expected 1");
  }
  return ProbVec{std::move(entries)};
}

StochMatrix make_stoch_matrix(RatMatrix cells) {
  if (cells.rows() != cells.cols() || cells.rows() == 0) {
    throw_error("DimensionMismatch", "stochastic matrix must be square and nonempty");
  }
  for (std::size_t j = 0; j < cells.cols(); ++j) {
    Rat total = 0;
    for (std::size_t i = 0; i < cells.rows(); ++i) {
      const Rat& e = cells.at(i, j);
      if (e < 0 || e > 1) {
        throw_error("NegativeProbability", "entry out of [0,1]: " + rat_to_string(e));
      }
      total += e;
    }
    if (total != 1) {
      throw_error("NotNormalized",
                  "column " + std::to_string(j) + " sums to " + rat_to_string(total));
    }
  }
  return StochMatrix{std::move(cells)};
}

ProbVec apply(const StochMatrix& f, const ProbVec& p) {
  if (f.size() != p.size()) throw_error("DimensionMismatch", "apply: shapes disagree");
  return make_prob_vec(f.m * p.p);
}

bool is_uniform(const DynamicalSystem& sys, const ProbVec& p) {
  if (p.size() != sys.size()) {
    throw_error("LengthMismatch", "vector length " + std::to_string(p.size()) +
                                      " != system size " + std::to_string(sys.size()));
  }
  const FeatureTable ft = analyze(sys);
  for (State s = 0; s < sys.size(); ++s) {
    if (!ft.on_attractor(s) && p.p[s] != 0) return false;
  }
  for (const auto& cycle : ft.attractors) {
    for (std::size_t k = 1; k < cycle.size(); ++k) {
      if (p.p[cycle[k]] != p.p[cycle[0]]) return false;
    }
  }
  return true;
}

std::vector<ProbVec> free_state_basis(const DynamicalSystem& sys) {
  const FeatureTable ft = analyze(sys);
  std::vector<ProbVec> basis;
  basis.reserve(ft.num_attractors());
  for (const auto& cycle : ft.attractors) {
    std::vector<Rat> entries(sys.size(), Rat(0));
    const Rat weight = Rat(1) / Rat(static_cast<unsigned long>(cycle.size()));
    for (State s : cycle) entries[s] = weight;
    basis.push_back(make_prob_vec(std::move(entries)));
  }
  return basis;
}

bool is_covariant_stoch(const DynamicalSystem& sys, const StochMatrix& f) {
  if (f.size() != sys.size()) throw_error("DimensionMismatch", "matrix size != system size");
  const RatMatrix phi = dynamical_matrix(sys);
  return f.m * phi == phi * f.m;
}

std::vector<RatMatrix> commutant_constraints(const DynamicalSystem& sys) {
  const std::size_t m = sys.size();
  const auto pre = preimages(sys);
  std::vector<RatMatrix> out;
  out.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      RatMatrix g(m, m);
      g.at(i, sys.step(static_cast<State>(j))) += 1;
      for (State k : pre[i]) g.at(k, j) -= 1;
      out.push_back(std::move(g));
    }
  }
  return out;
}

LpProblem encode_conversion_lp(const DynamicalSystem& sys, const ProbVec& p,
                               const ProbVec& q) {
  const std::size_t m = sys.size();
  if (p.size() != m || q.size() != m) {
    throw_error("LengthMismatch", "probability vectors must have length " + std::to_string(m));
  }
  LpProblem lp = stochastic_covariance_lp(sys);
  for (std::size_t i = 0; i < m; ++i) {
    // (F p)_i = q_i
    std::vector<Rat> row(lp.num_vars, Rat(0));
    for (std::size_t j = 0; j < m; ++j) row[i * m + j] = p.p[j];
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(q.p[i]);
  }
  return lp;
}

StochVerdict decide_conversion(const DynamicalSystem& sys, const ProbVec& p,
                               const ProbVec& q) {
  const LpProblem lp = encode_conversion_lp(sys, p, q);
  const LpOutcome outcome = lp_solve(lp);
  StochVerdict verdict;
  if (outcome.status == LpStatus::Infeasible) {
    verdict.feasible = false;
    verdict.phase1_optimum = outcome.phase1_optimum;
    std::ostringstream msg;
    msg << "phase-1 optimum " << rat_to_string(outcome.phase1_optimum)
        << " > 0: no covariant stochastic influence maps p to q";
    verdict.certificate = msg.str();
    return verdict;
  }
  StochMatrix witness = matrix_from_assignment(sys.size(), outcome.assignment);
  verify_witness(sys, witness, p, q);
  verdict.feasible = true;
  verdict.witness = std::move(witness);
  return verdict;
}

TransitionVerdict transition_allowed(const DynamicalSystem& sys, State s, State s_prime,
                                     bool run_lp) {
  require_state(sys, s);
  require_state(sys, s_prime);
  const FeatureTable ft = analyze(sys);

  TransitionVerdict verdict;
  const std::uint32_t d2 = ft.progeny[s_prime];
  if (d2 > ft.progeny[s]) verdict.reasons.push_back({FailKind::ProgenyIncrease, std::nullopt});
  {
    State u = s;
    State v = s_prime;
    for (std::uint32_t n = 0; n < d2; ++n) {
      if (!(ft.ancestry[v] >= ft.ancestry[u])) {
        verdict.reasons.push_back({FailKind::AncestryDecrease, n});
      }
      u = sys.step(u);
      v = sys.step(v);
    }
  }
  if (!verdict.reasons.empty()) {
    verdict.kind = TransitionKind::Forbidden;
    return verdict;
  }
  if (!run_lp) {
    verdict.kind = TransitionKind::PossiblyAllowed;
    return verdict;
  }

  const LpOutcome outcome = solve_transition_lp(sys, s, s_prime);
  verdict.max_probability = outcome.objective_value;
  if (outcome.objective_value == 0) {
    verdict.kind = TransitionKind::Forbidden;
    verdict.lp_certificate = true;
    return verdict;
  }
  StochMatrix witness = matrix_from_assignment(sys.size(), outcome.assignment);
  if (!is_covariant_stoch(sys, witness)) {
    throw_error("InternalError", "transition witness fails the commutation re-check");
  }
  verdict.kind = TransitionKind::AllowedWithWitness;
  verdict.witness = std::move(witness);
  return verdict;
}

Rat max_transition_probability(const DynamicalSystem& sys, State s, State s_prime) {
  require_state(sys, s);
  require_state(sys, s_prime);
  return solve_transition_lp(sys, s, s_prime).objective_value;
}

RatMatrix homogeneous_conversion_matrix(const DynamicalSystem& sys, const ProbVec& p,
                                        const ProbVec& q) {
  const std::size_t m = sys.size();
  if (p.size() != m || q.size() != m) {
    throw_error("LengthMismatch", "probability vectors must have length " + std::to_string(m));
  }
  const auto var = [m](std::size_t i, std::size_t j) { return i * m + j; };
  RatMatrix a(m * m + 2 * m - 1, m * m);
  std::size_t r = 0;
  // Column-sum differences: colsum_1 - colsum_j = 0, j = 2..M.
  for (std::size_t j = 1; j < m; ++j, ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      a.at(r, var(i, 0)) += 1;
      a.at(r, var(i, j)) -= 1;
    }
  }
  // Commutant rows.
  const auto pre = preimages(sys);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j, ++r) {
      a.at(r, var(i, sys.step(static_cast<State>(j)))) += 1;
      for (State k : pre[i]) a.at(r, var(k, j)) -= 1;
    }
  }
  // Action rows homogenized against the first column sum:
  // (F p)_i - q_i * colsum_1 = 0.
  for (std::size_t i = 0; i < m; ++i, ++r) {
    for (std::size_t j = 0; j < m; ++j) a.at(r, var(i, j)) += p.p[j];
    for (std::size_t k = 0; k < m; ++k) a.at(r, var(k, 0)) -= q.p[i];
  }
  return a;
}

}  // namespace covdyn
