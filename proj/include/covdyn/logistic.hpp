#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covdyn/rational.hpp"

namespace covdyn {

// Closed symbol universe for the logistic-map covariance analysis: the
// composition variable x, the rate r, and the influence coefficients.
enum class Sym : std::uint8_t { X = 0, R = 1, A = 2, B = 3, C = 4, A3 = 5 };
inline constexpr std::size_t kNumSymbols = 6;
const char* sym_name(Sym s);

using Exponents = std::array<std::uint8_t, kNumSymbols>;

// Sparse multivariate polynomial with exact rational coefficients.
// Canonical form: no zero terms, monomials ordered lexicographically by
// exponent vector.
class MultiPoly {
 public:
  MultiPoly() = default;
  static MultiPoly constant(Rat value);
  static MultiPoly variable(Sym s);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rat>& terms() const { return terms_; }

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly pow(unsigned e) const;
  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

  // Exact substitution of a polynomial for a symbol.
  MultiPoly substitute(Sym s, const MultiPoly& value) const;

  unsigned degree_in(Sym s) const;
  std::vector<Sym> free_symbols() const;

  // Coefficient polynomials collected by the power of `s` (absent degrees
  // have zero coefficient).
  std::map<unsigned, MultiPoly> collect_in(Sym s) const;

  // If the polynomial involves exactly one symbol, its dense coefficient
  // list (index = degree).
  std::optional<std::vector<Rat>> univariate_coeffs(Sym* which) const;

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rat& coeff);
  std::map<Exponents, Rat> terms_;
};

// outer(inner): substitutes `inner` for x in `outer`.
MultiPoly compose(const MultiPoly& outer, const MultiPoly& inner);

// The logistic generator r x (1 - x).
MultiPoly logistic_generator();

// Polynomial influence c + b x + a x^2 (+ a3 x^3 for degree 3).
MultiPoly influence_poly(int degree);

// Coefficients (in descending powers of x) of f(phi(x)) - phi(f(x)) as
// polynomials in {r, a, b, c( , a3)}. Covariance of the influence is
// equivalent to every entry vanishing identically in r.
// Throws UnsupportedDegree unless degree is 2 or 3.
std::vector<MultiPoly> covariance_equations(int degree);

// True iff every equation becomes the zero polynomial after substituting the
// assignment (values may involve r). Throws MissingSymbol when the
// assignment misses a non-r symbol that occurs in the equations.
bool verify_solution(const std::vector<MultiPoly>& equations,
                     const std::map<Sym, MultiPoly>& assignment);

// All rational roots of a univariate polynomial, ascending.
std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs);

// One consistent assignment branch of the covariance system at a fixed r.
struct Branch {
  std::map<Sym, Rat> values;
  std::vector<Sym> free_symbols;  // unconstrained leftovers (none expected)
  bool constant_influence = false;  // every x-coefficient of f vanishes
  bool is_genuine(int degree) const;  // leading coefficient nonzero
};

struct BranchSearch {
  std::vector<Branch> survivors;
  // A univariate step had fewer rational roots than its degree, so a
  // non-rational real branch might exist that this search cannot decide.
  bool possibly_missed_real_branch = false;
};

// Triangularizes the covariance system at a fixed nonzero rational r by
// descending x-degree and enumerates all rational solution branches.
BranchSearch enumerate_covariance_branches(int degree, const Rat& r);

struct CubicSampleReport {
  Rat r;
  BranchSearch search;
  bool cubic_branch = false;  // a surviving branch with a3 != 0
};

struct CubicReport {
  std::vector<CubicSampleReport> samples;
  bool any_cubic_branch = false;
  bool any_possibly_missed = false;
};

// Runs the branch enumeration for the degree-3 system at each sampled r.
// The verdict is over Q: no rational branch with a3 != 0 means the cubic
// covariance conditions are inconsistent over the rationals at that r;
// branches that could only close over the reals are flagged, not dropped.
CubicReport cubic_inconsistency_check(const std::vector<Rat>& r_samples);

enum class RangeStatus { WellPosed, Escapes };

struct RangeResult {
  RangeStatus status = RangeStatus::WellPosed;
  std::optional<Rat> witness_x;  // point where the iterate leaves [0, 1]
  std::optional<Rat> value;      // its image
};

// Checks whether g(x) = r x (1 - x) + x maps [0, 1] into itself, exactly,
// on the grid {k / grid_denominator} plus the vertex of g when it lies in
// [0, 1]. Throws BadParameter for r < 0 or a zero denominator.
RangeResult linear_case_range(const Rat& r, unsigned grid_denominator);

// Floating iteration of the linearly influenced map, for convergence checks.
double iterate_linear_influenced(double r, double x0, unsigned steps);

// Parses "a*r^k + ..." style univariate expressions in r ("0", "-r",
// "3/2*r^2-r"). Used by the CLI.
MultiPoly parse_poly_in_r(const std::string& text);

}  // namespace covdyn
