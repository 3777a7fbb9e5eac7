#include "covdyn/logistic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "covdyn/errors.hpp"

namespace covdyn {

namespace {

Exponents zero_exponents() { return Exponents{}; }

std::vector<mpz_class> divisors(const mpz_class& value) {
  mpz_class v = abs(value);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rat eval_univariate(const std::vector<Rat>& coeffs, const Rat& x) {
  Rat acc = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

}  // namespace

const char* sym_name(Sym s) {
  switch (s) {
    case Sym::X:
      return "x";
    case Sym::R:
      return "r";
    case Sym::A:
      return "a";
    case Sym::B:
      return "b";
    case Sym::C:
      return "c";
    case Sym::A3:
      return "a3";
  }
  return "?";
}

void MultiPoly::add_term(const Exponents& e, const Rat& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::constant(Rat value) {
  MultiPoly p;
  p.add_term(zero_exponents(), value);
  return p;
}

MultiPoly MultiPoly::variable(Sym s) {
  MultiPoly p;
  Exponents e = zero_exponents();
  e[static_cast<std::size_t>(s)] = 1;
  p.add_term(e, Rat(1));
  return p;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly out = *this;
  for (const auto& [e, coeff] : o.terms_) out.add_term(e, coeff);
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly out = *this;
  for (const auto& [e, coeff] : o.terms_) out.add_term(e, Rat(-coeff));
  return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e = e1;
      for (std::size_t k = 0; k < kNumSymbols; ++k) {
        e[k] = static_cast<std::uint8_t>(e[k] + e2[k]);
      }
      out.add_term(e, c1 * c2);
    }
  }
  return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly out = constant(Rat(1));
  for (unsigned k = 0; k < e; ++k) out = out * *this;
  return out;
}

MultiPoly MultiPoly::substitute(Sym s, const MultiPoly& value) const {
  const std::size_t idx = static_cast<std::size_t>(s);
  MultiPoly out;
  for (const auto& [e, coeff] : terms_) {
    Exponents rest = e;
    const unsigned power = rest[idx];
    rest[idx] = 0;
    MultiPoly term;
    term.add_term(rest, coeff);
    out = out + term * value.pow(power);
  }
  return out;
}

unsigned MultiPoly::degree_in(Sym s) const {
  const std::size_t idx = static_cast<std::size_t>(s);
  unsigned deg = 0;
  for (const auto& [e, coeff] : terms_) deg = std::max(deg, unsigned{e[idx]});
  return deg;
}

std::vector<Sym> MultiPoly::free_symbols() const {
  std::array<bool, kNumSymbols> seen{};
  for (const auto& [e, coeff] : terms_) {
    for (std::size_t k = 0; k < kNumSymbols; ++k) {
      if (e[k] > 0) seen[k] = true;
    }
  }
  std::vector<Sym> out;
  for (std::size_t k = 0; k < kNumSymbols; ++k) {
    if (seen[k]) out.push_back(static_cast<Sym>(k));
  }
  return out;
}

std::map<unsigned, MultiPoly> MultiPoly::collect_in(Sym s) const {
  const std::size_t idx = static_cast<std::size_t>(s);
  std::map<unsigned, MultiPoly> out;
  for (const auto& [e, coeff] : terms_) {
    Exponents rest = e;
    const unsigned power = rest[idx];
    rest[idx] = 0;
    out[power].add_term(rest, coeff);
  }
  return out;
}

std::optional<std::vector<Rat>> MultiPoly::univariate_coeffs(Sym* which) const {
  const auto symbols = free_symbols();
  if (symbols.size() != 1) return std::nullopt;
  const Sym s = symbols[0];
  if (which != nullptr) *which = s;
  std::vector<Rat> coeffs(degree_in(s) + 1, Rat(0));
  for (const auto& [e, coeff] : terms_) coeffs[e[static_cast<std::size_t>(s)]] = coeff;
  return coeffs;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, coeff] : terms_) {
    Rat magnitude = abs(coeff);
    if (first) {
      if (coeff < 0) out << "-";
      first = false;
    } else {
      out << (coeff < 0 ? " - " : " + ");
    }
    bool printed = false;
    if (magnitude != 1) {
      out << rat_to_string(magnitude);
      printed = true;
    }
    for (std::size_t k = 0; k < kNumSymbols; ++k) {
      if (e[k] == 0) continue;
      if (printed) out << "*";
      out << sym_name(static_cast<Sym>(k));
      if (e[k] > 1) out << "^" << unsigned{e[k]};
      printed = true;
    }
    if (!printed) out << rat_to_string(magnitude);
  }
  return out.str();
}

MultiPoly compose(const MultiPoly& outer, const MultiPoly& inner) {
  return outer.substitute(Sym::X, inner);
}

MultiPoly logistic_generator() {
  const MultiPoly x = MultiPoly::variable(Sym::X);
  const MultiPoly r = MultiPoly::variable(Sym::R);
  return r * x * (MultiPoly::constant(1) - x);
}

MultiPoly influence_poly(int degree) {
  if (degree != 2 && degree != 3) {
    throw_error("UnsupportedDegree", "influence degree must be 2 or 3");
  }
  const MultiPoly x = MultiPoly::variable(Sym::X);
  MultiPoly f = MultiPoly::variable(Sym::C) + MultiPoly::variable(Sym::B) * x +
                MultiPoly::variable(Sym::A) * x * x;
  if (degree == 3) f = f + MultiPoly::variable(Sym::A3) * x * x * x;
  return f;
}

std::vector<MultiPoly> covariance_equations(int degree) {
  const MultiPoly phi = logistic_generator();
  const MultiPoly f = influence_poly(degree);
  const MultiPoly diff = compose(f, phi) - compose(phi, f);
  const auto by_degree = diff.collect_in(Sym::X);
  std::vector<MultiPoly> equations;
  for (auto it = by_degree.rbegin(); it != by_degree.rend(); ++it) {
    if (!it->second.is_zero()) equations.push_back(it->second);
  }
  return equations;
}

bool verify_solution(const std::vector<MultiPoly>& equations,
                     const std::map<Sym, MultiPoly>& assignment) {
  for (const auto& [sym, value] : assignment) {
    for (Sym vs : value.free_symbols()) {
      if (vs != Sym::R) {
        throw_error("MissingSymbol", std::string("assignment for ") + sym_name(sym) +
                                         " may only involve r");
      }
    }
  }
  for (const MultiPoly& eq : equations) {
    MultiPoly cur = eq;
    for (Sym s : eq.free_symbols()) {
      if (s == Sym::R) continue;
      auto it = assignment.find(s);
      if (it == assignment.end()) {
        throw_error("MissingSymbol", std::string("no assignment for ") + sym_name(s));
      }
      cur = cur.substitute(s, it->second);
    }
    if (!cur.is_zero()) return false;
  }
  return true;
}

std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs) {
  // Trim leading zeros, clear denominators, reduce content.
  std::vector<Rat> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.size() <= 1) return {};
  mpz_class den_lcm = 1;
  for (const Rat& q : c) {
    mpz_class d = q.get_den();
    den_lcm = den_lcm / gcd(den_lcm, d) * d;
  }
  std::vector<mpz_class> z(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    Rat scaled = c[k] * Rat(den_lcm);
    scaled.canonicalize();
    z[k] = scaled.get_num();
  }
  std::vector<Rat> roots;
  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);

  const mpz_class& lead = z.back();
  const mpz_class& tail = z[low];
  for (const mpz_class& p : divisors(tail)) {
    for (const mpz_class& q : divisors(lead)) {
      if (gcd(p, q) != 1) continue;
      for (int sign : {1, -1}) {
        Rat candidate(sign * p, q);
        candidate.canonicalize();
        if (eval_univariate(c, candidate) == 0) roots.push_back(candidate);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

bool Branch::is_genuine(int degree) const {
  const Sym lead = degree == 3 ? Sym::A3 : Sym::A;
  auto it = values.find(lead);
  if (it != values.end()) return it->second != 0;
  return std::find(free_symbols.begin(), free_symbols.end(), lead) != free_symbols.end();
}

namespace {

// Depth-first triangularization: repeatedly substitute the partial
// assignment, discard vanished equations, kill contradicted branches, and
// split on the rational roots of the first univariate equation.
void search_branches(const std::vector<MultiPoly>& pending,
                     std::map<Sym, Rat>& assignment, int degree, BranchSearch& out) {
  std::vector<MultiPoly> remaining;
  for (const MultiPoly& eq : pending) {
    MultiPoly cur = eq;
    for (const auto& [sym, value] : assignment) {
      cur = cur.substitute(sym, MultiPoly::constant(value));
    }
    if (cur.is_zero()) continue;
    if (cur.free_symbols().empty()) return;  // nonzero constant: contradiction
    remaining.push_back(std::move(cur));
  }
  if (remaining.empty()) {
    Branch branch;
    branch.values = assignment;
    for (Sym s : {Sym::A3, Sym::A, Sym::B, Sym::C}) {
      if ((degree >= 3 || s != Sym::A3) && !branch.values.count(s)) {
        branch.free_symbols.push_back(s);
      }
    }
    const auto coeff_or_zero = [&](Sym s) {
      auto it = branch.values.find(s);
      return it == branch.values.end() ? Rat(0) : it->second;
    };
    branch.constant_influence = coeff_or_zero(Sym::A3) == 0 && coeff_or_zero(Sym::A) == 0 &&
                                coeff_or_zero(Sym::B) == 0 && branch.free_symbols.empty();
    out.survivors.push_back(std::move(branch));
    return;
  }
  for (const MultiPoly& eq : remaining) {
    Sym sym;
    const auto coeffs = eq.univariate_coeffs(&sym);
    if (!coeffs) continue;
    const auto roots = rational_roots(*coeffs);
    if (roots.size() < static_cast<std::size_t>(coeffs->size() - 1)) {
      out.possibly_missed_real_branch = true;
    }
    for (const Rat& root : roots) {
      assignment[sym] = root;
      search_branches(remaining, assignment, degree, out);
      assignment.erase(sym);
    }
    return;
  }
  // Only multivariate equations left; nothing univariate to split on.
  out.possibly_missed_real_branch = true;
}

}  // namespace

BranchSearch enumerate_covariance_branches(int degree, const Rat& r) {
  if (r == 0) throw_error("BadSample", "r samples must be nonzero");
  std::vector<MultiPoly> equations;
  for (const MultiPoly& eq : covariance_equations(degree)) {
    MultiPoly fixed = eq.substitute(Sym::R, MultiPoly::constant(r));
    if (!fixed.is_zero()) equations.push_back(std::move(fixed));
  }
  BranchSearch out;
  std::map<Sym, Rat> assignment;
  search_branches(equations, assignment, degree, out);
  return out;
}

CubicReport cubic_inconsistency_check(const std::vector<Rat>& r_samples) {
  if (r_samples.empty()) throw_error("BadSample", "need at least one r sample");
  CubicReport report;
  for (const Rat& r : r_samples) {
    CubicSampleReport sample;
    sample.r = r;
    sample.search = enumerate_covariance_branches(3, r);
    for (const Branch& branch : sample.search.survivors) {
      if (branch.is_genuine(3)) sample.cubic_branch = true;
    }
    report.any_cubic_branch = report.any_cubic_branch || sample.cubic_branch;
    report.any_possibly_missed =
        report.any_possibly_missed || sample.search.possibly_missed_real_branch;
    report.samples.push_back(std::move(sample));
  }
  return report;
}

RangeResult linear_case_range(const Rat& r, unsigned grid_denominator) {
  if (r < 0) throw_error("BadParameter", "r must be nonnegative");
  if (grid_denominator == 0) throw_error("BadParameter", "grid denominator must be positive");
  const auto g = [&](const Rat& x) { return (Rat(1) + r) * x - r * x * x; };
  const auto check = [&](const Rat& x) -> std::optional<RangeResult> {
    const Rat y = g(x);
    if (y > 1 || y < 0) {
      return RangeResult{RangeStatus::Escapes, x, y};
    }
    return std::nullopt;
  };
  // The vertex of g first: it is where the escape happens for r > 1.
  if (r > 0) {
    Rat vertex = (Rat(1) + r) / (Rat(2) * r);
    if (vertex >= 0 && vertex <= 1) {
      if (auto esc = check(vertex)) return *esc;
    }
  }
  for (unsigned k = 0; k <= grid_denominator; ++k) {
    Rat x(k, grid_denominator);
    x.canonicalize();
    if (auto esc = check(x)) return *esc;
  }
  return RangeResult{RangeStatus::WellPosed, std::nullopt, std::nullopt};
}

double iterate_linear_influenced(double r, double x0, unsigned steps) {
  double x = x0;
  for (unsigned k = 0; k < steps; ++k) x = r * x * (1 - x) + x;
  return x;
}

MultiPoly parse_poly_in_r(const std::string& text) {
  // term := [+-] coefficient? ('*'? 'r' ('^' digits)?)?
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  const auto parse_number = [&]() -> Rat {
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) {
      ++pos;
    }
    return rat_from_string(text.substr(start, pos - start));
  };
  MultiPoly out;
  skip_ws();
  if (pos == text.size()) throw_error("BadRational", "empty polynomial");
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    }
    Rat coeff(1);
    bool saw_number = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = parse_number();
      saw_number = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
      }
    }
    unsigned power = 0;
    if (pos < text.size() && text[pos] == 'r') {
      ++pos;
      power = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw_error("BadRational", "missing exponent in '" + text + "'");
        power = static_cast<unsigned>(std::stoul(text.substr(start, pos - start)));
      }
    } else if (!saw_number) {
      throw_error("BadRational", "cannot parse polynomial '" + text + "'");
    }
    MultiPoly term = MultiPoly::constant(sign * coeff);
    if (power > 0) term = term * MultiPoly::variable(Sym::R).pow(power);
    out = out + term;
    skip_ws();
  }
  return out;
}

}  // namespace covdyn
