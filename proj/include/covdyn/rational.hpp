#pragma once

#include <gmpxx.h>

#include <string>

namespace covdyn {

// Exact rational scalar. GMP keeps values canonical (reduced, positive
// denominator) after every arithmetic operation, so equality tests are
// plain value comparisons.
using Rat = mpq_class;

// Parses "n", "-n" or "n/d" (no whitespace, no floats). Throws
// Error("BadRational") on malformed input or a zero denominator.
Rat rat_from_string(const std::string& text);

// Canonical form: "n" for integers, "n/d" otherwise.
std::string rat_to_string(const Rat& value);

}  // namespace covdyn
