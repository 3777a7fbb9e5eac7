#include "covdyn/rational.hpp"

#include <cctype>

#include "covdyn/errors.hpp"

namespace covdyn {

namespace {

bool all_digits(const std::string& s, std::size_t begin, std::size_t end) {
  if (begin >= end) return false;
  for (std::size_t i = begin; i < end; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  const std::size_t slash = text.find('/');
  const std::string num = slash == std::string::npos ? text : text.substr(0, slash);
  std::size_t num_begin = 0;
  if (!num.empty() && (num[0] == '-' || num[0] == '+')) num_begin = 1;
  bool ok = all_digits(num, num_begin, num.size());
  if (slash != std::string::npos) {
    ok = ok && all_digits(text, slash + 1, text.size());
  }
  if (!ok) throw_error("BadRational", "not a rational literal: '" + text + "'");

  Rat value;
  if (value.set_str(text, 10) != 0) {
    throw_error("BadRational", "not a rational literal: '" + text + "'");
  }
  if (value.get_den() == 0) {
    throw_error("BadRational", "zero denominator in '" + text + "'");
  }
  value.canonicalize();
  return value;
}

std::string rat_to_string(const Rat& value) { return value.get_str(); }

}  // namespace covdyn
