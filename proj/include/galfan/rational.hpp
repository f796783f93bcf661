#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace galfan {

// Exact arithmetic everywhere. Rationals are kept normalized (lowest terms,
// positive denominator) by the backend.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(num) / Rat(den);
}

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integral(const Rat& r) { return denominator(r) == 1; }

/// Serialized form used throughout the JSON schema: "p/q" in lowest terms.
inline std::string rat_to_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Int int_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("bad integer literal: " + s);
  return Int(s);
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(int_from_string(s));
  Int p = int_from_string(s.substr(0, slash));
  Int q = int_from_string(s.substr(slash + 1));
  return make_rat(p, q);
}

}  // namespace galfan
