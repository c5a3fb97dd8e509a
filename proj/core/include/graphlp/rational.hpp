#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace graphlp {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

// Parses "a/b" or a plain integer "a"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

// Always "num/den" with den >= 1, so the output is unambiguous for replay.
std::string to_string(const Rational& q);

Rational make_rational(long long num, long long den = 1);

double to_double(const Rational& q);

Rational dot(const RationalVector& a, const RationalVector& b);
Rational sum(const RationalVector& a);

}  // namespace graphlp
