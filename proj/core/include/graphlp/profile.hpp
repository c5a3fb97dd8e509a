#pragma once

#include "graphlp/rational.hpp"

#include <stdexcept>
#include <vector>

namespace graphlp {

class ProfileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProfilePoint {
  Rational u;
  Rational v;
  bool operator==(const ProfilePoint&) const = default;
};

// Piecewise-linear concave map u -> v(u) on [0,1]: for output exponent
// u = 1/q the averaging operator accepts input exponent v(u) = 1/p.
class ImprovingProfile {
 public:
  ImprovingProfile(std::vector<ProfilePoint> breakpoints, int d);

  const std::vector<ProfilePoint>& breakpoints() const { return points_; }
  int dimension() const { return d_; }

  Rational value(const Rational& u) const;
  // Defined when v is strictly increasing (true for the circle profile).
  Rational inverse(const Rational& v) const;
  bool strictly_increasing() const;

  bool operator==(const ImprovingProfile&) const = default;

 private:
  std::vector<ProfilePoint> points_;
  int d_ = 0;
};

ImprovingProfile improving_profile_circle(int d);

}  // namespace graphlp
