#include "graphlp/profile.hpp"

#include <string>

namespace graphlp {

ImprovingProfile::ImprovingProfile(std::vector<ProfilePoint> breakpoints, int d)
    : points_(std::move(breakpoints)), d_(d) {
  if (points_.size() < 2) throw ProfileError("profile needs at least two breakpoints");
  if (points_.front() != ProfilePoint{0, 0}) throw ProfileError("profile must start at (0,0)");
  if (points_.back() != ProfilePoint{1, 1}) throw ProfileError("profile must end at (1,1)");
  Rational prev_slope;
  for (std::size_t k = 1; k < points_.size(); ++k) {
    const auto& a = points_[k - 1];
    const auto& b = points_[k];
    if (b.u <= a.u) throw ProfileError("profile breakpoints must have increasing u");
    if (b.v < a.v) throw ProfileError("profile must be nondecreasing");
    Rational slope = (b.v - a.v) / (b.u - a.u);
    if (k > 1 && slope > prev_slope) throw ProfileError("profile must be concave");
    prev_slope = slope;
    if (b.v < b.u) throw ProfileError("profile must satisfy v(u) >= u");
  }
}

Rational ImprovingProfile::value(const Rational& u) const {
  if (u < 0 || u > 1) throw ProfileError("profile argument outside [0,1]: " + to_string(u));
  for (std::size_t k = 1; k < points_.size(); ++k) {
    const auto& a = points_[k - 1];
    const auto& b = points_[k];
    if (u <= b.u) return a.v + (b.v - a.v) * (u - a.u) / (b.u - a.u);
  }
  return points_.back().v;
}

bool ImprovingProfile::strictly_increasing() const {
  for (std::size_t k = 1; k < points_.size(); ++k) {
    if (points_[k].v <= points_[k - 1].v) return false;
  }
  return true;
}

Rational ImprovingProfile::inverse(const Rational& v) const {
  if (!strictly_increasing()) throw ProfileError("profile is not invertible");
  if (v < 0 || v > 1) throw ProfileError("profile value outside [0,1]: " + to_string(v));
  for (std::size_t k = 1; k < points_.size(); ++k) {
    const auto& a = points_[k - 1];
    const auto& b = points_[k];
    if (v <= b.v) return a.u + (b.u - a.u) * (v - a.v) / (b.v - a.v);
  }
  return points_.back().u;
}

ImprovingProfile improving_profile_circle(int d) {
  if (d < 2) throw ProfileError("dimension must be at least 2, got " + std::to_string(d));
  return ImprovingProfile({{0, 0}, {Rational(1, d + 1), Rational(d, d + 1)}, {1, 1}}, d);
}

}  // namespace graphlp
