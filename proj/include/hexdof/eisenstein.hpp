#pragma once

// Exact arithmetic on the triangular lattice Z(w), w = (-1 + i*sqrt(3))/2.
// A point z = a + b*w has Re(z) = a - b/2 and Im(z) = b*sqrt(3)/2, so
// 2*Re(z) = 2a - b and (2/sqrt(3))*Im(z) = b are integers. All membership
// and ordering tests below stay in integers; the complex embedding is only
// used for channel-level math and display.

#include <cmath>
#include <compare>
#include <complex>
#include <cstdlib>
#include <string>

namespace hexdof {

struct Eisenstein {
  int a = 0;
  int b = 0;

  friend constexpr auto operator<=>(const Eisenstein&, const Eisenstein&) = default;

  constexpr Eisenstein operator+(Eisenstein o) const { return {a + o.a, b + o.b}; }
  constexpr Eisenstein operator-(Eisenstein o) const { return {a - o.a, b - o.b}; }
  constexpr Eisenstein operator-() const { return {-a, -b}; }
  constexpr Eisenstein operator*(int k) const { return {a * k, b * k}; }

  // 2*Re(z), exact.
  constexpr int two_re() const { return 2 * a - b; }
  // Im(z) * 2/sqrt(3), exact.
  constexpr int im_scaled() const { return b; }

  std::complex<double> embed() const {
    constexpr double kHalfSqrt3 = 0.86602540378443864676;
    return {a - 0.5 * b, kHalfSqrt3 * b};
  }

  std::string str() const { return std::to_string(a) + "," + std::to_string(b); }
};

inline constexpr Eisenstein kOmega{0, 1};
inline constexpr Eisenstein kOne{1, 0};

// |Re z| <= r and |Im z| <= sqrt(3)*r/2, i.e. |2a-b| <= 2r and |b| <= r.
constexpr bool in_box(Eisenstein z, int r) {
  return std::abs(z.two_re()) <= 2 * r && std::abs(z.b) <= r;
}

// "Left-to-right, top-down" decode order: u is decoded before v iff
// Im(u) > Im(v), or Im equal and Re(u) < Re(v). Strict total order on
// distinct lattice points.
struct PiStarOrder {
  constexpr bool operator()(Eisenstein u, Eisenstein v) const {
    if (u.b != v.b) return u.b > v.b;
    return u.two_re() < v.two_re();
  }
};

inline constexpr PiStarOrder pi_star{};

}  // namespace hexdof
