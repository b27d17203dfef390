#pragma once

// Exact rationals over int64 with __int128 intermediates. The converse
// machinery works with tiny numbers (|V| <= a few thousand, DoF counts,
// LP vertex coordinates), so overflow is a logic error, not a scaling
// concern; we still guard every product.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hexdof {

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT implicit
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rational operator+(Rational x, Rational y) {
    return Rational(checked(__int128(x.num_) * y.den_ + __int128(y.num_) * x.den_),
                    checked(__int128(x.den_) * y.den_));
  }
  friend Rational operator-(Rational x, Rational y) { return x + Rational(-y.num_, y.den_); }
  friend Rational operator-(Rational x) { return Rational(-x.num_, x.den_); }
  friend Rational operator*(Rational x, Rational y) {
    return Rational(checked(__int128(x.num_) * y.num_), checked(__int128(x.den_) * y.den_));
  }
  friend Rational operator/(Rational x, Rational y) {
    if (y.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(checked(__int128(x.num_) * y.den_), checked(__int128(x.den_) * y.num_));
  }
  Rational& operator+=(Rational y) { return *this = *this + y; }
  Rational& operator-=(Rational y) { return *this = *this - y; }
  Rational& operator*=(Rational y) { return *this = *this * y; }
  Rational& operator/=(Rational y) { return *this = *this / y; }

  friend bool operator==(Rational x, Rational y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator<(Rational x, Rational y) {
    return __int128(x.num_) * y.den_ < __int128(y.num_) * x.den_;
  }
  friend bool operator<=(Rational x, Rational y) { return x == y || x < y; }
  friend bool operator>(Rational x, Rational y) { return y < x; }
  friend bool operator>=(Rational x, Rational y) { return y <= x; }

  double to_double() const { return double(num_) / double(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational overflow");
    return static_cast<std::int64_t>(v);
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hexdof
