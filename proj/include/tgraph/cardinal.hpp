#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tgraph {

/// Extended natural number: a finite count or the countable infinity omega.
/// Addition and multiplication are absorbing in omega; finite arithmetic is
/// checked for overflow.
class Cardinal {
 public:
  constexpr Cardinal() : value_(0), omega_(false) {}
  constexpr Cardinal(std::uint64_t n) : value_(n), omega_(false) {}

  static constexpr Cardinal omega() {
    Cardinal c;
    c.omega_ = true;
    return c;
  }

  constexpr bool is_omega() const { return omega_; }
  constexpr bool is_finite() const { return !omega_; }

  std::uint64_t finite() const {
    if (omega_) throw std::logic_error("Cardinal: omega has no finite value");
    return value_;
  }

  friend constexpr bool operator==(Cardinal a, Cardinal b) {
    return a.omega_ == b.omega_ && (a.omega_ || a.value_ == b.value_);
  }
  friend constexpr bool operator!=(Cardinal a, Cardinal b) { return !(a == b); }

  // Every finite value is below omega.
  friend constexpr bool operator<(Cardinal a, Cardinal b) {
    if (a.omega_) return false;
    if (b.omega_) return true;
    return a.value_ < b.value_;
  }
  friend constexpr bool operator<=(Cardinal a, Cardinal b) { return a < b || a == b; }
  friend constexpr bool operator>(Cardinal a, Cardinal b) { return b < a; }
  friend constexpr bool operator>=(Cardinal a, Cardinal b) { return b <= a; }

  friend Cardinal operator+(Cardinal a, Cardinal b) {
    if (a.omega_ || b.omega_) return omega();
    std::uint64_t r;
    if (__builtin_add_overflow(a.value_, b.value_, &r))
      throw std::overflow_error("Cardinal: addition overflow");
    return Cardinal(r);
  }

  friend Cardinal operator*(Cardinal a, Cardinal b) {
    // 0 * omega never arises here (edge multiplicities are positive), but
    // keep the absorbing convention total: omega wins unless a factor is 0.
    if (a == Cardinal(0) || b == Cardinal(0)) return Cardinal(0);
    if (a.omega_ || b.omega_) return omega();
    std::uint64_t r;
    if (__builtin_mul_overflow(a.value_, b.value_, &r))
      throw std::overflow_error("Cardinal: multiplication overflow");
    return Cardinal(r);
  }

  Cardinal& operator+=(Cardinal b) { return *this = *this + b; }

  std::string to_string() const {
    return omega_ ? "omega" : std::to_string(value_);
  }

 private:
  std::uint64_t value_;
  bool omega_;
};

}  // namespace tgraph
