#pragma once

#include <compare>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rational.hpp"

namespace dsirrep {

/// An exact integer or half-integer, stored as twice its value.
class HalfInt {
public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(int n) { return HalfInt(2 * n); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }
  Rat to_rat() const { return Rat(twice_, 2); }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt &operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
  constexpr HalfInt &operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  /// "3/2", "1", "-1/2".
  std::string to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  /// Accepts "n" or "n/2" (with optional sign); anything else throws.
  static HalfInt parse(std::string_view s) {
    auto parse_int = [&](std::string_view t) {
      if (t.empty()) throw std::invalid_argument("empty half-integer");
      std::size_t pos = 0;
      const std::string buf(t);
      int v = 0;
      try {
        v = std::stoi(buf, &pos);
      } catch (const std::exception &) {
        throw std::invalid_argument("not a half-integer: '" + std::string(s) + "'");
      }
      if (pos != buf.size())
        throw std::invalid_argument("not a half-integer: '" + std::string(s) + "'");
      return v;
    };
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return integer(parse_int(s));
    if (s.substr(slash + 1) != "2")
      throw std::invalid_argument("half-integer denominator must be 2: '" + std::string(s) + "'");
    return from_twice(parse_int(s.substr(0, slash)));
  }

private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

inline std::ostream &operator<<(std::ostream &os, HalfInt h) { return os << h.to_string(); }

/// Shorthand for HalfInt::from_twice.
constexpr HalfInt half(int twice) { return HalfInt::from_twice(twice); }

} // namespace dsirrep
