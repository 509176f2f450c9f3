#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace asrjudge {

/// Exact non-integer distances. Phoneme halving produces values like 1/2 and
/// annotation overrides are arbitrary decimals, so verdict comparisons must
/// not go through floating point.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "3", "1/2", "-7/4"
  std::string to_string() const;

  /// Accepts integers, "p/q" fractions and plain decimals ("0.5", "1.25").
  /// Throws InvalidArgument on anything else.
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& other) { return *this = *this + other; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace asrjudge
