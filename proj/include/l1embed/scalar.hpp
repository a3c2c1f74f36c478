#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace l1embed {

/// Exact rational number in canonical form (den > 0, gcd(|num|, den) = 1).
///
/// Values whose numerator and denominator fit in 64 bits are stored inline and
/// use 128-bit intermediates; anything larger spills into a GMP rational. The
/// representation is always canonical, so a value that shrinks back into range
/// is stored inline again and equality can compare fields directly.
class Scalar {
 public:
  Scalar() noexcept = default;
  Scalar(std::int64_t value) noexcept : num_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(std::int64_t num, std::int64_t den);
  explicit Scalar(const mpq_class& value);

  Scalar(const Scalar& other);
  Scalar(Scalar&& other) noexcept = default;
  Scalar& operator=(const Scalar& other);
  Scalar& operator=(Scalar&& other) noexcept = default;
  ~Scalar() = default;

  /// Parses "p", "p/q" or a decimal such as "-0.25" exactly.
  /// Throws std::invalid_argument on malformed text or a zero denominator.
  static Scalar parse(std::string_view text);

  /// "p" for integers, "p/q" otherwise.
  [[nodiscard]] std::string str() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] mpq_class to_mpq() const;

  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] int sign() const;

  [[nodiscard]] Scalar abs() const;
  [[nodiscard]] Scalar half() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  void assign_wide(__int128 num, __int128 den);
  void assign_mpq(const mpq_class& value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

}  // namespace l1embed
