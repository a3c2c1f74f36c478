#include "l1embed/scalar.hpp"

#include <limits>
#include <ostream>

namespace l1embed {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits64(i128 v) { return v >= kMin64 && v <= kMax64; }

mpq_class from_i128(i128 num, i128 den) {
  // GMP has no 128-bit import, so split into two 64-bit halves.
  auto to_mpz = [](i128 v) {
    const bool neg = v < 0;
    u128 mag = abs128(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
    mpz_class out = (hi << 64) + lo;
    return neg ? mpz_class(-out) : out;
  };
  mpq_class q(to_mpz(num), to_mpz(den));
  q.canonicalize();
  return q;
}

}  // namespace

Scalar::Scalar(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Scalar: zero denominator");
  assign_wide(num, den);
}

Scalar::Scalar(const mpq_class& value) { assign_mpq(value); }

Scalar::Scalar(const Scalar& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Scalar& Scalar::operator=(const Scalar& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

void Scalar::assign_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den != 1) {
    u128 g = gcd128(abs128(num), static_cast<u128>(den));
    if (g > 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
  }
  if (fits64(num) && fits64(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
  } else {
    assign_mpq(from_i128(num, den));
  }
}

void Scalar::assign_mpq(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Scalar Scalar::parse(std::string_view text) {
  auto fail = [&]() -> Scalar {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Scalar num = parse(text.substr(0, slash));
    Scalar den = parse(text.substr(slash + 1));
    if (!num.is_integer() || !den.is_integer()) return fail();
    if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      return fail();
    }
  }
  if (digits.empty()) return fail();

  if (digits.size() <= 18) {
    std::int64_t mag = std::stoll(digits);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
    return Scalar(negative ? -mag : mag, den);
  }
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
  if (negative) num = -num;
  return Scalar(mpq_class(num, den));
}

std::string Scalar::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Scalar::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

bool Scalar::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Scalar::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

Scalar Scalar::half() const {
  Scalar out;
  if (big_) {
    out.assign_mpq(*big_ / 2);
  } else if (num_ % 2 == 0) {
    out.num_ = num_ / 2;
    out.den_ = den_;
  } else {
    out.assign_wide(num_, static_cast<i128>(den_) * 2);
  }
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out;
  if (big_ || num_ == std::numeric_limits<std::int64_t>::min()) {
    out.assign_mpq(-to_mpq());
  } else {
    out.num_ = -num_;
    out.den_ = den_;
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_) {
      std::int64_t sum;
      if (!__builtin_add_overflow(num_, rhs.num_, &sum)) {
        if (den_ == 1) {
          num_ = sum;
          return *this;
        }
        assign_wide(sum, den_);
        return *this;
      }
      assign_wide(static_cast<i128>(num_) + rhs.num_, den_);
      return *this;
    }
    assign_wide(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_mpq(to_mpq() + rhs.to_mpq());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_) {
      std::int64_t diff;
      if (!__builtin_sub_overflow(num_, rhs.num_, &diff)) {
        if (den_ == 1) {
          num_ = diff;
          return *this;
        }
        assign_wide(diff, den_);
        return *this;
      }
      assign_wide(static_cast<i128>(num_) - rhs.num_, den_);
      return *this;
    }
    assign_wide(static_cast<i128>(num_) * rhs.den_ - static_cast<i128>(rhs.num_) * den_,
                static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_mpq(to_mpq() - rhs.to_mpq());
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (!big_ && !rhs.big_) {
    assign_wide(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_mpq(to_mpq() * rhs.to_mpq());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Scalar: division by zero");
  if (!big_ && !rhs.big_) {
    assign_wide(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
    return *this;
  }
  assign_mpq(to_mpq() / rhs.to_mpq());
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a big value never fits inline
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const i128 lhs = static_cast<i128>(a.num_) * b.den_;
    const i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace l1embed
