#pragma once

// Exact rational numbers over 64-bit integers.
//
// Every intermediate product is formed in 128 bits and reduced before it is
// narrowed back, so results are exact or an std::overflow_error is thrown.
// Values are kept normalized: gcd(num, den) == 1 and den > 0.

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fzt {

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit from integers
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    using I = __int128;
    return from_wide(I(a.num_) * b.den_ + I(b.num_) * a.den_, I(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    using I = __int128;
    return from_wide(I(a.num_) * b.den_ - I(b.num_) * a.den_, I(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    using I = __int128;
    return from_wide(I(a.num_) * b.num_, I(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    using I = __int128;
    return from_wide(I(a.num_) * b.den_, I(a.den_) * b.num_);
  }
  Rational operator-() const {
    if (num_ == INT64_MIN) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    using I = __int128;
    I lhs = I(a.num_) * b.den_;
    I rhs = I(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  // "p" for integers, "p/q" otherwise. Parses back with parse().
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts an optional sign followed by an integer, a decimal ("0.125", ".5")
  // or a fraction "p/q". Decimals are converted exactly.
  static Rational parse(std::string_view text) {
    auto fail = [&]() -> Rational {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    };
    std::string_view s = text;
    if (s.empty()) return fail();
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) return fail();

    auto digits = [&](std::string_view d, bool allow_empty) -> Rational {
      if (d.empty() && !allow_empty) fail();
      Rational v;
      for (char c : d) {
        if (c < '0' || c > '9') fail();
        v = v * Rational(10) + Rational(c - '0');
      }
      return v;
    };

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      Rational p = digits(s.substr(0, slash), false);
      Rational q = digits(s.substr(slash + 1), false);
      if (q.is_zero()) fail();
      value = p / q;
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
      std::string_view ip = s.substr(0, dot);
      std::string_view fp = s.substr(dot + 1);
      if (ip.empty() && fp.empty()) fail();
      Rational scale(1);
      for (std::size_t i = 0; i < fp.size(); ++i) scale *= Rational(10);
      value = digits(ip, true) + digits(fp, true) / scale;
    } else {
      value = digits(s, false);
    }
    return negative ? -value : value;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    *this = from_wide(n, d);
  }

  static __int128 gcd_wide(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd_wide(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX)
      throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace fzt
