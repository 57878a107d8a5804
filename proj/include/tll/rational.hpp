#pragma once

// Exact rational numbers over 64-bit numerator/denominator.
//
// Intermediate products are formed in 128 bits and reduced; a result that
// does not fit back into 64 bits throws std::overflow_error instead of
// wrapping. Nothing in here rounds.

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tll {

class Rat {
 public:
  using int_type = std::int64_t;

  constexpr Rat() = default;
  constexpr Rat(int_type n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rat(int_type n, int_type d) { assign(n, d); }

  [[nodiscard]] constexpr int_type num() const { return num_; }
  [[nodiscard]] constexpr int_type den() const { return den_; }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  [[nodiscard]] bool is_integer() const { return den_ == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_,
                     wide(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_,
                     wide(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
  }
  Rat operator-() const { return from_wide(-wide(num_), den_); }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const wide lhs = wide(a.num_) * b.den_;
    const wide rhs = wide(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  [[nodiscard]] int sign() const { return (num_ > 0) - (num_ < 0); }

  // Accepts "p", "p/q" and plain decimals such as "-2.125". Exponent
  // notation is rejected.
  static std::optional<Rat> parse(std::string_view text);

  [[nodiscard]] std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
  }

 private:
  using wide = __int128;

  static wide gcd_wide(wide a, wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rat from_wide(wide n, wide d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const wide g = gcd_wide(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr wide lo = static_cast<wide>(INT64_MIN) + 1;
    constexpr wide hi = static_cast<wide>(INT64_MAX);
    if (n < lo || n > hi || d > hi) {
      throw std::overflow_error("Rat: 64-bit overflow");
    }
    Rat r;
    r.num_ = static_cast<int_type>(n);
    r.den_ = static_cast<int_type>(d);
    return r;
  }

  void assign(int_type n, int_type d) { *this = from_wide(n, d); }

  int_type num_ = 0;
  int_type den_ = 1;
};

inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline std::optional<Rat> Rat::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  auto to_int = [](std::string_view s) -> std::optional<wide> {
    wide v = 0;
    for (char c : s) {
      v = v * 10 + (c - '0');
      if (v > static_cast<wide>(INT64_MAX)) return std::nullopt;
    }
    return v;
  };
  std::string_view body = text.substr(pos);
  try {
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
      auto p = body.substr(0, slash);
      auto q = body.substr(slash + 1);
      if (!digits(p) || !digits(q)) return std::nullopt;
      auto pn = to_int(p);
      auto qn = to_int(q);
      if (!pn || !qn || *qn == 0) return std::nullopt;
      return from_wide(negative ? -*pn : *pn, *qn);
    }
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
      auto ip = body.substr(0, dot);
      auto fp = body.substr(dot + 1);
      if (ip.empty() && fp.empty()) return std::nullopt;
      if ((!ip.empty() && !digits(ip)) || (!fp.empty() && !digits(fp))) {
        return std::nullopt;
      }
      if (fp.size() > 18) return std::nullopt;
      wide scale = 1;
      for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
      auto in = ip.empty() ? std::optional<wide>(0) : to_int(ip);
      auto fn = fp.empty() ? std::optional<wide>(0) : to_int(fp);
      if (!in || !fn) return std::nullopt;
      const wide n = *in * scale + *fn;
      return from_wide(negative ? -n : n, scale);
    }
    if (!digits(body)) return std::nullopt;
    auto n = to_int(body);
    if (!n) return std::nullopt;
    return from_wide(negative ? -*n : *n, 1);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

}  // namespace tll

template <>
struct std::hash<tll::Rat> {
  std::size_t operator()(const tll::Rat& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 31 ^
           std::hash<std::int64_t>{}(r.den());
  }
};
