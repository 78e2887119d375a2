#include "frechet/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>

#include "frechet/errors.hpp"

namespace frechet {
namespace {

__extension__ typedef __int128 wide;

std::int64_t narrow(wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw InvalidInput("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

Rational make_reduced(wide num, wide den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  wide a = num < 0 ? -num : num;
  wide b = den;
  while (b != 0) {
    wide r = a % b;
    a = b;
    b = r;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (s.empty()) throw InvalidInput("malformed rational '" + std::string(whole) + "'");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw InvalidInput("malformed rational '" + std::string(whole) + "'");
  wide v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
    if (v > std::numeric_limits<std::int64_t>::max())
      throw InvalidInput("rational component too large in '" + std::string(whole) + "'");
  }
  return narrow(neg ? -v : v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 18) throw InvalidInput("too many decimal digits in '" + std::string(text) + "'");
    std::string digits(text.substr(0, dot));
    digits += frac;
    if (digits.empty() || digits == "-" || digits == "+")
      throw InvalidInput("malformed rational '" + std::string(text) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(parse_int(digits, text), den);
  }
  return Rational(parse_int(text, text), 1);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                      static_cast<wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<wide>(a.num_) * b.den_ - static_cast<wide>(b.num_) * a.den_,
                      static_cast<wide>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  wide lhs = static_cast<wide>(a.num_) * b.den_;
  wide rhs = static_cast<wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw InvalidInput("lcm of non-positive integers");
  wide l = static_cast<wide>(a / std::gcd(a, b)) * b;
  return narrow(l);
}

}  // namespace frechet
