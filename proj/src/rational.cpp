#include "dsscap/rational.hpp"

#include "dsscap/errors.hpp"

#include <cctype>
#include <cstdio>

namespace dsscap {

std::string format_rational(const Rational& r) {
  std::string s = rat_num(r).str();
  if (!is_integer(r)) {
    s += "/";
    s += rat_den(r).str();
  }
  return s;
}

std::string format_rational_approx(const Rational& r) {
  std::string s = format_rational(r);
  if (!is_integer(r)) {
    double x = static_cast<double>(rat_num(r)) / static_cast<double>(rat_den(r));
    char buf[48];
    std::snprintf(buf, sizeof(buf), " (≈%.3f)", x);
    s += buf;
  }
  return s;
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw DssError(ErrorCode::ParseError,
                   "not a rational literal: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  auto is_int_literal = [](std::string_view s) {
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto to_bigint = [](std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
  };

  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int_literal(text)) return fail();
    return Rational(to_bigint(text));
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!is_int_literal(num) || !is_int_literal(den)) return fail();
  BigInt q = to_bigint(den);
  if (q <= 0) return fail();
  return Rational(to_bigint(num), q);
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace dsscap
