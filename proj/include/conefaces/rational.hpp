#pragma once

#include "conefaces/errors.hpp"

#include <gmpxx.h>

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace conefaces::ratmath {

using Rational = mpq_class;
using Integer = mpz_class;
using RatVector = std::vector<Rational>;

// Parses "p/q", "p", or a decimal literal such as "-0.25" or "1.5e-3".
// Decimals are read digit by digit so that "0.1" is exactly 1/10.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InputError("empty numeric token");

  auto all_digits = [](std::string_view v) {
    if (v.empty()) return false;
    for (char c : v)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto bad = [&] { return InputError("not a rational number: '" + std::string(text) + "'"); };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    std::string_view body = num;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) body.remove_prefix(1);
    if (!all_digits(body) || !all_digits(den)) throw bad();
    if (num[0] == '+') num.erase(0, 1);
    Integer d(den, 10);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational r(Integer(num, 10), d);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string mantissa = s.substr(pos);
  long exponent = 0;
  if (auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
    std::string exp_part = mantissa.substr(e + 1);
    mantissa.resize(e);
    std::string_view ev = exp_part;
    if (!ev.empty() && (ev[0] == '-' || ev[0] == '+')) ev.remove_prefix(1);
    if (!all_digits(ev) || ev.size() > 6) throw bad();
    exponent = std::strtol(exp_part.c_str(), nullptr, 10);
  }
  std::string int_part = mantissa, frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw bad();
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw bad();

  Integer digits(int_part + frac_part == "" ? std::string("0") : int_part + frac_part, 10);
  exponent -= static_cast<long>(frac_part.size());
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(digits, scale) : Rational(digits * scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

// Exact conversion of a finite double.
inline Rational from_double(double x) {
  Rational r(x);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& r) { return sgn(r); }

inline bool is_zero(const RatVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

inline RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVector add(const RatVector& a, const RatVector& b) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVector scale(const RatVector& a, const Rational& c) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

// Bit size used to pick cheap pivots.
inline std::size_t bit_size(const Rational& r) {
  return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

} // namespace conefaces::ratmath
