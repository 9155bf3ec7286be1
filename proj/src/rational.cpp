#include "latticewave/rational.hpp"

#include <cctype>

#include "latticewave/errors.hpp"

namespace lw {

Rat parse_rational(const std::string& s) {
  auto bad = [&] { throw ParseError("invalid rational: '" + s + "'"); };
  if (s.empty()) bad();
  auto is_int = [&](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) bad();
      return Rat(Int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) bad();
    Int d(den);
    if (d == 0) bad();
    return Rat(Int(num), d);
  } catch (const std::exception&) {
    bad();
  }
  return Rat(0);  // unreachable
}

std::string format_rational(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Int rat_floor(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  Int q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

Int rat_round(const Rat& r) {
  if (r >= 0) return rat_floor(r + Rat(1, 2));
  return -rat_floor(-r + Rat(1, 2));
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

Vec to_rat_vec(const IntVec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

bool is_integral(const Vec& v) {
  for (const auto& x : v)
    if (denominator(x) != 1) return false;
  return true;
}

IntVec to_int_vec(const Vec& v) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = numerator(v[i]).convert_to<std::int64_t>();
  return out;
}

Rat linf_norm(const Vec& v) {
  Rat m = 0;
  for (const auto& x : v) {
    Rat ax = abs(x);
    if (ax > m) m = ax;
  }
  return m;
}

Rat dot(const Vec& a, const Vec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec vec_scale(const Rat& s, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace lw
