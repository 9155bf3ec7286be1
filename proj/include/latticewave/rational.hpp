#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace lw {

// All geometry is exact: a Rat is an arbitrary-precision rational backed by GMP.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

using Vec = std::vector<Rat>;
using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>;

// Parses "p/q" or "p" (decimal integers, optional sign). Throws ParseError.
Rat parse_rational(const std::string& s);

// Serializes as "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rat& r);

Int rat_floor(const Rat& r);
Int rat_ceil(const Rat& r);
// Round half away from zero.
Int rat_round(const Rat& r);

double to_double(const Rat& r);

Vec to_rat_vec(const IntVec& v);
bool is_integral(const Vec& v);
IntVec to_int_vec(const Vec& v);  // precondition: is_integral(v)

Rat linf_norm(const Vec& v);
Rat dot(const Vec& a, const Vec& b);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& s, const Vec& a);
bool vec_is_zero(const Vec& v);

}  // namespace lw
