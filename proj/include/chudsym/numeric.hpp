#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace chudsym {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "c/d" or "c" into a reduced rational.
Rational parse_rational(const std::string& text);

// "c/d" in lowest terms ("c" when d == 1).
std::string to_string(const Rational& r);

BigInt ipow(const BigInt& base, std::uint64_t exp);

// floor(r), exact.
BigInt floor_of(const Rational& r);

// Deterministic for all 64-bit inputs (Miller-Rabin with a fixed witness set).
bool is_prime(std::uint64_t n);

// Returns (p, s) when q = p^s with p prime, s >= 1; (0, 0) otherwise.
struct PrimePower {
    std::uint64_t p = 0;
    unsigned s = 0;
};
PrimePower prime_power_decompose(std::uint64_t q);

// Rounds x up to 15 significant decimal digits; the result is >= x.
double round_up_15(double x);

// Shortest decimal form that round-trips the double.
std::string format_double(double x);

}  // namespace chudsym
