#include "chudsym/numeric.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "chudsym/error.hpp"

namespace chudsym {

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) {
            throw DomainError("zero denominator in '" + text + "'");
        }
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e) != nullptr) throw;
        throw DomainError("not a rational number: '" + text + "'");
    }
}

std::string to_string(const Rational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

BigInt ipow(const BigInt& base, std::uint64_t exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp != 0) {
        if (exp & 1U) result *= b;
        exp >>= 1U;
        if (exp != 0) b *= b;
    }
    return result;
}

BigInt floor_of(const Rational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    BigInt q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1U) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1U;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    constexpr std::array<std::uint64_t, 12> small{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto sp : small) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (auto a : small) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimePower prime_power_decompose(std::uint64_t q) {
    if (q < 2) return {};
    std::uint64_t p = 0;
    for (std::uint64_t f = 2; f * f <= q; ++f) {
        if (q % f == 0) {
            p = f;
            break;
        }
    }
    if (p == 0) return is_prime(q) ? PrimePower{q, 1} : PrimePower{};
    unsigned s = 0;
    while (q % p == 0) {
        q /= p;
        ++s;
    }
    if (q != 1) return {};
    return {p, s};
}

namespace {

// 15-digit decimal mantissa/exponent of |x| rounded in the requested direction.
double round_15(double x, bool up) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.14e", x);
    double y = std::strtod(buf.data(), nullptr);
    if (up ? y >= x : y <= x) return y;
    std::string s(buf.data());
    auto epos = s.find('e');
    std::string mant = s.substr(0, epos);
    int exp10 = std::atoi(s.c_str() + epos + 1);
    std::string digits;
    for (char c : mant) {
        if (c >= '0' && c <= '9') digits.push_back(c);
    }
    long long m = std::atoll(digits.c_str());
    m += up ? 1 : -1;
    std::snprintf(buf.data(), buf.size(), "%llde%d", m, exp10 - 14);
    return std::strtod(buf.data(), nullptr);
}

}  // namespace

double round_up_15(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    if (x < 0) return -round_15(-x, false);
    return round_15(x, true);
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

}  // namespace chudsym
