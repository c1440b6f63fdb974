#include "chudsym/curve_data.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "chudsym/error.hpp"
#include "chudsym/numeric.hpp"

namespace chudsym {

namespace {

struct Factor {
    std::uint64_t prime;
    unsigned exponent;
};

std::vector<Factor> factorize(std::uint64_t n) {
    std::vector<Factor> out;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f != 0) continue;
        unsigned e = 0;
        while (n % f == 0) {
            n /= f;
            ++e;
        }
        out.push_back({f, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (const auto& f : factorize(n)) r = r / f.prime * (f.prime - 1);
    return r;
}

// (-1 | p) with (-1 | 2) = 0.
int kronecker_minus_one(std::uint64_t p) {
    if (p == 2) return 0;
    return p % 4 == 1 ? 1 : -1;
}

// (-3 | p) with (-3 | 3) = 0.
int kronecker_minus_three(std::uint64_t p) {
    if (p == 3) return 0;
    return p % 3 == 1 ? 1 : -1;
}

}  // namespace

Gamma0Data genus_X0(std::uint64_t N) {
    if (N == 0) throw DomainError("level must be at least 1");
    const auto factors = factorize(N);
    Gamma0Data d;
    d.N = N;

    d.mu = N;
    for (const auto& f : factors) d.mu = d.mu / f.prime * (f.prime + 1);

    if (N % 4 == 0) {
        d.nu2 = 0;
    } else {
        std::int64_t prod = 1;
        for (const auto& f : factors) prod *= 1 + kronecker_minus_one(f.prime);
        d.nu2 = static_cast<std::uint64_t>(prod);
    }
    if (N % 9 == 0) {
        d.nu3 = 0;
    } else {
        std::int64_t prod = 1;
        for (const auto& f : factors) prod *= 1 + kronecker_minus_three(f.prime);
        d.nu3 = static_cast<std::uint64_t>(prod);
    }

    d.nu_inf = 0;
    for (std::uint64_t k = 1; k * k <= N; ++k) {
        if (N % k != 0) continue;
        d.nu_inf += euler_phi(std::gcd(k, N / k));
        if (k * k != N) d.nu_inf += euler_phi(std::gcd(N / k, k));
    }

    // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 nu_inf
    const auto twelve_g = 12 + static_cast<std::int64_t>(d.mu) - 3 * static_cast<std::int64_t>(d.nu2) -
                          4 * static_cast<std::int64_t>(d.nu3) - 6 * static_cast<std::int64_t>(d.nu_inf);
    if (twelve_g < 0 || twelve_g % 12 != 0) {
        throw Error("internal", "genus formula gave a non-integral genus for N = " + std::to_string(N));
    }
    d.genus = static_cast<std::uint64_t>(twelve_g / 12);
    return d;
}

const char* to_string(CurveFamily f) { return f == CurveFamily::ElevenL ? "11l" : "23l"; }

CurveFamilyData family_data(std::uint64_t p, std::uint64_t l) {
    if (p < 5 || !is_prime(p)) throw DomainError("p must be a prime >= 5");
    if (!is_prime(l)) throw DomainError("l = " + std::to_string(l) + " is not prime");
    CurveFamilyData c;
    c.p = p;
    c.l = l;
    if (p != 11) {
        if (l == 11 || l == p) {
            throw DomainError("degenerate level factor l = " + std::to_string(l) + " for X_0(11 l) at p = " +
                              std::to_string(p));
        }
        c.family = CurveFamily::ElevenL;
        c.N = 11 * l;
        c.genus = l;
        c.n1_lower_p2 = (p - 1) * (l + 1);
    } else {
        if (l == 23 || l == 11) {
            throw DomainError("degenerate level factor l = " + std::to_string(l) + " for X_0(23 l)");
        }
        c.family = CurveFamily::TwentyThreeL;
        c.N = 23 * l;
        c.genus = 2 * l + 1;
        c.n1_lower_p2 = 2 * (p - 1) * (l + 1);
    }
    c.n1_2n2_lower_p = c.n1_lower_p2;
    if (genus_X0(c.N).genus != c.genus) {
        throw Error("internal", "family genus disagrees with the Gamma_0 formula at N = " + std::to_string(c.N));
    }
    return c;
}

namespace {

// Returns +1 / -1 when log2 of the two sides differ by a safe margin, 0 when
// too close to call in floating point.
int quick_compare(std::uint64_t q, std::uint64_t n, std::uint64_t a) {
    const long double lq = std::log2(static_cast<long double>(q));
    const long double rhs = (static_cast<long double>(n) - 1) / 2 * lq +
                            std::log2(std::sqrt(static_cast<long double>(q)) - 1);
    const long double lhs = std::log2(static_cast<long double>(a));
    if (rhs > lhs + 1e-6L) return 1;
    if (rhs < lhs - 1e-6L) return -1;
    return 0;
}

}  // namespace

bool check_rr_hypothesis(std::uint64_t q, std::uint64_t n, std::uint64_t g) {
    if (n == 0) throw DomainError("n must be at least 1");
    if (q < 2) throw DomainError("q must be at least 2");
    const std::uint64_t a = 2 * g + 1;
    if (int c = quick_compare(q, n, a); c != 0) return c > 0;

    // With A = 2g+1 and m = floor(n/2):
    //   n odd,  n = 2m+1: A <= q^m sqrt(q) - q^m  <=>  (A + q^m)^2 <= q^(2m+1)
    //   n even, n = 2m:   A <= q^m - q^(m-1) sqrt(q)
    //                     <=>  q^m >= A  and  q^(2m-1) <= (q^m - A)^2
    const BigInt A(a);
    const BigInt Q(q);
    const std::uint64_t m = n / 2;
    const BigInt qm = ipow(Q, m);
    if (n % 2 == 1) {
        BigInt lhs = A + qm;
        return lhs * lhs <= ipow(Q, 2 * m + 1);
    }
    if (qm < A) return false;
    BigInt diff = qm - A;
    return ipow(Q, 2 * m - 1) <= diff * diff;
}

}  // namespace chudsym
