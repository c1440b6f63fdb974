#include "doctest.h"

#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "chudsym/curve_data.hpp"
#include "chudsym/error.hpp"
#include "chudsym/numeric.hpp"

using namespace chudsym;

namespace {

// Counts straight from Z/NZ, no multiplicative formulas.
Gamma0Data brute_gamma0(std::uint64_t N) {
    Gamma0Data d;
    d.N = N;
    std::uint64_t units = 0;
    for (std::uint64_t a = 0; a < N; ++a) {
        if (std::gcd(a, N) == 1) ++units;
    }
    if (N == 1) units = 1;
    std::uint64_t primitive = 0;
    for (std::uint64_t c = 0; c < N; ++c) {
        for (std::uint64_t e = 0; e < N; ++e) {
            if (std::gcd(std::gcd(c, e), N) == 1) ++primitive;
        }
    }
    if (N == 1) primitive = 1;
    d.mu = primitive / units;
    d.nu2 = 0;
    d.nu3 = 0;
    for (std::uint64_t x = 0; x < N; ++x) {
        if ((x * x + 1) % N == 0) ++d.nu2;
        if ((x * x + x + 1) % N == 0) ++d.nu3;
    }
    d.nu_inf = 0;
    for (std::uint64_t k = 1; k <= N; ++k) {
        if (N % k != 0) continue;
        std::uint64_t g = std::gcd(k, N / k);
        std::uint64_t phi = 0;
        for (std::uint64_t a = 1; a <= g; ++a) {
            if (std::gcd(a, g) == 1) ++phi;
        }
        d.nu_inf += phi;
    }
    d.genus = (12 + d.mu - 3 * d.nu2 - 4 * d.nu3 - 6 * d.nu_inf) / 12;
    return d;
}

bool rr_float(std::uint64_t q, std::uint64_t n, std::uint64_t g) {
    using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256>>;
    Float rhs = pow(Float(q), (Float(n) - 1) / 2) * (sqrt(Float(q)) - 1);
    return Float(2 * g + 1) <= rhs;
}

}  // namespace

TEST_CASE("genus examples") {
    CHECK(genus_X0(143).genus == 13);
    CHECK(genus_X0(115).genus == 11);
    CHECK(genus_X0(11).genus == 1);
    CHECK(genus_X0(1).genus == 0);
    for (std::uint64_t N : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25}) CHECK(genus_X0(N).genus == 0);
    for (std::uint64_t N : {11, 14, 15, 17, 19, 20, 21, 24, 27, 32, 36, 49}) CHECK(genus_X0(N).genus == 1);
    CHECK(genus_X0(23).genus == 2);
    CHECK(genus_X0(37).genus == 2);
}

TEST_CASE("Gamma_0(N) data matches direct counts") {
    for (std::uint64_t N = 1; N <= 300; ++N) {
        Gamma0Data got = genus_X0(N);
        Gamma0Data want = brute_gamma0(N);
        CAPTURE(N);
        CHECK(got.mu == want.mu);
        CHECK(got.nu2 == want.nu2);
        CHECK(got.nu3 == want.nu3);
        CHECK(got.nu_inf == want.nu_inf);
        CHECK(got.genus == want.genus);
    }
}

TEST_CASE("genus families over all primes below 10^4") {
    for (std::uint64_t l = 2; l < 10000; ++l) {
        if (!is_prime(l)) continue;
        if (l != 11) CHECK(genus_X0(11 * l).genus == l);
        if (l != 23) CHECK(genus_X0(23 * l).genus == 2 * l + 1);
    }
}

TEST_CASE("family data") {
    CurveFamilyData a = family_data(5, 13);
    CHECK(a.family == CurveFamily::ElevenL);
    CHECK(a.N == 143);
    CHECK(a.genus == 13);
    CHECK(a.n1_lower_p2 == 56);
    CHECK(a.n1_2n2_lower_p == a.n1_lower_p2);

    CurveFamilyData b = family_data(5, 101);
    CHECK(b.genus == 101);
    CHECK(b.n1_lower_p2 == 408);

    CurveFamilyData c = family_data(11, 101);
    CHECK(c.family == CurveFamily::TwentyThreeL);
    CHECK(c.N == 2323);
    CHECK(c.genus == 203);
    CHECK(c.n1_lower_p2 == 2040);

    CHECK_THROWS_AS(family_data(5, 5), DomainError);
    CHECK_THROWS_AS(family_data(5, 11), DomainError);
    CHECK_THROWS_AS(family_data(11, 23), DomainError);
    CHECK_THROWS_AS(family_data(11, 11), DomainError);
}

TEST_CASE("Riemann-Roch hypothesis examples") {
    CHECK(check_rr_hypothesis(25, 2, 0));
    CHECK(check_rr_hypothesis(25, 100, 101));
    CHECK_FALSE(check_rr_hypothesis(4, 2, 3));
}

TEST_CASE("Riemann-Roch hypothesis agrees with 256-bit evaluation") {
    for (std::uint64_t q : {4, 5, 7, 9, 11, 13, 25, 49, 121, 169}) {
        for (std::uint64_t n = 1; n <= 40; ++n) {
            for (std::uint64_t g : {0, 1, 2, 3, 5, 10, 50, 101, 1000, 100000}) {
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(g);
                CHECK(check_rr_hypothesis(q, n, g) == rr_float(q, n, g));
            }
        }
    }
}
