#include "doctest.h"

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "chudsym/error.hpp"
#include "chudsym/prime_engine.hpp"

using namespace chudsym;

namespace {

bool trial_division(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t next_by_trial(std::uint64_t x) {
    do {
        ++x;
    } while (!trial_division(x));
    return x;
}

// gap > l^(c/d) evaluated in 200-bit floating point.
bool exceeds(std::uint64_t gap, std::uint64_t l, int c, int d) {
    using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
    return Float(gap) > pow(Float(l), Float(c) / Float(d));
}

std::vector<std::uint64_t> oracle_violations(std::uint64_t limit, int c, int d) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t l = 2; l < limit; l = next_by_trial(l)) {
        if (exceeds(next_by_trial(l) - l, l, c, d)) out.push_back(l);
    }
    return out;
}

PrimePair brute_pair(std::uint64_t p, std::int64_t n, bool eleven) {
    const double t = eleven ? double(n - std::int64_t(p) + 1) / double(p - 3)
                            : double(2 * n - std::int64_t(p) - 1) / double(p - 3);
    const std::uint64_t bad = eleven ? 23 : 11;
    PrimePair pair;
    for (std::uint64_t l = 2; double(l) <= t; ++l) {
        if (trial_division(l) && l != p && l != bad) pair.l_k = l;
    }
    std::uint64_t l = static_cast<std::uint64_t>(std::floor(t)) + 1;
    while (!(trial_division(l) && l != p && l != bad)) ++l;
    pair.l_k1 = l;
    return pair;
}

}  // namespace

TEST_CASE("sieve counts") {
    CHECK(PrimeTable(100).primes().size() == 25);
    CHECK(PrimeTable(1'000'000).primes().size() == 78498);
    CHECK_THROWS_AS(PrimeTable(1), DomainError);
    CHECK_THROWS_AS(PrimeTable(1000, 100), DomainError);
}

TEST_CASE("table primality agrees with trial division") {
    PrimeTable table(10000);
    for (std::uint64_t n = 0; n <= 12000; ++n) CHECK(table.is_prime(n) == trial_division(n));
    CHECK(table.next_prime(9973) == 10007);
    CHECK(table.next_prime(10007) == 10009);
    CHECK(*table.prev_prime(10008) == 10007);
    CHECK_FALSE(table.prev_prime(1).has_value());
}

TEST_CASE("gap violations below small limits match a high precision oracle") {
    CHECK(verify_gaps(200, Rational(21, 40)).violations == oracle_violations(200, 21, 40));
    CHECK(verify_gaps(200, Rational(21, 40)).violations == std::vector<std::uint64_t>{3, 7, 13, 23, 113});
    CHECK(verify_gaps(5, Rational(2, 3)).violations.empty());
    CHECK(verify_gaps(100000, Rational(2, 3)).violations == oracle_violations(100000, 2, 3));
    CHECK(verify_gaps(20000, Rational(1, 2)).violations == oracle_violations(20000, 1, 2));
}

TEST_CASE("gap verification to one million") {
    GapReport rep = verify_gaps(1'000'000, Rational(2, 3));
    CHECK(rep.violations == std::vector<std::uint64_t>{7});
    CHECK(rep.max_gap_seen == 114);
}

TEST_CASE("gap_within is exact at equality") {
    // 4 = 8^(2/3), 9 = 27^(2/3)
    CHECK(gap_within(4, 8, Rational(2, 3)));
    CHECK_FALSE(gap_within(5, 8, Rational(2, 3)));
    CHECK(gap_within(9, 27, Rational(2, 3)));
    CHECK(gap_within(10, 100, Rational(1, 2)));
    CHECK_FALSE(gap_within(11, 100, Rational(1, 2)));
}

TEST_CASE("select_pair examples") {
    PrimeTable table(100000);
    PrimePair a = select_pair(table, 5, 100, PairFamily::QuadraticGeneric);
    CHECK(a.threshold == 97);
    CHECK(a.l_k == 97);
    CHECK(a.l_k1 == 101);
    CHECK(a.skipped.empty());

    PrimePair b = select_pair(table, 11, 810, PairFamily::QuadraticEleven);
    CHECK(b.threshold == 100);
    CHECK(b.l_k == 97);
    CHECK(b.l_k1 == 101);

    PrimePair c = select_pair(table, 5, 8, PairFamily::QuadraticGeneric);
    CHECK(c.l_k == 3);
    CHECK(c.l_k1 == 7);
    CHECK(c.skipped == std::vector<std::uint64_t>{5});

    CHECK_THROWS_AS(select_pair(table, 11, 810, PairFamily::QuadraticGeneric), DomainError);
    CHECK_THROWS_AS(select_pair(table, 5, 100, PairFamily::PrimeEleven), DomainError);
    CHECK_THROWS_AS(select_pair(table, 5, 4, PairFamily::QuadraticGeneric), Infeasible);
}

TEST_CASE("select_pair agrees with a brute force scan") {
    PrimeTable table(100000);
    for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23, 29}) {
        const bool eleven = p == 11;
        const auto family = eleven ? PairFamily::QuadraticEleven : PairFamily::QuadraticGeneric;
        for (std::int64_t n = 1; n <= 600; ++n) {
            if (pair_threshold(p, n, family) < 2) continue;
            PrimePair got = select_pair(table, p, n, family);
            PrimePair want = brute_pair(p, n, eleven);
            CAPTURE(p);
            CAPTURE(n);
            CHECK(got.l_k == want.l_k);
            CHECK(got.l_k1 == want.l_k1);
            CHECK(Rational(got.l_k) <= got.threshold);
            CHECK(Rational(got.l_k1) > got.threshold);
        }
    }
}

TEST_CASE("pair thresholds are monotone in n") {
    for (std::uint64_t p : {5, 7, 11, 13}) {
        for (auto family : {PairFamily::PrimeGeneric, PairFamily::PrimeEleven}) {
            for (std::int64_t n = 1; n < 500; ++n) {
                CHECK(pair_threshold(p, n, family) < pair_threshold(p, n + 1, family));
            }
        }
    }
}

TEST_CASE("policy floors") {
    const GapPolicy dudek = GapPolicy::dudek();
    CHECK(dudek.alpha == Rational(2, 3));
    CHECK(policy_floor(dudek, PairFamily::QuadraticGeneric, 5).to_string() == "exp(exp(33.3))+3");
    CHECK(policy_floor(dudek, PairFamily::QuadraticGeneric, 5).at_most(1'000'000'000) == false);

    const GapPolicy bhp = GapPolicy::bhp();
    CHECK(bhp.alpha == Rational(21, 40));
    CHECK_FALSE(policy_floor(bhp, PairFamily::QuadraticGeneric, 5).at_most(100).has_value());

    PrimeTable table(1'000'000);
    const GapPolicy emp = GapPolicy::empirical(Rational(2, 3), table);
    CHECK(emp.x_alpha.to_string() == "11");
    CHECK(emp.verified_limit == 1'000'000);
    // (p-3)/2 * 11 + (p+1)/2 at p = 5
    CHECK(policy_floor(emp, PairFamily::QuadraticGeneric, 5).to_string() == "14");
    // (p-3) * 11 + p - 1 at p = 11
    CHECK(policy_floor(emp, PairFamily::QuadraticEleven, 11).to_string() == "98");
}
