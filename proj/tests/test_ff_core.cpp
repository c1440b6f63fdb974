#include "doctest.h"

#include <random>

#include "chudsym/error.hpp"
#include "chudsym/ff_core.hpp"

using namespace chudsym;

namespace {

// Naive arithmetic over F_p (p prime) kept apart from the library.
std::vector<std::uint64_t> naive_mod(std::vector<std::uint64_t> f, const std::vector<std::uint64_t>& g,
                                     std::uint64_t p) {
    // g monic
    while (f.size() >= g.size()) {
        std::uint64_t c = f.back();
        std::size_t shift = f.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i) {
            f[shift + i] = (f[shift + i] + (p - c) * g[i]) % p;
        }
        f.pop_back();
        while (!f.empty() && f.back() == 0) f.pop_back();
    }
    return f;
}

// Monic polynomial of degree d whose lower coefficients are the base-p digits of idx.
std::vector<std::uint64_t> monic_from_index(std::uint64_t idx, unsigned d, std::uint64_t p) {
    std::vector<std::uint64_t> f(d + 1, 0);
    for (unsigned i = 0; i < d; ++i) {
        f[i] = idx % p;
        idx /= p;
    }
    f[d] = 1;
    return f;
}

bool naive_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p) {
    const unsigned n = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; d <= n / 2; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            if (naive_mod(f, monic_from_index(idx, d, p), p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("find_irreducible picks the smallest monic irreducible") {
    CHECK(find_irreducible(FiniteField::prime(2), 1) == Poly{0, 1});
    CHECK(find_irreducible(FiniteField::prime(2), 2) == Poly{1, 1, 1});
    CHECK(find_irreducible(FiniteField::prime(5), 2) == Poly{2, 0, 1});
}

TEST_CASE("find_irreducible agrees with exhaustive search over prime fields") {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        for (unsigned n = 1; n <= 5; ++n) {
            if (p == 7 && n == 5) continue;
            std::uint64_t count = 1;
            for (unsigned i = 0; i < n; ++i) count *= p;
            std::vector<std::uint64_t> expected;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                auto f = monic_from_index(idx, n, p);
                if (naive_irreducible(f, p)) {
                    expected = f;
                    break;
                }
            }
            CAPTURE(p);
            CAPTURE(n);
            CHECK(find_irreducible(FiniteField::prime(p), n) == Poly(expected.begin(), expected.end()));
        }
    }
}

TEST_CASE("is_irreducible matches exhaustive factor search") {
    for (std::uint64_t p : {2, 3, 5}) {
        const auto F = FiniteField::prime(p);
        for (unsigned n = 1; n <= 4; ++n) {
            std::uint64_t count = 1;
            for (unsigned i = 0; i < n; ++i) count *= p;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                auto f = monic_from_index(idx, n, p);
                CHECK(poly::is_irreducible(F, Poly(f.begin(), f.end())) == naive_irreducible(f, p));
            }
        }
    }
}

TEST_CASE("small field arithmetic") {
    const auto F4 = FiniteField::of_order(4);
    CHECK(F4.modulus() == Poly{1, 1, 1});
    // t is coded 2, 1 + t is coded 3
    CHECK(F4.mul(2, 2) == 3);
    CHECK(F4.mul(3, 3) == 2);
    const auto F5 = FiniteField::prime(5);
    CHECK(F5.mul(3, 4) == 2);
    CHECK(F5.inv(2) == 3);
    CHECK_THROWS_AS(F5.inv(0), DivisionByZero);
    CHECK_THROWS_AS(FiniteField::of_order(6), DomainError);
    CHECK_THROWS_AS(FiniteField::prime(9), DomainError);
}

TEST_CASE("extension field of F_2 of degree 2") {
    ExtensionField E(FiniteField::prime(2), 2);
    CHECK(E.modulus() == Poly{1, 1, 1});
    auto t = E.element({0, 1});
    auto one_plus_t = E.element({1, 1});
    CHECK(E.mul(t, t) == one_plus_t);
    CHECK(E.mul(one_plus_t, one_plus_t) == t);
    CHECK_THROWS_AS(E.element({0, 2}), DomainError);
    CHECK_THROWS_AS(E.element({0, 1, 0}), DomainError);
    CHECK_THROWS_AS(E.inv(E.zero()), DivisionByZero);
}

TEST_CASE("field axioms hold on random triples") {
    std::mt19937_64 rng(7);
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49}) {
        for (unsigned n : {1U, 2U, 3U}) {
            ExtensionField E(FiniteField::of_order(q), n);
            std::uniform_int_distribution<std::uint64_t> pick(0, E.size() - 1);
            for (int i = 0; i < 50; ++i) {
                auto a = E.from_index(pick(rng));
                auto b = E.from_index(pick(rng));
                auto c = E.from_index(pick(rng));
                CHECK(E.mul(a, E.add(b, c)) == E.add(E.mul(a, b), E.mul(a, c)));
                CHECK(E.mul(a, E.mul(b, c)) == E.mul(E.mul(a, b), c));
                CHECK(E.mul(a, b) == E.mul(b, a));
                CHECK(E.add(a, E.sub(b, a)) == b);
                if (!E.is_zero(a)) CHECK(E.mul(a, E.inv(a)) == E.one());
            }
        }
    }
}

TEST_CASE("multiplicative group of F_q has order q - 1") {
    for (std::uint64_t q : {4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125}) {
        const auto F = FiniteField::of_order(q);
        for (Elem a = 1; a < q; ++a) {
            Elem acc = 1;
            for (std::uint64_t i = 0; i < q - 1; ++i) acc = F.mul(acc, a);
            CHECK(acc == 1);
        }
    }
}

TEST_CASE("place counts of the rational function field") {
    CHECK(count_places_rational_ff(2, 1) == 3);
    CHECK(count_places_rational_ff(2, 2) == 1);
    CHECK(count_places_rational_ff(5, 2) == 10);
    // brute force count of monic irreducibles over prime fields
    for (std::uint64_t p : {2, 3, 5, 7}) {
        for (unsigned d = 2; d <= 4; ++d) {
            std::uint64_t count = 1;
            for (unsigned i = 0; i < d; ++i) count *= p;
            std::uint64_t irr = 0;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                if (naive_irreducible(monic_from_index(idx, d, p), p)) ++irr;
            }
            CHECK(count_places_rational_ff(p, d) == irr);
        }
    }
}

TEST_CASE("place descent N1(q^2) = N1(q) + 2 N2(q)") {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59,
                            61, 64}) {
        CHECK(count_places_rational_ff(q * q, 1) ==
              count_places_rational_ff(q, 1) + 2 * count_places_rational_ff(q, 2));
    }
}

TEST_CASE("solve_linear") {
    const auto F5 = FiniteField::prime(5);
    // [[1,2],[3,4]] x = [1,1] over F_5 has x = (4, 1)
    Matrix m(2, 2, {1, 2, 3, 4});
    Matrix rhs(2, 1, {1, 1});
    Matrix x = solve_linear(F5, m, rhs);
    CHECK(x == Matrix(2, 1, {4, 1}));
    Matrix singular(2, 2, {1, 2, 2, 4});
    try {
        solve_linear(F5, singular, rhs);
        FAIL("expected SingularMatrix");
    } catch (const SingularMatrix& e) {
        CHECK(e.column() == 1);
    }
}

TEST_CASE("Vandermonde matrices on distinct nodes are invertible") {
    const auto F = FiniteField::prime(7);
    for (std::size_t k = 1; k <= 7; ++k) {
        Matrix v(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            Elem x = 1;
            for (std::size_t j = 0; j < k; ++j) {
                v(i, j) = x;
                x = F.mul(x, static_cast<Elem>(i));
            }
        }
        CHECK(rank(F, v) == k);
        CHECK(multiply(F, v, inverse(F, v)) == Matrix::identity(k));
    }
}
