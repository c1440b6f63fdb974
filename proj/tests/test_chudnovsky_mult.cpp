#include "doctest.h"

#include <random>

#include "chudsym/bound_calc.hpp"
#include "chudsym/chudnovsky_mult.hpp"
#include "chudsym/error.hpp"

using namespace chudsym;

namespace {

BilinearAlgorithm build(std::uint64_t q, unsigned n, bool deg2) {
    const auto F = FiniteField::of_order(q);
    return build_algorithm(F, n, plan_evaluation(F, n, deg2));
}

}  // namespace

TEST_CASE("plans") {
    const auto F2 = FiniteField::of_order(2);
    EvalPlan a = plan_evaluation(F2, 2, false);
    CHECK(a.rational_nodes == std::vector<Elem>{0, 1});
    CHECK(a.use_infinity);
    CHECK(a.cost() == 3);

    EvalPlan b = plan_evaluation(F2, 3, true);
    CHECK(b.total_degree == 5);
    CHECK(b.deg2_places == std::vector<Poly>{Poly{1, 1, 1}});
    CHECK(b.cost() == 6);

    try {
        plan_evaluation(F2, 3, false);
        FAIL("expected Infeasible");
    } catch (const Infeasible& e) {
        CHECK(e.check() == "n1");
    }
    try {
        plan_evaluation(F2, 4, true);
        FAIL("expected Infeasible");
    } catch (const Infeasible& e) {
        CHECK(e.check() == "n1_plus_2n2");
    }
    CHECK(plan_evaluation(FiniteField::of_order(4), 3, false).cost() == 5);
}

TEST_CASE("ranks and exhaustive verification") {
    struct Case {
        std::uint64_t q;
        unsigned n;
        std::size_t rank;
    };
    for (Case c : {Case{2, 2, 3}, Case{3, 2, 3}, Case{4, 2, 3}, Case{5, 2, 3}, Case{2, 3, 6}, Case{4, 3, 5},
                   Case{5, 3, 5}, Case{3, 3, 6}, Case{5, 4, 8}}) {
        BilinearAlgorithm algo = build(c.q, c.n, true);
        CAPTURE(c.q);
        CAPTURE(c.n);
        CHECK(algo.rank() == c.rank);
        CHECK(algo.rank() >= 2 * c.n - 1);
        const auto envelope = chudnovsky_bound(
            algo.uses_degree_two() ? ChudnovskyCase::DegreeTwo : ChudnovskyCase::DegreeOne, c.n, 0);
        CHECK(static_cast<std::int64_t>(algo.rank()) <= envelope);
        VerificationReport rep = verify(algo);
        CHECK(rep.exhaustive);
        CHECK(rep.failures == 0);
        std::uint64_t size = 1;
        for (unsigned i = 0; i < c.n; ++i) size *= c.q;
        CHECK(rep.pairs_checked == size * size);
    }
}

TEST_CASE("rank accounting follows the ledger") {
    for (auto [q, n] : {std::pair{2ULL, 3U}, {3ULL, 3U}, {5ULL, 4U}, {7ULL, 5U}, {4ULL, 4U}}) {
        BilinearAlgorithm algo = build(q, n, true);
        std::size_t total = 0;
        for (const auto& c : algo.ledger()) total += c.cost;
        CHECK(total == algo.rank());
        CHECK(algo.forms().rows() == algo.rank());
        CHECK(algo.forms().cols() == n);
        CHECK(algo.recon().rows() == n);
        CHECK(algo.recon().cols() == algo.rank());
    }
}

TEST_CASE("q = 2, n = 2 decomposition") {
    BilinearAlgorithm algo = build(2, 2, false);
    // forms: f(0) = x0, f(1) = x0 + x1, leading coefficient x1
    CHECK(algo.forms() == Matrix(3, 2, {1, 0, 1, 1, 0, 1}));
    const ExtensionField& E = algo.field();
    for (std::uint64_t i = 0; i < 4; ++i) {
        for (std::uint64_t j = 0; j < 4; ++j) {
            auto x = E.from_index(i);
            auto y = E.from_index(j);
            // z0 + z_inf, z1 + z0 after reduction t^2 = t + 1
            const Elem z0 = x.coords[0] * y.coords[0] % 2;
            const Elem z1 = (x.coords[0] + x.coords[1]) * (y.coords[0] + y.coords[1]) % 2;
            const Elem zi = x.coords[1] * y.coords[1] % 2;
            CHECK(multiply(algo, x, y) == E.element({(z0 + zi) % 2, (z1 + z0) % 2}));
        }
    }
}

TEST_CASE("multiply examples") {
    BilinearAlgorithm algo = build(2, 2, false);
    const ExtensionField& E = algo.field();
    auto one_plus_t = E.element({1, 1});
    CHECK(multiply(algo, one_plus_t, one_plus_t) == E.element({0, 1}));
    for (std::uint64_t i = 0; i < 4; ++i) {
        auto x = E.from_index(i);
        CHECK(multiply(algo, x, E.zero()) == E.zero());
        CHECK(multiply(algo, x, E.one()) == x);
    }
}

TEST_CASE("symmetric decomposition is commutative and matches the reference on larger fields") {
    std::mt19937_64 rng(11);
    for (auto [q, n] : {std::pair{7ULL, 4U}, {9ULL, 5U}, {13ULL, 7U}, {16ULL, 8U}, {5ULL, 5U}, {3ULL, 4U}}) {
        BilinearAlgorithm algo = build(q, n, true);
        const ExtensionField& E = algo.field();
        std::uniform_int_distribution<std::uint64_t> pick(0, E.size() - 1);
        for (int i = 0; i < 200; ++i) {
            auto x = E.from_index(pick(rng));
            auto y = E.from_index(pick(rng));
            CHECK(multiply(algo, x, y) == multiply(algo, y, x));
            CHECK(multiply(algo, x, y) == E.mul(x, y));
        }
        VerificationReport rep = verify(algo, {200, 99});
        CHECK(rep.failures == 0);
    }
}

TEST_CASE("random verification is reproducible") {
    BilinearAlgorithm algo = build(13, 7, false);
    VerificationReport a = verify(algo, {500, 1});
    VerificationReport b = verify(algo, {500, 1});
    CHECK_FALSE(a.exhaustive);
    CHECK(a.pairs_checked == 500);
    CHECK(a.seed == b.seed);
    CHECK(exhaustive_feasible(2, 12));
    CHECK_FALSE(exhaustive_feasible(2, 13));
}

TEST_CASE("a corrupted tensor fails verification") {
    BilinearAlgorithm algo = build(3, 2, false);
    nlohmann::json j = emit_tensor(algo);
    j["recon"][0][0] = (j["recon"][0][0].get<int>() + 1) % 3;
    CHECK_THROWS_AS(verify(parse_tensor(j)), VerificationFailure);
}

TEST_CASE("tensor emission round trips") {
    for (auto [q, n] : {std::pair{2ULL, 2U}, {2ULL, 3U}, {4ULL, 3U}, {5ULL, 4U}}) {
        BilinearAlgorithm algo = build(q, n, true);
        nlohmann::json j = emit_tensor(algo);
        CHECK(j["rank"] == algo.rank());
        CHECK(j["forms"].size() == algo.rank());
        BilinearAlgorithm back = parse_tensor(j);
        CHECK(back.forms() == algo.forms());
        CHECK(back.recon() == algo.recon());
        CHECK(verify(back).failures == 0);
        CHECK(emit_tensor(back).dump() == j.dump());
    }
}
