#include "chudsym/selftest.hpp"

#include <random>

#include "chudsym/bound_calc.hpp"
#include "chudsym/chudnovsky_mult.hpp"
#include "chudsym/curve_data.hpp"
#include "chudsym/error.hpp"
#include "chudsym/ff_core.hpp"
#include "chudsym/prime_engine.hpp"

namespace chudsym {

namespace {

using nlohmann::json;

SuiteResult field_axioms() {
    std::mt19937_64 rng(7);
    std::uint64_t triples = 0;
    std::uint64_t bad = 0;
    const std::pair<std::uint64_t, unsigned> specs[] = {{2, 3}, {3, 2}, {4, 3}, {5, 2}, {7, 3}, {9, 2}};
    for (auto [q, n] : specs) {
        ExtensionField E(FiniteField::of_order(q), n);
        std::uniform_int_distribution<std::uint64_t> idx(0, E.size() - 1);
        for (int t = 0; t < 200; ++t) {
            auto a = E.from_index(idx(rng));
            auto b = E.from_index(idx(rng));
            auto c = E.from_index(idx(rng));
            ++triples;
            bool ok = E.mul(E.mul(a, b), c) == E.mul(a, E.mul(b, c)) &&
                      E.mul(a, E.add(b, c)) == E.add(E.mul(a, b), E.mul(a, c)) && E.mul(a, b) == E.mul(b, a);
            if (!E.is_zero(a)) ok = ok && E.mul(a, E.inv(a)) == E.one();
            if (!ok) ++bad;
        }
    }
    return {"field_axioms", bad == 0, {{"triples", triples}, {"failures", bad}}};
}

SuiteResult place_descent() {
    std::uint64_t checked = 0;
    std::uint64_t bad = 0;
    for (std::uint64_t q = 2; q <= 64; ++q) {
        if (prime_power_decompose(q).p == 0) continue;
        ++checked;
        if (count_places_rational_ff(q * q, 1) != count_places_rational_ff(q, 1) + 2 * count_places_rational_ff(q, 2)) {
            ++bad;
        }
    }
    return {"place_descent", bad == 0, {{"prime_powers", checked}, {"failures", bad}}};
}

SuiteResult genus_families(const PrimeTable& table) {
    std::uint64_t bad = 0;
    std::uint64_t checked = 0;
    for (auto l : table.primes()) {
        if (l >= 10000) break;
        if (l != 11) {
            ++checked;
            if (genus_X0(11 * l).genus != l) ++bad;
        }
        if (l != 23) {
            ++checked;
            if (genus_X0(23 * l).genus != 2 * l + 1) ++bad;
        }
    }
    return {"genus_families", bad == 0, {{"levels", checked}, {"mismatches", bad}}};
}

SuiteResult gamma0_consistency() {
    std::uint64_t bad = 0;
    for (std::uint64_t N = 1; N <= 10000; ++N) {
        auto d = genus_X0(N);
        if (12 * d.genus + 3 * d.nu2 + 4 * d.nu3 + 6 * d.nu_inf != d.mu + 12) ++bad;
    }
    return {"gamma0_consistency", bad == 0, {{"levels", 10000}, {"failures", bad}}};
}

SuiteResult gap_verification(const PrimeTable& table) {
    auto rep = verify_gaps(table, 1'000'000, Rational(2, 3));
    return {"gap_verification", rep.violations == std::vector<std::uint64_t>{7},
            {{"limit", 1'000'000}, {"alpha", "2/3"}, {"violations", rep.violations}}};
}

SuiteResult prior_dominance(const PrimeTable& table) {
    std::uint64_t checked = 0;
    std::uint64_t bad = 0;
    for (auto p : table.primes()) {
        if (p < 5) continue;
        if (p > 10000) break;
        ++checked;
        const Rational quad = asymptotic_quadratic(p);
        const Rational prime = asymptotic_prime(p);
        bool ok = quad < prior_bound(Method::PriorSquare, p).coefficient &&
                  quad < prior_bound(Method::PriorPrimeSquare, p).coefficient &&
                  prime < prior_bound(Method::PriorPrimePower, p).coefficient &&
                  prime < prior_bound(Method::PriorPrime, p).coefficient;
        if (!ok) ++bad;
    }
    return {"prior_dominance", bad == 0, {{"primes", checked}, {"failures", bad}}};
}

SuiteResult pair_inequalities(const PrimeTable& table) {
    std::uint64_t checked = 0;
    std::uint64_t bad = 0;
    for (std::int64_t p : {5, 7, 13, 17, 19}) {
        for (std::int64_t n = p; n <= 5000; ++n) {
            for (PairFamily fam : {PairFamily::QuadraticGeneric, PairFamily::PrimeGeneric}) {
                PrimePair pair;
                try {
                    pair = select_pair(table, static_cast<std::uint64_t>(p), n, fam);
                } catch (const Infeasible&) {
                    continue;
                }
                if (!pair.skipped.empty()) continue;
                ++checked;
                auto lk = static_cast<std::int64_t>(pair.l_k);
                auto l1 = static_cast<std::int64_t>(pair.l_k1);
                bool ok = (p - 1) * (l1 + 1) > 2 * n + 2 * l1 - 2 && (p - 1) * (lk + 1) <= 2 * n + 2 * lk - 2 &&
                          table.next_prime(pair.l_k) == pair.l_k1;
                if (!ok) ++bad;
            }
        }
    }
    for (std::int64_t n = 11; n <= 5000; ++n) {
        for (PairFamily fam : {PairFamily::QuadraticEleven, PairFamily::PrimeEleven}) {
            PrimePair pair;
            try {
                pair = select_pair(table, 11, n, fam);
            } catch (const Infeasible&) {
                continue;
            }
            if (!pair.skipped.empty()) continue;
            ++checked;
            auto lk = static_cast<std::int64_t>(pair.l_k);
            auto l1 = static_cast<std::int64_t>(pair.l_k1);
            if (!(10 * (l1 + 1) > n + 2 * l1 && 10 * (lk + 1) <= n + 2 * lk)) ++bad;
        }
    }
    return {"pair_inequalities", bad == 0, {{"pairs", checked}, {"failures", bad}}};
}

SuiteResult multiplication() {
    const std::pair<std::uint64_t, unsigned> specs[] = {{2, 2}, {3, 2}, {4, 2}, {5, 2}, {2, 3},
                                                        {4, 3}, {5, 3}, {3, 3}, {5, 4}};
    json runs = json::array();
    bool ok = true;
    for (auto [q, n] : specs) {
        FiniteField F = FiniteField::of_order(q);
        EvalPlan plan = plan_evaluation(F, n, true);
        BilinearAlgorithm algo = build_algorithm(F, n, plan);
        VerificationReport rep;
        try {
            rep = verify(algo);
        } catch (const VerificationFailure&) {
            ok = false;
            runs.push_back({{"q", q}, {"n", n}, {"failures", 1}});
            continue;
        }
        bool good = rep.exhaustive && rep.failures == 0 && algo.rank() == plan.cost() &&
                    static_cast<std::int64_t>(algo.rank()) <= rep.envelope;
        ok = ok && good;
        runs.push_back({{"q", q}, {"n", n}, {"rank", algo.rank()}, {"pairs", rep.pairs_checked}, {"ok", good}});
    }
    return {"multiplication", ok, runs};
}

SuiteResult constructive_examples(const PrimeTable& table) {
    const GapPolicy policy = GapPolicy::empirical(Rational(2, 3), table);
    auto q5 = constructive_bound(table, 5, 100, FieldKind::Quadratic, policy);
    auto p5 = constructive_bound(table, 5, 100, FieldKind::Prime, policy);
    auto q11 = constructive_bound(table, 11, 810, FieldKind::Quadratic, policy);
    bool ok = q5.value_int == 300 && q5.witnesses->pair.l_k == 97 && q5.witnesses->pair.l_k1 == 101 &&
              p5.value_int == 502 && q11.value_int == 1822;
    return {"constructive_examples", ok,
            {{"p5_quadratic", q5.value_int}, {"p5_prime", p5.value_int}, {"p11_quadratic", q11.value_int}}};
}

SuiteResult closed_form_consistency(const PrimeTable& table) {
    const GapPolicy dudek = GapPolicy::dudek();
    std::uint64_t checked = 0;
    json violations = json::array();
    for (std::uint64_t p : {5, 7, 13, 17}) {
        for (std::int64_t n = 20; n <= 5000; ++n) {
            for (FieldKind field : {FieldKind::Quadratic, FieldKind::Prime}) {
                BoundReport c;
                try {
                    c = constructive_bound(table, p, n, field, dudek);
                } catch (const Infeasible&) {
                    continue;
                }
                const auto& pair = c.witnesses->pair;
                if (!pair.skipped.empty() || !gap_within(pair.gap, pair.l_k, Rational(2, 3))) continue;
                ++checked;
                BoundReport f = field == FieldKind::Quadratic ? closed_form_quadratic(p, n, dudek)
                                                              : closed_form_prime(p, n, dudek);
                if (c.value_real > f.value_real) {
                    violations.push_back({{"p", p}, {"n", n}, {"field", to_string(field)},
                                          {"constructive", c.value_int}, {"closed_form", f.value_real}});
                }
            }
        }
    }
    return {"closed_form_consistency", violations.empty(), {{"cases", checked}, {"violations", violations}}};
}

}  // namespace

std::vector<SuiteResult> run_selftest() {
    const PrimeTable table(1'000'000);
    std::vector<SuiteResult> out;
    out.push_back(field_axioms());
    out.push_back(place_descent());
    out.push_back(genus_families(table));
    out.push_back(gamma0_consistency());
    out.push_back(gap_verification(table));
    out.push_back(prior_dominance(table));
    out.push_back(pair_inequalities(table));
    out.push_back(multiplication());
    out.push_back(constructive_examples(table));
    out.push_back(closed_form_consistency(table));
    return out;
}

}  // namespace chudsym
