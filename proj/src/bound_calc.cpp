#include "chudsym/bound_calc.hpp"

#include <algorithm>
#include <cmath>

#include "chudsym/error.hpp"

namespace chudsym {

std::string to_string(FieldKind f) { return f == FieldKind::Quadratic ? "p2" : "p"; }

FieldKind parse_field(const std::string& s) {
    if (s == "p2") return FieldKind::Quadratic;
    if (s == "p") return FieldKind::Prime;
    throw DomainError("field must be 'p' or 'p2', got '" + s + "'");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::ChudnovskyCase1:
            return "chudnovsky_case1";
        case Method::ChudnovskyCase2:
            return "chudnovsky_case2";
        case Method::PriorBinary:
            return "prior_binary";
        case Method::PriorTernary:
            return "prior_ternary";
        case Method::PriorPrimePower:
            return "prior_prime_power";
        case Method::PriorPrime:
            return "prior_prime";
        case Method::PriorSquare:
            return "prior_square";
        case Method::PriorPrimeSquare:
            return "prior_prime_square";
        case Method::ClosedFormQuadratic:
            return "closed_form_quadratic";
        case Method::ClosedFormPrime:
            return "closed_form_prime";
        case Method::Constructive:
            return "constructive";
    }
    return "?";
}

std::int64_t chudnovsky_bound(ChudnovskyCase c, std::int64_t n, std::int64_t g) {
    return c == ChudnovskyCase::DegreeOne ? 2 * n + g - 1 : 3 * n + 2 * g;
}

namespace {

void require_prime_at_least_5(std::uint64_t p) {
    if (p < 5 || !is_prime(p)) throw DomainError("p must be a prime >= 5, got " + std::to_string(p));
}

std::uint64_t characteristic_of(std::uint64_t q) {
    auto pp = prime_power_decompose(q);
    if (pp.p == 0) throw DomainError(std::to_string(q) + " is not a prime power");
    return pp.p;
}

// Smallest double >= r.
double upper_double(const Rational& r) {
    double d = r.convert_to<double>();
    if (Rational(d) < r) d = std::nextafter(d, INFINITY);
    return d;
}

// Strictly above a long double estimate, to absorb its rounding.
double upper_double(long double x) {
    return std::nextafter(static_cast<double>(x), INFINITY);
}

void set_value(BoundReport& r, double upper) {
    r.value_real = round_up_15(upper);
    r.value_int = static_cast<std::int64_t>(std::floor(r.value_real));
}

}  // namespace

PriorBound prior_bound(Method variant, std::uint64_t q) {
    PriorBound b;
    b.variant = variant;
    switch (variant) {
        case Method::PriorBinary:
            if (q != 2) throw DomainError("binary prior bound needs q = 2");
            b.coefficient = Rational(1546, 100);
            b.formula = "15.46";
            return b;
        case Method::PriorTernary:
            if (q != 3) throw DomainError("ternary prior bound needs q = 3");
            b.coefficient = Rational(7732, 1000);
            b.formula = "7.732";
            return b;
        case Method::PriorPrimePower: {
            if (q < 4) throw DomainError("prime-power prior bound needs q >= 4");
            const Rational p(characteristic_of(q));
            const Rational Q(q);
            b.coefficient = 3 * (1 + (Rational(4, 3) * p) / (Q - 3 + 2 * (p - 1) * Q / (Q + 1)));
            b.formula = "3(1+(4/3)p/(q-3+2(p-1)q/(q+1)))";
            return b;
        }
        case Method::PriorPrime: {
            require_prime_at_least_5(q);
            const Rational p(q);
            b.coefficient = 3 * (1 + 8 / (3 * p - 5));
            b.formula = "3(1+8/(3p-5))";
            return b;
        }
        case Method::PriorSquare: {
            if (q < 4) throw DomainError("square prior bound needs q >= 4");
            const Rational p(characteristic_of(q));
            const Rational Q(q);
            b.coefficient = 2 * (1 + p / (Q - 3 + (p - 1) * Q / (Q + 1)));
            b.formula = "2(1+p/(q-3+(p-1)q/(q+1)))";
            return b;
        }
        case Method::PriorPrimeSquare: {
            require_prime_at_least_5(q);
            const Rational p(q);
            b.coefficient = 2 * (1 + 2 / (p - Rational(33, 16)));
            b.formula = "2(1+2/(p-33/16))";
            return b;
        }
        default:
            break;
    }
    throw DomainError(to_string(variant) + " is not a prior bound");
}

BoundReport prior_report(Method variant, std::uint64_t p, std::int64_t n) {
    if (n < 2) throw DomainError("n must be > 1");
    PriorBound b = prior_bound(variant, p);
    BoundReport r;
    r.p = p;
    r.n = n;
    r.method = variant;
    r.field = (variant == Method::PriorSquare || variant == Method::PriorPrimeSquare) ? FieldKind::Quadratic
                                                                                       : FieldKind::Prime;
    set_value(r, upper_double(b.coefficient * n));
    r.valid_unconditional = true;
    return r;
}

Epsilon epsilon(std::uint64_t p, std::int64_t n, const Rational& alpha, bool eleven) {
    if (p < 5) throw DomainError("p must be >= 5");
    if (n < 1) throw DomainError("n must be >= 1");
    Epsilon e;
    e.p = p;
    e.n = n;
    e.alpha = alpha;
    e.eleven = eleven;
    const Rational base = eleven ? Rational(n, p - 3) : Rational(2 * n, p - 3);
    if (base == 1) {
        e.value = 1.0;
        return e;
    }
    const double exponent = (alpha - 1).convert_to<double>();
    e.value = std::nextafter(std::pow(base.convert_to<double>(), exponent), INFINITY);
    return e;
}

Rational asymptotic_quadratic(std::uint64_t p) {
    require_prime_at_least_5(p);
    return Rational(2 * (static_cast<std::int64_t>(p) - 2), static_cast<std::int64_t>(p) - 3);
}

Rational asymptotic_prime(std::uint64_t p) {
    require_prime_at_least_5(p);
    return Rational(3 * static_cast<std::int64_t>(p) - 5, static_cast<std::int64_t>(p) - 3);
}

namespace {

void apply_validity(BoundReport& r, PairFamily family, const GapPolicy& policy) {
    const ExtendedValue floor = policy_floor(policy, family, r.p);
    const std::optional<bool> reached = floor.at_most(r.n);
    r.valid_unconditional = reached.value_or(false);
    switch (policy.x_alpha.kind) {
        case ExtendedValue::Kind::Unknown:
            r.caveats.push_back("validity floor unknown: x_alpha has not been computed for alpha = " +
                                to_string(policy.alpha));
            break;
        case ExtendedValue::Kind::Symbolic:
            r.caveats.push_back("holds for n >= " + floor.to_string());
            break;
        case ExtendedValue::Kind::Finite: {
            r.caveats.push_back("holds for n >= " + floor.to_string() + ", conditional on sieve range below " +
                                std::to_string(policy.verified_limit));
            // The witness prime must fall inside the verified range.
            const Rational t = pair_threshold(r.p, r.n, family);
            if (t >= Rational(policy.verified_limit)) r.valid_unconditional = false;
            break;
        }
    }
}

BoundReport closed_form(std::uint64_t p, std::int64_t n, const GapPolicy& policy, FieldKind field) {
    require_prime_at_least_5(p);
    if (n < 2) throw DomainError("n must be > 1");
    const bool eleven = p == 11;
    const Epsilon eps = epsilon(p, n, policy.alpha, eleven);
    const long double e = eps.value;
    const long double P = static_cast<long double>(p);
    const long double N = static_cast<long double>(n);
    long double v = 0;
    if (field == FieldKind::Quadratic) {
        v = eleven ? 2 * (1 + (1 + e) / (P - 3)) * N - 2 * (1 + e) * (P - 1) / (P - 3)
                   : 2 * (1 + (1 + e) / (P - 3)) * N - (1 + e) * (P + 1) / (P - 3) - 1;
    } else {
        v = eleven ? 3 * (1 + (4.0L / 3) * (1 + e) / (P - 3)) * N - 4 * (1 + e) * (P - 1) / (P - 3) + 1
                   : 3 * (1 + (4.0L / 3) * (1 + e) / (P - 3)) * N - 2 * (1 + e) * (P + 1) / (P - 3);
    }
    BoundReport r;
    r.p = p;
    r.n = n;
    r.field = field;
    r.method = field == FieldKind::Quadratic ? Method::ClosedFormQuadratic : Method::ClosedFormPrime;
    set_value(r, upper_double(v));
    r.policy = policy;
    PairFamily family = field == FieldKind::Quadratic
                            ? (eleven ? PairFamily::QuadraticEleven : PairFamily::QuadraticGeneric)
                            : (eleven ? PairFamily::PrimeEleven : PairFamily::PrimeGeneric);
    apply_validity(r, family, policy);
    return r;
}

}  // namespace

BoundReport closed_form_quadratic(std::uint64_t p, std::int64_t n, const GapPolicy& policy) {
    return closed_form(p, n, policy, FieldKind::Quadratic);
}

BoundReport closed_form_prime(std::uint64_t p, std::int64_t n, const GapPolicy& policy) {
    return closed_form(p, n, policy, FieldKind::Prime);
}

BoundReport constructive_bound(const PrimeTable& table, std::uint64_t p, std::int64_t n, FieldKind field,
                               const GapPolicy& policy) {
    require_prime_at_least_5(p);
    if (n < 2) throw DomainError("n must be > 1");
    const bool eleven = p == 11;
    const PairFamily family = field == FieldKind::Quadratic
                                  ? (eleven ? PairFamily::QuadraticEleven : PairFamily::QuadraticGeneric)
                                  : (eleven ? PairFamily::PrimeEleven : PairFamily::PrimeGeneric);
    Witnesses w;
    w.pair = select_pair(table, p, n, family);
    w.curve = family_data(p, w.pair.l_k1);
    const auto g = static_cast<std::int64_t>(w.curve.genus);
    const auto pi = static_cast<std::int64_t>(p);
    const auto lk = static_cast<std::int64_t>(w.pair.l_k);

    const auto points = static_cast<std::int64_t>(field == FieldKind::Quadratic ? w.curve.n1_lower_p2
                                                                              : w.curve.n1_2n2_lower_p);
    const std::int64_t needed = 2 * n + 2 * g - 2;
    w.checks.push_back({field == FieldKind::Quadratic ? "n1_over_p2" : "n1_plus_2n2_over_p",
                        std::to_string(points) + " > " + std::to_string(needed), points > needed, true});

    const std::uint64_t q = field == FieldKind::Quadratic ? p * p : p;
    w.checks.push_back({"riemann_roch",
                        std::to_string(2 * g + 1) + " <= " + std::to_string(q) + "^((" + std::to_string(n) +
                            "-1)/2)*(sqrt(" + std::to_string(q) + ")-1)",
                        check_rr_hypothesis(q, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(g)), true});

    if (field == FieldKind::Prime) {
        w.checks.push_back({"non_special_divisor",
                            "non-special divisor of degree " + std::to_string(g - 1) + " exists for p >= 5", true,
                            true});
    }

    const std::int64_t lower_lhs = (pi - 1) * (lk + 1);
    const std::int64_t lower_rhs = eleven ? n + 2 * lk : 2 * n + 2 * lk - 2;
    w.checks.push_back({"pair_lower", std::to_string(lower_lhs) + " <= " + std::to_string(lower_rhs),
                        lower_lhs <= lower_rhs, false});
    w.checks.push_back({"gap_condition",
                        std::to_string(w.pair.gap) + " <= " + std::to_string(w.pair.l_k) + "^" +
                            to_string(policy.alpha),
                        gap_within(w.pair.gap, w.pair.l_k, policy.alpha), false});

    for (const auto& c : w.checks) {
        if (c.gating && !c.passed) throw Infeasible(c.name, "precondition " + c.name + " fails: " + c.relation);
    }

    BoundReport r;
    r.p = p;
    r.n = n;
    r.field = field;
    r.method = Method::Constructive;
    const std::int64_t bound = field == FieldKind::Quadratic ? chudnovsky_bound(ChudnovskyCase::DegreeOne, n, g)
                                                             : chudnovsky_bound(ChudnovskyCase::DegreeTwo, n, g);
    r.value_real = static_cast<double>(bound);
    r.value_int = bound;
    r.valid_unconditional = true;
    r.policy = policy;
    if (!w.pair.skipped.empty()) {
        std::string s = "constructive-with-caveat: skipped degenerate primes";
        for (auto l : w.pair.skipped) s += " " + std::to_string(l);
        r.caveats.push_back(s);
    }
    r.witnesses = std::move(w);
    return r;
}

ComparisonReport compare_all(const PrimeTable& table, std::uint64_t p, std::int64_t n, const GapPolicy& closed_policy,
                             const GapPolicy& constructive_policy) {
    require_prime_at_least_5(p);
    ComparisonReport out;
    out.p = p;
    out.n = n;
    for (FieldKind field : {FieldKind::Quadratic, FieldKind::Prime}) {
        std::vector<BoundReport> reports;
        reports.push_back(field == FieldKind::Quadratic ? closed_form_quadratic(p, n, closed_policy)
                                                        : closed_form_prime(p, n, closed_policy));
        try {
            reports.push_back(constructive_bound(table, p, n, field, constructive_policy));
        } catch (const Infeasible& e) {
            out.infeasible.push_back(to_string(field) + ":constructive: " + e.what());
        }
        const Method priors[2] = {
            field == FieldKind::Quadratic ? Method::PriorSquare : Method::PriorPrimePower,
            field == FieldKind::Quadratic ? Method::PriorPrimeSquare : Method::PriorPrime,
        };
        for (Method m : priors) reports.push_back(prior_report(m, p, n));
        std::stable_sort(reports.begin(), reports.end(),
                         [](const BoundReport& a, const BoundReport& b) { return a.value_real < b.value_real; });
        for (std::size_t i = 0; i < reports.size(); ++i) out.entries.push_back({reports[i], i == 0});

        AsymptoticComparison a;
        a.field = field;
        a.new_coefficient = field == FieldKind::Quadratic ? asymptotic_quadratic(p) : asymptotic_prime(p);
        for (Method m : priors) a.priors.push_back(prior_bound(m, p));
        out.asymptotic.push_back(std::move(a));
    }
    return out;
}

}  // namespace chudsym
