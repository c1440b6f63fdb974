#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chudsym/curve_data.hpp"
#include "chudsym/numeric.hpp"
#include "chudsym/prime_engine.hpp"

namespace chudsym {

// Target field of a bound: mu^sym over F_{p^2} or over F_p.
enum class FieldKind { Quadratic, Prime };

enum class Method {
    ChudnovskyCase1,  // degree-one places only: 2n + g - 1
    ChudnovskyCase2,  // degree-one and degree-two places: 3n + 2g
    PriorBinary,      // q = 2
    PriorTernary,     // q = 3
    PriorPrimePower,  // mu_q, q >= 4
    PriorPrime,       // mu_p, p >= 5
    PriorSquare,      // mu_{q^2}, q >= 4
    PriorPrimeSquare, // mu_{p^2}, p >= 5
    ClosedFormQuadratic,
    ClosedFormPrime,
    Constructive,
};

std::string to_string(FieldKind f);   // "p2" / "p"
std::string to_string(Method m);
FieldKind parse_field(const std::string& s);

enum class ChudnovskyCase { DegreeOne = 1, DegreeTwo = 2 };

// Uniform envelope of the symmetric Chudnovsky construction on a curve of
// genus g: 2n + g - 1 with enough degree-one places, 3n + 2g when degree-two
// places are also used.
std::int64_t chudnovsky_bound(ChudnovskyCase c, std::int64_t n, std::int64_t g);

struct PriorBound {
    Method variant = Method::PriorPrime;
    Rational coefficient;  // bound = coefficient * n
    std::string formula;
};

// Coefficient of a previously published linear bound. `q_or_p` is the base
// the variant is stated for. Throws DomainError outside the variant's domain.
PriorBound prior_bound(Method variant, std::uint64_t q_or_p);

struct Epsilon {
    std::uint64_t p = 0;
    std::int64_t n = 0;
    Rational alpha;
    bool eleven = false;
    double value = 0;
};

// (2n/(p-3))^(alpha-1), or (n/(p-3))^(alpha-1) for the p = 11 family,
// rounded up by one ulp unless the base is exactly 1.
Epsilon epsilon(std::uint64_t p, std::int64_t n, const Rational& alpha, bool eleven);

// A single comparison made while assembling a constructive witness.
struct Check {
    std::string name;
    std::string relation;  // e.g. "408 > 400"
    bool passed = false;
    bool gating = true;    // informational checks do not block the bound
};

struct Witnesses {
    PrimePair pair;
    CurveFamilyData curve;
    std::vector<Check> checks;
};

struct BoundReport {
    std::uint64_t p = 0;
    std::int64_t n = 0;
    FieldKind field = FieldKind::Quadratic;
    Method method = Method::Constructive;
    double value_real = 0;    // upper bound, rounded up to 15 significant digits
    std::int64_t value_int = 0;  // floor(value_real)
    bool valid_unconditional = false;
    std::optional<GapPolicy> policy;
    std::optional<Witnesses> witnesses;
    std::vector<std::string> caveats;
};

Rational asymptotic_quadratic(std::uint64_t p);  // 2(p-2)/(p-3)
Rational asymptotic_prime(std::uint64_t p);      // (3p-5)/(p-3)

// Closed forms in p, n and epsilon_p(n). valid_unconditional reports whether
// n reaches the policy's validity floor.
BoundReport closed_form_quadratic(std::uint64_t p, std::int64_t n, const GapPolicy& policy);
BoundReport closed_form_prime(std::uint64_t p, std::int64_t n, const GapPolicy& policy);

// Runs pair selection, the modular-curve family and the construction's
// hypotheses for l_{k+1}. Throws Infeasible naming the failing check.
BoundReport constructive_bound(const PrimeTable& table, std::uint64_t p, std::int64_t n, FieldKind field,
                               const GapPolicy& policy);

// prior coefficient * n as a report.
BoundReport prior_report(Method variant, std::uint64_t p, std::int64_t n);

struct ComparisonEntry {
    BoundReport report;
    bool best = false;
};

struct AsymptoticComparison {
    FieldKind field = FieldKind::Quadratic;
    Rational new_coefficient;
    std::vector<PriorBound> priors;
};

struct ComparisonReport {
    std::uint64_t p = 0;
    std::int64_t n = 0;
    std::vector<ComparisonEntry> entries;  // grouped by field, ascending value
    std::vector<AsymptoticComparison> asymptotic;
    std::vector<std::string> infeasible;   // methods that could not run
};

ComparisonReport compare_all(const PrimeTable& table, std::uint64_t p, std::int64_t n, const GapPolicy& closed_policy,
                             const GapPolicy& constructive_policy);

}  // namespace chudsym
