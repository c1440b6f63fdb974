#include "chudsym/prime_engine.hpp"

#include <algorithm>
#include <cmath>

#include "chudsym/error.hpp"

namespace chudsym {

PrimeTable::PrimeTable(std::uint64_t limit, std::uint64_t cap) : limit_(limit) {
    if (limit < 2) throw DomainError("sieve limit must be at least 2");
    if (limit > cap) {
        throw DomainError("sieve limit " + std::to_string(limit) + " exceeds the memory cap " +
                          std::to_string(cap));
    }
    composite_.assign(limit + 1, false);
    composite_[0] = composite_[1] = true;
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (composite_[i]) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i) composite_[j] = true;
    }
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!composite_[i]) primes_.push_back(i);
    }
}

PrimeTable sieve(std::uint64_t limit) { return PrimeTable(limit); }

bool PrimeTable::is_prime(std::uint64_t n) const {
    if (n <= limit_) return !composite_[n];
    return chudsym::is_prime(n);
}

std::optional<std::uint64_t> PrimeTable::prev_prime(std::uint64_t x) const {
    if (x < 2) return std::nullopt;
    if (x <= limit_) {
        auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
        return *std::prev(it);
    }
    for (std::uint64_t c = x;; --c) {
        if (c <= limit_) return prev_prime(c);
        if (chudsym::is_prime(c)) return c;
    }
}

std::uint64_t PrimeTable::next_prime(std::uint64_t x) const {
    auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
    if (it != primes_.end()) return *it;
    for (std::uint64_t c = std::max<std::uint64_t>(x + 1, 2);; ++c) {
        if (chudsym::is_prime(c)) return c;
    }
}

ExtendedValue ExtendedValue::finite(Rational v) {
    ExtendedValue e;
    e.kind = Kind::Finite;
    e.value = std::move(v);
    return e;
}

ExtendedValue ExtendedValue::unknown() { return ExtendedValue{}; }

ExtendedValue ExtendedValue::symbolic(std::string symbol, Rational coefficient, Rational offset) {
    ExtendedValue e;
    e.kind = Kind::Symbolic;
    e.symbol = std::move(symbol);
    e.coefficient = std::move(coefficient);
    e.value = std::move(offset);
    return e;
}

ExtendedValue ExtendedValue::affine(const Rational& a, const Rational& b) const {
    switch (kind) {
        case Kind::Finite:
            return finite(a * value + b);
        case Kind::Symbolic:
            return symbolic(symbol, a * coefficient, a * value + b);
        case Kind::Unknown:
            break;
    }
    return unknown();
}

std::optional<bool> ExtendedValue::at_most(std::int64_t n) const {
    switch (kind) {
        case Kind::Finite:
            return value <= Rational(n);
        case Kind::Symbolic:
            // Only positive multiples of huge constants are ever built.
            return false;
        case Kind::Unknown:
            break;
    }
    return std::nullopt;
}

std::string ExtendedValue::to_string() const {
    switch (kind) {
        case Kind::Finite:
            return chudsym::to_string(value);
        case Kind::Unknown:
            return "unknown";
        case Kind::Symbolic: {
            std::string s;
            if (coefficient != 1) s += chudsym::to_string(coefficient) + "*";
            s += symbol;
            if (value > 0) s += "+" + chudsym::to_string(value);
            if (value < 0) s += chudsym::to_string(value);
            return s;
        }
    }
    return "unknown";
}

GapPolicy GapPolicy::bhp() {
    GapPolicy g;
    g.name = Name::BHP;
    g.alpha = Rational(21, 40);
    g.x_alpha = ExtendedValue::unknown();
    return g;
}

GapPolicy GapPolicy::dudek() {
    GapPolicy g;
    g.name = Name::Dudek;
    g.alpha = Rational(2, 3);
    g.x_alpha = ExtendedValue::symbolic("exp(exp(33.3))");
    return g;
}

GapPolicy GapPolicy::empirical(const Rational& alpha, const PrimeTable& table) {
    if (alpha <= 0 || alpha >= 1) throw DomainError("alpha must lie in (0, 1)");
    GapReport rep = verify_gaps(table, table.limit(), alpha);
    GapPolicy g;
    g.name = Name::Empirical;
    g.alpha = alpha;
    std::uint64_t floor = rep.violations.empty() ? 2 : table.next_prime(rep.violations.back());
    g.x_alpha = ExtendedValue::finite(Rational(floor));
    g.verified_limit = table.limit();
    return g;
}

std::string GapPolicy::name_string() const {
    switch (name) {
        case Name::BHP:
            return "bhp";
        case Name::Dudek:
            return "dudek";
        case Name::Empirical:
            return "empirical";
    }
    return "?";
}

bool gap_within(std::uint64_t gap, std::uint64_t l, const Rational& alpha) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const BigInt c = numerator(alpha);
    const BigInt d = denominator(alpha);
    if (c <= 0) throw DomainError("alpha must be positive");
    const auto ce = c.convert_to<std::uint64_t>();
    const auto de = d.convert_to<std::uint64_t>();
    // Decide by logarithms when far from equality; fall back to exact powers.
    long double lhs = static_cast<long double>(de) * std::log(static_cast<long double>(gap));
    long double rhs = static_cast<long double>(ce) * std::log(static_cast<long double>(l));
    long double scale = std::max<long double>(1.0L, std::fabs(rhs));
    if (lhs < rhs - 1e-12L * scale) return true;
    if (lhs > rhs + 1e-12L * scale) return false;
    return ipow(BigInt(gap), de) <= ipow(BigInt(l), ce);
}

GapReport verify_gaps(const PrimeTable& table, std::uint64_t limit, const Rational& alpha) {
    if (limit < 3) throw DomainError("gap verification limit must be at least 3");
    if (alpha <= 0 || alpha >= 1) throw DomainError("alpha must lie in (0, 1)");
    if (table.limit() + 1 < limit) throw DomainError("prime table does not cover the gap range");
    GapReport rep;
    rep.limit = limit;
    rep.alpha = alpha;
    const auto& ps = table.primes();
    for (std::size_t i = 0; i < ps.size() && ps[i] < limit; ++i) {
        std::uint64_t next = i + 1 < ps.size() ? ps[i + 1] : table.next_prime(ps[i]);
        std::uint64_t gap = next - ps[i];
        rep.max_gap_seen = std::max(rep.max_gap_seen, gap);
        if (!gap_within(gap, ps[i], alpha)) rep.violations.push_back(ps[i]);
    }
    return rep;
}

GapReport verify_gaps(std::uint64_t limit, const Rational& alpha) {
    if (limit < 3) throw DomainError("gap verification limit must be at least 3");
    return verify_gaps(PrimeTable(limit), limit, alpha);
}

std::string to_string(PairFamily f) {
    switch (f) {
        case PairFamily::QuadraticGeneric:
            return "quadratic_generic";
        case PairFamily::QuadraticEleven:
            return "quadratic_eleven";
        case PairFamily::PrimeGeneric:
            return "prime_generic";
        case PairFamily::PrimeEleven:
            return "prime_eleven";
    }
    return "?";
}

bool is_eleven(PairFamily f) {
    return f == PairFamily::QuadraticEleven || f == PairFamily::PrimeEleven;
}

namespace {

void check_family(std::uint64_t p, PairFamily family) {
    if (p < 5 || !is_prime(p)) throw DomainError("p must be a prime >= 5");
    if (is_eleven(family) != (p == 11)) {
        throw DomainError("family " + to_string(family) + " is not the family for p = " +
                          std::to_string(p));
    }
}

}  // namespace

Rational pair_threshold(std::uint64_t p, std::int64_t n, PairFamily family) {
    const auto pi = static_cast<std::int64_t>(p);
    if (is_eleven(family)) return Rational(n - pi + 1, pi - 3);
    return Rational(2 * n - pi - 1, pi - 3);
}

PrimePair select_pair(const PrimeTable& table, std::uint64_t p, std::int64_t n, PairFamily family) {
    check_family(p, family);
    PrimePair pair;
    pair.threshold = pair_threshold(p, n, family);
    if (pair.threshold < 2) {
        throw Infeasible("pair_threshold", "n too small for family: threshold " +
                                               to_string(pair.threshold) + " < 2");
    }
    const std::uint64_t family_prime = is_eleven(family) ? 23 : 11;
    auto admissible = [&](std::uint64_t l) { return l != p && l != family_prime; };

    const auto t = floor_of(pair.threshold).convert_to<std::uint64_t>();
    std::optional<std::uint64_t> lo = table.prev_prime(t);
    while (lo && !admissible(*lo)) {
        pair.skipped.push_back(*lo);
        lo = *lo > 2 ? table.prev_prime(*lo - 1) : std::nullopt;
    }
    if (!lo) throw Infeasible("pair_threshold", "no admissible prime below the threshold");
    std::uint64_t hi = table.next_prime(t);
    while (!admissible(hi)) {
        pair.skipped.push_back(hi);
        hi = table.next_prime(hi);
    }
    pair.l_k = *lo;
    pair.l_k1 = hi;
    pair.gap = hi - *lo;
    std::sort(pair.skipped.begin(), pair.skipped.end());
    return pair;
}

ExtendedValue policy_floor(const GapPolicy& policy, PairFamily family, std::uint64_t p) {
    const auto pi = static_cast<std::int64_t>(p);
    if (is_eleven(family)) return policy.x_alpha.affine(Rational(pi - 3), Rational(pi - 1));
    return policy.x_alpha.affine(Rational(pi - 3, 2), Rational(pi + 1, 2));
}

}  // namespace chudsym
