#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chudsym/numeric.hpp"

namespace chudsym {

// Primes up to a limit.
class PrimeTable {
  public:
    static constexpr std::uint64_t kDefaultLimit = 10'000'000;
    static constexpr std::uint64_t kMemoryCap = 1'000'000'000;

    // Throws DomainError for limit < 2 or limit > cap.
    explicit PrimeTable(std::uint64_t limit, std::uint64_t cap = kMemoryCap);

    std::uint64_t limit() const noexcept { return limit_; }
    const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }

    // Deterministic for every 64-bit value; answers from the table when in range.
    bool is_prime(std::uint64_t n) const;
    // Largest prime <= x, if any.
    std::optional<std::uint64_t> prev_prime(std::uint64_t x) const;
    // Smallest prime > x.
    std::uint64_t next_prime(std::uint64_t x) const;

  private:
    std::uint64_t limit_;
    std::vector<bool> composite_;
    std::vector<std::uint64_t> primes_;
};

PrimeTable sieve(std::uint64_t limit);

// Extended integer for the validity floor x_alpha: a finite value, unknown,
// or a named symbolic quantity too large to materialise.
struct ExtendedValue {
    enum class Kind { Finite, Unknown, Symbolic };

    Kind kind = Kind::Unknown;
    Rational value;         // Finite: the value. Symbolic: additive offset.
    Rational coefficient;   // Symbolic: multiplier of the symbol.
    std::string symbol;     // Symbolic: e.g. "exp(exp(33.3))"

    static ExtendedValue finite(Rational v);
    static ExtendedValue unknown();
    static ExtendedValue symbolic(std::string symbol, Rational coefficient = 1, Rational offset = 0);

    // a * this + b.
    ExtendedValue affine(const Rational& a, const Rational& b) const;
    // n >= this; nullopt when undecidable (Unknown). Symbolic values are
    // astronomically large and compare greater than every 64-bit integer.
    std::optional<bool> at_most(std::int64_t n) const;
    std::string to_string() const;
};

struct GapPolicy {
    enum class Name { BHP, Dudek, Empirical };

    Name name = Name::Dudek;
    Rational alpha;
    ExtendedValue x_alpha;
    // Empirical only: the sieve range over which x_alpha was established.
    std::uint64_t verified_limit = 0;

    static GapPolicy bhp();
    static GapPolicy dudek();
    // Sieve-verifies the gap condition below `limit`; x_alpha is the smallest
    // prime from which no violation was seen.
    static GapPolicy empirical(const Rational& alpha, const PrimeTable& table);

    std::string name_string() const;
};

struct GapReport {
    std::uint64_t limit = 0;
    Rational alpha;
    std::vector<std::uint64_t> violations;
    std::uint64_t max_gap_seen = 0;
};

// Every prime l < limit with next_prime(l) - l > l^alpha. Decided exactly as
// gap^d <= l^c for alpha = c/d in lowest terms.
GapReport verify_gaps(const PrimeTable& table, std::uint64_t limit, const Rational& alpha);
GapReport verify_gaps(std::uint64_t limit, const Rational& alpha);

// True iff gap <= l^alpha, exactly.
bool gap_within(std::uint64_t gap, std::uint64_t l, const Rational& alpha);

enum class PairFamily { QuadraticGeneric, QuadraticEleven, PrimeGeneric, PrimeEleven };

std::string to_string(PairFamily f);
bool is_eleven(PairFamily f);

struct PrimePair {
    std::uint64_t l_k = 0;
    std::uint64_t l_k1 = 0;
    Rational threshold;
    std::uint64_t gap = 0;
    std::vector<std::uint64_t> skipped;  // degenerate candidates passed over
};

// Threshold T on l from the non-strict pair inequality:
// Generic (2n - p - 1)/(p - 3), Eleven (n - p + 1)/(p - 3).
Rational pair_threshold(std::uint64_t p, std::int64_t n, PairFamily family);

// l_k = largest admissible prime <= T, l_k1 = smallest admissible prime > T,
// where p itself and 11 (Generic) or 23 (Eleven) are not admissible.
PrimePair select_pair(const PrimeTable& table, std::uint64_t p, std::int64_t n, PairFamily family);

// Smallest n from which the closed-form bound holds under the policy:
// Generic (p-3)/2 * x_alpha + (p+1)/2, Eleven (p-3) * x_alpha + p - 1.
ExtendedValue policy_floor(const GapPolicy& policy, PairFamily family, std::uint64_t p);

}  // namespace chudsym
