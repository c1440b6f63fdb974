#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "chudsym/ff_core.hpp"

namespace chudsym {

// Places of the rational function field F_q(x) used to evaluate the product
// of two polynomials of degree < n.
struct EvalPlan {
    std::uint64_t q = 0;
    unsigned n = 0;
    std::vector<Elem> rational_nodes;  // canonical order 0, 1, 2, ...
    bool use_infinity = false;
    std::vector<Poly> deg2_places;     // monic irreducible quadratics
    unsigned total_degree = 0;

    unsigned cost() const {
        return static_cast<unsigned>(rational_nodes.size()) + (use_infinity ? 1U : 0U) +
               3U * static_cast<unsigned>(deg2_places.size());
    }
};

// Cheapest plan with total degree exactly 2n - 1: rational slots first
// (0, 1, ..., then infinity), degree-two places only for what remains.
// Throws Infeasible when the places of F_q(x) cannot cover 2n - 1.
EvalPlan plan_evaluation(const FiniteField& F, unsigned n, bool allow_deg2);

struct PlaceContribution {
    enum class Kind { Rational, Infinity, DegreeTwo };
    Kind kind = Kind::Rational;
    Elem node = 0;   // Rational
    Poly modulus;    // DegreeTwo
    unsigned cost = 1;
};

// Symmetric bilinear algorithm for multiplication in F_{q^n}:
//   x * y = recon * ((forms * x) .* (forms * y))
class BilinearAlgorithm {
  public:
    BilinearAlgorithm(ExtensionField field, Matrix forms, Matrix recon, std::vector<PlaceContribution> ledger);

    const ExtensionField& field() const noexcept { return field_; }
    std::size_t rank() const noexcept { return forms_.rows(); }
    const Matrix& forms() const noexcept { return forms_; }
    const Matrix& recon() const noexcept { return recon_; }
    const std::vector<PlaceContribution>& ledger() const noexcept { return ledger_; }
    bool uses_degree_two() const;

  private:
    ExtensionField field_;
    Matrix forms_;
    Matrix recon_;
    std::vector<PlaceContribution> ledger_;
};

// Builds the algorithm for plan; the modulus defaults to find_irreducible.
BilinearAlgorithm build_algorithm(const FiniteField& F, unsigned n, const EvalPlan& plan,
                                  std::optional<Poly> modulus = std::nullopt);

FieldElement multiply(const BilinearAlgorithm& algo, const FieldElement& x, const FieldElement& y);

struct VerificationReport {
    bool exhaustive = false;
    std::uint64_t pairs_checked = 0;
    std::uint64_t failures = 0;
    std::size_t rank = 0;
    std::int64_t envelope = 0;
    std::uint64_t seed = 0;
};

struct VerifyOptions {
    std::uint64_t trials = 1000;
    std::uint64_t seed = 20240917;
};

// Exhaustive iff q^(2n) <= 2^24, otherwise `trials` seeded random pairs.
// Throws VerificationFailure with the offending pair on the first mismatch.
VerificationReport verify(const BilinearAlgorithm& algo, const VerifyOptions& opts = {});

bool exhaustive_feasible(std::uint64_t q, unsigned n);

nlohmann::json emit_tensor(const BilinearAlgorithm& algo);
BilinearAlgorithm parse_tensor(const nlohmann::json& j);

}  // namespace chudsym
