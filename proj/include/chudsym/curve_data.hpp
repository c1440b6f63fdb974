#pragma once

#include <cstdint>

namespace chudsym {

// Index and torsion data of Gamma_0(N), and the genus of X_0(N).
struct Gamma0Data {
    std::uint64_t N = 1;
    std::uint64_t mu = 1;      // index in SL_2(Z)
    std::uint64_t nu2 = 0;     // elliptic points of order 2
    std::uint64_t nu3 = 0;     // elliptic points of order 3
    std::uint64_t nu_inf = 1;  // cusps
    std::uint64_t genus = 0;
};

Gamma0Data genus_X0(std::uint64_t N);

enum class CurveFamily { ElevenL, TwentyThreeL };

// X_0(11 l) for p != 11, X_0(23 l) for p = 11, reduced at p.
struct CurveFamilyData {
    CurveFamily family = CurveFamily::ElevenL;
    std::uint64_t l = 0;
    std::uint64_t N = 0;
    std::uint64_t genus = 0;
    std::uint64_t p = 0;
    // Supersingular lower bound on N_1 over F_{p^2}.
    std::uint64_t n1_lower_p2 = 0;
    // Lower bound on N_1 + 2 N_2 over F_p; equal to the above by descent.
    std::uint64_t n1_2n2_lower_p = 0;
};

const char* to_string(CurveFamily f);

// Rejects degenerate l (l = p, or l = 11 / 23 for the family). The closed
// form genus is cross-checked against genus_X0.
CurveFamilyData family_data(std::uint64_t p, std::uint64_t l);

// 2g + 1 <= q^((n-1)/2) (sqrt(q) - 1), decided exactly.
bool check_rr_hypothesis(std::uint64_t q, std::uint64_t n, std::uint64_t g);

}  // namespace chudsym
