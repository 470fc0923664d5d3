#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hc/morse_complex.hpp"

namespace hc::contact {

/* Cylindrical contact complex of the boundary M of the filling V described by
   MorseData (and of the stabilization M'). One generator per (critical point,
   multiplicity); the differential reuses the Morse trajectory counts within
   each multiplicity block. */

enum class Target { M, MPrime };

int generator_degree(int n, int morse_index, long long m, Target target);

struct HCGenerator {
    std::string critical_point_id;
    int morse_index = 0;
    long long m = 1;
    int degree = 0;
};

struct HCComplex {
    Target target = Target::M;
    int n = 2;
    long long m_o = 1;
    int window_lo = 0;
    int window_hi = 0;
    // Generators cover [window_lo-1, window_hi+1] so edge ranks are exact.
    std::vector<HCGenerator> generators;
    // (source slot, target slot) -> coefficient; degree drops by one, m is preserved.
    std::map<std::pair<int, int>, Rational> boundary;
};

struct Window {
    int lo = 0;
    int hi = 0;
};

// m_o saturating a window: every degree <= hi+1 is reachable only by m <= this.
long long default_m_o(const Window& w);

HCComplex build_hc_complex(const morse::MorseData& d, long long m_o, const Window& w,
                           Target target);

// Homology ranks per degree in the window, exact over Q; the complex must
// square to zero there (BoundarySquareNonzero otherwise).
morse::GradedRanks hc_ranks_chain(const HCComplex& cx);

// Direct graded-sum formula: sum_{m>=0} b_{2(n+m-1)-i} for M, b_{2(n+m)-i} for M'.
long long hc_ranks_closed_form(const morse::MorseData& d, int i, Target target);

struct ShiftRow {
    int degree = 0;
    long long rank_m = 0;
    long long rank_m_prime_shifted = 0;  // rank of M' at degree+2
};

struct ShiftReport {
    std::vector<ShiftRow> rows;
    bool all_match = true;
};

// HC_i(M) must equal HC_{i+2}(M') rank-by-rank over the window.
ShiftReport check_degree_shift(const morse::MorseData& d, const Window& w);

// m(e^{-h_plus} - e^{-h_minus}): finite cylinder energy between orbit levels.
double cylinder_energy(double h_plus, double h_minus, long long m);

/* Structural guard behind d**2 = 0: for dim M > 3 the window must contain no
   degree-0/1 generators; for dim M = 3 odd-degree generators must be cycles of
   degree 2m-1, and d**2 is checked entry-by-entry. Returns warnings, not errors. */
std::vector<std::string> d_squared_guard(const HCComplex& cx, int dim_M);

} // namespace hc::contact
