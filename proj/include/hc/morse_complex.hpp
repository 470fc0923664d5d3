#pragma once
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hc/linalg_exact.hpp"
#include "hc/rational.hpp"

namespace hc::morse {

/* Morse description of the 2n-dimensional filling V: critical points of index
   < n and integer trajectory counts a_{p,q} between adjacent indices. The
   counts are input data (orientation conventions live upstream); we enforce
   only their structural consequences. */
struct CriticalPoint {
    std::string id;
    int index = 0;
    std::optional<Rational> h_value;
};

struct MorseData {
    int n = 2;  // half the real dimension of V
    std::vector<CriticalPoint> points;
    // (p, q) -> a_{p,q} with index(q) = index(p) + 1
    std::map<std::pair<std::string, std::string>, long long> boundary;
    bool allow_multiple_minima = false;
};

enum class ViolationKind {
    IndexRange,      // index outside [0, n-1] (negative)
    Subcriticality,  // index >= n
    UniqueMinimum,   // not exactly one index-0 point (unless overridden)
    BadPair,         // unknown/duplicate ids or index gap != 1 in a boundary key
    BoundarySquare,  // some composite d∘d has a nonzero entry over Z
    HOrdering,       // h-values out of order across indices
};

struct Violation {
    ViolationKind kind;
    std::string detail;
};

std::string violation_name(ViolationKind k);

// All violations, in a deterministic order; empty means the data is usable.
std::vector<Violation> validate(const MorseData& d);

struct GradedRanks {
    std::map<int, long long> ranks;
    long long at(int degree) const;
    bool operator==(const GradedRanks&) const = default;
};

// Betti numbers over Q: b_j = #crit_j - rank d_j - rank d_{j+1}, exact arithmetic.
GradedRanks homology_ranks(const MorseData& d);

// The index-j boundary matrix d_j : C_j -> C_{j-1} (rows: index j-1 points in
// declaration order, cols: index j), as exact rationals for rank work.
QMatrix boundary_matrix(const MorseData& d, int j);

long long count_index(const MorseData& d, int j);

} // namespace hc::morse
