#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hc/errors.hpp"

namespace hc::words {

/* Handle-visit itineraries: letters index the handles 0..n-1 of a subcritical
   decomposition. A Type-II orbit's word is jumpy (no letter repeats adjacently)
   and long words are forced to contain basins, which carry index growth. */
struct Word {
    std::vector<int> letters;
    int n = 2;  // alphabet size
};

Word make_word(std::vector<int> letters, int n);       // validates, throws InvalidData
Word parse_word(const std::string& digits, int n);     // single-digit letters, e.g. "0101"

bool is_jumpy(const Word& w);

/* A basin is an inner run l_i..l_j strictly dominated by equal flanking letters
   l_{i-1} = l_{j+1} = k with 0 < k < n. Positions are 1-based to match the
   flanking conditions 1 < i <= j < m. */
struct Basin {
    long long i = 0;
    long long j = 0;
    int k = 0;
};

// Leftmost basin, innermost among those sharing the start; none if basin-free.
std::optional<Basin> find_basin(const Word& w);

bool has_basin(const Word& w);

/* Greedy earliest-right-flank scan; the picked basins are pairwise disjoint
   (flanks may touch) and the count is maximal, hence >= floor(len/2^n) for
   jumpy words by the block-decomposition argument. */
long long count_disjoint_basins(const Word& w);

// C_m = max(1, floor(m/2^n)) disjoint basins forced in a length-m jumpy word.
long long c_m(long long m, int n);

enum class LemmaMode { Exhaustive, Randomized };

struct LemmaOptions {
    long long budget_cap = 1000000;  // exhaustive-space guard
    int keep_counterexamples = 16;
    bool parallel = true;            // OpenMP scan; serial reference when false
};

struct LemmaReport {
    int n = 0;
    LemmaMode mode = LemmaMode::Exhaustive;
    long long word_length = 0;
    long long checked = 0;
    std::uint64_t seed = 0;  // meaningful in randomized mode only
    std::vector<Word> counterexamples;
};

/* Scans every (or `samples` random) jumpy word of length 2^n for a basin.
   Throws BudgetExceeded when the exhaustive space n*(n-1)^(2^n-1) overflows
   the cap. Parallel and serial scans produce identical reports. */
LemmaReport verify_word_lemma(int n, LemmaMode mode, long long samples = 0,
                              std::uint64_t seed = 0, const LemmaOptions& opt = {});

// Exhaustive-rank decode (mixed radix n,(n-1),...) and seeded random draw.
Word jumpy_word_from_rank(long long rank, int n, int length);
Word random_jumpy_word(int n, int length, std::uint64_t stream_seed);

/* Certified index lower bound for a Type-II orbit with itinerary w: per-segment
   rates N1*tau_j, plus the basin term N2*C_m*T, minus the 4n-per-crossing
   gluing/framing budget. */
double type2_lower_bound(const Word& w, int n, double N1, double N2, double T,
                         const std::vector<double>& segment_actions);

} // namespace hc::words
