#include "hc/word_combinatorics.hpp"

#include <algorithm>
#include <random>

#include "hc/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hc::words {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void check_word(const Word& w) {
    if (w.n < 2) throw InvalidData("alphabet size must be at least 2");
    if (w.letters.empty()) throw InvalidData("word must be non-empty");
    for (int l : w.letters)
        if (l < 0 || l >= w.n) throw InvalidData("letter out of range [0, n)");
}

} // namespace

Word make_word(std::vector<int> letters, int n) {
    Word w{std::move(letters), n};
    check_word(w);
    return w;
}

Word parse_word(const std::string& digits, int n) {
    std::vector<int> ls;
    ls.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '9') throw InvalidData("word letters must be digits");
        ls.push_back(c - '0');
    }
    return make_word(std::move(ls), n);
}

bool is_jumpy(const Word& w) {
    check_word(w);
    for (std::size_t i = 1; i < w.letters.size(); ++i)
        if (w.letters[i] == w.letters[i - 1]) return false;
    return true;
}

std::optional<Basin> find_basin(const Word& w) {
    check_word(w);
    const auto& l = w.letters;
    const long long m = (long long)l.size();
    // 1-based: for each start i the flank value k = l_{i-1} is forced; walk
    // right while dominated and close at the first matching flank (innermost).
    for (long long i = 2; i <= m - 1; ++i) {
        const int k = l[i - 2];
        if (k <= 0 || k >= w.n) continue;
        for (long long j = i; j <= m - 1; ++j) {
            if (l[j - 1] >= k) break;   // domination lost; no basin starts at i
            if (l[j] == k) return Basin{i, j, k};
        }
    }
    return std::nullopt;
}

bool has_basin(const Word& w) { return find_basin(w).has_value(); }

long long count_disjoint_basins(const Word& w) {
    check_word(w);
    const auto& l = w.letters;
    const long long m = (long long)l.size();
    long long count = 0;
    long long cursor = 0;  // 0-based leftmost position allowed for the next left flank
    for (long long f = cursor + 2; f <= m - 1; ++f) {  // f = right flank, 0-based
        const int k = l[f];
        if (k <= 0 || k >= w.n) continue;
        // innermost start for this flank; any start works for the greedy count
        for (long long s = f - 1; s >= cursor + 1; --s) {
            if (l[s] >= k) break;
            if (l[s - 1] == k) {
                ++count;
                cursor = f;
                f = cursor + 1;  // ++f of the outer loop lands on cursor+2
                break;
            }
        }
    }
    return count;
}

long long c_m(long long m, int n) {
    if (m < 1) throw InvalidData("word length must be positive");
    if (n < 2) throw InvalidData("alphabet size must be at least 2");
    if (n >= 63) return 1;  // 2^n exceeds any representable length
    return std::max(1LL, m >> n);
}

Word jumpy_word_from_rank(long long rank, int n, int length) {
    if (n < 2 || length < 1) throw InvalidData("bad jumpy-word shape");
    Word w;
    w.n = n;
    w.letters.resize(length);
    w.letters[0] = (int)(rank % n);
    rank /= n;
    for (int i = 1; i < length; ++i) {
        const int d = (int)(rank % (n - 1));
        rank /= (n - 1);
        w.letters[i] = d >= w.letters[i - 1] ? d + 1 : d;  // skip the previous letter
    }
    return w;
}

Word random_jumpy_word(int n, int length, std::uint64_t stream_seed) {
    if (n < 2 || length < 1) throw InvalidData("bad jumpy-word shape");
    std::mt19937_64 rng(splitmix64(stream_seed));
    Word w;
    w.n = n;
    w.letters.resize(length);
    w.letters[0] = (int)(rng() % (std::uint64_t)n);
    for (int i = 1; i < length; ++i) {
        const int d = (int)(rng() % (std::uint64_t)(n - 1));
        w.letters[i] = d >= w.letters[i - 1] ? d + 1 : d;
    }
    return w;
}

LemmaReport verify_word_lemma(int n, LemmaMode mode, long long samples, std::uint64_t seed,
                              const LemmaOptions& opt) {
    if (n < 2) throw InvalidData("word lemma needs n >= 2");
    if (n > 20) throw InvalidData("word length 2^n is out of reach for n > 20");
    const long long length = 1LL << n;

    LemmaReport rep;
    rep.n = n;
    rep.mode = mode;
    rep.word_length = length;
    rep.seed = seed;

    long long total = 0;
    if (mode == LemmaMode::Exhaustive) {
        // n*(n-1)^(length-1) words; refuse before materializing anything.
        total = n;
        for (long long i = 1; i < length; ++i) {
            if (total > opt.budget_cap / std::max(1, n - 1) + 1) {
                total = opt.budget_cap + 1;
                break;
            }
            total *= (n - 1);
        }
        if (total > opt.budget_cap)
            throw BudgetExceeded("exhaustive jumpy-word space exceeds the cap of " +
                                 std::to_string(opt.budget_cap) + " words");
    } else {
        if (samples < 1) throw InvalidData("randomized mode needs a positive sample count");
        total = samples;
    }

    std::vector<Word> bad;
    const auto word_at = [&](long long i) {
        return mode == LemmaMode::Exhaustive
                   ? jumpy_word_from_rank(i, n, (int)length)
                   : random_jumpy_word(n, (int)length,
                                       seed ^ (0x9E3779B97F4A7C15ULL * (std::uint64_t)(i + 1)));
    };

#pragma omp parallel for schedule(static) if (opt.parallel)
    for (long long i = 0; i < total; ++i) {
        const Word w = word_at(i);
        if (!has_basin(w)) {
#pragma omp critical
            bad.push_back(w);
        }
    }

    // Deterministic reduction regardless of thread interleaving.
    std::sort(bad.begin(), bad.end(),
              [](const Word& a, const Word& b) { return a.letters < b.letters; });
    if ((long long)bad.size() > opt.keep_counterexamples)
        bad.resize(opt.keep_counterexamples);
    rep.checked = total;
    rep.counterexamples = std::move(bad);
    return rep;
}

double type2_lower_bound(const Word& w, int n, double N1, double N2, double T,
                         const std::vector<double>& segment_actions) {
    check_word(w);
    if (!is_jumpy(w)) throw InvalidData("type2_lower_bound expects a jumpy word");
    const long long m = (long long)w.letters.size();
    if ((long long)segment_actions.size() != m - 1)
        throw LengthMismatch("need one segment action per adjacent letter pair (len(w)-1)");
    double sum = 0.0;
    for (double tau : segment_actions) sum += N1 * tau;
    return sum + N2 * (double)c_m(m, n) * T - 4.0 * (double)m * (double)n;
}

} // namespace hc::words
