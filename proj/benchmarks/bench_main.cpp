#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>

#include "hc/symplectic_index.hpp"
#include "hc/word_combinatorics.hpp"

/* Times the two OpenMP kernels against their serial reference paths: the
   det-grid scan behind rs_index_numeric and the jumpy-word lemma scan. The
   serial paths are the correctness reference, so the bench also insists the
   results agree bit-for-bit before reporting a speedup. */

namespace {

double best_of(int reps, const std::function<void()>& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        body();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void report(const char* label, double serial, double parallel, bool agree) {
    std::printf("%-36s %9.4fs  %9.4fs  %7.2fx  %s\n", label, serial, parallel,
                serial / parallel, agree ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    int reps = 3;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--reps") == 0 && i + 1 < argc) reps = std::atoi(argv[++i]);

    std::printf("%-36s %10s %11s %8s  %s\n", "kernel", "serial", "openmp", "speedup", "agree");
    bool all_agree = true;

    {
        hc::cz::BlockPath path;
        path.blocks = {hc::cz::Rotation{1.0},           hc::cz::Rotation{std::sqrt(2.0)},
                       hc::cz::Rotation{0.5 * std::exp(1.0)}, hc::cz::Hyperbolic{0.8, 1.1},
                       hc::cz::Rotation{std::sqrt(5.0)}, hc::cz::Hyperbolic{0.3, 0.6}};
        path.T = 11.0;
        hc::cz::NumericOptions opt;
        opt.grid = 1 << 15;

        long long serial_twice = 0, parallel_twice = 0;
        opt.parallel = false;
        double ts = best_of(reps, [&] { serial_twice = rs_index_numeric(path, opt).twice; });
        opt.parallel = true;
        double tp = best_of(reps, [&] { parallel_twice = rs_index_numeric(path, opt).twice; });

        bool agree = serial_twice == parallel_twice &&
                     serial_twice == rs_index_blocks(path).twice;
        all_agree = all_agree && agree;
        report("crossing grid scan (dim 12, 32k)", ts, tp, agree);
    }

    {
        hc::words::LemmaOptions opt;
        hc::words::LemmaReport rs, rp;
        opt.parallel = false;
        double ts = best_of(reps, [&] {
            rs = verify_word_lemma(4, hc::words::LemmaMode::Randomized, 300000, 42, opt);
        });
        opt.parallel = true;
        double tp = best_of(reps, [&] {
            rp = verify_word_lemma(4, hc::words::LemmaMode::Randomized, 300000, 42, opt);
        });

        bool agree = rs.checked == rp.checked &&
                     rs.counterexamples.size() == rp.counterexamples.size();
        all_agree = all_agree && agree;
        report("word lemma scan (n=4, 3e5 words)", ts, tp, agree);
    }

    {
        hc::words::LemmaOptions opt;
        hc::words::LemmaReport rs, rp;
        opt.parallel = false;
        double ts = best_of(reps, [&] {
            rs = verify_word_lemma(5, hc::words::LemmaMode::Randomized, 150000, 42, opt);
        });
        opt.parallel = true;
        double tp = best_of(reps, [&] {
            rp = verify_word_lemma(5, hc::words::LemmaMode::Randomized, 150000, 42, opt);
        });

        bool agree = rs.checked == rp.checked &&
                     rs.counterexamples.size() == rp.counterexamples.size();
        all_agree = all_agree && agree;
        report("word lemma scan (n=5, 1.5e5 words)", ts, tp, agree);
    }

    if (!all_agree) {
        std::fprintf(stderr, "serial and parallel kernels disagree\n");
        return 1;
    }
    return 0;
}
