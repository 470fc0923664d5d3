/* Acceptance gate: nine end-to-end checks, one line each, nonzero exit on any
   failure. Each check carries the wall-clock budget it must finish inside. */
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hc/contact_homology.hpp"
#include "hc/handle_dynamics.hpp"
#include "hc/morse_complex.hpp"
#include "hc/symplectic_index.hpp"
#include "hc/word_combinatorics.hpp"

using namespace hc;

namespace {

std::string g_detail;  // set by a failing criterion body

bool expect(bool ok, const std::string& detail) {
    if (!ok && g_detail.empty()) g_detail = detail;
    return ok;
}

double dbl(const Rational& r) { return mpq_class(r).get_d(); }

// ---------------------------------------------------------------- criterion 1
// Hyperbolic paths carry index zero; a speed-2 rotation climbs the odd ladder
// with even values exactly at the resonant durations.
bool c1_crossing_index_forms() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> par(0.2, 5.0), dur(0.1, 10.0);
    for (int i = 0; i < 50; ++i) {
        cz::BlockPath p;
        p.blocks = {cz::Hyperbolic{par(rng), par(rng)}};
        p.T = dur(rng);
        if (!expect(cz::rs_index_blocks(p).twice == 0, "hyperbolic closed form not 0")) return false;
        if (i < 10 && !expect(cz::rs_index_numeric(p).twice == 0, "hyperbolic numeric not 0"))
            return false;
    }
    for (int j = 0; j <= 6; ++j) {
        cz::BlockPath p;
        p.blocks = {cz::Rotation{2.0}};
        p.T = (j + 0.5) * M_PI;
        const auto mu = cz::rs_index_blocks(p);
        if (!expect(mu.twice == 2 * (2 * j + 1), "rotation midpoint index != 2j+1")) return false;
        if (!expect(cz::rs_index_numeric(p) == mu, "numeric route disagrees at midpoint"))
            return false;
    }
    for (int j = 1; j <= 6; ++j) {
        cz::BlockPath p;
        p.blocks = {cz::Rotation{2.0}};
        p.T = j * M_PI;
        if (!expect(cz::rs_index_blocks(p).twice == 2 * (2 * j), "resonant index != 2j"))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 2
// The closed-form flow is the ground truth for a 1e5-step RK4 integration, and
// both conserve the defining function and every z-plane radius.
bool c2_flow_oracle() {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> pick_n(2, 5);
    std::uniform_int_distribution<long> num(1, 3), den(6, 12), cnum(1, 4), cden(2, 5);
    std::uniform_real_distribution<double> small(-0.5, 0.5), unit(-1.0, 1.0);
    for (int it = 0; it < 100; ++it) {
        handle::ModelHandle h;
        h.n = pick_n(rng);
        h.k = (int)(rng() % (unsigned)h.n);
        h.b = Rational(num(rng), den(rng));
        h.b_prime = h.b / Rational(2 + (long)(rng() % 3));
        for (int l = 0; l < h.n - h.k; ++l) h.c_sq.push_back(Rational(cnum(rng), cden(rng)));
        h.level = 1;

        handle::HandlePoint p0;
        p0.x.resize(h.k);
        p0.y.resize(h.k);
        for (int i = 0; i < h.k; ++i) {
            p0.x[i] = small(rng);
            p0.y[i] = small(rng);
        }
        p0.z.resize(h.n - h.k);
        for (int l = 0; l < h.n - h.k; ++l) p0.z[l] = {unit(rng), unit(rng)};

        const double sf0 = handle::surface_value(h, p0);
        for (double t : {1.3, 5.0, 10.0}) {
            const auto pc = handle::flow_closed_form(h, p0, t);
            const auto pn = handle::flow_numeric(h, p0, t, 100000);
            for (int i = 0; i < h.k; ++i) {
                if (!expect(std::abs(pc.x[i] - pn.x[i]) <= 1e-8, "x coordinate drift > 1e-8"))
                    return false;
                if (!expect(std::abs(pc.y[i] - pn.y[i]) <= 1e-8, "y coordinate drift > 1e-8"))
                    return false;
            }
            for (int l = 0; l < h.n - h.k; ++l)
                if (!expect(std::abs(pc.z[l] - pn.z[l]) <= 1e-8, "z coordinate drift > 1e-8"))
                    return false;
            for (const auto* p : {&pc, &pn}) {
                if (!expect(std::abs(handle::surface_value(h, *p) - sf0) <= 1e-10,
                            "defining function not conserved to 1e-10"))
                    return false;
                for (int l = 0; l < h.n - h.k; ++l)
                    if (!expect(std::abs(std::abs(p->z[l]) - std::abs(p0.z[l])) <= 1e-10,
                                "z-plane radius not conserved to 1e-10"))
                        return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 3
// Full orbit table of the reference handle up to action 3*pi: exact rational
// periods/actions, and the closed-form index equals the crossing-number scan
// on the assembled linearized path for every orbit, resonant multiples included.
bool c3_orbit_table() {
    handle::ModelHandle h;
    h.n = 3;
    h.k = 1;
    h.b = 1;
    h.b_prime = Rational(1, 2);
    h.c_sq = {Rational(2, 7), Rational(1, 5)};
    h.level = 1;

    const auto orbits = handle::enumerate_orbits(h, Rational(3));
    if (!expect(orbits.size() == 25, "expected 25 orbits below action 3*pi")) return false;
    int resonant = 0;
    for (const auto& o : orbits) {
        const Rational csq = h.c_sq[o.l - h.k - 1];
        if (!expect(o.period_over_pi == Rational((long)o.m) * csq, "period != m*c_l^2"))
            return false;
        if (!expect(o.action_over_pi == Rational((long)o.m) * csq * h.level,
                    "action != m*c_l^2*level"))
            return false;
        if (!o.nondegenerate) ++resonant;
        const auto numeric = cz::rs_index_numeric(handle::orbit_block_path(h, o.l, o.m));
        if (!expect(o.mu == numeric,
                    "closed-form index != numeric index for l=" + std::to_string(o.l) +
                        ", m=" + std::to_string(o.m)))
            return false;
    }
    return expect(resonant == 2, "expected exactly 2 resonant orbits");
}

// ---------------------------------------------------------------- criterion 4
// Index laws on tuned handles: goodness, the 2n-k-2 floor and parity, gaps of
// at least two per extra multiplicity, and the exact principal-orbit ladder.
bool c4_tuned_handle_index_laws() {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<long> cnum(1, 5), cden(1, 4);
    for (int it = 0; it < 200; ++it) {
        handle::ModelHandle base;
        base.n = 2 + (int)(rng() % 4);
        base.k = (int)(rng() % (unsigned)base.n);
        base.b = Rational(1 + (long)(rng() % 3), 1 + (long)(rng() % 2));
        base.b_prime = base.b / Rational(2 + (long)(rng() % 4));
        for (int l = 0; l < base.n - base.k; ++l)
            base.c_sq.push_back(Rational(cnum(rng), cden(rng)));
        base.level = Rational(1 + (long)(rng() % 3), 1 + (long)(rng() % 2));
        const long long n_o = 2 + (long long)(rng() % 3);

        const auto h = handle::tune_principal(base, n_o);
        Rational cmax = h.c_sq.front();
        for (const auto& c : h.c_sq) cmax = std::max(cmax, c);
        for (const auto& o : handle::enumerate_orbits(h, Rational(2) * cmax * h.level))
            if (!expect(o.good, "tuned handle produced a bad orbit")) return false;

        const int floor_val = 2 * h.n - h.k - 2;
        for (int l = h.k + 1; l <= h.n; ++l) {
            long long prev = 0;
            for (long long m = 1; m <= n_o; ++m) {
                const auto oi = handle::orbit_index(h, l, m);
                const long long r = oi.reduced.as_integer();
                if (!expect(r >= floor_val, "reduced index below 2n-k-2")) return false;
                if (!expect((r - floor_val) % 2 == 0, "reduced index parity off")) return false;
                if (m > 1 && !expect(r - prev >= 2, "multiplicity gap under 2")) return false;
                prev = r;
            }
        }
        for (long long m = 1; m <= n_o; ++m) {
            const auto oi = handle::orbit_index(h, h.n, m);
            if (!expect(oi.reduced.as_integer() == 2 * h.n - h.k - 4 + 2 * m,
                        "principal orbit ladder broken"))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 5
// Basin lemma: exhaustive at n=2,3, a million random words at n=4, and the
// disjoint-basin count floor on ten thousand random jumpy words.
bool c5_word_lemma() {
    auto r2 = words::verify_word_lemma(2, words::LemmaMode::Exhaustive);
    if (!expect(r2.checked == 2 && r2.counterexamples.empty(), "n=2 exhaustive scan failed"))
        return false;
    auto r3 = words::verify_word_lemma(3, words::LemmaMode::Exhaustive);
    if (!expect(r3.checked == 384 && r3.counterexamples.empty(), "n=3 exhaustive scan failed"))
        return false;
    auto r4 = words::verify_word_lemma(4, words::LemmaMode::Randomized, 1000000, 20260815);
    if (!expect(r4.checked == 1000000 && r4.counterexamples.empty(), "n=4 random scan failed"))
        return false;

    std::mt19937_64 rng(505);
    for (int it = 0; it < 10000; ++it) {
        const int n = 2 + (int)(rng() % 3);
        const int len = (1 << n) + (int)(rng() % 121);
        const auto w = words::random_jumpy_word(n, len, rng());
        if (!expect(words::count_disjoint_basins(w) >= (long long)(len >> n),
                    "disjoint-basin count below floor(len/2^n)"))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 6
// Chain-level ranks must equal the direct graded-sum formula on random valid
// Morse inputs, for the boundary and its stabilization alike.
std::vector<morse::MorseData> g_pool;  // reused by criterion 8

bool c6_route_agreement() {
    std::mt19937_64 rng(606);
    const contact::Window w{0, 20};
    for (int it = 0; it < 100; ++it) {
        morse::MorseData d;
        d.n = 2 + (int)(rng() % 3);
        d.points.push_back({"min", 0, std::nullopt});
        for (int j = 1; j < d.n; ++j) {
            const int cnt = (int)(rng() % 4);
            for (int i = 0; i < cnt && d.points.size() < 12; ++i)
                d.points.push_back({"p" + std::to_string(j) + "_" + std::to_string(i), j,
                                    std::nullopt});
        }
        if (d.n >= 2) {
            const int band = 1 + (int)(rng() % (unsigned)(d.n - 1));
            std::uniform_int_distribution<long long> coeff(-2, 2);
            for (const auto& p : d.points)
                for (const auto& q : d.points)
                    if (p.index == band - 1 && q.index == band && rng() % 2)
                        d.boundary[{p.id, q.id}] = coeff(rng);
        }
        if (!expect(morse::validate(d).empty(), "random Morse data failed validation"))
            return false;

        const long long m_o = contact::default_m_o(w);
        for (auto target : {contact::Target::M, contact::Target::MPrime}) {
            const auto cx = contact::build_hc_complex(d, m_o, w, target);
            const auto chain = contact::hc_ranks_chain(cx);
            for (int i = w.lo; i <= w.hi; ++i)
                if (!expect(chain.at(i) == contact::hc_ranks_closed_form(d, i, target),
                            "chain and closed-form ranks disagree at degree " +
                                std::to_string(i)))
                    return false;
        }
        g_pool.push_back(d);
    }
    return true;
}

// ---------------------------------------------------------------- criterion 7
// Named boundaries: the sphere carries rank one in even degrees from 2n-2 up,
// and an s-fold connected sum of S^1 x S^2 adds rank s in the odd degrees.
bool c7_named_examples() {
    const contact::Window w{0, 20};
    for (int n : {2, 3, 4}) {
        morse::MorseData ball;
        ball.n = n;
        ball.points.push_back({"min", 0, std::nullopt});
        const auto cx = contact::build_hc_complex(ball, contact::default_m_o(w), w,
                                                  contact::Target::M);
        const auto chain = contact::hc_ranks_chain(cx);
        for (int i = 0; i <= 20; ++i) {
            const long long want = (i >= 2 * n - 2 && (i - (2 * n - 2)) % 2 == 0) ? 1 : 0;
            if (!expect(chain.at(i) == want, "sphere rank wrong at degree " + std::to_string(i)))
                return false;
            if (!expect(contact::hc_ranks_closed_form(ball, i, contact::Target::M) == want,
                        "sphere closed-form rank wrong"))
                return false;
        }
        g_pool.push_back(ball);
    }
    for (int s : {1, 2, 3}) {
        morse::MorseData wedge;
        wedge.n = 2;
        wedge.points.push_back({"min", 0, std::nullopt});
        for (int i = 0; i < s; ++i)
            wedge.points.push_back({"h" + std::to_string(i), 1, std::nullopt});
        const auto cx = contact::build_hc_complex(wedge, contact::default_m_o(w), w,
                                                  contact::Target::M);
        const auto chain = contact::hc_ranks_chain(cx);
        for (int i = 0; i <= 20; ++i) {
            long long want = 0;
            if (i >= 1 && i % 2 == 1) want = s;
            if (i >= 2 && i % 2 == 0) want = 1;
            if (!expect(chain.at(i) == want, "connected-sum rank wrong at degree " +
                                                 std::to_string(i)))
                return false;
            if (!expect(contact::hc_ranks_closed_form(wedge, i, contact::Target::M) == want,
                        "connected-sum closed-form rank wrong"))
                return false;
        }
        g_pool.push_back(wedge);
    }
    return true;
}

// ---------------------------------------------------------------- criterion 8
// Stabilizing the boundary shifts every rank up by exactly two degrees, on all
// of the inputs from criteria 6 and 7.
bool c8_degree_shift() {
    if (!expect(!g_pool.empty(), "no pooled inputs (criteria 6-7 must run first)")) return false;
    for (const auto& d : g_pool) {
        const auto rep = contact::check_degree_shift(d, {0, 20});
        if (!expect(rep.all_match, "degree shift violated")) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 9
// Thin-handle sweep: along any non-periodic trajectory the crossing index
// outgrows the linear budget N*action - 2n.
bool c9_segment_growth() {
    handle::ModelHandle h;
    h.n = 3;
    h.k = 1;
    h.b = Rational(1, 200);
    h.b_prime = Rational(1, 400);
    h.c_sq = {Rational(1, 100), Rational(1, 101)};
    h.level = 1;

    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> hyp(-0.25, 0.25), frac(0.2, 0.8),
        phase(0.0, 2.0 * M_PI), act(1.0, 10.0);
    for (int it = 0; it < 100; ++it) {
        handle::HandlePoint p0;
        p0.x.resize(1);
        p0.y.resize(1);
        do {
            p0.x[0] = hyp(rng);
            p0.y[0] = hyp(rng);
        } while (p0.x[0] == 0.0 && p0.y[0] == 0.0);  // keep the start non-periodic
        const double rest = dbl(h.level) - dbl(h.b) * p0.x[0] * p0.x[0] +
                            dbl(h.b_prime) * p0.y[0] * p0.y[0];
        const double f = frac(rng);
        p0.z.resize(2);
        p0.z[0] = std::polar(std::sqrt(f * rest * dbl(h.c_sq[0])), phase(rng));
        p0.z[1] = std::polar(std::sqrt((1.0 - f) * rest * dbl(h.c_sq[1])), phase(rng));

        const auto s = handle::segment_index_growth(h, p0, act(rng));
        if (!expect(s.mu_segment.value() > s.bound, "segment index below the linear budget"))
            return false;
    }
    return true;
}

struct Criterion {
    int id;
    const char* label;
    double budget_s;
    bool (*body)();
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "closed-form crossing indices", 1.0, c1_crossing_index_forms},
        {2, "flow closed form vs RK4", 30.0, c2_flow_oracle},
        {3, "reference-handle orbit table", 5.0, c3_orbit_table},
        {4, "tuned-handle index laws", 10.0, c4_tuned_handle_index_laws},
        {5, "jumpy-word basin lemma", 60.0, c5_word_lemma},
        {6, "chain vs closed-form ranks", 30.0, c6_route_agreement},
        {7, "sphere and connected-sum gradings", 5.0, c7_named_examples},
        {8, "degree-two stabilization shift", 5.0, c8_degree_shift},
        {9, "thin-handle segment index growth", 60.0, c9_segment_growth},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        g_detail.clear();
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = c.body();
        } catch (const std::exception& e) {
            g_detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && elapsed >= c.budget_s) {
            ok = false;
            g_detail = "over the " + std::to_string(c.budget_s) + "s budget";
        }
        if (ok) {
            std::printf("criterion %d: PASS — %s (%.2fs)\n", c.id, c.label, elapsed);
        } else {
            std::printf("criterion %d: FAIL — %s: %s (%.2fs)\n", c.id, c.label,
                        g_detail.empty() ? "unspecified" : g_detail.c_str(), elapsed);
            ++failures;
        }
    }
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
