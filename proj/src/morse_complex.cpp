#include "hc/morse_complex.hpp"

#include <algorithm>
#include <set>

#include "hc/errors.hpp"

namespace hc::morse {

namespace {

std::map<std::string, int> id_to_index(const MorseData& d) {
    std::map<std::string, int> m;
    for (const auto& p : d.points) m.emplace(p.id, p.index);
    return m;
}

std::vector<int> slots_of_index(const MorseData& d, int j) {
    std::vector<int> out;
    for (int i = 0; i < (int)d.points.size(); ++i)
        if (d.points[i].index == j) out.push_back(i);
    return out;
}

int max_index(const MorseData& d) {
    int mx = -1;
    for (const auto& p : d.points) mx = std::max(mx, p.index);
    return mx;
}

} // namespace

std::string violation_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::IndexRange: return "IndexRange";
        case ViolationKind::Subcriticality: return "Subcriticality";
        case ViolationKind::UniqueMinimum: return "UniqueMinimum";
        case ViolationKind::BadPair: return "BadPair";
        case ViolationKind::BoundarySquare: return "BoundarySquare";
        case ViolationKind::HOrdering: return "HOrdering";
    }
    return "Unknown";
}

std::vector<Violation> validate(const MorseData& d) {
    std::vector<Violation> out;
    if (d.n < 2) out.push_back({ViolationKind::IndexRange, "n must be at least 2"});

    std::set<std::string> seen;
    long long minima = 0;
    for (const auto& p : d.points) {
        if (!seen.insert(p.id).second)
            out.push_back({ViolationKind::BadPair, "duplicate critical point id '" + p.id + "'"});
        if (p.index < 0)
            out.push_back({ViolationKind::IndexRange, "negative index at '" + p.id + "'"});
        else if (p.index >= d.n)
            out.push_back({ViolationKind::Subcriticality,
                           "'" + p.id + "' has index " + std::to_string(p.index) +
                               " >= n; the filling must be subcritical"});
        if (p.index == 0) ++minima;
    }
    if (minima != 1 && !d.allow_multiple_minima)
        out.push_back({ViolationKind::UniqueMinimum,
                       "expected exactly one index-0 point, found " + std::to_string(minima)});

    auto idx = id_to_index(d);
    bool pairs_ok = true;
    for (const auto& [key, a] : d.boundary) {
        (void)a;
        const auto& [p, q] = key;
        auto ip = idx.find(p), iq = idx.find(q);
        if (ip == idx.end() || iq == idx.end()) {
            out.push_back({ViolationKind::BadPair, "boundary pair (" + p + ", " + q +
                                                       ") references an unknown point"});
            pairs_ok = false;
        } else if (iq->second != ip->second + 1) {
            out.push_back({ViolationKind::BadPair,
                           "boundary pair (" + p + ", " + q + ") must drop the index by one"});
            pairs_ok = false;
        }
    }

    // d∘d over Z needs well-formed pairs first; skip if the shape is broken.
    if (pairs_ok && seen.size() == d.points.size()) {
        const int mx = max_index(d);
        for (int j = 1; j + 1 <= mx; ++j) {
            QMatrix a = boundary_matrix(d, j);       // C_j -> C_{j-1}
            QMatrix b = boundary_matrix(d, j + 1);   // C_{j+1} -> C_j
            if (a.empty() || b.empty() || a[0].empty() || b[0].empty()) continue;
            bool bad = false;
            for (std::size_t r = 0; r < a.size() && !bad; ++r)
                for (std::size_t c = 0; c < b[0].size() && !bad; ++c) {
                    Rational s = 0;
                    for (std::size_t t = 0; t < b.size(); ++t) s += a[r][t] * b[t][c];
                    if (s != 0) bad = true;
                }
            if (bad)
                out.push_back({ViolationKind::BoundarySquare,
                               "d∘d is nonzero from index " + std::to_string(j + 1)});
        }
    }

    for (const auto& p : d.points) {
        if (!p.h_value) continue;
        for (const auto& q : d.points) {
            if (!q.h_value || p.index >= q.index) continue;
            if (!(*p.h_value < *q.h_value))
                out.push_back({ViolationKind::HOrdering,
                               "h('" + p.id + "') must be below h('" + q.id +
                                   "') since its index is lower"});
        }
    }
    return out;
}

long long count_index(const MorseData& d, int j) {
    return (long long)slots_of_index(d, j).size();
}

QMatrix boundary_matrix(const MorseData& d, int j) {
    const auto rows = slots_of_index(d, j - 1);
    const auto cols = slots_of_index(d, j);
    QMatrix m(rows.size(), std::vector<Rational>(cols.size(), Rational(0)));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) {
            auto it = d.boundary.find({d.points[rows[r]].id, d.points[cols[c]].id});
            if (it != d.boundary.end()) m[r][c] = make_rational(it->second);
        }
    return m;
}

long long GradedRanks::at(int degree) const {
    auto it = ranks.find(degree);
    return it == ranks.end() ? 0 : it->second;
}

GradedRanks homology_ranks(const MorseData& d) {
    auto viol = validate(d);
    if (!viol.empty())
        throw InvalidData("Morse data invalid: " + violation_name(viol.front().kind) + " — " +
                          viol.front().detail);
    GradedRanks g;
    const int mx = max_index(d);
    for (int j = 0; j <= mx; ++j) {
        const long long cnt = count_index(d, j);
        const long long r_in = rank_exact(boundary_matrix(d, j));
        const long long r_out = rank_exact(boundary_matrix(d, j + 1));
        g.ranks[j] = cnt - r_in - r_out;
    }
    return g;
}

} // namespace hc::morse
