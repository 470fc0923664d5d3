#include "hc/linalg_exact.hpp"

namespace hc {

std::size_t rank_exact(QMatrix m) {
    if (m.empty() || m[0].empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / m[rank][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

} // namespace hc
