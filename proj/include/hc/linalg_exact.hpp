#pragma once
#include <vector>

#include "hc/rational.hpp"

namespace hc {

// Dense exact-rational matrices; critical-point counts are small at desk scale,
// so plain Gaussian elimination over Q is the whole story.
using QMatrix = std::vector<std::vector<Rational>>;

std::size_t rank_exact(QMatrix m);

} // namespace hc
