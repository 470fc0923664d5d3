#pragma once
#include <stdexcept>
#include <string>

namespace hc {

/* Exit-code buckets used by the CLI:
   2 parse, 3 invalid data, 4 degenerate level, 5 theorem-check failure, 6 budget. */

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSymplectic : InvalidData {
    using InvalidData::InvalidData;
};
struct NonRegularCrossing : InvalidData {
    using InvalidData::InvalidData;
};
struct OffLevelSet : InvalidData {
    using InvalidData::InvalidData;
};
struct DegenerateOrbit : InvalidData {
    using InvalidData::InvalidData;
};
struct LengthMismatch : InvalidData {
    using InvalidData::InvalidData;
};
struct BoundarySquareNonzero : InvalidData {
    using InvalidData::InvalidData;
};

struct DegenerateLevel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TheoremCheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hc
