#pragma once
#include <Eigen/Dense>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "hc/errors.hpp"

namespace hc::cz {

/* Index values are stored as twice the half-integer so endpoint crossings
   (weight 1/2) never touch floating point. */
struct IndexValue {
    long long twice = 0;

    bool integral() const { return twice % 2 == 0; }
    long long as_integer() const;            // throws InvalidData when half-integral
    double value() const { return static_cast<double>(twice) / 2.0; }
    std::string str() const;                 // "3" or "7/2"

    friend bool operator==(const IndexValue& a, const IndexValue& b) { return a.twice == b.twice; }
    friend bool operator!=(const IndexValue& a, const IndexValue& b) { return a.twice != b.twice; }
    friend IndexValue operator+(const IndexValue& a, const IndexValue& b) { return {a.twice + b.twice}; }
};

// Planar generators; a path is a direct sum of 2x2 blocks evolving for time T.
struct Rotation {
    double omega;                             // angle omega*t, counterclockwise
};
struct Hyperbolic {
    double a, b;                              // e^{tA}, A = [[0,b],[a,0]], a,b > 0
};
struct ConstantIdentity {};
using BlockGenerator = std::variant<Rotation, Hyperbolic, ConstantIdentity>;

struct BlockPath {
    std::vector<BlockGenerator> blocks;
    double T = 0.0;

    int dim() const { return 2 * static_cast<int>(blocks.size()); }
    Eigen::MatrixXd value(double t) const;
    Eigen::MatrixXd derivative(double t) const;
};

struct SampledPath {
    std::vector<double> times;                // increasing, starts at 0
    std::vector<Eigen::MatrixXd> frames;      // frames[0] = I
};

SampledPath expand_to_sampled(const BlockPath& path, int samples);

struct NumericOptions {
    double tol = 1e-9;        // kernel singular-value / degeneracy threshold
    int grid = 2048;          // det scan resolution
    double sympl_tol = 1e-8;  // ||M^T Omega M - Omega|| acceptance for samples
    bool parallel = true;     // OpenMP over the grid scan (serial reference otherwise)
};

/* Robbin-Salamon crossing-number index:
   mu = 1/2 sign G(0) + sum_interior sign G(t) + 1/2 sign G(T),
   G(t)(v) = Omega(v, Phi'(t) v) on ker(Phi(t) - I).  Directions fixed by the
   whole path (constant-identity planes) carry index 0 and are quotiented out
   before crossing detection; any other degeneracy is a NonRegularCrossing. */
IndexValue rs_index_numeric(const BlockPath& path, const NumericOptions& opt = {});
IndexValue rs_index_numeric(const SampledPath& path, const NumericOptions& opt = {});

/* Closed form per block: Hyperbolic and ConstantIdentity contribute 0;
   Rotation(omega) over [0,T] contributes 2*floor(omega*T/2pi)+1, or omega*T/pi
   when omega*T lands on 2*pi*Z (endpoint crossing). */
IndexValue rs_index_blocks(const BlockPath& path);

// Reduced index for a path in Sp(2n-2): mu + (n-3).
IndexValue reduced_index(const IndexValue& mu, int n);

struct ReturnMapInfo {
    std::vector<std::complex<double>> eigenvalues;
    int n_gamma = 0;          // real eigenvalues in the open interval (-1,0)
    bool degenerate = false;  // 1 is an eigenvalue
};

ReturnMapInfo classify_return_map(const BlockPath& path);
ReturnMapInfo classify_return_map(const Eigen::MatrixXd& end_frame, double tol = 1e-9);

// An orbit is bad exactly when it is an even multiple of one whose return map
// has an odd count of eigenvalues in (-1,0).
bool is_good(int n_gamma_simple, long long multiplicity);

// Standard symplectic form on interleaved planes: blocks [[0,1],[-1,0]].
Eigen::MatrixXd standard_omega(int dim);

} // namespace hc::cz
