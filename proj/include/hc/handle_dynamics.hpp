#pragma once
#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "hc/rational.hpp"
#include "hc/symplectic_index.hpp"

namespace hc::handle {

/* The model k-handle hypersurface in C^n:
       Sf(x,y,z) = b|x|^2 - b'|y|^2 + sum_l |z_l|^2 / c_l^2 = level,
   x,y in R^k, z in C^{n-k}.  Grading data (c_l^2, level) stays rational so
   degeneracy and floor arithmetic are exact; dynamics run in doubles. */
struct ModelHandle {
    int n = 2;
    int k = 0;
    Rational b;
    Rational b_prime;
    std::vector<Rational> c_sq;  // c_{k+1}^2 .. c_n^2
    Rational level;
};

void check_handle(const ModelHandle& h);  // throws InvalidData on malformed parameters

struct HandlePoint {
    Eigen::VectorXd x;   // size k
    Eigen::VectorXd y;   // size k
    Eigen::VectorXcd z;  // size n-k
};

HandlePoint zero_point(const ModelHandle& h);

double surface_value(const ModelHandle& h, const HandlePoint& p);

// X_Sf: xdot_j = 2b'y_j, ydot_j = 2b x_j, zdot_l = (2i/c_l^2) z_l.
HandlePoint hamiltonian_field(const ModelHandle& h, const HandlePoint& p);

// alpha_st(X_Sf) = 4b|x|^2 + 2b'|y|^2 + sum |z_l|^2/c_l^2 (= 3b|x|^2+3b'|y|^2+level on the level set).
double reeb_rescale(const ModelHandle& h, const HandlePoint& p);

HandlePoint flow_closed_form(const ModelHandle& h, const HandlePoint& p0, double t);
HandlePoint flow_numeric(const ModelHandle& h, const HandlePoint& p0, double t, long long steps);

struct ReebOrbit {
    int l = 0;                  // z-plane label in [k+1, n]
    long long m = 1;            // multiplicity
    Rational period_over_pi;    // Hamiltonian period / pi = m c_l^2
    Rational action_over_pi;    // action / pi = m c_l^2 level
    double hamiltonian_period = 0.0;
    double action = 0.0;
    cz::IndexValue mu;
    cz::IndexValue reduced;
    bool good = true;
    bool nondegenerate = true;
};

// sigma_l is nondegenerate at multiplicity m iff m c_l^2 / c_l'^2 is never an integer (l' != l).
bool orbit_nondegenerate(const ModelHandle& h, int l, long long m);

struct OrbitIndex {
    cz::IndexValue mu;
    cz::IndexValue reduced;
};

/* Exact closed form for nondegenerate orbits:
   mu = 2m + (n-k-1) + 2 sum_{l' != l} floor(m c_l^2 / c_l'^2), reduced = mu + (n-3). */
OrbitIndex orbit_index(const ModelHandle& h, int l, long long m);

/* Per-block index sum valid for resonant multiples too (endpoint crossings
   contribute 2x instead of 2 floor(x)+1); equals orbit_index when nondegenerate. */
cz::IndexValue orbit_index_blocksum(const ModelHandle& h, int l, long long m);

// Linearized flow along sigma_l^m in Hamiltonian time: k hyperbolic blocks plus n-k rotations.
cz::BlockPath orbit_block_path(const ModelHandle& h, int l, long long m);
cz::BlockPath linearized_path(const ModelHandle& h, double duration);

// All sigma_l^m with action <= cutoff*pi, sorted by exact action (ties resolved by l, m).
std::vector<ReebOrbit> enumerate_orbits(const ModelHandle& h, const Rational& cutoff_over_pi);

/* Rescales c_sq so that n_o*c_n^2 < c_l^2 for l < n and every orbit up to
   multiplicity n_o is nondegenerate; then o(sigma_n^m) = 2n-k-4+2m for m <= n_o. */
ModelHandle tune_principal(const ModelHandle& h, long long n_o);

struct SegmentIndex {
    cz::IndexValue mu_segment;
    double bound = 0.0;          // N*action_T - 2n with N = (sum_l 2/c_l^2)/(6C+4*level)
    double hamiltonian_time = 0.0;
};

/* Index of the linearized flow along the trajectory from p0 accumulating Reeb
   action action_T; the vector field is linear, so the linearization is the
   same block path for every start and only the time conversion depends on p0. */
SegmentIndex segment_index_growth(const ModelHandle& h, const HandlePoint& p0, double action_T,
                                  double belt_C = 1.0);

} // namespace hc::handle
