#include "hc/handle_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "hc/errors.hpp"

namespace hc::handle {

namespace {

constexpr double kPi = 3.14159265358979323846;

double dbl(const Rational& r) { return rational_double(r); }

int plane_slot(const ModelHandle& h, int l) {
    if (l < h.k + 1 || l > h.n) throw InvalidData("z-plane label out of range");
    return l - (h.k + 1);
}

} // namespace

void check_handle(const ModelHandle& h) {
    if (h.n < 2) throw InvalidData("handle dimension n must be at least 2");
    if (h.k < 0 || h.k >= h.n) throw InvalidData("handle index k must satisfy 0 <= k < n");
    if (h.b_prime <= 0 || h.b <= h.b_prime)
        throw InvalidData("handle coefficients must satisfy b > b' > 0");
    if ((int)h.c_sq.size() != h.n - h.k) throw InvalidData("expected n-k squared radii c_l^2");
    for (const auto& c : h.c_sq)
        if (c <= 0) throw InvalidData("squared radii c_l^2 must be positive");
}

HandlePoint zero_point(const ModelHandle& h) {
    HandlePoint p;
    p.x = Eigen::VectorXd::Zero(h.k);
    p.y = Eigen::VectorXd::Zero(h.k);
    p.z = Eigen::VectorXcd::Zero(h.n - h.k);
    return p;
}

double surface_value(const ModelHandle& h, const HandlePoint& p) {
    double v = dbl(h.b) * p.x.squaredNorm() - dbl(h.b_prime) * p.y.squaredNorm();
    for (int i = 0; i < p.z.size(); ++i) v += std::norm(p.z[i]) / dbl(h.c_sq[i]);
    return v;
}

HandlePoint hamiltonian_field(const ModelHandle& h, const HandlePoint& p) {
    HandlePoint v;
    v.x = 2.0 * dbl(h.b_prime) * p.y;
    v.y = 2.0 * dbl(h.b) * p.x;
    v.z.resize(p.z.size());
    for (int i = 0; i < p.z.size(); ++i)
        v.z[i] = std::complex<double>(0.0, 2.0 / dbl(h.c_sq[i])) * p.z[i];
    return v;
}

double reeb_rescale(const ModelHandle& h, const HandlePoint& p) {
    // alpha_st(X) = 4b|x|^2 + 2b'|y|^2 + sum |z_l|^2/c_l^2; on the level set this
    // equals 3b|x|^2 + 3b'|y|^2 + level, and the difference of the two
    // expressions is exactly Sf(p) - level, so the identity check *is* the
    // membership check.
    const double lvl = dbl(h.level);
    if (std::abs(surface_value(h, p) - lvl) > 1e-8 * std::max(1.0, std::abs(lvl)))
        throw OffLevelSet("point is not on the level set");
    double v = 4.0 * dbl(h.b) * p.x.squaredNorm() + 2.0 * dbl(h.b_prime) * p.y.squaredNorm();
    for (int i = 0; i < p.z.size(); ++i) v += std::norm(p.z[i]) / dbl(h.c_sq[i]);
    return v;
}

HandlePoint flow_closed_form(const ModelHandle& h, const HandlePoint& p0, double t) {
    HandlePoint p;
    const double b = dbl(h.b), bp = dbl(h.b_prime);
    if (h.k > 0) {
        const double rho = 2.0 * std::sqrt(b * bp);
        const double ch = std::cosh(rho * t), sh = std::sinh(rho * t);
        p.x = ch * p0.x + std::sqrt(bp / b) * sh * p0.y;
        p.y = ch * p0.y + std::sqrt(b / bp) * sh * p0.x;
    } else {
        p.x = p0.x;
        p.y = p0.y;
    }
    p.z.resize(p0.z.size());
    for (int i = 0; i < p0.z.size(); ++i) {
        const double th = 2.0 * t / dbl(h.c_sq[i]);
        p.z[i] = p0.z[i] * std::polar(1.0, th);
    }
    return p;
}

HandlePoint flow_numeric(const ModelHandle& h, const HandlePoint& p0, double t, long long steps) {
    if (steps < 1) throw InvalidData("flow_numeric needs at least one step");
    auto axpy = [](HandlePoint a, double s, const HandlePoint& b) {
        a.x += s * b.x;
        a.y += s * b.y;
        a.z += s * b.z;
        return a;
    };
    HandlePoint p = p0;
    const double dt = t / (double)steps;
    for (long long i = 0; i < steps; ++i) {
        HandlePoint k1 = hamiltonian_field(h, p);
        HandlePoint k2 = hamiltonian_field(h, axpy(p, dt / 2.0, k1));
        HandlePoint k3 = hamiltonian_field(h, axpy(p, dt / 2.0, k2));
        HandlePoint k4 = hamiltonian_field(h, axpy(p, dt, k3));
        p.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        p.y += dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        p.z += dt / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
    }
    return p;
}

bool orbit_nondegenerate(const ModelHandle& h, int l, long long m) {
    check_handle(h);
    if (m < 1) throw InvalidData("orbit multiplicity must be positive");
    const int slot = plane_slot(h, l);
    for (int j = 0; j < (int)h.c_sq.size(); ++j) {
        if (j == slot) continue;
        Rational ratio = make_rational(m) * h.c_sq[slot] / h.c_sq[j];
        if (rational_is_integer(ratio)) return false;
    }
    return true;
}

OrbitIndex orbit_index(const ModelHandle& h, int l, long long m) {
    check_handle(h);
    if (m < 1) throw InvalidData("orbit multiplicity must be positive");
    const int slot = plane_slot(h, l);
    if (!orbit_nondegenerate(h, l, m))
        throw DegenerateOrbit("orbit sigma_" + std::to_string(l) + "^" + std::to_string(m) +
                              " is degenerate (resonant rotation angle)");
    long long mu = 2 * m + (h.n - h.k - 1);
    for (int j = 0; j < (int)h.c_sq.size(); ++j) {
        if (j == slot) continue;
        Rational ratio = make_rational(m) * h.c_sq[slot] / h.c_sq[j];
        mu += 2 * floor_long(ratio);
    }
    OrbitIndex oi;
    oi.mu = cz::IndexValue{2 * mu};
    oi.reduced = cz::reduced_index(oi.mu, h.n);
    return oi;
}

cz::IndexValue orbit_index_blocksum(const ModelHandle& h, int l, long long m) {
    check_handle(h);
    if (m < 1) throw InvalidData("orbit multiplicity must be positive");
    const int slot = plane_slot(h, l);
    // Hyperbolic planes contribute nothing; the orbit's own plane closes up
    // exactly (angle 2*pi*m) and gives 2m; the rest give 2x on resonance and
    // 2*floor(x)+1 otherwise, x = m c_l^2/c_l'^2.
    long long mu = 2 * m;
    for (int j = 0; j < (int)h.c_sq.size(); ++j) {
        if (j == slot) continue;
        Rational ratio = make_rational(m) * h.c_sq[slot] / h.c_sq[j];
        if (rational_is_integer(ratio))
            mu += 2 * floor_long(ratio);
        else
            mu += 2 * floor_long(ratio) + 1;
    }
    return cz::IndexValue{2 * mu};
}

cz::BlockPath linearized_path(const ModelHandle& h, double duration) {
    check_handle(h);
    cz::BlockPath path;
    path.T = duration;
    for (int j = 0; j < h.k; ++j)
        path.blocks.push_back(cz::Hyperbolic{2.0 * dbl(h.b), 2.0 * dbl(h.b_prime)});
    for (const auto& c : h.c_sq) path.blocks.push_back(cz::Rotation{2.0 / dbl(c)});
    return path;
}

cz::BlockPath orbit_block_path(const ModelHandle& h, int l, long long m) {
    check_handle(h);
    if (m < 1) throw InvalidData("orbit multiplicity must be positive");
    const int slot = plane_slot(h, l);
    return linearized_path(h, kPi * (double)m * dbl(h.c_sq[slot]));
}

std::vector<ReebOrbit> enumerate_orbits(const ModelHandle& h, const Rational& cutoff_over_pi) {
    check_handle(h);
    if (h.level <= 0)
        throw DegenerateLevel("level must be positive to cut out a contact hypersurface");
    std::vector<ReebOrbit> out;
    if (cutoff_over_pi <= 0) return out;
    for (int j = 0; j < (int)h.c_sq.size(); ++j) {
        const int l = h.k + 1 + j;
        const Rational step = h.c_sq[j] * h.level;  // action/pi of the simple orbit
        const Rational mmax_q = cutoff_over_pi / step;
        const long long mmax = floor_long(mmax_q);
        long long n_gamma = 0;
        if (mmax >= 1)
            n_gamma = cz::classify_return_map(orbit_block_path(h, l, 1)).n_gamma;
        for (long long m = 1; m <= mmax; ++m) {
            ReebOrbit o;
            o.l = l;
            o.m = m;
            o.period_over_pi = make_rational(m) * h.c_sq[j];
            o.action_over_pi = make_rational(m) * step;
            o.hamiltonian_period = kPi * dbl(o.period_over_pi);
            o.action = kPi * dbl(o.action_over_pi);
            o.nondegenerate = orbit_nondegenerate(h, l, m);
            o.mu = orbit_index_blocksum(h, l, m);
            o.reduced = cz::reduced_index(o.mu, h.n);
            o.good = cz::is_good(n_gamma, m);
            out.push_back(std::move(o));
        }
    }
    std::sort(out.begin(), out.end(), [](const ReebOrbit& a, const ReebOrbit& b) {
        if (a.action_over_pi != b.action_over_pi) return a.action_over_pi < b.action_over_pi;
        if (a.l != b.l) return a.l < b.l;
        return a.m < b.m;
    });
    return out;
}

ModelHandle tune_principal(const ModelHandle& h, long long n_o) {
    check_handle(h);
    if (n_o < 1) throw InvalidData("tune_principal needs a positive multiplicity bound");
    const int planes = h.n - h.k;
    std::vector<Integer> d;
    d.reserve(planes);
    for (int j = 0; j < planes; ++j) {
        Integer cand = (j == 0) ? Integer(make_integer(n_o) + 1)
                                : Integer(d.back() * make_integer(n_o) + 1);
        auto coprime_to_all = [&](const Integer& c) {
            for (const auto& prev : d) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), prev.get_mpz_t());
                if (g != 1) return false;
            }
            return true;
        };
        while (!coprime_to_all(cand)) cand += 1;
        d.push_back(cand);
    }
    ModelHandle out = h;
    for (int j = 0; j < planes; ++j) out.c_sq[j] = Rational(1) / Rational(d[j]);
    return out;
}

SegmentIndex segment_index_growth(const ModelHandle& h, const HandlePoint& p0, double action_T,
                                  double belt_C) {
    check_handle(h);
    if (h.level <= 0)
        throw DegenerateLevel("level must be positive to cut out a contact hypersurface");
    if (!(action_T > 0)) throw InvalidData("segment action must be positive");
    if (!(belt_C > 0)) throw InvalidData("belt constant must be positive");
    const double c = dbl(h.level);
    if (std::abs(surface_value(h, p0) - c) > 1e-8 * std::max(1.0, std::abs(c)))
        throw OffLevelSet("start point is not on the level set");

    // alpha(X) along the flow integrates in closed form: the z-part is constant
    // in time and the hyperbolic part is a cosh/sinh pair.
    const double b = dbl(h.b), bp = dbl(h.b_prime);
    const double s0 = b * p0.x.squaredNorm() + bp * p0.y.squaredNorm();
    const double q0 = (h.k > 0) ? p0.x.dot(p0.y) : 0.0;
    const double rho = 2.0 * std::sqrt(b * bp);
    auto action_at = [&](double t) {
        if (h.k == 0 || (s0 == 0.0 && q0 == 0.0)) return c * t;
        const double u = 2.0 * rho * t;
        return c * t + 3.0 * (s0 * std::sinh(u) / (2.0 * rho) + q0 * (std::cosh(u) - 1.0) / 2.0);
    };

    double hi = action_T / c;  // alpha(X) >= c pointwise, so T_h <= action_T/c
    double lo = 0.0;
    while (action_at(hi) < action_T) hi *= 2.0;  // rounding insurance; mathematically never fires
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (action_at(mid) < action_T ? lo : hi) = mid;
    }
    const double T_h = 0.5 * (lo + hi);

    SegmentIndex s;
    s.hamiltonian_time = T_h;
    s.mu_segment = cz::rs_index_blocks(linearized_path(h, T_h));
    double freq = 0.0;
    for (const auto& csq : h.c_sq) freq += 2.0 / dbl(csq);
    s.bound = freq / (6.0 * belt_C + 4.0 * c) * action_T - 2.0 * h.n;
    return s;
}

} // namespace hc::handle
