#include "hc/symplectic_index.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace hc::cz {

namespace {
constexpr double kPi = std::numbers::pi;
}

long long IndexValue::as_integer() const {
    if (twice % 2 != 0) throw InvalidData("index is half-integral: " + str());
    return twice / 2;
}

std::string IndexValue::str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

Eigen::MatrixXd standard_omega(int dim) {
    Eigen::MatrixXd o = Eigen::MatrixXd::Zero(dim, dim);
    for (int p = 0; p + 1 < dim; p += 2) {
        o(p, p + 1) = 1.0;
        o(p + 1, p) = -1.0;
    }
    return o;
}

namespace {

void block_value(const BlockGenerator& g, double t, Eigen::Ref<Eigen::Matrix2d> out) {
    if (const auto* r = std::get_if<Rotation>(&g)) {
        const double c = std::cos(r->omega * t), s = std::sin(r->omega * t);
        out << c, -s, s, c;
    } else if (const auto* h = std::get_if<Hyperbolic>(&g)) {
        const double sq = std::sqrt(h->a * h->b);
        const double ch = std::cosh(sq * t), sh = std::sinh(sq * t);
        out << ch, h->b / sq * sh, h->a / sq * sh, ch;
    } else {
        out.setIdentity();
    }
}

void block_derivative(const BlockGenerator& g, double t, Eigen::Ref<Eigen::Matrix2d> out) {
    if (const auto* r = std::get_if<Rotation>(&g)) {
        const double c = std::cos(r->omega * t), s = std::sin(r->omega * t);
        out << -s, -c, c, -s;
        out *= r->omega;
    } else if (const auto* h = std::get_if<Hyperbolic>(&g)) {
        Eigen::Matrix2d v;
        block_value(g, t, v);
        Eigen::Matrix2d a;
        a << 0.0, h->b, h->a, 0.0;
        out = a * v;
    } else {
        out.setZero();
    }
}

} // namespace

Eigen::MatrixXd BlockPath::value(double t) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        block_value(blocks[i], t, m.block<2, 2>(2 * i, 2 * i));
    return m;
}

Eigen::MatrixXd BlockPath::derivative(double t) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        block_derivative(blocks[i], t, m.block<2, 2>(2 * i, 2 * i));
    return m;
}

SampledPath expand_to_sampled(const BlockPath& path, int samples) {
    if (samples < 2) throw InvalidData("expand_to_sampled needs >= 2 samples");
    SampledPath sp;
    sp.times.reserve(samples);
    sp.frames.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = path.T * i / (samples - 1);
        sp.times.push_back(t);
        sp.frames.push_back(path.value(t));
    }
    return sp;
}

namespace {

/* Type-erased evaluation so the crossing machinery never sees the block
   structure (keeps the numeric route independent of the closed form). */
struct PathEval {
    std::function<Eigen::MatrixXd(double)> value;
    std::function<Eigen::MatrixXd(double)> deriv;
    double T = 0.0;
    int dim = 0;
};

struct Reduction {
    Eigen::MatrixXd Q;   // orthonormal basis of the non-persistent complement
    int dim = 0;         // reduced dimension
};

/* Directions v with Phi(t) v = v for every sampled t (constant-identity
   planes) make det(Phi(t)-I) vanish identically; they contribute 0 to the
   index and are projected away.  Anything degenerate beyond that is refused. */
Reduction persistent_reduction(const PathEval& p, double tol) {
    const int n = p.dim;
    const int coarse = 64;
    std::vector<double> probes;
    for (int i = 0; i <= coarse; ++i) probes.push_back(p.T * i / coarse);
    // Low-discrepancy extras defeat aliasing (a rotation hitting 2*pi*Z at every uniform sample).
    for (int i = 1; i <= 16; ++i) {
        double f = std::fmod(i * 0.6180339887498949, 1.0);
        probes.push_back(p.T * f);
    }
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (double t : probes) {
        Eigen::MatrixXd a = p.value(t) - Eigen::MatrixXd::Identity(n, n);
        // Normalize per probe: a strongly hyperbolic factor otherwise inflates
        // the Gram spectrum until the eigensolver's backward error (eps*||G||)
        // buries the O(1) eigenvalue of the contracting direction below the
        // fixed-subspace threshold. Exactly fixed columns stay exactly zero.
        a /= std::max(1.0, a.cwiseAbs().maxCoeff());
        gram += a.transpose() * a;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const double thr = static_cast<double>(probes.size()) * (10.0 * tol) * (10.0 * tol);
    int fixed = 0;
    while (fixed < n && es.eigenvalues()(fixed) <= thr) ++fixed;
    Reduction red;
    red.dim = n - fixed;
    red.Q = es.eigenvectors().rightCols(red.dim);
    if (fixed == 0) {
        red.Q = Eigen::MatrixXd::Identity(n, n);  // exact basis, avoids eigenvector noise
        return red;
    }
    if (fixed % 2 != 0)
        throw NonRegularCrossing("odd-dimensional persistently fixed subspace");
    if (red.dim == 0) return red;  // the entire path is the identity; nothing left to check
    // The complement must be flow-invariant and symplectic for the quotient to make sense.
    for (int i = 0; i <= 16; ++i) {
        Eigen::MatrixXd v = p.value(p.T * i / 16.0) * red.Q;
        double leak = (v - red.Q * (red.Q.transpose() * v)).cwiseAbs().maxCoeff();
        if (leak > 1e3 * tol * std::max(1.0, v.cwiseAbs().maxCoeff()))
            throw NonRegularCrossing("persistently fixed subspace is not a symplectic factor");
    }
    Eigen::MatrixXd ow = red.Q.transpose() * standard_omega(n) * red.Q;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ow);
    if (red.dim > 0 && svd.singularValues()(red.dim - 1) < 0.5)
        throw NonRegularCrossing("quotient symplectic form is degenerate");
    return red;
}

// Signature of Omega(v, Phi'(t) v) restricted to the span of (orthonormal) kernel columns.
int crossing_signature(const Eigen::MatrixXd& kernel, const Eigen::MatrixXd& omega,
                       const Eigen::MatrixXd& deriv, double tol) {
    Eigen::MatrixXd b = kernel.transpose() * omega * deriv * kernel;
    Eigen::MatrixXd sym = 0.5 * (b + b.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    int sig = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double ev = es.eigenvalues()(i);
        if (std::abs(ev) <= tol * scale)
            throw NonRegularCrossing("singular crossing form (eigenvalue " + std::to_string(ev) + ")");
        sig += ev > 0 ? 1 : -1;
    }
    return sig;
}

// Kernel basis of a degeneracy witness on the reduced space; empty when t is
// no crossing. The threshold is absolute: scaling it by sigma_max would let a
// strongly hyperbolic factor (residual ~ e^{rT}) promote other directions into
// a phantom kernel.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& a, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    int null_dim = 0;
    for (int i = svd.singularValues().size() - 1; i >= 0; --i) {
        if (svd.singularValues()(i) <= tol) ++null_dim;
        else break;
    }
    return svd.matrixV().rightCols(null_dim);
}

double det_at(const PathEval& p, const Reduction& red, double t) {
    Eigen::MatrixXd a = red.Q.transpose() * p.value(t) * red.Q
                        - Eigen::MatrixXd::Identity(red.dim, red.dim);
    return a.partialPivLu().determinant();
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double eps) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > eps) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double bisect_sign_change(const std::function<double(double)>& f, double lo, double hi, double eps) {
    double flo = f(lo);
    while (hi - lo > eps) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((flo < 0) == (fm < 0)) { lo = mid; flo = fm; }
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

IndexValue rs_index_eval(const PathEval& p, const NumericOptions& opt) {
    if (p.T == 0.0) return {0};
    const Eigen::MatrixXd omega = standard_omega(p.dim);
    const Reduction red = persistent_reduction(p, opt.tol);
    if (red.dim == 0) return {0};  // the whole path is the identity

    auto g = [&](double t) { return det_at(p, red, t); };

    const int n_grid = std::max(opt.grid, 16);
    std::vector<double> dets(n_grid + 1);
#pragma omp parallel for schedule(static) if (opt.parallel)
    for (int i = 0; i <= n_grid; ++i) dets[i] = g(p.T * i / n_grid);

    const double t_eps = 1e-12 * std::max(p.T, 1.0);
    const double merge = 1e-8 * std::max(p.T, 1.0);

    // Candidate crossing times: sign changes of det, plus local minima of |det|
    // (rotation-type crossings are even-order zeros with no sign change).
    std::vector<double> candidates;
    for (int i = 0; i < n_grid; ++i) {
        if (dets[i] != 0.0 && dets[i + 1] != 0.0 && (dets[i] < 0) != (dets[i + 1] < 0)) {
            candidates.push_back(
                bisect_sign_change(g, p.T * i / n_grid, p.T * (i + 1) / n_grid, t_eps));
        }
    }
    auto abs_g = [&](double t) { return std::abs(g(t)); };
    // Even-order zeros leave no sign change, and two blocks crossing inside one
    // coarse bracket would fool a single golden-section pass: refine recursively
    // until each bracket isolates one zero (or shrinks below the merge window).
    //
    // Once ||Phi|| passes 1/sqrt(eps) the LU determinant of Phi-I is dominated
    // by O(eps*||Phi||^2) cancellation noise whose sign flips from sample to
    // sample, so an unguarded minimum test fires everywhere and the recursion
    // goes supercritical. A dip only counts when it stands out against its
    // bracket by a contrast factor: an isolated even-order zero clears 25x at
    // grid resolution and sharpens quadratically under refinement, while for
    // same-scale noise the 64x in-recursion bar keeps the expected branching
    // below one. A global budget caps the refinement work outright; junk
    // candidates that still slip through are discarded by the kernel test.
    constexpr double top_contrast = 16.0, deep_contrast = 64.0;
    long long refine_budget = 16LL * n_grid;
    std::function<void(double, double, int)> hunt = [&](double lo, double hi, int depth) {
        if (depth <= 0 || refine_budget <= 0 || hi - lo <= std::max(merge, 8 * t_eps)) {
            candidates.push_back(golden_min(abs_g, lo, hi, t_eps));
            return;
        }
        constexpr int fan = 16;
        double ts[fan + 1], vs[fan + 1];
        for (int i = 0; i <= fan; ++i) {
            ts[i] = lo + (hi - lo) * i / fan;
            vs[i] = g(ts[i]);
        }
        refine_budget -= fan + 1;
        double bracket_max = 0.0;
        for (double v : vs) bracket_max = std::max(bracket_max, std::abs(v));
        bool split = false;
        for (int i = 0; i < fan; ++i)
            if (vs[i] != 0.0 && vs[i + 1] != 0.0 && (vs[i] < 0) != (vs[i + 1] < 0)) {
                candidates.push_back(bisect_sign_change(g, ts[i], ts[i + 1], t_eps));
                split = true;
            }
        for (int i = 1; i < fan; ++i)
            if (std::abs(vs[i]) <= std::abs(vs[i - 1]) && std::abs(vs[i]) <= std::abs(vs[i + 1]) &&
                deep_contrast * std::abs(vs[i]) <= bracket_max) {
                hunt(ts[i - 1], ts[i + 1], depth - 1);
                split = true;
            }
        if (!split)  // minimum sits between samples near a bracket edge
            candidates.push_back(golden_min(abs_g, lo, hi, t_eps));
    };
    for (int i = 1; i < n_grid; ++i) {
        if (std::abs(dets[i]) <= std::abs(dets[i - 1]) && std::abs(dets[i]) <= std::abs(dets[i + 1])) {
            // |det| multiplies the per-block factors, so a second zero within a
            // couple of cells can leave monotone samples and no minimum of its
            // own; widen the bracket and let the fan separate them.
            const int lo = std::max(0, i - 3), hi = std::min(n_grid, i + 3);
            double around = 0.0;
            for (int j = lo; j <= hi; ++j) around = std::max(around, std::abs(dets[j]));
            if (top_contrast * std::abs(dets[i]) <= around)
                hunt(p.T * lo / n_grid, p.T * hi / n_grid, 6);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    // Candidates inside one merge window collapse to the one sitting deepest:
    // a bisection root parked at the edge of a noise band must not shadow the
    // polished minimum of the true crossing next to it.
    std::vector<double> interior;
    std::vector<double> interior_depth;
    for (double t : candidates) {
        if (t < merge || t > p.T - merge) continue;  // endpoints handled explicitly
        const double depth_here = std::abs(g(t));
        if (!interior.empty() && t - interior.back() < merge) {
            if (depth_here < interior_depth.back()) {
                interior.back() = t;
                interior_depth.back() = depth_here;
            }
            continue;
        }
        interior.push_back(t);
        interior_depth.push_back(depth_here);
    }

    auto reduced_frame = [&](double t) {
        return Eigen::MatrixXd(red.Q.transpose() * p.value(t) * red.Q);
    };
    // v is a crossing direction iff Phi v = v, equivalently Phi^{-1} v = v; the
    // witness B = Phi + Phi^{-1} - 2I sees both at once. For symplectic A the
    // inverse is the omega-conjugated transpose -- linear in A -- so forming B
    // never subtracts two e^{rT}-sized products: detecting sigma_min(Phi-I) ~ 1
    // under eps*e^{rT} SVD noise is hopeless once rT > 36, while in B the same
    // hyperbolic plane keeps an e^{rT}-sized residual (trace-like, computed to
    // relative accuracy) and a rotation plane degenerates like gap^2.
    const Eigen::MatrixXd omega_r = red.Q.transpose() * omega * red.Q;
    const Eigen::PartialPivLU<Eigen::MatrixXd> omega_r_lu(omega_r);
    auto witness = [&](double t) {
        Eigen::MatrixXd a = reduced_frame(t);
        return Eigen::MatrixXd(a + omega_r_lu.solve(a.transpose() * omega_r)
                               - 2.0 * Eigen::MatrixXd::Identity(red.dim, red.dim));
    };
    auto signature_at = [&](double t, const Eigen::MatrixXd& kernel) {
        // kernel columns are W-coordinates; lift to the ambient space through Q.
        Eigen::MatrixXd lifted = red.Q * kernel;
        return crossing_signature(lifted, omega, p.deriv(t), opt.tol);
    };

    long long twice = 0;

    {   // t = 0: the whole reduced space is the kernel.
        Eigen::MatrixXd full = Eigen::MatrixXd::Identity(red.dim, red.dim);
        twice += signature_at(0.0, full);
    }
    for (double t : interior) {
        Eigen::MatrixXd kernel = kernel_basis(witness(t), opt.tol);
        if (kernel.cols() == 0) continue;  // refined candidate was a smooth dip, not a crossing
        twice += 2 * signature_at(t, kernel);
    }
    {   // t = T contributes with weight 1/2 when the end matrix is degenerate.
        Eigen::MatrixXd kernel = kernel_basis(witness(p.T), opt.tol);
        if (kernel.cols() > 0) twice += signature_at(p.T, kernel);
    }
    return {twice};
}

} // namespace

IndexValue rs_index_numeric(const BlockPath& path, const NumericOptions& opt) {
    if (path.T < 0) throw InvalidData("negative duration");
    PathEval p{[&](double t) { return path.value(t); },
               [&](double t) { return path.derivative(t); },
               path.T, path.dim()};
    return rs_index_eval(p, opt);
}

IndexValue rs_index_numeric(const SampledPath& path, const NumericOptions& opt) {
    if (path.times.size() != path.frames.size() || path.times.size() < 2)
        throw InvalidData("sampled path needs matching times/frames, at least two samples");
    if (path.times.front() != 0.0) throw InvalidData("sampled path must start at t=0");
    for (std::size_t i = 1; i < path.times.size(); ++i)
        if (path.times[i] <= path.times[i - 1]) throw InvalidData("sample times must increase");

    const int n = static_cast<int>(path.frames.front().rows());
    const Eigen::MatrixXd omega = standard_omega(n);
    if ((path.frames.front() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > opt.sympl_tol)
        throw NotSymplectic("first sample is not the identity");
    for (const auto& m : path.frames) {
        if (m.rows() != n || m.cols() != n) throw NotSymplectic("inconsistent sample dimensions");
        if ((m.transpose() * omega * m - omega).cwiseAbs().maxCoeff() > opt.sympl_tol)
            throw NotSymplectic("sample fails the symplectic check");
    }

    // A linearly interpolated path cannot approach the identity closer than its
    // own curvature error, ~h^2 ||Phi''|| / 8 per segment; widen the kernel
    // tolerance to that floor (second differences estimate h^2 Phi'') or
    // genuine crossings that fall between samples stay invisible.
    double curvature_floor = 0.0;
    for (std::size_t i = 1; i + 1 < path.frames.size(); ++i) {
        const double second = (path.frames[i + 1] - 2.0 * path.frames[i] + path.frames[i - 1])
                                  .cwiseAbs()
                                  .maxCoeff();
        curvature_floor = std::max(curvature_floor, 0.5 * second);
    }
    NumericOptions widened = opt;
    widened.tol = std::max(opt.tol, curvature_floor);

    auto locate = [&](double t) {
        auto it = std::upper_bound(path.times.begin(), path.times.end(), t);
        std::size_t hi = std::min<std::size_t>(path.times.size() - 1,
                                               std::max<std::size_t>(1, it - path.times.begin()));
        return hi;
    };
    auto value = [&, n](double t) -> Eigen::MatrixXd {
        std::size_t hi = locate(t);
        double t0 = path.times[hi - 1], t1 = path.times[hi];
        double w = (t - t0) / (t1 - t0);
        return (1.0 - w) * path.frames[hi - 1] + w * path.frames[hi];
    };
    auto deriv = [&, n](double t) -> Eigen::MatrixXd {
        std::size_t hi = locate(t);
        return (path.frames[hi] - path.frames[hi - 1]) / (path.times[hi] - path.times[hi - 1]);
    };
    PathEval p{value, deriv, path.times.back(), n};
    return rs_index_eval(p, widened);
}

namespace {

// Snap test for omega*T on 2*pi*Z; mirrors the tolerance the numeric endpoint uses.
bool near_integer(double x, double tol, double* rounded) {
    double r = std::round(x);
    *rounded = r;
    return std::abs(x - r) <= tol * std::max(1.0, std::abs(x));
}

} // namespace

IndexValue rs_index_blocks(const BlockPath& path) {
    long long twice = 0;
    for (const auto& b : path.blocks) {
        if (const auto* r = std::get_if<Rotation>(&b)) {
            const double x = r->omega * path.T / (2.0 * kPi);
            double rounded;
            if (near_integer(x, 1e-9, &rounded))
                twice += 4 * static_cast<long long>(rounded);          // mu = omega*T/pi
            else
                twice += 2 * (2 * static_cast<long long>(std::floor(x)) + 1);
        }
        // Hyperbolic and ConstantIdentity blocks contribute 0.
    }
    return {twice};
}

IndexValue reduced_index(const IndexValue& mu, int n) {
    if (n < 2) throw InvalidData("reduced index needs n >= 2");
    return {mu.twice + 2LL * (n - 3)};
}

ReturnMapInfo classify_return_map(const BlockPath& path) {
    ReturnMapInfo info;
    for (const auto& b : path.blocks) {
        if (const auto* r = std::get_if<Rotation>(&b)) {
            const double theta = r->omega * path.T;
            double rounded;
            if (near_integer(theta / (2.0 * kPi), 1e-9, &rounded)) {
                info.eigenvalues.emplace_back(1.0, 0.0);
                info.eigenvalues.emplace_back(1.0, 0.0);
                info.degenerate = true;
            } else {
                info.eigenvalues.emplace_back(std::cos(theta), std::sin(theta));
                info.eigenvalues.emplace_back(std::cos(theta), -std::sin(theta));
            }
            // Unit-circle spectrum: only +1/-1 can be real, neither lies in (-1,0).
        } else if (const auto* hb = std::get_if<Hyperbolic>(&b)) {
            const double s = std::sqrt(hb->a * hb->b) * path.T;
            info.eigenvalues.emplace_back(std::exp(s), 0.0);
            info.eigenvalues.emplace_back(std::exp(-s), 0.0);
            if (path.T == 0.0) info.degenerate = true;  // positive spectrum otherwise
        } else {
            info.eigenvalues.emplace_back(1.0, 0.0);
            info.eigenvalues.emplace_back(1.0, 0.0);
            info.degenerate = true;
        }
    }
    return info;
}

ReturnMapInfo classify_return_map(const Eigen::MatrixXd& end_frame, double tol) {
    ReturnMapInfo info;
    Eigen::EigenSolver<Eigen::MatrixXd> es(end_frame);
    double scale = std::max(1.0, end_frame.cwiseAbs().maxCoeff());
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        std::complex<double> ev = es.eigenvalues()(i);
        info.eigenvalues.push_back(ev);
        if (std::abs(ev - 1.0) <= tol * scale) info.degenerate = true;
        if (std::abs(ev.imag()) <= tol * scale && ev.real() > -1.0 + tol && ev.real() < -tol)
            ++info.n_gamma;
    }
    return info;
}

bool is_good(int n_gamma_simple, long long multiplicity) {
    if (multiplicity < 1) throw InvalidData("multiplicity must be >= 1");
    return !(multiplicity % 2 == 0 && n_gamma_simple % 2 != 0);
}

} // namespace hc::cz
