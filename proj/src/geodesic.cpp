/*
 * Copyright 2026 the finslerfoot authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "finslerfoot/geodesic.hpp"

#include <algorithm>
#include <cmath>

namespace ff {

VecN geodesic_accel(const MetricSpec& metric, const VecN& xi, const VecN& v) {
    MetricJet J = metric.jet(xi, v);
    // psi = phi^2 blocks assembled from the phi jet
    MatN psi_vv = 2.0 * (J.d_v * J.d_v.transpose() + J.phi * J.d_vv);
    VecN psi_xi = 2.0 * J.phi * J.d_xi;
    // (psi_vxi)_{ij} = psi_{v_i xi_j}; contract with v over the xi index
    VecN drift = 2.0 * (J.d_v * (J.d_xi.dot(v)) + J.phi * (J.d_xiv.transpose() * v));
    Eigen::LDLT<MatN> ldlt(psi_vv);
    if (ldlt.info() != Eigen::Success)
        throw NumericError("geodesic rhs: Hessian of phi^2 not positive definite");
    return ldlt.solve(psi_xi - drift);
}

std::pair<VecN, VecN> geodesic_rhs(const MetricSpec& metric, const GeodesicState& s) {
    return {s.v, geodesic_accel(metric, s.xi, s.v)};
}

namespace {

struct Rk4Scratch {
    VecN k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v;
};

inline void rk4_step(const MetricSpec& m, VecN& xi, VecN& v, double h, Rk4Scratch& w) {
    w.k1x = v;
    w.k1v = geodesic_accel(m, xi, v);
    w.k2x = v + 0.5 * h * w.k1v;
    w.k2v = geodesic_accel(m, xi + 0.5 * h * w.k1x, w.k2x);
    w.k3x = v + 0.5 * h * w.k2v;
    w.k3v = geodesic_accel(m, xi + 0.5 * h * w.k2x, w.k3x);
    w.k4x = v + h * w.k3v;
    w.k4v = geodesic_accel(m, xi + h * w.k3x, w.k4x);
    xi += (h / 6.0) * (w.k1x + 2.0 * w.k2x + 2.0 * w.k3x + w.k4x);
    v += (h / 6.0) * (w.k1v + 2.0 * w.k2v + 2.0 * w.k3v + w.k4v);
}

}  // namespace

Trajectory integrate(const MetricSpec& metric, const GeodesicState& start,
                     double t_start, double t_len, double step, const Box* box) {
    if (step <= 0.0) throw DomainError("integrate: step must be positive");
    Trajectory traj;
    traj.step = step;
    traj.forward = t_len >= 0.0;
    const double sign = traj.forward ? 1.0 : -1.0;
    const double span = std::abs(t_len);

    VecN xi = start.xi, v = start.v;
    double t = t_start;
    traj.samples.push_back({t, xi, v, geodesic_accel(metric, xi, v)});
    Rk4Scratch w;
    double done = 0.0;
    while (done < span - 1e-15) {
        double h = std::min(step, span - done);
        rk4_step(metric, xi, v, sign * h, w);
        done += h;
        t = t_start + sign * done;
        traj.samples.push_back({t, xi, v, geodesic_accel(metric, xi, v)});
        if (box && !box->contains(xi)) {
            traj.truncated = true;
            break;
        }
    }
    return traj;
}

namespace {

// Fehlberg 4(5) pair
struct Rkf45Result {
    VecN xi4, v4, xi5, v5;
};

Rkf45Result rkf45_step(const MetricSpec& m, const VecN& xi, const VecN& v, double h) {
    auto acc = [&](const VecN& x, const VecN& u) { return geodesic_accel(m, x, u); };
    VecN k1x = v, k1v = acc(xi, v);
    VecN x2 = xi + h * (k1x / 4.0), u2 = v + h * (k1v / 4.0);
    VecN k2x = u2, k2v = acc(x2, u2);
    VecN x3 = xi + h * (3.0 / 32 * k1x + 9.0 / 32 * k2x);
    VecN u3 = v + h * (3.0 / 32 * k1v + 9.0 / 32 * k2v);
    VecN k3x = u3, k3v = acc(x3, u3);
    VecN x4 = xi + h * (1932.0 / 2197 * k1x - 7200.0 / 2197 * k2x + 7296.0 / 2197 * k3x);
    VecN u4 = v + h * (1932.0 / 2197 * k1v - 7200.0 / 2197 * k2v + 7296.0 / 2197 * k3v);
    VecN k4x = u4, k4v = acc(x4, u4);
    VecN x5 = xi + h * (439.0 / 216 * k1x - 8.0 * k2x + 3680.0 / 513 * k3x -
                        845.0 / 4104 * k4x);
    VecN u5 = v + h * (439.0 / 216 * k1v - 8.0 * k2v + 3680.0 / 513 * k3v -
                       845.0 / 4104 * k4v);
    VecN k5x = u5, k5v = acc(x5, u5);
    VecN x6 = xi + h * (-8.0 / 27 * k1x + 2.0 * k2x - 3544.0 / 2565 * k3x +
                        1859.0 / 4104 * k4x - 11.0 / 40 * k5x);
    VecN u6 = v + h * (-8.0 / 27 * k1v + 2.0 * k2v - 3544.0 / 2565 * k3v +
                       1859.0 / 4104 * k4v - 11.0 / 40 * k5v);
    VecN k6x = u6, k6v = acc(x6, u6);

    Rkf45Result r;
    r.xi4 = xi + h * (25.0 / 216 * k1x + 1408.0 / 2565 * k3x + 2197.0 / 4104 * k4x -
                      k5x / 5.0);
    r.v4 = v + h * (25.0 / 216 * k1v + 1408.0 / 2565 * k3v + 2197.0 / 4104 * k4v -
                    k5v / 5.0);
    r.xi5 = xi + h * (16.0 / 135 * k1x + 6656.0 / 12825 * k3x + 28561.0 / 56430 * k4x -
                      9.0 / 50 * k5x + 2.0 / 55 * k6x);
    r.v5 = v + h * (16.0 / 135 * k1v + 6656.0 / 12825 * k3v + 28561.0 / 56430 * k4v -
                    9.0 / 50 * k5v + 2.0 / 55 * k6v);
    return r;
}

}  // namespace

Trajectory integrate_adaptive(const MetricSpec& metric, const GeodesicState& start,
                              double t_start, double t_len, double tol, const Box* box) {
    if (tol <= 0.0) throw DomainError("integrate_adaptive: tol must be positive");
    Trajectory traj;
    traj.forward = t_len >= 0.0;
    const double sign = traj.forward ? 1.0 : -1.0;
    const double span = std::abs(t_len);

    VecN xi = start.xi, v = start.v;
    double done = 0.0;
    double h = std::min(span, 1e-2);
    traj.step = h;
    traj.samples.push_back({t_start, xi, v, geodesic_accel(metric, xi, v)});
    int guard = 0;
    while (done < span - 1e-15 && ++guard < 2000000) {
        h = std::min(h, span - done);
        Rkf45Result r = rkf45_step(metric, xi, v, sign * h);
        double err = std::max((r.xi4 - r.xi5).cwiseAbs().maxCoeff(),
                              (r.v4 - r.v5).cwiseAbs().maxCoeff());
        if (err > tol * std::max(1.0, h)) {
            h = std::max(1e-9, 0.9 * h * std::pow(tol * h / err, 0.25));
            continue;
        }
        xi = r.xi5;
        v = r.v5;
        done += h;
        traj.samples.push_back(
            {t_start + sign * done, xi, v, geodesic_accel(metric, xi, v)});
        if (box && !box->contains(xi)) {
            traj.truncated = true;
            break;
        }
        if (err > 0.0)
            h = std::min(0.9 * h * std::pow(tol * h / err, 0.2), 4.0 * h);
        else
            h *= 2.0;
    }
    return traj;
}

GeodesicState Trajectory::at(double t) const {
    const auto& ss = samples;
    if (ss.size() < 2) return {ss.front().xi, ss.front().v};
    const bool inc = ss.back().t > ss.front().t;
    // binary search for the bracketing segment
    size_t lo = 0, hi = ss.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if ((ss[mid].t <= t) == inc)
            lo = mid;
        else
            hi = mid;
    }
    const TrajSample& A = ss[lo];
    const TrajSample& B = ss[hi];
    double h = B.t - A.t;
    double u = (t - A.t) / h;
    double u2 = u * u, u3 = u2 * u;
    double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    GeodesicState out;
    out.xi = h00 * A.xi + h10 * h * A.v + h01 * B.xi + h11 * h * B.v;
    out.v = h00 * A.v + h10 * h * A.a + h01 * B.v + h11 * h * B.a;
    return out;
}

Trajectory shoot_normal(const MetricSpec& metric, const BoundaryPatch& patch,
                        const VecN& xp, double s_max, double step, const Box* box,
                        const NormalOptions& nopts) {
    NormalData nd = solve_normal(metric, patch, xp, nopts);
    return integrate(metric, {nd.y, nd.V}, 0.0, s_max, step, box);
}

double tau_normalize(const MetricSpec& metric, const VecN& X, const VecN& sigma_prime,
                     const MatN* frame) {
    const int n = metric.dimension();
    VecN dir_n = frame ? VecN(frame->col(n - 1)) : unit_axis(n, n - 1);
    VecN base = VecN::Zero(n);
    if (sigma_prime.size() > 0) {
        if (frame)
            base = frame->leftCols(n - 1) * sigma_prime;
        else
            base.head(n - 1) = sigma_prime;
    }
    double tau = 1.0;
    for (int it = 0; it < 80; ++it) {
        VecN v = base + tau * dir_n;
        if (v.norm() < 1e-12) {
            tau += 0.5;
            continue;
        }
        MetricJet J = metric.jet(X, v);
        double r = J.phi - 1.0;
        double dr = J.d_v.dot(dir_n);
        if (std::abs(dr) < 1e-14)
            throw NumericError("tau_normalize: degenerate direction derivative");
        double dtau = r / dr;
        tau -= dtau;
        if (std::abs(dtau) < 1e-15 * std::max(1.0, std::abs(tau))) break;
    }
    VecN v = base + tau * dir_n;
    if (std::abs(metric.eval(X, v) - 1.0) > 1e-12 || tau <= 0.0)
        throw NumericError("tau_normalize: no unit completion (|sigma'| too large?)");
    return tau;
}

Trajectory shoot_backward(const MetricSpec& metric, const VecN& X,
                          const VecN& sigma_prime, double t_len, double step,
                          const MatN* frame, const Box* box) {
    const int n = metric.dimension();
    double tau = tau_normalize(metric, X, sigma_prime, frame);
    VecN w(n);
    if (frame) {
        VecN chart(n);
        chart.head(n - 1) = sigma_prime;
        chart[n - 1] = tau;
        w = (*frame) * chart;
    } else {
        w.head(n - 1) = sigma_prime;
        w[n - 1] = tau;
    }
    return integrate(metric, {X, w}, 1.0, -t_len, step, box);
}

double unit_speed_drift(const MetricSpec& metric, const Trajectory& traj) {
    double worst = 0.0;
    for (const auto& s : traj.samples)
        worst = std::max(worst, std::abs(metric.eval(s.xi, s.v) - 1.0));
    return worst;
}

}  // namespace ff
