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
#include "finslerfoot/jacobi.hpp"

#include <algorithm>
#include <cmath>

namespace ff {

MatN JacobiBundle::M(size_t i) const {
    const int n = dim();
    MatN m(n, n);
    for (int b = 0; b < n - 1; ++b) m.col(b) = fields[b].zeta[i];
    m.col(n - 1) = base.samples[i].v;
    return m;
}

namespace {

// Hermite basis on [0,1]
inline void hermite_weights(double u, double& h00, double& h10, double& h01,
                            double& h11) {
    double u2 = u * u, u3 = u2 * u;
    h00 = 2 * u3 - 3 * u2 + 1;
    h10 = u3 - 2 * u2 + u;
    h01 = -2 * u3 + 3 * u2;
    h11 = u3 - u2;
}

}  // namespace

MatN JacobiBundle::M_at(double s) const {
    const int n = dim();
    const auto& ss = base.samples;
    size_t lo = 0, hi = ss.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (ss[mid].t <= s)
            lo = mid;
        else
            hi = mid;
    }
    double h = ss[hi].t - ss[lo].t;
    double u = (s - ss[lo].t) / h;
    double h00, h10, h01, h11;
    hermite_weights(u, h00, h10, h01, h11);
    MatN m(n, n);
    for (int b = 0; b < n - 1; ++b) {
        const auto& f = fields[b];
        m.col(b) = h00 * f.zeta[lo] + h10 * h * f.zeta_dot[lo] + h01 * f.zeta[hi] +
                   h11 * h * f.zeta_dot[hi];
    }
    m.col(n - 1) = h00 * ss[lo].v + h10 * h * ss[lo].a + h01 * ss[hi].v + h11 * h * ss[hi].a;
    return m;
}

double JacobiBundle::detM_at(double s) const { return M_at(s).determinant(); }

double JacobiBundle::condition_at(double s) const {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M_at(s));
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

JacobiBundle jacobi_bundle_fd(const MetricSpec& metric, const BoundaryPatch& patch,
                              const VecN& xp, double s_max, const JacobiOptions& opts) {
    const int n = metric.dimension();
    JacobiBundle B;
    B.base = shoot_normal(metric, patch, xp, s_max, opts.step);
    B.chart_R = patch.R;
    const size_t count = B.base.samples.size();

    for (int b = 0; b < n - 1; ++b) {
        VecN e = VecN::Zero(n - 1);
        e[b] = 1.0;
        auto diff = [&](double h) {
            Trajectory p = shoot_normal(metric, patch, xp + h * e, s_max, opts.step);
            Trajectory m = shoot_normal(metric, patch, xp - h * e, s_max, opts.step);
            JacobiField f;
            f.zeta.resize(count);
            f.zeta_dot.resize(count);
            for (size_t i = 0; i < count; ++i) {
                f.zeta[i] = (p.samples[i].xi - m.samples[i].xi) / (2.0 * h);
                f.zeta_dot[i] = (p.samples[i].v - m.samples[i].v) / (2.0 * h);
            }
            return f;
        };
        JacobiField fh = diff(opts.fd_offset);
        if (opts.richardson) {
            JacobiField f2 = diff(opts.fd_offset / 2.0);
            for (size_t i = 0; i < count; ++i) {
                fh.zeta[i] = (4.0 * f2.zeta[i] - fh.zeta[i]) / 3.0;
                fh.zeta_dot[i] = (4.0 * f2.zeta_dot[i] - fh.zeta_dot[i]) / 3.0;
            }
        }
        B.fields.push_back(std::move(fh));
    }
    return B;
}

JacobiField jacobi_ode(const MetricSpec& metric, const Trajectory& base,
                       const VecN& zeta0, const VecN& dzeta0) {
    JacobiField out;
    const size_t count = base.samples.size();
    out.zeta.resize(count);
    out.zeta_dot.resize(count);

    VecN xi = base.samples.front().xi;
    VecN v = base.samples.front().v;
    VecN z = zeta0, w = dzeta0;
    out.zeta[0] = z;
    out.zeta_dot[0] = w;

    // Directional derivative of the acceleration along (z, w); one pair of
    // evaluations instead of a full Jacobian.
    auto dir_accel = [&](const VecN& x, const VecN& u, const VecN& dz, const VecN& dw) {
        double scale = std::max({dz.cwiseAbs().maxCoeff(), dw.cwiseAbs().maxCoeff(), 1e-30});
        double delta = 1e-6 / scale;
        VecN ap = geodesic_accel(metric, x + delta * dz, u + delta * dw);
        VecN am = geodesic_accel(metric, x - delta * dz, u - delta * dw);
        return VecN(((ap - am) / (2.0 * delta)).eval());
    };

    for (size_t i = 0; i + 1 < count; ++i) {
        double h = base.samples[i + 1].t - base.samples[i].t;
        // joint RK4 on (xi, v, z, w)
        VecN k1x = v, k1v = geodesic_accel(metric, xi, v);
        VecN k1z = w, k1w = dir_accel(xi, v, z, w);

        VecN x2 = xi + 0.5 * h * k1x, v2 = v + 0.5 * h * k1v;
        VecN z2 = z + 0.5 * h * k1z, w2 = w + 0.5 * h * k1w;
        VecN k2x = v2, k2v = geodesic_accel(metric, x2, v2);
        VecN k2z = w2, k2w = dir_accel(x2, v2, z2, w2);

        VecN x3 = xi + 0.5 * h * k2x, v3 = v + 0.5 * h * k2v;
        VecN z3 = z + 0.5 * h * k2z, w3 = w + 0.5 * h * k2w;
        VecN k3x = v3, k3v = geodesic_accel(metric, x3, v3);
        VecN k3z = w3, k3w = dir_accel(x3, v3, z3, w3);

        VecN x4 = xi + h * k3x, v4 = v + h * k3v;
        VecN z4 = z + h * k3z, w4 = w + h * k3w;
        VecN k4x = v4, k4v = geodesic_accel(metric, x4, v4);
        VecN k4z = w4, k4w = dir_accel(x4, v4, z4, w4);

        xi += (h / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x);
        v += (h / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v);
        z += (h / 6.0) * (k1z + 2 * k2z + 2 * k3z + k4z);
        w += (h / 6.0) * (k1w + 2 * k2w + 2 * k3w + k4w);
        out.zeta[i + 1] = z;
        out.zeta_dot[i + 1] = w;
    }
    return out;
}

std::optional<double> conjugate_distance_from_bundle(const JacobiBundle& bundle,
                                                     const JacobiOptions& opts) {
    const double s_lo = bundle.base.samples.front().t;
    const double s_hi = bundle.base.samples.back().t;
    const int N = opts.scan_points;
    std::vector<double> grid(N + 1), det(N + 1);
    for (int k = 0; k <= N; ++k) {
        grid[k] = s_lo + (s_hi - s_lo) * std::max(k, 1) / static_cast<double>(N);
        if (k == 0) grid[k] = s_lo + (s_hi - s_lo) * 1e-6;
        det[k] = bundle.detM_at(grid[k]);
    }
    double det_scale = 0.0;
    for (double d : det) det_scale = std::max(det_scale, std::abs(d));

    for (int k = 1; k <= N; ++k) {
        if (det[k - 1] > 0.0 && det[k] <= 0.0) {
            double a = grid[k - 1], b = grid[k];
            for (int it = 0; it < 200 && (b - a) > opts.bisect_tol; ++it) {
                double mid = 0.5 * (a + b);
                if (bundle.detM_at(mid) > 0.0)
                    a = mid;
                else
                    b = mid;
            }
            return 0.5 * (a + b);
        }
        // even-order degeneracy: det dips to zero without changing sign
        // (coincident principal foci); refine the dip and accept if it
        // actually touches zero
        if (k < N && det[k] < det[k - 1] && det[k] <= det[k + 1] &&
            det[k] < 1e-2 * det_scale) {
            double a = grid[k - 1], b = grid[k + 1];
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = std::abs(bundle.detM_at(x1));
            double f2 = std::abs(bundle.detM_at(x2));
            for (int it = 0; it < 120 && (b - a) > opts.bisect_tol; ++it) {
                if (f1 < f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = std::abs(bundle.detM_at(x1));
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = std::abs(bundle.detM_at(x2));
                }
            }
            double s_min = 0.5 * (a + b);
            if (std::abs(bundle.detM_at(s_min)) <= 1e-6 * det_scale) return s_min;
        }
    }
    return std::nullopt;
}

std::optional<double> conjugate_distance(const MetricSpec& metric,
                                         const BoundaryPatch& patch, const VecN& xp,
                                         double s_max, const JacobiOptions& opts) {
    JacobiBundle B = jacobi_bundle_fd(metric, patch, xp, s_max, opts);
    return conjugate_distance_from_bundle(B, opts);
}

Eigen::VectorXd degenerate_kernel(const JacobiBundle& bundle, double s_star) {
    Eigen::MatrixXd M = bundle.M_at(s_star);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    Eigen::VectorXd k = svd.matrixV().col(M.cols() - 1);
    return k;
}

}  // namespace ff
