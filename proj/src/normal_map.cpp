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
#include "finslerfoot/normal_map.hpp"

#include <cmath>

namespace ff {

namespace {

// F(V) = (phi(y;V) - 1, T_a . phi_v(y;V)); the normal system residual.
Eigen::VectorXd normal_residual(const MetricSpec& m, const VecN& y,
                                const std::vector<VecN>& tangents, const VecN& V,
                                MetricJet* jet_out = nullptr) {
    const int n = m.dimension();
    MetricJet J = m.jet(y, V);
    Eigen::VectorXd F(n);
    F[0] = J.phi - 1.0;
    for (int a = 0; a < n - 1; ++a) F[a + 1] = tangents[a].dot(J.d_v);
    if (jet_out) *jet_out = J;
    return F;
}

}  // namespace

NormalData solve_normal(const MetricSpec& metric, const BoundaryPatch& patch,
                        const VecN& xp, const NormalOptions& opts) {
    const int n = metric.dimension();
    NormalData nd;
    nd.y = patch.ambient(xp);
    VecN nu = patch.interior_normal(xp);
    std::vector<VecN> T(n - 1);
    for (int a = 0; a < n - 1; ++a) T[a] = patch.tangent(a, xp);

    auto newton = [&](VecN V, int max_iters, double* res_out, int* it_out) -> VecN {
        MetricJet J;
        for (int it = 0; it < max_iters; ++it) {
            Eigen::VectorXd F = normal_residual(metric, nd.y, T, V, &J);
            double res = F.cwiseAbs().maxCoeff();
            *res_out = res;
            *it_out = it;
            if (res < opts.tol) return V;
            Eigen::MatrixXd dF(n, n);
            dF.row(0) = J.d_v.transpose();
            for (int a = 0; a < n - 1; ++a)
                dF.row(a + 1) = (J.d_vv * T[a]).transpose();
            VecN step = dF.partialPivLu().solve(F);
            if (!step.allFinite()) break;
            V -= step;
        }
        return V;
    };

    double res = 1e300;
    int iters = 0;
    VecN V = newton(nu, opts.max_iters, &res, &iters);
    if (!(res < opts.tol)) {
        // Coarse search over the indicatrix for a seed in the basin. Strict
        // convexity makes the tangency-residual minimum unique on the inward
        // branch, so this is a safe restart.
        double best_score = 1e300;
        VecN best = nu;
        for (int k = 0; k < opts.fallback_scan; ++k) {
            VecN dir(n);
            if (n == 2) {
                double th = 2.0 * M_PI * k / opts.fallback_scan;
                dir = Vec2(std::cos(th), std::sin(th));
            } else {
                double th = 2.0 * M_PI * k / opts.fallback_scan;
                double z = -1.0 + 2.0 * (k + 0.5) / opts.fallback_scan;
                double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
                dir = VecN(3);
                dir << rr * std::cos(37.0 * th), rr * std::sin(37.0 * th), z;
            }
            if (dir.dot(nu) <= 0.05) continue;
            VecN cand = dir / metric.eval(nd.y, dir);
            Eigen::VectorXd F = normal_residual(metric, nd.y, T, cand);
            double score = F.tail(n - 1).cwiseAbs().sum();
            if (score < best_score) {
                best_score = score;
                best = cand;
            }
        }
        V = newton(best, opts.max_iters, &res, &iters);
        if (!(res < opts.tol))
            throw NumericError("normal system: Newton diverged (near-degenerate convexity?)");
    }
    if (V.dot(nu) <= 0.0)
        throw DomainError("normal system: converged to the outward branch");
    nd.V = V;
    nd.residual = res;
    nd.iters = iters;
    return nd;
}

NormalData normal_sensitivity(const MetricSpec& metric, const BoundaryPatch& patch,
                              const VecN& xp, const NormalOptions& opts) {
    const int n = metric.dimension();
    NormalData nd = solve_normal(metric, patch, xp, opts);
    MetricJet J = metric.jet(nd.y, nd.V);
    std::vector<VecN> T(n - 1);
    for (int a = 0; a < n - 1; ++a) T[a] = patch.tangent(a, xp);

    Eigen::MatrixXd dFdV(n, n);
    dFdV.row(0) = J.d_v.transpose();
    for (int a = 0; a < n - 1; ++a) dFdV.row(a + 1) = (J.d_vv * T[a]).transpose();

    // dF/dx'_b: y moves along T_b, tangents tilt with the graph Hessian.
    MatN hess = patch.f_hess(xp);
    VecN Ren = patch.R.col(n - 1);
    Eigen::MatrixXd dFdx(n, n - 1);
    for (int b = 0; b < n - 1; ++b) {
        dFdx(0, b) = J.d_xi.dot(T[b]);
        for (int a = 0; a < n - 1; ++a) {
            // d/dx_b [T_a . phi_v] = f_ab (R e_n . phi_v) + T_a' phi_vxi T_b
            double tilt = hess(a, b) * Ren.dot(J.d_v);
            double drift = T[a].dot(J.d_xiv.transpose() * T[b]);
            dFdx(a + 1, b) = tilt + drift;
        }
    }
    nd.DV = -dFdV.partialPivLu().solve(dFdx);
    return nd;
}

Eigen::MatrixXd normal_sensitivity_fd(const MetricSpec& metric,
                                      const BoundaryPatch& patch, const VecN& xp,
                                      double h, const NormalOptions& opts) {
    const int n = metric.dimension();
    Eigen::MatrixXd DV(n, n - 1);
    for (int b = 0; b < n - 1; ++b) {
        VecN e = VecN::Zero(n - 1);
        e[b] = h;
        NormalData p = solve_normal(metric, patch, xp + e, opts);
        NormalData m = solve_normal(metric, patch, xp - e, opts);
        DV.col(b) = (p.V - m.V) / (2.0 * h);
    }
    return DV;
}

double sensitivity_identity_residual(const MetricSpec& metric,
                                     const BoundaryPatch& patch,
                                     const NormalData& nd) {
    const int n = metric.dimension();
    if (nd.DV.size() == 0)
        throw DomainError("sensitivity identity needs DV (call normal_sensitivity)");
    MetricJet J = metric.jet(nd.y, nd.V);
    Eigen::MatrixXd chart_vv = patch.R.transpose() * J.d_vv * patch.R;
    Eigen::MatrixXd A = chart_vv.topLeftCorner(n - 1, n - 1);
    Eigen::MatrixXd gradV_chart =
        (patch.R.transpose() * nd.DV).topRows(n - 1);  // (n-1) x (n-1)
    VecN xp = VecN::Zero(n - 1);
    Eigen::MatrixXd res = A * gradV_chart + patch.f_hess(xp);
    return res.cwiseAbs().maxCoeff();
}

}  // namespace ff
