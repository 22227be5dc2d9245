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
#include "finslerfoot/second_variation.hpp"

#include <algorithm>
#include <cmath>

namespace ff {

namespace {

double simpson_uniform(const std::vector<double>& f, double h) {
    const size_t m = f.size();
    if (m < 2) return 0.0;
    if (m == 2) return 0.5 * h * (f[0] + f[1]);
    double s = 0.0;
    size_t i = 0;
    // composite Simpson over pairs of intervals, trapezoid tail if odd count
    for (; i + 2 < m; i += 2) s += (h / 3.0) * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    if (i + 1 < m) s += 0.5 * h * (f[i] + f[i + 1]);
    return s;
}

}  // namespace

double curve_length(const MetricSpec& metric, const std::vector<VecN>& samples) {
    const size_t m = samples.size();
    if (m < 2) throw DomainError("curve_length needs at least two samples");
    if (m < 5) return polyline_length(metric, samples, 4);
    // fourth-order velocities on a uniform parameter grid with unit spacing;
    // phi is 1-homogeneous so the parametrization scale cancels in h * f.
    std::vector<double> f(m);
    auto vel = [&](size_t i) -> VecN {
        if (i >= 2 && i + 2 < m)
            return (samples[i - 2] - 8.0 * samples[i - 1] + 8.0 * samples[i + 1] -
                    samples[i + 2]) /
                   12.0;
        if (i == 0)
            return (-25.0 * samples[0] + 48.0 * samples[1] - 36.0 * samples[2] +
                    16.0 * samples[3] - 3.0 * samples[4]) /
                   12.0;
        if (i == 1)
            return (-3.0 * samples[0] - 10.0 * samples[1] + 18.0 * samples[2] -
                    6.0 * samples[3] + samples[4]) /
                   12.0;
        if (i + 1 == m)
            return (25.0 * samples[m - 1] - 48.0 * samples[m - 2] + 36.0 * samples[m - 3] -
                    16.0 * samples[m - 4] + 3.0 * samples[m - 5]) /
                   12.0;
        return (3.0 * samples[m - 1] + 10.0 * samples[m - 2] - 18.0 * samples[m - 3] +
                6.0 * samples[m - 4] - samples[m - 5]) /
               12.0;
    };
    for (size_t i = 0; i < m; ++i) f[i] = metric.eval(samples[i], vel(i));
    return simpson_uniform(f, 1.0);
}

double curve_length(const MetricSpec& metric, const Trajectory& traj) {
    const auto& ss = traj.samples;
    if (ss.size() < 2) throw DomainError("curve_length needs at least two samples");
    // integrand is exact at nodes; integrate |dt| with Simpson on the uniform
    // part and trapezoid on the final partial step
    std::vector<double> f;
    f.reserve(ss.size());
    for (const auto& s : ss) f.push_back(metric.eval(s.xi, s.v));
    double h = std::abs(ss[1].t - ss[0].t);
    double tail = 0.0;
    double last = std::abs(ss[ss.size() - 1].t - ss[ss.size() - 2].t);
    if (std::abs(last - h) > 1e-12 * h && ss.size() > 2) {
        tail = 0.5 * last * (f[ss.size() - 2] + f[ss.size() - 1]);
        f.pop_back();
    }
    return simpson_uniform(f, h) + tail;
}

double polyline_length(const MetricSpec& metric, const std::vector<VecN>& points,
                       int subdiv) {
    if (points.size() < 2) throw DomainError("polyline_length needs two points");
    double L = 0.0;
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        const VecN& p = points[i];
        VecN d = points[i + 1] - p;
        if (d.squaredNorm() == 0.0) continue;
        // Simpson panels along the chord; phi(x; d) integrates to length since
        // phi is 1-homogeneous in the chord direction
        double seg = 0.0;
        for (int k = 0; k < subdiv; ++k) {
            double a = static_cast<double>(k) / subdiv;
            double b = static_cast<double>(k + 1) / subdiv;
            VecN pa = p + a * d, pm = p + 0.5 * (a + b) * d, pb = p + b * d;
            seg += ((b - a) / 6.0) *
                   (metric.eval(pa, d) + 4.0 * metric.eval(pm, d) + metric.eval(pb, d));
        }
        L += seg;
    }
    return L;
}

VariationFamily VariationFamily::random(Rng& rng, int N, double s_bar,
                                        int tangential_dims) {
    VariationFamily fam;
    fam.N = N;
    fam.s_bar = s_bar;
    fam.zeta = Eigen::MatrixXd::Zero(N + 1, tangential_dims);
    for (int c = 0; c < tangential_dims; ++c) {
        double a0 = rng.centered();
        double a[4];
        for (double& x : a) x = rng.centered();
        for (int i = 0; i <= N; ++i) {
            double t = s_bar * i / N;
            double val = a0 * (1.0 - t / s_bar);
            for (int k = 1; k <= 4; ++k)
                val += a[k - 1] * std::sin(k * M_PI * t / s_bar) / k;
            fam.zeta(i, c) = val;
        }
        fam.zeta(N, c) = 0.0;
    }
    return fam;
}

VariationFamily VariationFamily::from_nodal(double s_bar, Eigen::MatrixXd values) {
    VariationFamily fam;
    fam.N = static_cast<int>(values.rows()) - 1;
    fam.s_bar = s_bar;
    fam.zeta = std::move(values);
    fam.zeta.row(fam.N).setZero();
    return fam;
}

double QuadraticForm::lambda_min() const {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Q, M,
                                                                 Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Eigen::VectorXd QuadraticForm::lambda_min_vector() const {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Q, M);
    int idx = 0;
    es.eigenvalues().minCoeff(&idx);
    return es.eigenvectors().col(idx);
}

double QuadraticForm::apply(const VariationFamily& fam) const {
    const int nd = static_cast<int>(fam.zeta.cols());
    Eigen::VectorXd x(N * nd);
    for (int i = 0; i < N; ++i)
        for (int c = 0; c < nd; ++c) x[i * nd + c] = fam.zeta(i, c);
    return x.dot(Q * x);
}

double second_difference_variation(const MetricSpec& metric, const BoundaryPatch& patch,
                                   const VariationFamily& family, const Trajectory& base,
                                   double eps) {
    const int n = metric.dimension();
    const int N = family.N;
    const double s_bar = family.s_bar;
    if (base.length() < s_bar - 1e-12)
        throw DomainError("second_difference_variation: base shorter than s_bar");

    // base curve in chart coordinates at the family nodes
    std::vector<VecN> chart(N + 1);
    double t0 = base.t_front();
    for (int i = 0; i <= N; ++i) {
        GeodesicState s = base.at(t0 + s_bar * i / N);
        chart[i] = patch.R.transpose() * (s.xi - patch.origin);
    }
    VecN foot_xp = chart[0].head(n - 1);
    double f0 = patch.height(foot_xp);

    auto length_of = [&](double e) {
        // tangential nodes shift by e * zeta; the height component carries the
        // linear-in-t correction that keeps the t=0 node on the boundary
        VecN xp0 = foot_xp;
        for (int c = 0; c < n - 1; ++c) xp0[c] += e * family.zeta(0, c);
        double df = patch.height(xp0) - f0;
        std::vector<VecN> pts(N + 1);
        for (int i = 0; i <= N; ++i) {
            VecN c = chart[i];
            for (int k = 0; k < n - 1; ++k) c[k] += e * family.zeta(i, k);
            c[n - 1] += (1.0 - static_cast<double>(i) / N) * df;
            pts[i] = patch.origin + patch.R * c;
        }
        return polyline_length(metric, pts, 2);
    };

    auto second_diff = [&](double e) {
        return (length_of(e) - 2.0 * length_of(0.0) + length_of(-e)) / (e * e);
    };
    double d1 = second_diff(eps);
    double d2 = second_diff(eps / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

QuadraticForm assemble_form_special(const MetricSpec& metric, const BoundaryPatch& patch,
                                    const Trajectory& base, int N, double s_bar,
                                    bool skip_gate) {
    const int n = metric.dimension();
    if (!skip_gate) {
        MetricSpec chart_metric = metric.transformed(patch.R, patch.origin);
        SpecialFormReport gate = chart_metric.check_special_form(s_bar, 1e-8);
        if (!gate.pass)
            throw DomainError(
                "assemble_form_special: metric is not in special form relative to "
                "the patch frame (violation " +
                std::to_string(gate.max_violation()) + ")");
    }
    if (base.length() < s_bar - 1e-12)
        throw DomainError("assemble_form_special: base shorter than s_bar");

    const int nd = n - 1;
    const double dt = s_bar / N;
    const double t0 = base.t_front();

    // tangential coefficient blocks at the nodes
    std::vector<Eigen::MatrixXd> P(N + 1), A(N + 1);
    for (int i = 0; i <= N; ++i) {
        GeodesicState s = base.at(t0 + dt * i);
        MetricJet J = metric.jet(s.xi, s.v);
        P[i] = (patch.R.transpose() * J.d_xixi * patch.R).topLeftCorner(nd, nd);
        A[i] = (patch.R.transpose() * J.d_vv * patch.R).topLeftCorner(nd, nd);
    }

    QuadraticForm form;
    form.N = N;
    form.s_bar = s_bar;
    form.provenance = "special-form";
    form.Q = Eigen::MatrixXd::Zero(N * nd, N * nd);
    form.M = Eigen::MatrixXd::Zero(N * nd, N * nd);
    auto add_block = [&](Eigen::MatrixXd& target, int i, int j,
                         const Eigen::MatrixXd& blk) {
        if (i >= N || j >= N) return;  // node N pinned to zero
        target.block(i * nd, j * nd, nd, nd) += blk;
    };
    const Eigen::MatrixXd Ind = Eigen::MatrixXd::Identity(nd, nd);
    for (int e = 0; e < N; ++e) {
        Eigen::MatrixXd Abar = 0.5 * (A[e] + A[e + 1]);
        // stiffness of the linear element
        add_block(form.Q, e, e, Abar / dt);
        add_block(form.Q, e + 1, e + 1, Abar / dt);
        add_block(form.Q, e, e + 1, -Abar / dt);
        add_block(form.Q, e + 1, e, -Abar / dt);
        // trapezoidal sampling of the zero-order coefficient
        add_block(form.Q, e, e, 0.5 * dt * P[e]);
        add_block(form.Q, e + 1, e + 1, 0.5 * dt * P[e + 1]);
        // consistent linear-element mass
        add_block(form.M, e, e, (dt / 3.0) * Ind);
        add_block(form.M, e + 1, e + 1, (dt / 3.0) * Ind);
        add_block(form.M, e, e + 1, (dt / 6.0) * Ind);
        add_block(form.M, e + 1, e, (dt / 6.0) * Ind);
    }
    // boundary curvature block at the free t=0 node
    VecN xp0 = VecN::Zero(nd);
    form.Q.topLeftCorner(nd, nd) -= Eigen::MatrixXd(patch.f_hess(xp0));
    return form;
}

std::optional<double> lambda_min_first_zero(const MetricSpec& metric,
                                            const BoundaryPatch& patch,
                                            const Trajectory& base, int N, double s_lo,
                                            double s_hi, int scan, bool skip_gate) {
    auto lmin = [&](double s) {
        return assemble_form_special(metric, patch, base, N, s, skip_gate).lambda_min();
    };
    double prev_s = s_lo, prev = lmin(s_lo);
    if (prev <= 0.0) return s_lo;
    for (int k = 1; k <= scan; ++k) {
        double s = s_lo + (s_hi - s_lo) * k / scan;
        double val = lmin(s);
        if (val <= 0.0) {
            double a = prev_s, b = s;
            for (int it = 0; it < 60 && (b - a) > 1e-7; ++it) {
                double mid = 0.5 * (a + b);
                if (lmin(mid) > 0.0)
                    a = mid;
                else
                    b = mid;
            }
            return 0.5 * (a + b);
        }
        prev_s = s;
        prev = val;
    }
    return std::nullopt;
}

DegeneracyReport degeneracy_identity_check(const MetricSpec& metric,
                                           const BoundaryPatch& patch, double s_max,
                                           const JacobiOptions& jopts) {
    const int n = metric.dimension();
    const int nd = n - 1;
    DegeneracyReport rep;
    JacobiBundle B = jacobi_bundle_fd(metric, patch, VecN::Zero(nd), s_max, jopts);
    auto s_star = conjugate_distance_from_bundle(B, jopts);
    if (!s_star) return rep;  // no conjugate point in range
    rep.applicable = true;
    rep.s_star = *s_star;

    // Degenerate field: kernel combination of boundary fields plus the
    // velocity field (the velocity itself solves the variational equation).
    Eigen::VectorXd k = degenerate_kernel(B, rep.s_star);
    const auto& ss = B.base.samples;
    size_t count = ss.size();
    std::vector<VecN> zeta(count), zeta_dot(count);
    for (size_t i = 0; i < count; ++i) {
        VecN z = k[nd] * ss[i].v;
        VecN zd = k[nd] * ss[i].a;
        for (int b = 0; b < nd; ++b) {
            z += k[b] * B.fields[b].zeta[i];
            zd += k[b] * B.fields[b].zeta_dot[i];
        }
        zeta[i] = z;
        zeta_dot[i] = zd;
    }
    // normalize so the tangential chart value at the foot is unit
    Eigen::VectorXd z0 = (patch.R.transpose() * zeta[0]).head(nd);
    double scale = z0.norm();
    if (scale < 1e-12) throw NumericError("degenerate kernel has no boundary component");
    for (size_t i = 0; i < count; ++i) {
        zeta[i] /= scale;
        zeta_dot[i] /= scale;
    }
    z0 /= scale;

    {
        // zeta should vanish at the conjugate distance
        size_t i_star = 0;
        while (i_star + 1 < count && ss[i_star + 1].t <= rep.s_star) ++i_star;
        double h = rep.s_star - ss[i_star].t;
        VecN z_end = zeta[i_star] + h * zeta_dot[i_star];
        rep.kernel_zeta_end = z_end.norm();
    }

    // quadrature of the special-coordinate second-variation integrand over
    // the samples up to s_star
    std::vector<double> integrand;
    integrand.reserve(count);
    double step = std::abs(ss[1].t - ss[0].t);
    size_t last = 0;
    for (size_t i = 0; i < count && ss[i].t <= rep.s_star + 1e-12; ++i) {
        MetricJet J = metric.jet(ss[i].xi, ss[i].v);
        Eigen::MatrixXd Pm =
            (patch.R.transpose() * J.d_xixi * patch.R).topLeftCorner(nd, nd);
        Eigen::MatrixXd Am = (patch.R.transpose() * J.d_vv * patch.R).topLeftCorner(nd, nd);
        Eigen::VectorXd zt = (patch.R.transpose() * zeta[i]).head(nd);
        Eigen::VectorXd zdt = (patch.R.transpose() * zeta_dot[i]).head(nd);
        integrand.push_back(zt.dot(Pm * zt) + zdt.dot(Am * zdt));
        last = i;
    }
    rep.J_quadrature = simpson_uniform(integrand, step);
    // partial tail up to s_star
    if (ss[last].t < rep.s_star && last + 1 < count) {
        double tail_h = rep.s_star - ss[last].t;
        rep.J_quadrature += integrand.back() * tail_h;
    }

    VecN xp0 = VecN::Zero(nd);
    Eigen::MatrixXd D2f = patch.f_hess(xp0);
    rep.boundary_term = z0.dot(D2f * z0);
    double denom = std::max(std::abs(rep.boundary_term), 1e-12);
    rep.rel_error = std::abs(rep.J_quadrature - rep.boundary_term) / denom;
    return rep;
}

}  // namespace ff
