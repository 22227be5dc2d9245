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
#include "finslerfoot/metric.hpp"

#include <algorithm>
#include <cmath>

namespace ff {

PolyMatrix PolyMatrix::identity(int n) {
    PolyMatrix m;
    m.n = n;
    m.entries.assign(static_cast<size_t>(n) * n, PolyExpr());
    for (int i = 0; i < n; ++i) m.at(i, i) = PolyExpr::constant(1.0);
    return m;
}

MatN PolyMatrix::value(const VecN& x) const {
    MatN g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = at(i, j).value(x);
    return g;
}

MatN PolyMatrix::deriv(int k, const VecN& x) const {
    MatN g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = at(i, j).gradient(x)[k];
    return g;
}

MatN PolyMatrix::deriv2(int k, int l, const VecN& x) const {
    MatN g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = at(i, j).hessian(x)(k, l);
    return g;
}

bool PolyMatrix::is_constant() const {
    for (const auto& e : entries)
        if (!e.is_constant()) return false;
    return true;
}

VecN PolyVector::value(const VecN& x) const {
    VecN b(n);
    for (int i = 0; i < n; ++i) b[i] = entries[i].value(x);
    return b;
}

MatN PolyVector::jacobian(const VecN& x) const {
    MatN j(n, n);
    for (int i = 0; i < n; ++i) j.row(i) = entries[i].gradient(x).transpose();
    return j;
}

MatN PolyVector::deriv2(int i, const VecN& x) const { return entries[i].hessian(x); }

bool PolyVector::is_constant() const {
    for (const auto& e : entries)
        if (!e.is_constant()) return false;
    return true;
}

double SpecialFormReport::max_violation() const {
    return std::max({v_unit, v_dxi, v_dv, v_dxiv, v_dvvn, v_dxixin});
}

MetricSpec MetricSpec::euclidean(int n) {
    MetricSpec m;
    m.n_ = n;
    m.kind_ = MetricKind::Euclidean;
    m.a_ = PolyMatrix::identity(n);
    return m;
}

MetricSpec MetricSpec::riemannian(PolyMatrix g) {
    MetricSpec m;
    m.n_ = g.n;
    m.kind_ = MetricKind::Riemannian;
    m.position_dependent_ = !g.is_constant();
    m.a_ = std::move(g);
    return m;
}

MetricSpec MetricSpec::randers(PolyMatrix a, PolyVector b) {
    if (a.n != b.n) throw ConfigError("randers: dimension mismatch between a and b");
    MetricSpec m;
    m.n_ = a.n;
    m.kind_ = MetricKind::Randers;
    m.position_dependent_ = !a.is_constant() || !b.is_constant();
    m.a_ = std::move(a);
    m.b_ = std::move(b);
    return m;
}

namespace {
void require_nonzero(const VecN& v) {
    if (v.squaredNorm() == 0.0) throw DomainError("metric evaluated at v = 0");
}
}  // namespace

double MetricSpec::eval(const VecN& xi, const VecN& v) const {
    require_nonzero(v);
    switch (kind_) {
        case MetricKind::Euclidean:
            return v.norm();
        case MetricKind::Riemannian: {
            MatN g = a_.value(xi);
            return std::sqrt(v.dot(g * v));
        }
        case MetricKind::Randers: {
            MatN g = a_.value(xi);
            double phi = std::sqrt(v.dot(g * v)) + b_.value(xi).dot(v);
            if (phi <= 0.0)
                throw DomainError("randers metric nonpositive: |b|_{a^-1} >= 1 at sample");
            return phi;
        }
    }
    return 0.0;
}

MetricJet MetricSpec::jet(const VecN& xi, const VecN& v) const {
    require_nonzero(v);
    const int n = n_;
    MetricJet J;
    J.d_xi = VecN::Zero(n);
    J.d_xixi = MatN::Zero(n, n);
    J.d_xiv = MatN::Zero(n, n);

    if (kind_ == MetricKind::Euclidean) {
        double r = v.norm();
        J.phi = r;
        J.d_v = v / r;
        J.d_vv = (MatN::Identity(n, n) - (v * v.transpose()) / (r * r)) / r;
        return J;
    }

    // Quadratic part Q = sqrt(v' a v); Randers adds the linear part b.v.
    MatN a = a_.value(xi);
    VecN av = a * v;
    double q = v.dot(av);
    double Q = std::sqrt(q);
    VecN Qv = av / Q;
    MatN Qvv = a / Q - (av * av.transpose()) / (Q * q);

    VecN Qxi(n);
    MatN Qxiv(n, n);   // (k, j) = d2 Q / d xi_k d v_j
    MatN Qxixi(n, n);
    std::array<MatN, 3> da;
    std::array<VecN, 3> dav;
    std::array<double, 3> vdav;
    for (int k = 0; k < n; ++k) {
        da[k] = a_.deriv(k, xi);
        dav[k] = da[k] * v;
        vdav[k] = v.dot(dav[k]);
        Qxi[k] = vdav[k] / (2.0 * Q);
        Qxiv.row(k) = (dav[k] / Q - av * (vdav[k] / (2.0 * Q * q))).transpose();
    }
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            MatN dda = a_.deriv2(k, l, xi);
            Qxixi(k, l) = v.dot(dda * v) / (2.0 * Q) - vdav[k] * vdav[l] / (4.0 * Q * q);
        }

    if (kind_ == MetricKind::Riemannian) {
        J.phi = Q;
        J.d_v = Qv;
        J.d_vv = Qvv;
        J.d_xi = Qxi;
        J.d_xiv = Qxiv;
        J.d_xixi = Qxixi;
        return J;
    }

    // Randers
    VecN b = b_.value(xi);
    MatN db = b_.jacobian(xi);  // db(i,k) = d b_i / d x_k
    double phi = Q + b.dot(v);
    if (phi <= 0.0)
        throw DomainError("randers metric nonpositive: |b|_{a^-1} >= 1 at sample");
    J.phi = phi;
    J.d_v = Qv + b;
    J.d_vv = Qvv;
    J.d_xi = Qxi + db.transpose() * v;
    J.d_xiv = Qxiv + db.transpose();
    J.d_xixi = Qxixi;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += b_.deriv2(i, xi)(k, l) * v[i];
            J.d_xixi(k, l) += s;
        }
    return J;
}

namespace {

MetricJet jet_fd_once(const MetricSpec& m, const VecN& xi, const VecN& v, double h) {
    const int n = m.dimension();
    MetricJet J;
    J.phi = m.eval(xi, v);
    J.d_xi = VecN::Zero(n);
    J.d_v = VecN::Zero(n);
    J.d_xixi = MatN::Zero(n, n);
    J.d_xiv = MatN::Zero(n, n);
    J.d_vv = MatN::Zero(n, n);

    auto f = [&](const VecN& x, const VecN& w) { return m.eval(x, w); };
    for (int i = 0; i < n; ++i) {
        VecN ei = unit_axis(n, i) * h;
        J.d_xi[i] = (f(xi + ei, v) - f(xi - ei, v)) / (2 * h);
        J.d_v[i] = (f(xi, v + ei) - f(xi, v - ei)) / (2 * h);
        J.d_xixi(i, i) = (f(xi + ei, v) - 2 * J.phi + f(xi - ei, v)) / (h * h);
        J.d_vv(i, i) = (f(xi, v + ei) - 2 * J.phi + f(xi, v - ei)) / (h * h);
        for (int j = 0; j < n; ++j) {
            VecN ej = unit_axis(n, j) * h;
            J.d_xiv(i, j) = (f(xi + ei, v + ej) - f(xi + ei, v - ej) -
                             f(xi - ei, v + ej) + f(xi - ei, v - ej)) /
                            (4 * h * h);
            if (j > i) {
                double mxx = (f(xi + ei + ej, v) - f(xi + ei - ej, v) -
                              f(xi - ei + ej, v) + f(xi - ei - ej, v)) /
                             (4 * h * h);
                J.d_xixi(i, j) = J.d_xixi(j, i) = mxx;
                double mvv = (f(xi, v + ei + ej) - f(xi, v + ei - ej) -
                              f(xi, v - ei + ej) + f(xi, v - ei - ej)) /
                             (4 * h * h);
                J.d_vv(i, j) = J.d_vv(j, i) = mvv;
            }
        }
    }
    return J;
}

}  // namespace

MetricJet MetricSpec::jet_fd(const VecN& xi, const VecN& v, double h,
                             bool richardson) const {
    if (h <= 0.0) throw DomainError("jet_fd: step must be positive");
    MetricJet A = jet_fd_once(*this, xi, v, h);
    if (!richardson) return A;
    MetricJet B = jet_fd_once(*this, xi, v, h / 2.0);
    MetricJet R;
    R.phi = A.phi;
    R.d_xi = (4.0 * B.d_xi - A.d_xi) / 3.0;
    R.d_v = (4.0 * B.d_v - A.d_v) / 3.0;
    R.d_xixi = (4.0 * B.d_xixi - A.d_xixi) / 3.0;
    R.d_xiv = (4.0 * B.d_xiv - A.d_xiv) / 3.0;
    R.d_vv = (4.0 * B.d_vv - A.d_vv) / 3.0;
    return R;
}

SpecialFormReport MetricSpec::check_special_form(double t_max, double tol,
                                                 int samples) const {
    SpecialFormReport rep;
    rep.tol = tol;
    const int n = n_;
    VecN en = unit_axis(n, n - 1);
    for (int s = 0; s < samples; ++s) {
        double t = samples > 1 ? t_max * s / (samples - 1) : 0.0;
        MetricJet J = jet(t * en, en);
        rep.v_unit = std::max(rep.v_unit, std::abs(J.phi - 1.0));
        rep.v_dxi = std::max(rep.v_dxi, J.d_xi.cwiseAbs().maxCoeff());
        for (int a = 0; a < n - 1; ++a)
            rep.v_dv = std::max(rep.v_dv, std::abs(J.d_v[a]));
        rep.v_dv = std::max(rep.v_dv, std::abs(J.d_v[n - 1] - 1.0));
        rep.v_dxiv = std::max(rep.v_dxiv, J.d_xiv.cwiseAbs().maxCoeff());
        rep.v_dvvn = std::max(rep.v_dvvn, (J.d_vv * en).cwiseAbs().maxCoeff());
        rep.v_dxixin = std::max(rep.v_dxixin, (J.d_xixi * en).cwiseAbs().maxCoeff());
    }
    rep.pass = rep.max_violation() <= tol;
    return rep;
}

MetricSpec MetricSpec::transformed(const MatN& R, const VecN& origin) const {
    if (kind_ == MetricKind::Euclidean) return *this;
    const int n = n_;
    PolyMatrix a;
    a.n = n;
    a.entries.assign(static_cast<size_t>(n) * n, PolyExpr());
    // a~(x) = R' a(origin + R x) R, as polynomials.
    std::vector<PolyExpr> sub(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sub[i * n + j] = a_.at(i, j).substitute_affine(R, origin);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            PolyExpr e;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    e = e + PolyExpr::constant(R(k, i) * R(l, j)) * sub[k * n + l];
            a.at(i, j) = e;
        }
    if (kind_ == MetricKind::Riemannian) return riemannian(std::move(a));

    PolyVector b;
    b.n = n;
    b.entries.assign(n, PolyExpr());
    for (int i = 0; i < n; ++i) {
        PolyExpr e;
        for (int k = 0; k < n; ++k)
            e = e + PolyExpr::constant(R(k, i)) *
                        b_.entries[k].substitute_affine(R, origin);
        b.entries[i] = e;
    }
    return randers(std::move(a), std::move(b));
}

MetricValidityReport MetricSpec::validate(const Box& box, int samples, Rng& rng) const {
    MetricValidityReport rep;
    rep.min_phi = 1e300;
    rep.min_psi_vv_eig = 1e300;
    const int n = n_;
    for (int s = 0; s < samples; ++s) {
        VecN xi(n), v(n);
        for (int i = 0; i < n; ++i) {
            xi[i] = rng.uniform(box.lo[i], box.hi[i]);
            v[i] = rng.centered();
        }
        if (v.norm() < 1e-6) v = unit_axis(n, 0);
        try {
            MetricJet J = jet(xi, v);
            rep.min_phi = std::min(rep.min_phi, J.phi / v.norm());
            MatN psi_vv = 2.0 * (J.phi * J.d_vv + J.d_v * J.d_v.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(psi_vv);
            rep.min_psi_vv_eig =
                std::min(rep.min_psi_vv_eig, es.eigenvalues().minCoeff());
            if (kind_ == MetricKind::Randers) {
                MatN a = a_.value(xi);
                VecN b = b_.value(xi);
                double bn = std::sqrt(b.dot(a.ldlt().solve(b)));
                rep.max_randers_b_norm = std::max(rep.max_randers_b_norm, bn);
                if (bn >= 1.0) {
                    rep.ok = false;
                    rep.message = "randers condition violated: |b|_{a^-1} >= 1";
                }
            }
        } catch (const DomainError& e) {
            rep.ok = false;
            rep.message = e.what();
        }
    }
    if (rep.min_phi <= 0.0) {
        rep.ok = false;
        if (rep.message.empty()) rep.message = "phi not positive on samples";
    }
    if (rep.min_psi_vv_eig <= 0.0) {
        rep.ok = false;
        if (rep.message.empty()) rep.message = "Hessian of phi^2 not positive definite";
    }
    return rep;
}

}  // namespace ff
