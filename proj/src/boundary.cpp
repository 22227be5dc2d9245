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
#include "finslerfoot/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ff {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

Vec2 rot90_left(const Vec2& v) { return Vec2(-v.y(), v.x()); }
}  // namespace

VecN BoundaryPatch::ambient(const VecN& xp) const {
    VecN chart(n);
    chart.head(n - 1) = xp;
    chart[n - 1] = f->value(xp);
    return origin + R * chart;
}

VecN BoundaryPatch::tangent(int alpha, const VecN& xp) const {
    VecN t = VecN::Zero(n);
    t[alpha] = 1.0;
    t[n - 1] = f->gradient(xp)[alpha];
    return R * t;
}

VecN BoundaryPatch::interior_normal(const VecN& xp) const {
    VecN g = f->gradient(xp);
    VecN nu(n);
    nu.head(n - 1) = -g;
    nu[n - 1] = 1.0;
    nu /= std::sqrt(1.0 + g.squaredNorm());
    return R * nu;
}

BoundaryPatch BoundaryPatch::from_graph(int n, PolyExpr f) {
    VecN zero = VecN::Zero(n - 1);
    if (std::abs(f.value(zero)) > 1e-12 || f.gradient(zero).norm() > 1e-12)
        throw ConfigError("graph boundary must be adapted: f(0')=0 and grad f(0')=0");
    BoundaryPatch p;
    p.n = n;
    p.R = MatN::Identity(n, n);
    p.origin = VecN::Zero(n);
    p.f = std::make_shared<PolyGraph>(std::move(f));
    return p;
}

Vec2 BoundaryCurve::unit_tangent(double u) const {
    Vec2 t = d1(u);
    double s = t.norm();
    if (s == 0.0) throw DomainError("boundary curve not regular at u");
    return t / s;
}

Vec2 BoundaryCurve::interior_normal(double u) const {
    Vec2 t = unit_tangent(u);
    return interior_left() ? rot90_left(t) : Vec2(t.y(), -t.x());
}

double BoundaryCurve::curvature_toward_interior(double u) const {
    Vec2 g1 = d1(u), g2 = d2(u);
    double cross = g1.x() * g2.y() - g1.y() * g2.x();
    double k = cross / std::pow(g1.norm(), 3);  // positive = curving left
    return interior_left() ? k : -k;
}

double BoundaryCurve::total_length(int quad_samples) const {
    auto [lo, hi] = param_range();
    double L = 0.0, du = (hi - lo) / quad_samples;
    for (int i = 0; i < quad_samples; ++i) {
        double u = lo + (i + 0.5) * du;
        L += d1(u).norm() * du;
    }
    return L;
}

CircleBoundary::CircleBoundary(Vec2 center, double radius, bool interior_inside)
    : c_(center), r_(radius), interior_inside_(interior_inside) {
    if (radius <= 0.0) throw ConfigError("circle radius must be positive");
}
Vec2 CircleBoundary::gamma(double u) const {
    double t = kTwoPi * u;
    return c_ + r_ * Vec2(std::cos(t), std::sin(t));
}
Vec2 CircleBoundary::d1(double u) const {
    double t = kTwoPi * u;
    return r_ * kTwoPi * Vec2(-std::sin(t), std::cos(t));
}
Vec2 CircleBoundary::d2(double u) const {
    double t = kTwoPi * u;
    return -r_ * kTwoPi * kTwoPi * Vec2(std::cos(t), std::sin(t));
}
Vec2 CircleBoundary::d3(double u) const {
    double t = kTwoPi * u;
    return r_ * kTwoPi * kTwoPi * kTwoPi * Vec2(std::sin(t), -std::cos(t));
}
bool CircleBoundary::inside(const Vec2& X) const {
    bool in = (X - c_).norm() < r_;
    return interior_inside_ ? in : !in;
}

EllipseBoundary::EllipseBoundary(Vec2 center, double a, double b, bool interior_inside)
    : c_(center), a_(a), b_(b), interior_inside_(interior_inside) {
    if (a <= 0.0 || b <= 0.0) throw ConfigError("ellipse semi-axes must be positive");
}
Vec2 EllipseBoundary::gamma(double u) const {
    double t = kTwoPi * u;
    return c_ + Vec2(a_ * std::cos(t), b_ * std::sin(t));
}
Vec2 EllipseBoundary::d1(double u) const {
    double t = kTwoPi * u;
    return kTwoPi * Vec2(-a_ * std::sin(t), b_ * std::cos(t));
}
Vec2 EllipseBoundary::d2(double u) const {
    double t = kTwoPi * u;
    return -kTwoPi * kTwoPi * Vec2(a_ * std::cos(t), b_ * std::sin(t));
}
Vec2 EllipseBoundary::d3(double u) const {
    double t = kTwoPi * u;
    return kTwoPi * kTwoPi * kTwoPi * Vec2(a_ * std::sin(t), -b_ * std::cos(t));
}
bool EllipseBoundary::inside(const Vec2& X) const {
    Vec2 d = X - c_;
    bool in = (d.x() * d.x()) / (a_ * a_) + (d.y() * d.y()) / (b_ * b_) < 1.0;
    return interior_inside_ ? in : !in;
}

namespace {

// Scalar value with three derivatives; enough chain rule for r(theta) shapes.
struct J3 {
    double f, f1, f2, f3;
};
J3 j3_cos(double t) { return {std::cos(t), -std::sin(t), -std::cos(t), std::sin(t)}; }
J3 j3_sin(double t) { return {std::sin(t), std::cos(t), -std::sin(t), -std::cos(t)}; }
J3 j3_scale(const J3& a, double c) { return {c * a.f, c * a.f1, c * a.f2, c * a.f3}; }
J3 j3_add(const J3& a, const J3& b) {
    return {a.f + b.f, a.f1 + b.f1, a.f2 + b.f2, a.f3 + b.f3};
}
J3 j3_mul(const J3& a, const J3& b) {
    return {a.f * b.f,
            a.f1 * b.f + a.f * b.f1,
            a.f2 * b.f + 2 * a.f1 * b.f1 + a.f * b.f2,
            a.f3 * b.f + 3 * a.f2 * b.f1 + 3 * a.f1 * b.f2 + a.f * b.f3};
}
J3 j3_ipow(const J3& a, int k) {
    J3 r{1, 0, 0, 0};
    for (int i = 0; i < k; ++i) r = j3_mul(r, a);
    return r;
}
// a^c for a.f > 0
J3 j3_powc(const J3& a, double c) {
    double f = std::pow(a.f, c);
    double g1 = c * std::pow(a.f, c - 1);
    double g2 = c * (c - 1) * std::pow(a.f, c - 2);
    double g3 = c * (c - 1) * (c - 2) * std::pow(a.f, c - 3);
    return {f,
            g1 * a.f1,
            g2 * a.f1 * a.f1 + g1 * a.f2,
            g3 * a.f1 * a.f1 * a.f1 + 3 * g2 * a.f1 * a.f2 + g1 * a.f3};
}

}  // namespace

RadialBoundary RadialBoundary::superellipse(Vec2 center, double a, double b, int p,
                                            bool interior_inside) {
    if (p < 2 || p % 2 != 0) throw ConfigError("superellipse exponent must be even >= 2");
    RadialBoundary r;
    r.shape_ = Shape::Superellipse;
    r.c_ = center;
    r.a_ = a;
    r.b_ = b;
    r.p_ = p;
    r.interior_inside_ = interior_inside;
    return r;
}

RadialBoundary RadialBoundary::cosine_circle(Vec2 center, double radius, double amplitude,
                                             int lobes, bool interior_inside) {
    if (radius <= 0.0 || std::abs(amplitude) >= 1.0)
        throw ConfigError("cosine circle needs radius > 0 and |amplitude| < 1");
    RadialBoundary r;
    r.shape_ = Shape::CosineCircle;
    r.c_ = center;
    r.a_ = radius;
    r.amp_ = amplitude;
    r.lobes_ = lobes;
    r.interior_inside_ = interior_inside;
    return r;
}

RadialBoundary::RJet RadialBoundary::radius_jet(double theta) const {
    if (shape_ == Shape::CosineCircle) {
        double k = lobes_;
        J3 c = j3_cos(k * theta);
        // chain rule for inner k*theta
        J3 ck{c.f, k * c.f1, k * k * c.f2, k * k * k * c.f3};
        J3 r = j3_scale(j3_add({1, 0, 0, 0}, j3_scale(ck, amp_)), a_);
        return {r.f, r.f1, r.f2, r.f3};
    }
    // superellipse: r = ((cos/a)^p + (sin/b)^p)^(-1/p)
    J3 g = j3_add(j3_ipow(j3_scale(j3_cos(theta), 1.0 / a_), p_),
                  j3_ipow(j3_scale(j3_sin(theta), 1.0 / b_), p_));
    J3 r = j3_powc(g, -1.0 / p_);
    return {r.f, r.f1, r.f2, r.f3};
}

Vec2 RadialBoundary::gamma(double u) const {
    double t = kTwoPi * u;
    RJet r = radius_jet(t);
    return c_ + r.r * Vec2(std::cos(t), std::sin(t));
}
Vec2 RadialBoundary::d1(double u) const {
    double t = kTwoPi * u;
    RJet r = radius_jet(t);
    double ct = std::cos(t), st = std::sin(t);
    Vec2 d(r.r1 * ct - r.r * st, r.r1 * st + r.r * ct);
    return kTwoPi * d;
}
Vec2 RadialBoundary::d2(double u) const {
    double t = kTwoPi * u;
    RJet r = radius_jet(t);
    double ct = std::cos(t), st = std::sin(t);
    Vec2 d((r.r2 - r.r) * ct - 2 * r.r1 * st, (r.r2 - r.r) * st + 2 * r.r1 * ct);
    return kTwoPi * kTwoPi * d;
}
Vec2 RadialBoundary::d3(double u) const {
    double t = kTwoPi * u;
    RJet r = radius_jet(t);
    double ct = std::cos(t), st = std::sin(t);
    Vec2 d((r.r3 - 3 * r.r1) * ct - (3 * r.r2 - r.r) * st,
           (r.r3 - 3 * r.r1) * st + (3 * r.r2 - r.r) * ct);
    return kTwoPi * kTwoPi * kTwoPi * d;
}
bool RadialBoundary::inside(const Vec2& X) const {
    Vec2 d = X - c_;
    double theta = std::atan2(d.y(), d.x());
    bool in = d.norm() < radius_jet(theta).r;
    return interior_inside_ ? in : !in;
}

LineBoundary::LineBoundary(Vec2 point, Vec2 interior_normal, double window)
    : p0_(point), nu_(interior_normal.normalized()), window_(window) {
    t_ = Vec2(nu_.y(), -nu_.x());  // chart abscissa so that [t, nu] is proper
}
Vec2 LineBoundary::gamma(double u) const { return p0_ + u * t_; }
Vec2 LineBoundary::d1(double) const { return t_; }
Vec2 LineBoundary::d2(double) const { return Vec2::Zero(); }
Vec2 LineBoundary::d3(double) const { return Vec2::Zero(); }
bool LineBoundary::inside(const Vec2& X) const { return nu_.dot(X - p0_) > 0.0; }
bool LineBoundary::interior_left() const {
    // nu = rot90_left(t) <=> interior on the left of travel along t
    Vec2 left = rot90_left(t_);
    return left.dot(nu_) > 0.0;
}

namespace {

/// Graph of a curve over its tangent line at gamma(u0).
class CurveGraph final : public GraphFn {
public:
    CurveGraph(const BoundaryCurve* curve, double u0, Vec2 origin, Vec2 t, Vec2 nu)
        : curve_(curve), u0_(u0), origin_(origin), t_(t), nu_(nu) {}

    double value(const VecN& xp) const override {
        double u = solve_u(xp[0]);
        return nu_.dot(curve_->gamma(u) - origin_);
    }
    VecN gradient(const VecN& xp) const override {
        double u = solve_u(xp[0]);
        Vec2 g1 = curve_->d1(u);
        VecN g(1);
        g[0] = nu_.dot(g1) / t_.dot(g1);
        return g;
    }
    MatN hessian(const VecN& xp) const override {
        double u = solve_u(xp[0]);
        Vec2 g1 = curve_->d1(u), g2 = curve_->d2(u);
        double p = t_.dot(g1), q = nu_.dot(g1);
        double dp = t_.dot(g2), dq = nu_.dot(g2);
        MatN h(1, 1);
        h(0, 0) = (dq * p - q * dp) / (p * p * p);
        return h;
    }

private:
    double solve_u(double x1) const {
        double u = u0_ + x1 / t_.dot(curve_->d1(u0_));
        for (int it = 0; it < 50; ++it) {
            double r = t_.dot(curve_->gamma(u) - origin_) - x1;
            double dr = t_.dot(curve_->d1(u));
            double du = r / dr;
            u -= du;
            if (std::abs(du) < 1e-15 * (1.0 + std::abs(u))) break;
        }
        return u;
    }

    const BoundaryCurve* curve_;
    double u0_;
    Vec2 origin_, t_, nu_;
};

}  // namespace

BoundaryPatch adapted_chart(const BoundaryCurve& curve, double u) {
    Vec2 origin = curve.gamma(u);
    Vec2 nu = curve.interior_normal(u);
    Vec2 t(nu.y(), -nu.x());  // det [t nu] = +1
    BoundaryPatch p;
    p.n = 2;
    p.R = MatN(2, 2);
    p.R << t.x(), nu.x(), t.y(), nu.y();
    p.origin = Vec2(origin);
    p.f = std::make_shared<CurveGraph>(&curve, u, origin, t, nu);
    return p;
}

Vec2 boundary_normal(const BoundaryCurve& curve, double u) {
    return curve.interior_normal(u);
}

double project_to_curve(const BoundaryCurve& curve, const Vec2& X, double u_seed) {
    double u = u_seed;
    for (int it = 0; it < 60; ++it) {
        Vec2 g = curve.gamma(u), g1 = curve.d1(u), g2 = curve.d2(u);
        double r = g1.dot(g - X);
        double dr = g2.dot(g - X) + g1.squaredNorm();
        if (dr == 0.0) break;
        double du = r / dr;
        u -= du;
        if (std::abs(du) < 1e-14) break;
    }
    return u;
}

Vec2 normal_at_point(const BoundaryCurve& curve, const Vec2& X, double tol) {
    auto [lo, hi] = curve.param_range();
    double best_u = lo, best_d = 1e300;
    const int scan = 512;
    for (int i = 0; i < scan; ++i) {
        double u = lo + (hi - lo) * i / scan;
        double d = (curve.gamma(u) - X).norm();
        if (d < best_d) {
            best_d = d;
            best_u = u;
        }
    }
    double u = project_to_curve(curve, X, best_u);
    if ((curve.gamma(u) - X).norm() > tol)
        throw DomainError("normal_at_point: point is off the boundary");
    return curve.interior_normal(u);
}

std::vector<double> equal_arclength_params(const BoundaryCurve& curve, double spacing) {
    auto [lo, hi] = curve.param_range();
    const int fine = 8192;
    std::vector<double> cum(fine + 1, 0.0);
    double du = (hi - lo) / fine;
    for (int i = 0; i < fine; ++i) {
        double u = lo + (i + 0.5) * du;
        cum[i + 1] = cum[i] + curve.d1(u).norm() * du;
    }
    double L = cum[fine];
    int count = std::max(4, static_cast<int>(std::ceil(L / spacing)));
    std::vector<double> params;
    params.reserve(count);
    int j = 0;
    for (int k = 0; k < count; ++k) {
        double target = L * k / count;
        while (j < fine && cum[j + 1] < target) ++j;
        double frac = (target - cum[j]) / std::max(cum[j + 1] - cum[j], 1e-300);
        params.push_back(lo + (j + frac) * du);
    }
    return params;
}

}  // namespace ff
