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
#ifndef FINSLERFOOT_METRIC_HPP
#define FINSLERFOOT_METRIC_HPP

#include <string>
#include <vector>

#include "finslerfoot/common.hpp"
#include "finslerfoot/poly.hpp"

namespace ff {

enum class MetricKind { Euclidean, Riemannian, Randers };

/// Value and first/second derivatives of phi(xi; v) at one point. Index
/// conventions: d_xiv(i,j) = d2 phi / d xi_i d v_j.
struct MetricJet {
    double phi = 0.0;
    VecN d_xi, d_v;
    MatN d_xixi, d_xiv, d_vv;
};

/// Symmetric matrix of polynomial entries (position-dependent metric tensor).
struct PolyMatrix {
    int n = 0;
    std::vector<PolyExpr> entries;  // row-major n*n, kept symmetric

    static PolyMatrix identity(int n);
    const PolyExpr& at(int i, int j) const { return entries[i * n + j]; }
    PolyExpr& at(int i, int j) { return entries[i * n + j]; }

    MatN value(const VecN& x) const;
    MatN deriv(int k, const VecN& x) const;           // d g / d x_k
    MatN deriv2(int k, int l, const VecN& x) const;   // d2 g / d x_k d x_l
    bool is_constant() const;
};

struct PolyVector {
    int n = 0;
    std::vector<PolyExpr> entries;

    VecN value(const VecN& x) const;
    MatN jacobian(const VecN& x) const;               // J(i,k) = d b_i / d x_k
    MatN deriv2(int i, const VecN& x) const;          // hessian of entry i
    bool is_constant() const;
};

/// Max violation of each of the six axis identities a special-coordinate
/// metric satisfies along {t e_n} with direction e_n.
struct SpecialFormReport {
    double v_unit = 0.0;       // |phi - 1|
    double v_dxi = 0.0;        // |phi_xi|
    double v_dv = 0.0;         // |phi_{v_a}| and |phi_{v_n} - 1|
    double v_dxiv = 0.0;       // |phi_{xi v}|
    double v_dvvn = 0.0;       // |phi_{v v} e_n|
    double v_dxixin = 0.0;     // |phi_{xi xi} e_n|
    double tol = 0.0;
    bool pass = false;
    double max_violation() const;
};

struct MetricValidityReport {
    bool ok = true;
    double min_phi = 0.0;            // over samples
    double max_randers_b_norm = 0.0; // |b|_{a^{-1}}, Randers only
    double min_psi_vv_eig = 0.0;     // Hessian of phi^2
    std::string message;
};

/// A Finsler metric on a coordinate domain: Euclidean, Riemannian
/// sqrt(v' g(x) v), or Randers sqrt(v' a(x) v) + b(x).v. Immutable and
/// freely shareable across threads; all member functions are const.
class MetricSpec {
public:
    static MetricSpec euclidean(int n);
    static MetricSpec riemannian(PolyMatrix g);
    static MetricSpec randers(PolyMatrix a, PolyVector b);

    int dimension() const { return n_; }
    MetricKind kind() const { return kind_; }
    bool position_dependent() const { return position_dependent_; }

    /// phi(xi; v). Positively 1-homogeneous in v. Throws DomainError on v=0.
    double eval(const VecN& xi, const VecN& v) const;

    /// Full analytic derivative jet.
    MetricJet jet(const VecN& xi, const VecN& v) const;

    /// Central-difference jet, the independent oracle for jet(). O(h^2), or
    /// O(h^4) with Richardson extrapolation.
    MetricJet jet_fd(const VecN& xi, const VecN& v, double h,
                     bool richardson = false) const;

    SpecialFormReport check_special_form(double t_max, double tol,
                                         int samples = 41) const;

    /// Pullback under x -> origin + R x (and v -> R v): the metric seen from
    /// a rotated/translated chart. R must be orthogonal.
    MetricSpec transformed(const MatN& R, const VecN& origin) const;

    MetricValidityReport validate(const Box& box, int samples, Rng& rng) const;

private:
    MetricSpec() = default;
    int n_ = 0;
    MetricKind kind_ = MetricKind::Euclidean;
    bool position_dependent_ = false;
    PolyMatrix a_;   // quadratic part (identity for Euclidean)
    PolyVector b_;   // drift covector (Randers only)
};

}  // namespace ff

#endif
