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
#ifndef FINSLERFOOT_SECOND_VARIATION_HPP
#define FINSLERFOOT_SECOND_VARIATION_HPP

#include <optional>
#include <vector>

#include "finslerfoot/jacobi.hpp"

namespace ff {

/// Finsler length of a smooth curve given uniformly spaced samples: composite
/// Simpson with fourth-order finite-difference velocities. Falls back to
/// per-segment chord quadrature below five samples.
double curve_length(const MetricSpec& metric, const std::vector<VecN>& samples);

/// Length using the trajectory's stored exact velocities (preferred).
double curve_length(const MetricSpec& metric, const Trajectory& traj);

/// Length of the polyline through `points`: per-segment Simpson of
/// phi(x; segment direction). This is the discrete functional behind the
/// second-difference oracle.
double polyline_length(const MetricSpec& metric, const std::vector<VecN>& points,
                       int subdiv = 2);

/// Piecewise-linear tangential perturbation on N+1 uniform nodes of
/// [0, s_bar]; the far end is pinned, the boundary end is free.
struct VariationFamily {
    int N = 0;
    double s_bar = 0.0;
    Eigen::MatrixXd zeta;  // (N+1) x (n-1), last row zero

    static VariationFamily random(Rng& rng, int N, double s_bar, int tangential_dims);
    static VariationFamily from_nodal(double s_bar, Eigen::MatrixXd values);
};

/// Quadratic form of the boundary-to-point second variation over the free
/// nodes (boundary node included): integral part plus the -D2f(0') block.
struct QuadraticForm {
    Eigen::MatrixXd Q;
    Eigen::MatrixXd M;  // piecewise-linear mass matrix over the same nodes
    double s_bar = 0.0;
    int N = 0;
    std::string provenance;  // "special-form"

    /// Smallest eigenvalue of Q x = lambda M x; mass normalization keeps the
    /// value stable under node refinement while preserving the sign change.
    double lambda_min() const;
    Eigen::VectorXd lambda_min_vector() const;
    double apply(const VariationFamily& fam) const;
};

/// Second difference of curve length over the perturbation family:
/// (I[eps] - 2 I[0] + I[-eps]) / eps^2, Richardson-extrapolated over
/// {eps, eps/2}. Formula-free oracle for the quadratic form.
double second_difference_variation(const MetricSpec& metric, const BoundaryPatch& patch,
                                   const VariationFamily& family, const Trajectory& base,
                                   double eps = 1e-2);

/// Finite-element assembly of the special-coordinate second-variation form on
/// piecewise-linear perturbations with trapezoidal coefficient sampling.
/// Requires the chart-pullback metric to pass the special-form check; throws
/// DomainError otherwise (use the second-difference oracle instead).
QuadraticForm assemble_form_special(const MetricSpec& metric, const BoundaryPatch& patch,
                                    const Trajectory& base, int N, double s_bar,
                                    bool skip_gate = false);

/// First zero of lambda_min(Q)(s_bar) on (s_lo, s_hi], by scan and bisection.
std::optional<double> lambda_min_first_zero(const MetricSpec& metric,
                                            const BoundaryPatch& patch,
                                            const Trajectory& base, int N, double s_lo,
                                            double s_hi, int scan = 64,
                                            bool skip_gate = false);

struct DegeneracyReport {
    bool applicable = false;
    double s_star = 0.0;
    double J_quadrature = 0.0;  // second-variation integral of the kernel field
    double boundary_term = 0.0; // D2f(0') contraction with zeta(0)
    double rel_error = 1.0;
    double kernel_zeta_end = 0.0;  // |zeta(s_star)|, should vanish
};

/// Builds the degenerate Jacobi field at the conjugate distance and compares
/// its second-variation integral against the boundary Hessian contraction.
DegeneracyReport degeneracy_identity_check(const MetricSpec& metric,
                                           const BoundaryPatch& patch, double s_max,
                                           const JacobiOptions& jopts = {});

}  // namespace ff

#endif
