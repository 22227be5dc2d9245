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
#ifndef FINSLERFOOT_DISTANCE_FIELD_HPP
#define FINSLERFOOT_DISTANCE_FIELD_HPP

#include <limits>
#include <optional>
#include <vector>

#include "finslerfoot/jacobi.hpp"

namespace ff {

/// One converged solution of the backward-shooting foot system: arclength d,
/// foot chart/curve coordinates, tangential arrival components sigma relative
/// to the solve's arrival frame, and the phi-unit arrival velocity at X.
struct FootResult {
    double d = 0.0;
    double foot_u = 0.0;
    VecN foot_chart;         // size n-1, in the seed patch
    VecN sigma;              // size n-1
    VecN foot_point;         // ambient
    VecN foot_velocity;      // V at the foot
    VecN arrival_velocity;   // at X
    int newton_iters = 0;
    double residual = 1e300;
};

enum class PointClass : std::uint8_t {
    Regular = 0,
    Cut = 1,
    BeyondConjugate = 2,
    BoundaryBand = 3,
    Outside = 4,
    Unresolved = 5,
};

const char* point_class_name(PointClass c);

struct FieldCell {
    PointClass cls = PointClass::Outside;
    double d = std::numeric_limits<double>::quiet_NaN();
    double foot_u = std::numeric_limits<double>::quiet_NaN();
    double s = std::numeric_limits<double>::quiet_NaN();  // = d, kept for CSV
    double d2 = std::numeric_limits<double>::infinity();  // second-best foot
    std::uint8_t feet = 0;
};

struct DistanceField {
    double xmin = 0, ymin = 0, h = 0;
    int nx = 0, ny = 0;
    std::vector<FieldCell> cells;
    double unresolved_fraction = 0.0;
    int cut_count = 0;
    double min_conjugate = std::numeric_limits<double>::infinity();

    const FieldCell& at(int i, int j) const { return cells[j * nx + i]; }
    FieldCell& at(int i, int j) { return cells[j * nx + i]; }
    Vec2 position(int i, int j) const { return Vec2(xmin + i * h, ymin + j * h); }
    std::optional<std::pair<int, int>> index_of(const Vec2& X, double tol = 1e-9) const;
};

/// Precomputed fan of normal geodesics from boundary samples, shared and
/// immutable during grid sweeps. Conjugate distances are attached per ray.
class FanCache {
public:
    FanCache() = default;
    FanCache(const MetricSpec& metric, const BoundaryCurve& boundary, int count,
             double s_max, double sample_step, double store_stride);

    struct Candidate {
        double u;
        double ell;      // arclength at nearest approach
        VecN w;          // velocity there
        double estimate; // crude total-distance score
    };
    /// Local minima of the ray-to-X distance, best first.
    std::vector<Candidate> candidates(const VecN& X, int max_count) const;

    void compute_conjugates(const JacobiOptions& opts);
    /// Interpolated conjugate distance at boundary parameter u (+inf if the
    /// neighboring rays never focus).
    double conjugate_at(double u) const;
    bool conjugates_ready() const { return conjugates_ready_; }
    double min_conjugate() const;
    int ray_count() const { return static_cast<int>(rays_.size()); }

    const MetricSpec& metric() const { return *metric_; }
    const BoundaryCurve& boundary() const { return *boundary_; }
    double s_max() const { return s_max_; }

private:
    struct Ray {
        double u;
        std::vector<double> s;
        std::vector<VecN> xi;
        std::vector<VecN> v;
        double conj = std::numeric_limits<double>::infinity();
    };
    const MetricSpec* metric_ = nullptr;
    const BoundaryCurve* boundary_ = nullptr;
    std::vector<Ray> rays_;
    double s_max_ = 0.0;
    bool closed_ = false;
    bool conjugates_ready_ = false;
};

struct LocateOptions {
    double step_newton = 5e-3;
    double fd_step = 1e-5;
    double tol_residual = 1e-10;
    int max_iters = 30;
    int max_candidates = 4;
    double dedup_space = 1e-4;  // 10 x fd_step
    double dedup_d = 1e-7;
    double s_max = 2.0;
    double candidate_margin = 0.05;  // relative d window for extra feet
};

struct FootSeed {
    double u = 0.0;
    double ell = 0.0;
    VecN w;  // arrival velocity estimate at X
};

/// All distinct local minimizers of the boundary-to-X distance, sorted by d.
/// Continuation seeds are tried before fan candidates. An empty result means
/// every Newton run diverged (caller should flag the point UNRESOLVED).
std::vector<FootResult> locate(const MetricSpec& metric, const BoundaryCurve& boundary,
                               const VecN& X, const FanCache& fan,
                               const std::vector<FootSeed>& seeds,
                               const LocateOptions& opts);

struct FieldOptions {
    LocateOptions loc;
    int fan_count = 256;
    double band = 0.0;        // boundary band width; defaults to 2 h_grid
    double step_ode = 1e-3;
    int threads = 1;
    JacobiOptions jacobi;
};

DistanceField compute_field(const MetricSpec& metric, const BoundaryCurve& boundary,
                            const Box& box, double h_grid, const FieldOptions& opts,
                            FanCache* fan_out = nullptr);

struct RegularityReport {
    int samples = 0;
    double max_grad_dev = 0.0;      // |FD grad d - phi_v(X; arrival)|
    double max_dir_dev = 0.0;       // |d/ds along arrival - 1|
    double min_hess_ratio = 1e300;  // step-halving Richardson ratios
    double max_hess_ratio = 0.0;
    int jump_pairs = 0;
    double min_jump = 1e300;        // gradient jump across flagged CUT cells
    int skipped = 0;
};

/// Desk-scale differentiability checks at regular points and gradient-jump
/// detection across the cut locus.
RegularityReport verify_regularity(const MetricSpec& metric, const BoundaryCurve& boundary,
                                   const DistanceField& field, const FanCache& fan,
                                   int samples, Rng& rng, const LocateOptions& opts,
                                   double grad_step = 1e-3, double hess_step = 2e-2,
                                   int jump_pairs = 20);

/// Distance value at an arbitrary interior point (min over feet), seeded from
/// the nearest resolved field cell.
std::optional<FootResult> locate_best(const MetricSpec& metric,
                                      const BoundaryCurve& boundary, const VecN& X,
                                      const FanCache& fan, const DistanceField& field,
                                      const LocateOptions& opts);

}  // namespace ff

#endif
