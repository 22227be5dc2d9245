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
#ifndef FINSLERFOOT_CONFIG_HPP
#define FINSLERFOOT_CONFIG_HPP

#include <memory>
#include <optional>
#include <string>

#include "finslerfoot/boundary.hpp"
#include "finslerfoot/metric.hpp"

namespace ff {

struct Tolerances {
    double euler = 1e-10;
    double jet_fd = 1e-6;
    double normal_residual = 1e-12;
    double sensitivity_fd = 1e-6;
    double special_form = 1e-8;
    double sensitivity_identity = 1e-6;
    double unit_speed = 1e-8;
    double straight_line = 1e-10;
    double rk_order_min = 3.9;
    double jacobi_agreement = 1e-5;
    double secondvar_agreement = 1e-3;
    double degeneracy_rel = 1e-3;
    double detm_lambda = 2e-3;
    double foot_residual = 1e-10;
    double reconstruction = 1e-6;
    double gradient = 1e-4;
    double cut_jump_min = 0.1;
};

struct OracleConfig {
    double h = 0.01;
    int r = 4;
    double tol = 0.01;
};

struct VerifySampleCounts {
    int euler = 100;
    int normal = 200;
    int families = 20;
    int feet = 200;
    int regular = 50;
    int jump_pairs = 10;
};

struct RunConfig {
    int dimension = 2;
    MetricSpec metric = MetricSpec::euclidean(2);
    std::shared_ptr<BoundaryCurve> curve;   // null for graph-only boundaries
    std::optional<PolyExpr> graph_f;        // graph boundary height function
    Box box = Box::square2(-1.5, 1.5, -1.5, 1.5);
    double h_grid = 0.01;
    double h_fd = 1e-4;
    double step_ode = 1e-3;
    double step_newton = 5e-3;
    int N_secondvar = 256;
    int fan_count = 256;
    double s_max = 2.0;
    double foot_u = 0.0;
    std::uint64_t seed = 1;
    int threads = 1;
    OracleConfig oracle;
    Tolerances tol;
    VerifySampleCounts samples;

    /// Adapted patch at the configured foot point (curve) or the graph patch.
    BoundaryPatch foot_patch() const;
    bool has_curve() const { return curve != nullptr; }
};

RunConfig load_config_text(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

}  // namespace ff

#endif
