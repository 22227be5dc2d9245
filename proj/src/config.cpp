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
#include "finslerfoot/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ff {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw ConfigError("config: " + what); }

PolyExpr parse_entry(const json& j, const std::string& where) {
    if (j.is_number()) return PolyExpr::constant(j.get<double>());
    if (j.is_string()) return PolyExpr::parse(j.get<std::string>());
    bad(where + " must be a number or a polynomial string");
}

PolyMatrix parse_matrix(const json& j, int n, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        bad(where + " must be a " + std::to_string(n) + "x" + std::to_string(n) + " array");
    PolyMatrix m;
    m.n = n;
    m.entries.assign(static_cast<size_t>(n) * n, PolyExpr());
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
            bad(where + " row " + std::to_string(i) + " must have " + std::to_string(n) +
                " entries");
        for (int k = 0; k < n; ++k)
            m.at(i, k) = parse_entry(j[i][k], where + "[" + std::to_string(i) + "][" +
                                                  std::to_string(k) + "]");
    }
    // symmetry check on a few sample points
    Rng rng(7);
    for (int s = 0; s < 5; ++s) {
        VecN x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
        MatN v = m.value(x);
        if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            bad(where + " must be symmetric");
    }
    return m;
}

PolyVector parse_vector(const json& j, int n, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        bad(where + " must be an array of length " + std::to_string(n));
    PolyVector v;
    v.n = n;
    v.entries.resize(n);
    for (int i = 0; i < n; ++i)
        v.entries[i] = parse_entry(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

MetricSpec parse_metric(const json& j, int n) {
    if (!j.contains("kind")) bad("metric.kind missing");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "euclidean") return MetricSpec::euclidean(n);
    if (kind == "riemannian") {
        if (!j.contains("g")) bad("riemannian metric needs \"g\"");
        return MetricSpec::riemannian(parse_matrix(j.at("g"), n, "metric.g"));
    }
    if (kind == "randers") {
        PolyMatrix a = j.contains("a") ? parse_matrix(j.at("a"), n, "metric.a")
                                       : PolyMatrix::identity(n);
        if (!j.contains("b")) bad("randers metric needs \"b\"");
        return MetricSpec::randers(std::move(a), parse_vector(j.at("b"), n, "metric.b"));
    }
    bad("unknown metric.kind \"" + kind + "\" (euclidean | riemannian | randers)");
}

Vec2 parse_vec2(const json& j, const Vec2& dflt) {
    if (j.is_null()) return dflt;
    if (!j.is_array() || j.size() != 2) bad("expected a [x, y] pair");
    return Vec2(j[0].get<double>(), j[1].get<double>());
}

bool parse_interior(const json& j) {
    std::string s = j.value("interior", "inside");
    if (s == "inside") return true;
    if (s == "outside") return false;
    bad("boundary.interior must be \"inside\" or \"outside\"");
}

}  // namespace

BoundaryPatch RunConfig::foot_patch() const {
    if (curve) return adapted_chart(*curve, foot_u);
    if (graph_f) return BoundaryPatch::from_graph(dimension, *graph_f);
    throw ConfigError("config has no boundary");
}

RunConfig load_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    RunConfig cfg;
    try {
        cfg.dimension = j.value("dimension", 2);
        if (cfg.dimension != 2 && cfg.dimension != 3)
            bad("dimension must be 2 or 3");
        if (!j.contains("metric")) bad("missing \"metric\"");
        cfg.metric = parse_metric(j.at("metric"), cfg.dimension);

        if (!j.contains("boundary")) bad("missing \"boundary\"");
        const json& b = j.at("boundary");
        std::string kind = b.value("kind", "");
        if (kind == "circle") {
            cfg.curve = std::make_shared<CircleBoundary>(
                parse_vec2(b.value("center", json()), Vec2(0, 0)),
                b.value("radius", 1.0), parse_interior(b));
        } else if (kind == "ellipse") {
            cfg.curve = std::make_shared<EllipseBoundary>(
                parse_vec2(b.value("center", json()), Vec2(0, 0)), b.value("a", 2.0),
                b.value("b", 1.0), parse_interior(b));
        } else if (kind == "superellipse") {
            cfg.curve = std::make_shared<RadialBoundary>(RadialBoundary::superellipse(
                parse_vec2(b.value("center", json()), Vec2(0, 0)), b.value("a", 1.0),
                b.value("b", 1.0), b.value("p", 4), parse_interior(b)));
        } else if (kind == "cosine_circle") {
            cfg.curve = std::make_shared<RadialBoundary>(RadialBoundary::cosine_circle(
                parse_vec2(b.value("center", json()), Vec2(0, 0)), b.value("radius", 1.0),
                b.value("amplitude", 0.1), b.value("lobes", 3), parse_interior(b)));
        } else if (kind == "line") {
            cfg.curve = std::make_shared<LineBoundary>(
                parse_vec2(b.value("point", json()), Vec2(0, 0)),
                parse_vec2(b.value("normal", json()), Vec2(0, 1)));
        } else if (kind == "graph") {
            if (!b.contains("f")) bad("graph boundary needs \"f\"");
            cfg.graph_f = PolyExpr::parse(b.at("f").get<std::string>());
        } else {
            bad("unknown boundary.kind \"" + kind +
                "\" (line | circle | ellipse | superellipse | cosine_circle | graph)");
        }
        if (cfg.dimension == 3 && cfg.curve)
            bad("dimension 3 supports graph boundaries only");

        if (j.contains("box")) {
            const json& bx = j.at("box");
            if (!bx.is_array() || bx.size() != 4)
                bad("box must be [xmin, xmax, ymin, ymax]");
            cfg.box = Box::square2(bx[0].get<double>(), bx[1].get<double>(),
                                   bx[2].get<double>(), bx[3].get<double>());
            if (cfg.box.lo[0] >= cfg.box.hi[0] || cfg.box.lo[1] >= cfg.box.hi[1])
                bad("box is empty");
        }
        cfg.h_grid = j.value("h_grid", cfg.h_grid);
        cfg.h_fd = j.value("h_fd", cfg.h_fd);
        cfg.step_ode = j.value("step_ode", cfg.step_ode);
        cfg.step_newton = j.value("step_newton", cfg.step_newton);
        cfg.N_secondvar = j.value("N_secondvar", cfg.N_secondvar);
        cfg.fan_count = j.value("fan_count", cfg.fan_count);
        cfg.s_max = j.value("s_max", cfg.s_max);
        cfg.foot_u = j.value("foot_u", cfg.foot_u);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.threads = j.value("threads", cfg.threads);
        if (cfg.h_grid <= 0 || cfg.h_fd <= 0 || cfg.step_ode <= 0 ||
            cfg.step_newton <= 0 || cfg.s_max <= 0)
            bad("spacings and steps must be positive");
        if (cfg.N_secondvar < 8 || cfg.fan_count < 8)
            bad("N_secondvar and fan_count must be at least 8");

        if (j.contains("oracle")) {
            const json& o = j.at("oracle");
            cfg.oracle.h = o.value("h", cfg.oracle.h);
            cfg.oracle.r = o.value("r", cfg.oracle.r);
            cfg.oracle.tol = o.value("tol", cfg.oracle.tol);
            if (cfg.oracle.h <= 0 || cfg.oracle.r < 2)
                bad("oracle needs h > 0 and r >= 2");
        }
        if (j.contains("samples")) {
            const json& s = j.at("samples");
            cfg.samples.euler = s.value("euler", cfg.samples.euler);
            cfg.samples.normal = s.value("normal", cfg.samples.normal);
            cfg.samples.families = s.value("families", cfg.samples.families);
            cfg.samples.feet = s.value("feet", cfg.samples.feet);
            cfg.samples.regular = s.value("regular", cfg.samples.regular);
            cfg.samples.jump_pairs = s.value("jump_pairs", cfg.samples.jump_pairs);
        }
        if (j.contains("tolerances")) {
            const json& t = j.at("tolerances");
            auto get = [&](const char* key, double dflt) {
                double v = t.value(key, dflt);
                if (v <= 0.0) bad(std::string("tolerances.") + key + " must be positive");
                return v;
            };
            cfg.tol.euler = get("euler", cfg.tol.euler);
            cfg.tol.jet_fd = get("jet_fd", cfg.tol.jet_fd);
            cfg.tol.normal_residual = get("normal_residual", cfg.tol.normal_residual);
            cfg.tol.sensitivity_fd = get("sensitivity_fd", cfg.tol.sensitivity_fd);
            cfg.tol.special_form = get("special_form", cfg.tol.special_form);
            cfg.tol.sensitivity_identity =
                get("sensitivity_identity", cfg.tol.sensitivity_identity);
            cfg.tol.unit_speed = get("unit_speed", cfg.tol.unit_speed);
            cfg.tol.straight_line = get("straight_line", cfg.tol.straight_line);
            cfg.tol.rk_order_min = get("rk_order_min", cfg.tol.rk_order_min);
            cfg.tol.jacobi_agreement = get("jacobi_agreement", cfg.tol.jacobi_agreement);
            cfg.tol.secondvar_agreement =
                get("secondvar_agreement", cfg.tol.secondvar_agreement);
            cfg.tol.degeneracy_rel = get("degeneracy_rel", cfg.tol.degeneracy_rel);
            cfg.tol.detm_lambda = get("detm_lambda", cfg.tol.detm_lambda);
            cfg.tol.foot_residual = get("foot_residual", cfg.tol.foot_residual);
            cfg.tol.reconstruction = get("reconstruction", cfg.tol.reconstruction);
            cfg.tol.gradient = get("gradient", cfg.tol.gradient);
            cfg.tol.cut_jump_min = get("cut_jump_min", cfg.tol.cut_jump_min);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    // widen the parameter window of open boundaries to cover the box
    if (auto* line = dynamic_cast<LineBoundary*>(cfg.curve.get())) {
        double dx = cfg.box.hi[0] - cfg.box.lo[0];
        double dy = cfg.box.hi[1] - cfg.box.lo[1];
        line->set_window(1.5 * std::sqrt(dx * dx + dy * dy));
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config_text(buf.str());
}

}  // namespace ff
