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
#include "finslerfoot/pipeline.hpp"

#include <cmath>
#include <filesystem>

#include "finslerfoot/second_variation.hpp"
#include "finslerfoot/verify.hpp"

namespace ff {

namespace {

using Summary = std::vector<std::pair<std::string, std::string>>;

FieldOptions field_options(const RunConfig& cfg) {
    FieldOptions fopts;
    fopts.loc.step_newton = cfg.step_newton;
    fopts.loc.s_max = cfg.s_max;
    fopts.fan_count = cfg.fan_count;
    fopts.step_ode = cfg.step_ode;
    fopts.threads = cfg.threads;
    fopts.jacobi.step = cfg.step_ode;
    return fopts;
}

void require_curve(const RunConfig& cfg, const std::string& command) {
    if (!cfg.has_curve() || cfg.dimension != 2)
        throw ConfigError(command + " needs a dimension-2 curve boundary");
}

Summary field_summary(const RunConfig& cfg, const DistanceField& field) {
    Summary s;
    s.emplace_back("grid", std::to_string(field.nx) + "x" + std::to_string(field.ny));
    s.emplace_back("unresolved_fraction", fmt12(field.unresolved_fraction));
    s.emplace_back("cut_point_count", std::to_string(field.cut_count));
    s.emplace_back("min_conjugate_distance", fmt12(field.min_conjugate));
    if (field.unresolved_fraction > 0.01)
        s.emplace_back("confidence", "low: unresolved fraction above 1%");
    s.emplace_back("distance_parametrization",
                   "d is arclength from the boundary; the unit-normalized curve "
                   "parameter is t = 1 - d on each arriving geodesic");
    (void)cfg;
    return s;
}

int run_field(const RunConfig& cfg, const std::filesystem::path& out) {
    require_curve(cfg, "field");
    FanCache fan;
    DistanceField field =
        compute_field(cfg.metric, *cfg.curve, cfg.box, cfg.h_grid, field_options(cfg), &fan);
    write_field_csv((out / "field.csv").string(), field);
    write_class_ppm((out / "class.ppm").string(), field);
    VerifyReport empty;
    write_report_json((out / "report.json").string(), "field", empty,
                      field_summary(cfg, field));
    write_summary_txt((out / "summary.txt").string(), "field", empty,
                      field_summary(cfg, field));
    return 0;
}

int run_conjugate(const RunConfig& cfg, const std::filesystem::path& out) {
    require_curve(cfg, "conjugate");
    JacobiOptions jopts;
    jopts.step = cfg.step_ode;
    auto [lo, hi] = cfg.curve->param_range();
    std::vector<ConjugateSweepRow> rows;
    double min_s = std::numeric_limits<double>::infinity();
    double min_u = lo;
    int count = cfg.fan_count;
    for (int k = 0; k < count; ++k) {
        double u = cfg.curve->closed() ? lo + (hi - lo) * k / count
                                       : lo + (hi - lo) * k / std::max(1, count - 1);
        BoundaryPatch patch = adapted_chart(*cfg.curve, u);
        auto s = conjugate_distance(cfg.metric, patch, VecN::Zero(1), cfg.s_max, jopts);
        double val = s ? *s : std::numeric_limits<double>::infinity();
        rows.push_back({u, cfg.curve->gamma(u), val});
        if (val < min_s) {
            min_s = val;
            min_u = u;
        }
    }
    write_conjugate_csv((out / "conjugate.csv").string(), rows);
    Summary sm;
    sm.emplace_back("boundary_samples", std::to_string(count));
    sm.emplace_back("min_s_star", fmt12(min_s));
    sm.emplace_back("argmin_u", fmt12(min_u));
    VerifyReport empty;
    write_report_json((out / "report.json").string(), "conjugate", empty, sm);
    write_summary_txt((out / "summary.txt").string(), "conjugate", empty, sm);
    return 0;
}

int run_cutlocus(const RunConfig& cfg, const std::filesystem::path& out) {
    require_curve(cfg, "cutlocus");
    FanCache fan;
    DistanceField field =
        compute_field(cfg.metric, *cfg.curve, cfg.box, cfg.h_grid, field_options(cfg), &fan);
    write_cut_csv((out / "cut.csv").string(), field);
    write_class_ppm((out / "class.ppm").string(), field);
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (int j = 0; j < field.ny; ++j)
        for (int i = 0; i < field.nx; ++i)
            if (field.at(i, j).cls == PointClass::Cut) {
                Vec2 p = field.position(i, j);
                xmin = std::min(xmin, p.x());
                xmax = std::max(xmax, p.x());
                ymin = std::min(ymin, p.y());
                ymax = std::max(ymax, p.y());
            }
    Summary sm = field_summary(cfg, field);
    if (field.cut_count > 0) {
        sm.emplace_back("cut_bbox_x", fmt12(xmin) + ".." + fmt12(xmax));
        sm.emplace_back("cut_bbox_y", fmt12(ymin) + ".." + fmt12(ymax));
    }
    VerifyReport empty;
    write_report_json((out / "report.json").string(), "cutlocus", empty, sm);
    write_summary_txt((out / "summary.txt").string(), "cutlocus", empty, sm);
    return 0;
}

int run_secondvar(const RunConfig& cfg, const std::filesystem::path& out) {
    BoundaryPatch patch = cfg.foot_patch();
    MetricSpec chart_metric = cfg.metric.transformed(patch.R, patch.origin);
    SpecialFormReport gate =
        chart_metric.check_special_form(std::min(cfg.s_max, 2.0), cfg.tol.special_form);
    VerifyReport report;
    std::vector<std::pair<double, double>> flow;
    Summary sm;
    sm.emplace_back("foot_u", fmt12(cfg.foot_u));
    if (gate.pass) {
        Trajectory base = shoot_normal(cfg.metric, patch, VecN::Zero(cfg.dimension - 1),
                                       cfg.s_max, cfg.step_ode);
        const int sweep = 40;
        for (int k = 1; k <= sweep; ++k) {
            double s_bar = cfg.s_max * k / sweep;
            QuadraticForm q =
                assemble_form_special(cfg.metric, patch, base, cfg.N_secondvar, s_bar);
            flow.emplace_back(s_bar, q.lambda_min());
        }
        JacobiOptions jopts;
        jopts.step = cfg.step_ode;
        DegeneracyReport dr = degeneracy_identity_check(cfg.metric, patch, cfg.s_max, jopts);
        CheckRecord rec{"degeneracy_identity_16_1", "(16-1)",
                        CheckStatus::NotApplicable, 0.0, cfg.tol.degeneracy_rel, ""};
        if (dr.applicable) {
            rec.measured = dr.rel_error;
            rec.status = dr.rel_error <= cfg.tol.degeneracy_rel ? CheckStatus::Pass
                                                                : CheckStatus::Fail;
            rec.details = "s_star=" + fmt12(dr.s_star) + " J=" + fmt12(dr.J_quadrature) +
                          " boundary_term=" + fmt12(dr.boundary_term);
        } else {
            rec.details = "no conjugate point within s_max";
        }
        report.checks.push_back(rec);
    } else {
        report.checks.push_back({"degeneracy_identity_16_1", "(16-1)",
                                 CheckStatus::GatedSkip, gate.max_violation(),
                                 cfg.tol.special_form,
                                 "metric not in special form at this foot"});
        sm.emplace_back("gate", "closed: lambda_min flow not assembled");
    }
    write_secondvar_csv((out / "secondvar.csv").string(), flow);
    write_report_json((out / "report.json").string(), "secondvar", report, sm);
    write_summary_txt((out / "summary.txt").string(), "secondvar", report, sm);
    return report.all_ok() ? 0 : 1;
}

int run_verify_cmd(const RunConfig& cfg, const std::filesystem::path& out) {
    VerifyReport report = run_verify(cfg);
    Summary sm;
    int pass = 0, fail = 0, skip = 0, na = 0;
    for (const auto& c : report.checks) {
        switch (c.status) {
            case CheckStatus::Pass: ++pass; break;
            case CheckStatus::Fail: ++fail; break;
            case CheckStatus::GatedSkip: ++skip; break;
            case CheckStatus::NotApplicable: ++na; break;
        }
    }
    sm.emplace_back("pass", std::to_string(pass));
    sm.emplace_back("fail", std::to_string(fail));
    sm.emplace_back("gated_skip", std::to_string(skip));
    sm.emplace_back("not_applicable", std::to_string(na));
    write_report_json((out / "report.json").string(), "verify", report, sm);
    write_summary_txt((out / "summary.txt").string(), "verify", report, sm);
    return report.all_ok() ? 0 : 1;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& cfg,
                const std::string& out_dir) {
    std::filesystem::path out(out_dir.empty() ? "." : out_dir);
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw DomainError("cannot create output directory " + out.string());

    if (command == "field") return run_field(cfg, out);
    if (command == "conjugate") return run_conjugate(cfg, out);
    if (command == "cutlocus") return run_cutlocus(cfg, out);
    if (command == "secondvar") return run_secondvar(cfg, out);
    if (command == "verify") return run_verify_cmd(cfg, out);
    throw ConfigError("unknown command \"" + command +
                      "\" (field | conjugate | cutlocus | secondvar | verify)");
}

}  // namespace ff
