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
#include "finslerfoot/finslerfoot.h"

#include <cstring>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "finslerfoot/pipeline.hpp"
#include "finslerfoot/verify.hpp"

struct ff_session {
    ff::RunConfig cfg;
    std::string last_error;
    std::optional<ff::FanCache> fan;  // built lazily for point queries

    const ff::FanCache& fan_cache() {
        if (!fan) {
            if (!cfg.has_curve())
                throw ff::ConfigError("point queries need a curve boundary");
            fan.emplace(cfg.metric, *cfg.curve, cfg.fan_count, cfg.s_max,
                        std::max(cfg.step_ode, 4e-3), 5e-3);
        }
        return *fan;
    }
};

namespace {

void fill_errbuf(char* errbuf, size_t len, const std::string& msg) {
    if (!errbuf || len == 0) return;
    size_t n = std::min(len - 1, msg.size());
    std::memcpy(errbuf, msg.data(), n);
    errbuf[n] = '\0';
}

ff_status status_of(const std::exception& e) {
    if (dynamic_cast<const ff::ConfigError*>(&e)) return FF_CONFIG_ERROR;
    if (dynamic_cast<const ff::DomainError*>(&e)) return FF_DOMAIN_ERROR;
    if (dynamic_cast<const ff::NumericError*>(&e)) return FF_NUMERIC_ERROR;
    return FF_NUMERIC_ERROR;
}

template <typename Fn>
ff_status guarded(ff_session* s, Fn&& fn) {
    if (!s) return FF_INVALID_ARGUMENT;
    try {
        s->last_error.clear();
        return fn();
    } catch (const std::exception& e) {
        s->last_error = e.what();
        return status_of(e);
    }
}

ff_status open_common(ff_session** out, char* errbuf, size_t errbuf_len,
                      ff::RunConfig (*loader)(const std::string&), const char* arg) {
    if (!out || !arg) return FF_INVALID_ARGUMENT;
    *out = nullptr;
    try {
        auto s = std::make_unique<ff_session>();
        s->cfg = loader(arg);
        *out = s.release();
        return FF_OK;
    } catch (const std::exception& e) {
        fill_errbuf(errbuf, errbuf_len, e.what());
        return FF_CONFIG_ERROR;
    }
}

}  // namespace

extern "C" {

const char* ff_version(void) { return "finslerfoot 0.1.0"; }

ff_status ff_session_open(const char* text, ff_session** out, char* errbuf,
                          size_t errbuf_len) {
    return open_common(out, errbuf, errbuf_len, &ff::load_config_text, text);
}

ff_status ff_session_open_file(const char* path, ff_session** out, char* errbuf,
                               size_t errbuf_len) {
    return open_common(out, errbuf, errbuf_len, &ff::load_config_file, path);
}

void ff_session_close(ff_session* s) { delete s; }

const char* ff_session_error(const ff_session* s) {
    return s ? s->last_error.c_str() : "null session";
}

int ff_session_dimension(const ff_session* s) { return s ? s->cfg.dimension : 0; }

void ff_session_set_threads(ff_session* s, int threads) {
    if (s && threads > 0) s->cfg.threads = threads;
}

void ff_session_set_seed(ff_session* s, uint64_t seed) {
    if (s) s->cfg.seed = seed;
}

ff_status ff_run(ff_session* s, const char* command, const char* out_dir) {
    if (!command || !out_dir) return FF_INVALID_ARGUMENT;
    return guarded(s, [&]() -> ff_status {
        int rc = ff::run_command(command, s->cfg, out_dir);
        return rc == 0 ? FF_OK : FF_CHECKS_FAILED;
    });
}

ff_status ff_metric_eval(ff_session* s, const double* xi, const double* v,
                         double* phi_out) {
    if (!xi || !v || !phi_out) return FF_INVALID_ARGUMENT;
    return guarded(s, [&]() -> ff_status {
        const int n = s->cfg.dimension;
        ff::VecN x(n), w(n);
        for (int i = 0; i < n; ++i) {
            x[i] = xi[i];
            w[i] = v[i];
        }
        *phi_out = s->cfg.metric.eval(x, w);
        return FF_OK;
    });
}

ff_status ff_distance(ff_session* s, const double* point, double* d_out,
                      double* foot_out, double* grad_out) {
    if (!point || !d_out) return FF_INVALID_ARGUMENT;
    return guarded(s, [&]() -> ff_status {
        if (s->cfg.dimension != 2)
            throw ff::ConfigError("distance queries run in dimension 2");
        ff::Vec2 P(point[0], point[1]);
        if (!s->cfg.curve || !s->cfg.curve->inside(P))
            throw ff::DomainError("point is not inside the domain");
        ff::LocateOptions lopts;
        lopts.step_newton = s->cfg.step_newton;
        lopts.s_max = s->cfg.s_max;
        auto feet = ff::locate(s->cfg.metric, *s->cfg.curve, ff::VecN(P), s->fan_cache(),
                               {}, lopts);
        if (feet.empty()) throw ff::NumericError("foot inversion did not converge");
        const ff::FootResult& f = feet.front();
        *d_out = f.d;
        if (foot_out) {
            foot_out[0] = f.foot_point[0];
            foot_out[1] = f.foot_point[1];
        }
        if (grad_out) {
            ff::MetricJet J = s->cfg.metric.jet(ff::VecN(P), f.arrival_velocity);
            grad_out[0] = J.d_v[0];
            grad_out[1] = J.d_v[1];
        }
        return FF_OK;
    });
}

ff_status ff_conjugate_distance(ff_session* s, double u, double* s_star_out) {
    if (!s_star_out) return FF_INVALID_ARGUMENT;
    return guarded(s, [&]() -> ff_status {
        if (!s->cfg.has_curve())
            throw ff::ConfigError("conjugate queries need a curve boundary");
        ff::BoundaryPatch patch = ff::adapted_chart(*s->cfg.curve, u);
        ff::JacobiOptions jopts;
        jopts.step = s->cfg.step_ode;
        auto st = ff::conjugate_distance(s->cfg.metric, patch,
                                         ff::VecN::Zero(s->cfg.dimension - 1),
                                         s->cfg.s_max, jopts);
        *s_star_out = st ? *st : std::numeric_limits<double>::infinity();
        return FF_OK;
    });
}

}  // extern "C"
