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

// Command-line front end; talks to the library through the C API only.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "finslerfoot/finslerfoot.h"

namespace {

void usage(FILE* to) {
    std::fprintf(to,
                 "usage: finslerfoot <command> --config PATH [--out DIR] [--threads N] "
                 "[--seed U64]\n"
                 "\n"
                 "commands:\n"
                 "  field      distance field, classification image, summary\n"
                 "  conjugate  conjugate-distance sweep along the boundary\n"
                 "  cutlocus   singular-set extraction from the field\n"
                 "  secondvar  second-variation eigenvalue flow and degeneracy verdict\n"
                 "  verify     full identity-check suite (exit 1 on any failed check)\n"
                 "  version    print the library version\n"
                 "\n"
                 "options:\n"
                 "  --config PATH   JSON configuration (required)\n"
                 "  --out DIR       output directory (default: .)\n"
                 "  --threads N     worker threads for grid sweeps\n"
                 "                  (fallback: FINSLER_FOOT_THREADS)\n"
                 "  --seed U64      seed for randomized property checks\n");
}

int exit_code(ff_status st) {
    switch (st) {
        case FF_OK: return 0;
        case FF_CHECKS_FAILED: return 1;
        case FF_CONFIG_ERROR:
        case FF_INVALID_ARGUMENT: return 2;
        default: return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        usage(stderr);
        return 2;
    }
    std::string command = argv[1];
    if (command == "version" || command == "--version") {
        std::printf("%s\n", ff_version());
        return 0;
    }
    if (command == "help" || command == "--help" || command == "-h") {
        usage(stdout);
        return 0;
    }

    const char* config = nullptr;
    const char* out_dir = ".";
    long threads = 0;
    unsigned long long seed = 0;
    bool have_seed = false;
    for (int i = 2; i < argc; ++i) {
        auto need_value = [&](const char* flag) -> const char* {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "finslerfoot: %s needs a value\n", flag);
                std::exit(2);
            }
            return argv[++i];
        };
        if (std::strcmp(argv[i], "--config") == 0) {
            config = need_value("--config");
        } else if (std::strcmp(argv[i], "--out") == 0) {
            out_dir = need_value("--out");
        } else if (std::strcmp(argv[i], "--threads") == 0) {
            threads = std::strtol(need_value("--threads"), nullptr, 10);
        } else if (std::strcmp(argv[i], "--seed") == 0) {
            seed = std::strtoull(need_value("--seed"), nullptr, 10);
            have_seed = true;
        } else {
            std::fprintf(stderr, "finslerfoot: unknown option %s\n", argv[i]);
            usage(stderr);
            return 2;
        }
    }
    if (!config) {
        std::fprintf(stderr, "finslerfoot: --config is required\n");
        return 2;
    }
    if (threads <= 0) {
        if (const char* env = std::getenv("FINSLER_FOOT_THREADS"))
            threads = std::strtol(env, nullptr, 10);
    }

    char errbuf[1024] = {0};
    ff_session* session = nullptr;
    ff_status st = ff_session_open_file(config, &session, errbuf, sizeof errbuf);
    if (st != FF_OK) {
        std::fprintf(stderr, "finslerfoot: %s\n", errbuf[0] ? errbuf : "invalid config");
        return exit_code(st);
    }
    if (threads > 0) ff_session_set_threads(session, static_cast<int>(threads));
    if (have_seed) ff_session_set_seed(session, seed);

    st = ff_run(session, command.c_str(), out_dir);
    if (st != FF_OK) {
        const char* msg = ff_session_error(session);
        if (msg && msg[0])
            std::fprintf(stderr, "finslerfoot: %s\n", msg);
        else if (st == FF_CHECKS_FAILED)
            std::fprintf(stderr, "finslerfoot: %s: some checks failed (see report.json)\n",
                         command.c_str());
    }
    ff_session_close(session);
    return exit_code(st);
}
