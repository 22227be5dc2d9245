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
#ifndef FINSLERFOOT_PIPELINE_HPP
#define FINSLERFOOT_PIPELINE_HPP

#include <string>

#include "finslerfoot/config.hpp"

namespace ff {

/// Executes one subcommand (field | conjugate | cutlocus | secondvar |
/// verify) and writes its artifacts into out_dir. Returns 0 on success and 1
/// when any check failed. Unknown commands and unusable configurations throw
/// ConfigError.
int run_command(const std::string& command, const RunConfig& cfg,
                const std::string& out_dir);

}  // namespace ff

#endif
