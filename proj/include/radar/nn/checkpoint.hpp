// Copyright 2026 The radar_tracker Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "radar/nn/core.hpp"

namespace radar::nn {

/// Checkpoints are a flat JSON map: key = layer path, value = {"shape":
/// [rows, cols], "data": [row-major numbers]}. Keys serialize in sorted
/// order, so equal states produce byte-identical files.
std::string checkpoint_to_string(const std::vector<StateEntry>& state);
void save_checkpoint(const std::string& path, const std::vector<StateEntry>& state);

/// Loads into the given entries; missing keys or shape mismatches throw.
void load_checkpoint_string(const std::string& text,
                            const std::vector<StateEntry>& state);
void load_checkpoint(const std::string& path, const std::vector<StateEntry>& state);

}  // namespace radar::nn
