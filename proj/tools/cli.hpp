// Copyright 2026 The Elliptica Project Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elliptica/field.hpp"
#include "elliptica/pipeline.hpp"
#include "elliptica/solver.hpp"

namespace elliptica::cli {

/// Built-in experiment presets. `part-a` is the synthetic 50x50 surface
/// computation; `part-b` is the color restoration and denoising sweep.
struct SolvePreset {
    std::size_t n = 50;
    SolverConfig config;
};

struct PipelinePreset {
    SolverConfig config;
    std::vector<double> noise_levels;
    NLMeansParams nlm;
    int median_k = 3;
};

SolvePreset part_a_preset();
PipelinePreset part_b_preset();

/// The synthetic right-hand side of the surface experiment: a unit
/// background plus a Gaussian bump centered in [0,1]^2, sampled on an
/// n x n grid.
Field2D make_bump_field(std::size_t n);

/// Entry point used by main(); returns the process exit status
/// (0 success, 1 runtime failure, 2 usage error).
int run(int argc, const char* const* argv);

} // namespace elliptica::cli
