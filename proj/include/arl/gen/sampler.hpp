// Copyright 2026 The arlidar Authors
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

#include "arl/gen/denoiser.hpp"
#include "arl/gen/schedule.hpp"

namespace arl::gen {

// Ancestral DDPM sampling from pure noise over all T steps. The predicted
// clean latent is clamped to +-x0_clip before each posterior step.
nn::Tensor sample_latent(const ConditionedDenoiser& model, const DiffusionSchedule& sched, const ConditionInputs& cond,
                         Rng& rng, double x0_clip = 6.0);

}  // namespace arl::gen
