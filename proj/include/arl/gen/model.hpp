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

#include "arl/gen/autoencoder.hpp"
#include "arl/gen/context.hpp"
#include "arl/gen/denoiser.hpp"
#include "arl/gen/schedule.hpp"

#include <memory>

namespace arl::gen {

struct ModelConfig {
  AeConfig ae{};
  DenoiserConfig denoiser{};
  int steps = 50;
  NMConfig nm{25};
  std::uint64_t seed = 0;

  // Desk-scale defaults for an H x W image with D categories; NM at T / 2.
  static ModelConfig desk(int height, int width, int categories, bool noise_modulation = true);
};

// Autoencoder, denoiser and schedule bundled for inference.
class DiffusionModel {
 public:
  explicit DiffusionModel(const ModelConfig& cfg);

  const ModelConfig& config() const { return cfg_; }
  LatentAutoencoder& autoencoder() { return ae_; }
  const LatentAutoencoder& autoencoder() const { return ae_; }
  ConditionedDenoiser& denoiser() { return den_; }
  const ConditionedDenoiser& denoiser() const { return den_; }
  const DiffusionSchedule& schedule() const { return sched_; }

  // Encodes the context and applies noise modulation to its latents.
  ConditionInputs inference_inputs(const GeneratorContext& ctx, Rng& rng) const;
  RangeImage sample(const GeneratorContext& ctx) const;

 private:
  ModelConfig cfg_;
  LatentAutoencoder ae_;
  ConditionedDenoiser den_;
  DiffusionSchedule sched_;
};

}  // namespace arl::gen
