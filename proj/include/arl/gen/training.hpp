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
#include "arl/nn/optim.hpp"

#include <functional>
#include <vector>

namespace arl::gen {

// One (frame s-1 -> frame s) pair in latent form.
struct TrainExample {
  nn::Tensor z0;          // target latent [c, h, w]
  nn::Tensor prev;        // [c, h, w]
  nn::Tensor fg;
  nn::Tensor bg;
  nn::Tensor masks_cur;   // [D, H, W]
  nn::Tensor masks_prev;
  cond::EgoFeature ego{};
  cond::RelPoseVector rel{};
};

TrainExample make_training_example(const GeneratorContext& ctx, const RangeImage& target,
                                   const LatentAutoencoder& ae);

// Random quantities of one training step.
struct NoiseDraw {
  std::vector<int> t;  // in 1..T
  nn::Tensor eps;      // [B, c, h, w]
  std::vector<int> n_prev, n_fg, n_bg;
  nn::Tensor noise_prev, noise_fg, noise_bg;
};

NoiseDraw draw_noise(int batch, const nn::Shape& latent, const DiffusionSchedule& sched, const NMConfig& nm,
                     Rng& rng);

struct TrainBatch {
  nn::Tensor z_t;
  ConditionInputs cond;
};

TrainBatch assemble_batch(const std::vector<const TrainExample*>& examples, const NoiseDraw& draw,
                          const DiffusionSchedule& sched);

using EpsPredictor =
    std::function<nn::Var(const ConditionInputs& cond, const nn::Var& z_t, const std::vector<int>& t)>;

EpsPredictor denoiser_predictor(const ConditionedDenoiser& model);

// Mean squared error between the drawn noise and the prediction.
nn::Var diffusion_loss(const EpsPredictor& predict, const TrainBatch& batch, const NoiseDraw& draw);

struct TrainConfig {
  int steps = 2000;
  int batch = 4;
  double lr = 1e-3;
  double clip_norm = 1.0;
  std::uint64_t seed = 7;
  NMConfig nm{};
};

class DiffusionTrainer {
 public:
  DiffusionTrainer(ConditionedDenoiser& model, const DiffusionSchedule& sched, const TrainConfig& cfg);

  // Throws NumericError on a non-finite loss.
  double train_step(const std::vector<const TrainExample*>& batch, Rng& rng);
  std::vector<double> fit(const std::vector<TrainExample>& data);

 private:
  ConditionedDenoiser& model_;
  const DiffusionSchedule& sched_;
  TrainConfig cfg_;
  nn::Adam opt_;
};

}  // namespace arl::gen
