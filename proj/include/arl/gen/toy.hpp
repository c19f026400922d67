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

#include "arl/gen/model.hpp"
#include "arl/gen/training.hpp"

#include <memory>
#include <vector>

namespace arl::gen {

using Sequence = std::vector<FrameRecord>;

// Projections of every ground-truth frame.
std::vector<RangeImage> corpus_images(const std::vector<Sequence>& sequences, const ContextConfig& ctx);
// One example per consecutive pair, conditioned on the ground-truth previous frame.
std::vector<TrainExample> corpus_examples(const std::vector<Sequence>& sequences, const ContextConfig& ctx,
                                          const LatentAutoencoder& ae);

void copy_params(const nn::ParamStore& from, nn::ParamStore& to);

struct ToyRecipe {
  AeTrainConfig ae{};
  TrainConfig diffusion{};
};

struct ToyResult {
  std::shared_ptr<DiffusionModel> model;
  std::vector<double> ae_losses;
  std::vector<double> losses;
};

// Trains the autoencoder (unless `pretrained` is given, whose weights and
// latent statistics are copied), then the denoiser with cfg.nm.
ToyResult train_toy(const ModelConfig& cfg, const std::vector<Sequence>& sequences, const ContextConfig& ctx,
                    const ToyRecipe& recipe, const LatentAutoencoder* pretrained = nullptr);

// Mean of the first and last `window` losses.
double head_mean(const std::vector<double>& losses, std::size_t window);
double tail_mean(const std::vector<double>& losses, std::size_t window);

}  // namespace arl::gen
