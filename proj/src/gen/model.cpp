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

#include "arl/gen/model.hpp"

#include "arl/gen/sampler.hpp"
#include "arl/scene/errors.hpp"

#include <algorithm>

namespace arl::gen {

ModelConfig ModelConfig::desk(int height, int width, int categories, bool noise_modulation) {
  ModelConfig cfg;
  cfg.ae.height = height;
  cfg.ae.width = width;
  cfg.denoiser.latent_channels = cfg.ae.latent_channels;
  cfg.denoiser.latent_h = height / 4;
  cfg.denoiser.latent_w = width / 4;
  cfg.denoiser.image_h = height;
  cfg.denoiser.image_w = width;
  cfg.denoiser.masks.categories = categories;
  cfg.steps = 50;
  cfg.nm.n_max = noise_modulation ? cfg.steps / 2 : 0;
  return cfg;
}

DiffusionModel::DiffusionModel(const ModelConfig& cfg)
    : cfg_(cfg),
      ae_(cfg.ae, mix_seed(cfg.seed, 1)),
      den_(cfg.denoiser, mix_seed(cfg.seed, 2)),
      sched_(DiffusionSchedule::linear(cfg.steps)) {
  if (cfg.denoiser.latent_channels != cfg.ae.latent_channels || cfg.denoiser.latent_h != ae_.latent_h() ||
      cfg.denoiser.latent_w != ae_.latent_w() || cfg.denoiser.image_h != cfg.ae.height ||
      cfg.denoiser.image_w != cfg.ae.width) {
    throw ValidationError("denoiser and autoencoder configurations disagree");
  }
  if (cfg.nm.n_max < 0 || cfg.nm.n_max > cfg.steps) throw ValidationError("N_max outside [0, T]");
}

ConditionInputs DiffusionModel::inference_inputs(const GeneratorContext& ctx, Rng& rng) const {
  const nn::Shape lat = ae_.latent_shape();
  const nn::Shape batched{1, lat[0], lat[1], lat[2]};
  ConditionInputs in;
  in.prev = ae_.encode(ctx.prev).reshaped(batched);
  int n_prev = 0;
  if (cfg_.nm.n_max > 0) n_prev = rng.uniform_int(0, cfg_.nm.n_max);
  in.prev_alpha_bar = {sched_.alpha_bar(n_prev)};
  in.prev_noise = nn::Tensor(batched);
  if (n_prev > 0) {
    for (auto& v : in.prev_noise.values()) v = rng.normal();
  }
  in.fg = noise_modulate(ae_.encode(ctx.fg), rng, cfg_.nm, sched_).reshaped(batched);
  in.bg = noise_modulate(ae_.encode(ctx.bg), rng, cfg_.nm, sched_).reshaped(batched);
  in.rel = nn::Tensor({1, 16}, std::vector<double>(ctx.rel.begin(), ctx.rel.end()));
  in.ego = nn::Tensor({1, 19}, std::vector<double>(ctx.ego.begin(), ctx.ego.end()));
  const auto& m = ctx.masks_cur;
  in.masks_cur = m.to_tensor().reshaped({1, m.categories(), m.height(), m.width()});
  const auto& mp = ctx.masks_prev;
  in.masks_prev = mp.to_tensor().reshaped({1, mp.categories(), mp.height(), mp.width()});
  return in;
}

RangeImage DiffusionModel::sample(const GeneratorContext& ctx) const {
  Rng rng(ctx.seed);
  const ConditionInputs in = inference_inputs(ctx, rng);
  const nn::Tensor z = sample_latent(den_, sched_, in, rng);
  return ae_.decode(z.reshaped(ae_.latent_shape()));
}

}  // namespace arl::gen
