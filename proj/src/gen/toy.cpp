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

#include "arl/gen/toy.hpp"

#include "arl/range/codec.hpp"
#include "arl/scene/errors.hpp"

#include <algorithm>
#include <numeric>

namespace arl::gen {

std::vector<RangeImage> corpus_images(const std::vector<Sequence>& sequences, const ContextConfig& ctx) {
  std::vector<RangeImage> out;
  for (const auto& seq : sequences)
    for (const auto& f : seq) out.push_back(project(f.cloud, ctx.beams, ctx.width, ctx.norm));
  return out;
}

std::vector<TrainExample> corpus_examples(const std::vector<Sequence>& sequences, const ContextConfig& ctx,
                                          const LatentAutoencoder& ae) {
  std::vector<TrainExample> out;
  for (const auto& seq : sequences) {
    for (std::size_t i = 1; i < seq.size(); ++i) {
      const GeneratorContext c = build_context(seq[i - 1], seq[i].boxes, seq[i].ego, ctx);
      out.push_back(make_training_example(c, project(seq[i].cloud, ctx.beams, ctx.width, ctx.norm), ae));
    }
  }
  return out;
}

void copy_params(const nn::ParamStore& from, nn::ParamStore& to) {
  for (auto& p : to.params()) {
    const nn::Var src = from.find(p.name);
    if (!src.defined() || src.shape() != p.var.shape()) throw ShapeError("parameter " + p.name + " does not match");
    p.var.mutable_value() = src.value();
  }
}

ToyResult train_toy(const ModelConfig& cfg, const std::vector<Sequence>& sequences, const ContextConfig& ctx,
                    const ToyRecipe& recipe, const LatentAutoencoder* pretrained) {
  ToyResult r;
  r.model = std::make_shared<DiffusionModel>(cfg);
  LatentAutoencoder& ae = r.model->autoencoder();
  if (pretrained) {
    copy_params(pretrained->params(), ae.params());
    ae.set_latent_stats(pretrained->latent_mean(), pretrained->latent_std());
  } else {
    r.ae_losses = ae.fit(corpus_images(sequences, ctx), recipe.ae);
  }
  const std::vector<TrainExample> examples = corpus_examples(sequences, ctx, ae);
  TrainConfig tc = recipe.diffusion;
  tc.nm = cfg.nm;
  DiffusionTrainer trainer(r.model->denoiser(), r.model->schedule(), tc);
  r.losses = trainer.fit(examples);
  return r;
}

double head_mean(const std::vector<double>& losses, std::size_t window) {
  const std::size_t n = std::min(window, losses.size());
  if (n == 0) throw ValidationError("no losses to average");
  return std::accumulate(losses.begin(), losses.begin() + static_cast<std::ptrdiff_t>(n), 0.0) / n;
}

double tail_mean(const std::vector<double>& losses, std::size_t window) {
  const std::size_t n = std::min(window, losses.size());
  if (n == 0) throw ValidationError("no losses to average");
  return std::accumulate(losses.end() - static_cast<std::ptrdiff_t>(n), losses.end(), 0.0) / n;
}

}  // namespace arl::gen
