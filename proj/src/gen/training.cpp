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

#include "arl/gen/training.hpp"

#include "arl/scene/errors.hpp"

#include <algorithm>
#include <cmath>

namespace arl::gen {

namespace {

nn::Tensor gaussian(const nn::Shape& shape, Rng& rng) {
  nn::Tensor t(shape);
  for (auto& v : t.values()) v = rng.normal();
  return t;
}

int draw_level(const NMConfig& nm, Rng& rng) { return nm.n_max == 0 ? 0 : rng.uniform_int(0, nm.n_max); }

void copy_into(nn::Tensor& dst, std::size_t b, const nn::Tensor& src) {
  if (dst.size() / static_cast<std::size_t>(dst.dim(0)) != src.size()) throw ShapeError("batch element size mismatch");
  std::copy(src.values().begin(), src.values().end(), dst.data() + b * src.size());
}

}  // namespace

TrainExample make_training_example(const GeneratorContext& ctx, const RangeImage& target,
                                   const LatentAutoencoder& ae) {
  TrainExample ex;
  ex.z0 = ae.encode(target);
  ex.prev = ae.encode(ctx.prev);
  ex.fg = ae.encode(ctx.fg);
  ex.bg = ae.encode(ctx.bg);
  ex.masks_cur = ctx.masks_cur.to_tensor();
  ex.masks_prev = ctx.masks_prev.to_tensor();
  ex.ego = ctx.ego;
  ex.rel = ctx.rel;
  return ex;
}

NoiseDraw draw_noise(int batch, const nn::Shape& latent, const DiffusionSchedule& sched, const NMConfig& nm,
                     Rng& rng) {
  if (nm.n_max < 0 || nm.n_max > sched.steps()) throw ValidationError("N_max outside [0, T]");
  nn::Shape full{batch};
  full.insert(full.end(), latent.begin(), latent.end());
  NoiseDraw d;
  for (int b = 0; b < batch; ++b) {
    d.t.push_back(rng.uniform_int(1, sched.steps()));
    d.n_prev.push_back(draw_level(nm, rng));
    d.n_fg.push_back(draw_level(nm, rng));
    d.n_bg.push_back(draw_level(nm, rng));
  }
  d.eps = gaussian(full, rng);
  d.noise_prev = gaussian(full, rng);
  d.noise_fg = gaussian(full, rng);
  d.noise_bg = gaussian(full, rng);
  return d;
}

TrainBatch assemble_batch(const std::vector<const TrainExample*>& examples, const NoiseDraw& draw,
                          const DiffusionSchedule& sched) {
  if (examples.empty() || draw.t.size() != examples.size()) throw ShapeError("noise draw does not match the batch");
  const int b = static_cast<int>(examples.size());
  const auto& lat = examples.front()->z0.shape();
  const auto& ms = examples.front()->masks_cur.shape();
  const nn::Shape lshape{b, lat[0], lat[1], lat[2]};
  const nn::Shape mshape{b, ms[0], ms[1], ms[2]};
  if (draw.eps.shape() != lshape) throw ShapeError("noise draw latent shape mismatch");
  TrainBatch out;
  out.z_t = nn::Tensor(lshape);
  auto& c = out.cond;
  c.prev = nn::Tensor(lshape);
  c.fg = nn::Tensor(lshape);
  c.bg = nn::Tensor(lshape);
  c.rel = nn::Tensor({b, 16});
  c.ego = nn::Tensor({b, 19});
  c.masks_cur = nn::Tensor(mshape);
  c.masks_prev = nn::Tensor(mshape);
  c.prev_noise = draw.noise_prev;
  const std::size_t per = examples.front()->z0.size();
  auto slice = [per](const nn::Tensor& t, std::size_t i) {
    return nn::Tensor(nn::Shape{static_cast<int>(per)},
                      std::vector<double>(t.values().begin() + static_cast<std::ptrdiff_t>(i * per),
                                          t.values().begin() + static_cast<std::ptrdiff_t>((i + 1) * per)));
  };
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const TrainExample& ex = *examples[i];
    if (ex.z0.shape() != lat || ex.masks_cur.shape() != ms) throw ShapeError("batch examples differ in shape");
    copy_into(out.z_t, i, forward_noise(ex.z0.reshaped({static_cast<int>(per)}), draw.t[i], slice(draw.eps, i), sched));
    copy_into(c.prev, i, ex.prev);
    copy_into(c.fg, i, forward_noise(ex.fg.reshaped({static_cast<int>(per)}), draw.n_fg[i], slice(draw.noise_fg, i),
                                     sched));
    copy_into(c.bg, i, forward_noise(ex.bg.reshaped({static_cast<int>(per)}), draw.n_bg[i], slice(draw.noise_bg, i),
                                     sched));
    copy_into(c.masks_cur, i, ex.masks_cur);
    copy_into(c.masks_prev, i, ex.masks_prev);
    std::copy(ex.rel.begin(), ex.rel.end(), c.rel.data() + i * 16);
    std::copy(ex.ego.begin(), ex.ego.end(), c.ego.data() + i * 19);
    c.prev_alpha_bar.push_back(sched.alpha_bar(draw.n_prev[i]));
  }
  return out;
}

EpsPredictor denoiser_predictor(const ConditionedDenoiser& model) {
  return [&model](const ConditionInputs& cond, const nn::Var& z_t, const std::vector<int>& t) {
    return model.predict(model.prepare(cond), z_t, t);
  };
}

nn::Var diffusion_loss(const EpsPredictor& predict, const TrainBatch& batch, const NoiseDraw& draw) {
  const nn::Var pred = predict(batch.cond, nn::Var::constant(batch.z_t), draw.t);
  if (pred.shape() != draw.eps.shape()) throw ShapeError("noise prediction " + nn::shape_str(pred.shape()));
  return nn::mse(pred, draw.eps);
}

DiffusionTrainer::DiffusionTrainer(ConditionedDenoiser& model, const DiffusionSchedule& sched,
                                   const TrainConfig& cfg)
    : model_(model), sched_(sched), cfg_(cfg), opt_(model.params(), nn::AdamConfig{cfg.lr, 0.9, 0.999, 1e-8, cfg.clip_norm}) {
  if (cfg.batch <= 0) throw ValidationError("batch size must be positive");
}

double DiffusionTrainer::train_step(const std::vector<const TrainExample*>& batch, Rng& rng) {
  const NoiseDraw draw = draw_noise(static_cast<int>(batch.size()), model_.latent_shape(), sched_, cfg_.nm, rng);
  const TrainBatch tb = assemble_batch(batch, draw, sched_);
  const nn::Var loss = diffusion_loss(denoiser_predictor(model_), tb, draw);
  const double value = loss.value()[0];
  if (!std::isfinite(value)) throw NumericError("diffusion loss is not finite");
  nn::backward(loss);
  opt_.step();
  return value;
}

std::vector<double> DiffusionTrainer::fit(const std::vector<TrainExample>& data) {
  if (data.empty()) throw ValidationError("training set is empty");
  Rng rng(cfg_.seed);
  std::vector<double> losses;
  losses.reserve(static_cast<std::size_t>(cfg_.steps));
  const int last = static_cast<int>(data.size()) - 1;
  for (int s = 0; s < cfg_.steps; ++s) {
    std::vector<const TrainExample*> batch;
    for (int i = 0; i < cfg_.batch; ++i) batch.push_back(&data[static_cast<std::size_t>(rng.uniform_int(0, last))]);
    losses.push_back(train_step(batch, rng));
  }
  return losses;
}

}  // namespace arl::gen
