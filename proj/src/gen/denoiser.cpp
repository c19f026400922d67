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

#include "arl/gen/denoiser.hpp"

#include "arl/scene/errors.hpp"

#include <cmath>

namespace arl::gen {

namespace {

nn::Var noise_mix(const nn::Var& x, const std::vector<double>& alpha_bar, const nn::Tensor& noise) {
  const auto& s = x.shape();
  const int b = s[0];
  if (static_cast<int>(alpha_bar.size()) != b || noise.shape() != s) {
    throw ShapeError("previous-latent modulation does not match the batch");
  }
  const std::size_t per = x.value().size() / static_cast<std::size_t>(b);
  nn::Tensor gain(s), offset(s);
  for (int i = 0; i < b; ++i) {
    const double ab = alpha_bar[static_cast<std::size_t>(i)];
    const double a = std::sqrt(ab);
    const double n = std::sqrt(1.0 - ab);
    for (std::size_t k = 0; k < per; ++k) {
      const std::size_t j = static_cast<std::size_t>(i) * per + k;
      gain[j] = a;
      offset[j] = n * noise[j];
    }
  }
  return nn::add(nn::mul(x, nn::Var::constant(std::move(gain))), nn::Var::constant(std::move(offset)));
}

int pool_h(int h) { return h % 2 == 0 ? 2 : 1; }

}  // namespace

Film::Film(nn::ParamStore& store, const std::string& name, int channels, Rng& rng)
    : channels_(channels), affine_(store, name, 16, 2 * channels, rng, 0.1) {}

nn::Var Film::operator()(const nn::Var& z, const nn::Var& rel) const {
  const auto& s = z.shape();
  if (s.size() != 4 || s[1] != channels_) throw ShapeError("FiLM input " + nn::shape_str(s));
  if (rel.shape() != nn::Shape{s[0], 16}) throw ShapeError("FiLM pose vector " + nn::shape_str(rel.shape()));
  const nn::Var ab = affine_(rel);
  const nn::Var a = nn::reshape(nn::slice_channels(nn::reshape(ab, {s[0], 2 * channels_, 1, 1}), 0, channels_),
                                {s[0], channels_});
  const nn::Var b = nn::reshape(
      nn::slice_channels(nn::reshape(ab, {s[0], 2 * channels_, 1, 1}), channels_, 2 * channels_), {s[0], channels_});
  return nn::add_channel(nn::add(z, nn::mul_channel(z, a)), b);
}

nn::Tensor ego_input(const nn::Tensor& ego) {
  if (ego.rank() != 2 || ego.dim(1) != 19) throw ShapeError("ego features " + nn::shape_str(ego.shape()));
  nn::Tensor out = ego;
  for (int b = 0; b < ego.dim(0); ++b) {
    double* row = out.data() + static_cast<std::size_t>(b) * 19;
    row[0] /= 10.0;
    row[1] /= 5.0;
    // Translation column of the row-major 4x4 block.
    row[3 + 3] /= 100.0;
    row[3 + 7] /= 100.0;
    row[3 + 11] /= 100.0;
  }
  return out;
}

nn::Tensor timestep_embedding(const std::vector<int>& t, int dim) {
  nn::Tensor out({static_cast<int>(t.size()), dim});
  const int half = dim / 2;
  for (std::size_t b = 0; b < t.size(); ++b) {
    for (int i = 0; i < half; ++i) {
      const double freq = std::exp(-std::log(10000.0) * i / std::max(1, half));
      out[b * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i)] = std::sin(t[b] * freq);
      out[b * static_cast<std::size_t>(dim) + static_cast<std::size_t>(half + i)] = std::cos(t[b] * freq);
    }
  }
  return out;
}

ConditionedDenoiser::ResBlock ConditionedDenoiser::make_block(const std::string& name, int in, int out, Rng& rng) {
  ResBlock b;
  b.conv1 = nn::conv3x3(store_, name + ".conv1", in, out, rng, 1.4);
  b.emb = nn::Linear(store_, name + ".emb", cfg_.emb_dim, out, rng, 0.5);
  b.conv2 = nn::conv3x3(store_, name + ".conv2", out, out, rng, 0.5);
  if (in != out) {
    b.skip = nn::conv1x1(store_, name + ".skip", in, out, rng);
    b.has_skip = true;
  }
  return b;
}

nn::Var ConditionedDenoiser::run_block(const ResBlock& b, const nn::Var& x, const nn::Var& emb) const {
  nn::Var h = b.conv1(nn::silu(x));
  h = nn::add_channel(h, b.emb(nn::silu(emb)));
  h = b.conv2(nn::silu(h));
  return nn::add(h, b.has_skip ? b.skip(x) : x);
}

ConditionedDenoiser::ConditionedDenoiser(const DenoiserConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      masks_([&]() -> cond::MaskEncoder {
        Rng mrng(mix_seed(seed, 1));
        return cond::MaskEncoder(store_, "den.masks", cfg.masks, cfg.image_h, cfg.image_w, mrng);
      }()) {
  if (cfg.channels.empty()) throw ValidationError("denoiser needs at least one level");
  if (cfg.latent_channels <= 0 || cfg.latent_h <= 0 || cfg.latent_w <= 0 || cfg.emb_dim <= 1) {
    throw ValidationError("invalid denoiser dimensions");
  }
  Rng rng(seed);
  const int c = cfg.latent_channels;
  const int d = cfg.masks.token_dim;
  const int e = cfg.emb_dim;
  film_ = Film(store_, "den.film", c, rng);
  wq_ = nn::Linear(store_, "den.attn.q", d, d, rng);
  wk_ = nn::Linear(store_, "den.attn.k", d, d, rng);
  wv_ = nn::Linear(store_, "den.attn.v", d, d, rng);
  time1_ = nn::Linear(store_, "den.time1", e, e, rng);
  time2_ = nn::Linear(store_, "den.time2", e, e, rng);
  ego1_ = nn::Linear(store_, "den.ego1", 19, e, rng);
  ego2_ = nn::Linear(store_, "den.ego2", e, e, rng, 0.5);
  const auto& ch = cfg.channels;
  in_conv_ = nn::conv3x3(store_, "den.in", 4 * c, ch[0], rng);
  for (std::size_t l = 0; l < ch.size(); ++l) {
    attn_proj_.push_back(nn::conv1x1(store_, "den.attn.proj" + std::to_string(l), d, ch[l], rng, 0.5));
    const int in = l == 0 ? ch[0] : ch[l - 1];
    down_.push_back(make_block("den.down" + std::to_string(l), in, ch[l], rng));
  }
  mid_ = make_block("den.mid", ch.back(), ch.back(), rng);
  for (std::size_t l = ch.size() - 1; l-- > 0;) {
    up_.push_back(make_block("den.up" + std::to_string(l), ch[l + 1] + ch[l], ch[l], rng));
  }
  out_conv_ = nn::conv3x3(store_, "den.out", ch[0], c, rng, 0.3);
}

Conditioning ConditionedDenoiser::prepare(const ConditionInputs& in) const {
  const nn::Shape lat = latent_shape();
  const int b = in.prev.rank() == 4 ? in.prev.dim(0) : -1;
  const nn::Shape want{b, lat[0], lat[1], lat[2]};
  if (b <= 0 || in.prev.shape() != want || in.fg.shape() != want || in.bg.shape() != want) {
    throw ShapeError("conditioning latents must be " + nn::shape_str(want));
  }
  Conditioning out;
  const nn::Var rel = nn::Var::constant(in.rel);
  const nn::Var prev_hat = noise_mix(film_(nn::Var::constant(in.prev), rel), in.prev_alpha_bar, in.prev_noise);
  out.cond = nn::concat_channels({prev_hat, nn::Var::constant(in.fg), nn::Var::constant(in.bg)});

  const nn::Var cur = masks_.forward(nn::Var::constant(in.masks_cur));
  const nn::Var prev = masks_.forward(nn::Var::constant(in.masks_prev));
  const int n = masks_.tokens();
  const int d = cfg_.masks.token_dim;
  auto tokens_linear = [&](const nn::Linear& lin, const nn::Var& tok) {
    return nn::reshape(lin(nn::reshape(tok, {b * n, d})), {b, n, d});
  };
  const nn::Var q = tokens_linear(wq_, cur);
  const nn::Var k = tokens_linear(wk_, prev);
  const nn::Var v = tokens_linear(wv_, cur);
  const nn::Var w = nn::softmax_last(nn::scale(nn::bmm(q, nn::transpose_last2(k)), 1.0 / std::sqrt(d)));
  const nn::Var att = nn::bmm(w, v);  // [B, N, d]
  const nn::Var grid = nn::reshape(nn::transpose_last2(att), {b, d, masks_.grid_h(), masks_.grid_w()});
  int h = cfg_.latent_h;
  int wd = cfg_.latent_w;
  for (std::size_t l = 0; l < cfg_.channels.size(); ++l) {
    out.attn.push_back(attn_proj_[l](nn::resize_nearest(grid, h, wd)));
    const int ph = pool_h(h);
    h /= ph;
    wd /= 2;
  }
  out.ego_emb = ego2_(nn::silu(ego1_(nn::Var::constant(ego_input(in.ego)))));
  return out;
}

nn::Var ConditionedDenoiser::predict(const Conditioning& c, const nn::Var& z_t, const std::vector<int>& t) const {
  const auto& s = z_t.shape();
  const nn::Shape lat = latent_shape();
  if (s.size() != 4 || s[1] != lat[0] || s[2] != lat[1] || s[3] != lat[2] ||
      static_cast<std::size_t>(s[0]) != t.size() || c.cond.shape()[0] != s[0]) {
    throw ShapeError("noisy latent " + nn::shape_str(s) + " does not match the denoiser");
  }
  const nn::Var temb = time2_(nn::silu(time1_(nn::Var::constant(timestep_embedding(t, cfg_.emb_dim)))));
  const nn::Var emb = nn::add(temb, c.ego_emb);

  nn::Var x = in_conv_(nn::concat_channels({z_t, c.cond}));
  std::vector<nn::Var> skips;
  const std::size_t levels = cfg_.channels.size();
  for (std::size_t l = 0; l < levels; ++l) {
    if (l > 0) {
      const int h = x.shape()[2];
      x = nn::avg_pool(x, pool_h(h), 2);
    }
    x = run_block(down_[l], x, emb);
    x = nn::add(x, c.attn[l]);
    skips.push_back(x);
  }
  x = run_block(mid_, x, emb);
  for (std::size_t i = 0; i < up_.size(); ++i) {
    const nn::Var& skip = skips[levels - 2 - i];
    x = nn::resize_nearest(x, skip.shape()[2], skip.shape()[3]);
    x = run_block(up_[i], nn::concat_channels({x, skip}), emb);
  }
  return out_conv_(nn::silu(x));
}

}  // namespace arl::gen
