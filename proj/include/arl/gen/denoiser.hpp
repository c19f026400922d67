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

#include "arl/cond/mask_encoder.hpp"
#include "arl/nn/layers.hpp"

#include <cstdint>
#include <vector>

namespace arl::gen {

struct DenoiserConfig {
  int latent_channels = 4;
  int latent_h = 4;
  int latent_w = 32;
  std::vector<int> channels{16, 24, 32};  // one entry per resolution level
  int emb_dim = 32;
  int image_h = 16;
  int image_w = 128;
  cond::MaskEncoderConfig masks{};
};

// Batched conditioning signals. Latents are [B, c, h, w]; fg and bg are
// already noise-modulated. The previous-frame latent is modulated after
// FiLM, with per-sample alpha_bar and noise.
struct ConditionInputs {
  nn::Tensor prev;
  nn::Tensor fg;
  nn::Tensor bg;
  nn::Tensor rel;         // [B, 16]
  nn::Tensor ego;         // [B, 19]
  nn::Tensor masks_cur;   // [B, D, H, W]
  nn::Tensor masks_prev;  // [B, D, H, W]
  std::vector<double> prev_alpha_bar;  // size B
  nn::Tensor prev_noise;               // [B, c, h, w]
};

// Everything independent of (z_t, t); built once per sampling run.
struct Conditioning {
  nn::Var cond;               // [B, 3c, h, w]
  std::vector<nn::Var> attn;  // per level [B, C_l, h_l, w_l]
  nn::Var ego_emb;            // [B, E]
};

class Film {
 public:
  Film() = default;
  Film(nn::ParamStore& store, const std::string& name, int channels, Rng& rng);
  // gamma = 1 + a, beta = b with (a, b) = affine(rel).
  nn::Var operator()(const nn::Var& z, const nn::Var& rel) const;
  const nn::Linear& affine() const { return affine_; }

 private:
  int channels_ = 0;
  nn::Linear affine_;
};

// Scaled copy of the 19 ego values fed to the ego MLP.
nn::Tensor ego_input(const nn::Tensor& ego);
nn::Tensor timestep_embedding(const std::vector<int>& t, int dim);

class ConditionedDenoiser {
 public:
  ConditionedDenoiser(const DenoiserConfig& cfg, std::uint64_t seed = 0);

  const DenoiserConfig& config() const { return cfg_; }
  nn::Shape latent_shape() const { return {cfg_.latent_channels, cfg_.latent_h, cfg_.latent_w}; }

  Conditioning prepare(const ConditionInputs& in) const;
  nn::Var predict(const Conditioning& c, const nn::Var& z_t, const std::vector<int>& t) const;

  const Film& film() const { return film_; }
  const cond::MaskEncoder& mask_encoder() const { return masks_; }
  nn::ParamStore& params() { return store_; }
  const nn::ParamStore& params() const { return store_; }

 private:
  struct ResBlock {
    nn::Conv2d conv1, conv2, skip;
    nn::Linear emb;
    bool has_skip = false;
  };
  ResBlock make_block(const std::string& name, int in, int out, Rng& rng);
  nn::Var run_block(const ResBlock& b, const nn::Var& x, const nn::Var& emb) const;

  DenoiserConfig cfg_;
  nn::ParamStore store_;
  Film film_;
  cond::MaskEncoder masks_;
  nn::Linear wq_, wk_, wv_;
  std::vector<nn::Conv2d> attn_proj_;
  nn::Linear time1_, time2_, ego1_, ego2_;
  nn::Conv2d in_conv_, out_conv_;
  std::vector<ResBlock> down_;  // one per level; the deepest is the bottleneck
  ResBlock mid_;
  std::vector<ResBlock> up_;    // levels - 1, deepest first
};

}  // namespace arl::gen
