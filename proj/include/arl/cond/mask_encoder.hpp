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

#include "arl/cond/box_masks.hpp"
#include "arl/nn/autograd.hpp"

#include <string>

namespace arl::cond {

struct MaskEncoderConfig {
  int categories = 10;
  int patch_h = 8;
  int patch_w = 8;
  int token_dim = 16;
};

// Patch embedding of the mask stack: each patch is linearly projected and
// summed with a fixed 2D sinusoidal position code. Tokens are row-major
// over the (H / patch_h) x (W / patch_w) patch grid.
class MaskEncoder {
 public:
  MaskEncoder(nn::ParamStore& store, const std::string& prefix, const MaskEncoderConfig& cfg, int height, int width,
              Rng& rng);

  // masks [B, D, H, W] -> tokens [B, N, token_dim].
  nn::Var forward(const nn::Var& masks) const;
  // Single stack -> [N, token_dim], no gradient recording.
  nn::Tensor encode(const BoxMaskStack& stack) const;

  int grid_h() const { return grid_h_; }
  int grid_w() const { return grid_w_; }
  int tokens() const { return grid_h_ * grid_w_; }
  const MaskEncoderConfig& config() const { return cfg_; }
  const nn::Tensor& position_codes() const { return pos_; }

 private:
  MaskEncoderConfig cfg_;
  int height_;
  int width_;
  int grid_h_;
  int grid_w_;
  nn::Var weight_;
  nn::Var bias_;
  nn::Tensor pos_;  // [N, token_dim]
};

}  // namespace arl::cond
