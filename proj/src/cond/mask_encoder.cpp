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

#include "arl/cond/mask_encoder.hpp"

#include "arl/nn/ops.hpp"
#include "arl/scene/errors.hpp"

#include <cmath>

namespace arl::cond {

namespace {

nn::Tensor sinusoid_grid(int gh, int gw, int dim) {
  nn::Tensor pos({gh * gw, dim});
  const int half = dim / 2;
  for (int y = 0; y < gh; ++y) {
    for (int x = 0; x < gw; ++x) {
      double* row = pos.data() + static_cast<std::size_t>((y * gw + x) * dim);
      // First half encodes the patch row, second half the patch column.
      for (int i = 0; i < dim; ++i) {
        const bool col_part = i >= half;
        const int k = col_part ? i - half : i;
        const int span = col_part ? dim - half : half;
        const double freq = std::pow(10000.0, -static_cast<double>(2 * (k / 2)) / std::max(1, span));
        const double coord = col_part ? x : y;
        row[i] = (k % 2 == 0) ? std::sin(coord * freq) : std::cos(coord * freq);
      }
    }
  }
  return pos;
}

}  // namespace

MaskEncoder::MaskEncoder(nn::ParamStore& store, const std::string& prefix, const MaskEncoderConfig& cfg, int height,
                         int width, Rng& rng)
    : cfg_(cfg), height_(height), width_(width) {
  if (cfg.patch_h <= 0 || cfg.patch_w <= 0 || height % cfg.patch_h != 0 || width % cfg.patch_w != 0) {
    throw ShapeError("mask size " + std::to_string(height) + "x" + std::to_string(width) +
                     " is not divisible by the patch size");
  }
  grid_h_ = height / cfg.patch_h;
  grid_w_ = width / cfg.patch_w;
  const double fan_in = static_cast<double>(cfg.categories * cfg.patch_h * cfg.patch_w);
  weight_ = store.add(prefix + ".patch.weight",
                      nn::Tensor::randn({cfg.token_dim, cfg.categories, cfg.patch_h, cfg.patch_w}, rng,
                                        std::sqrt(1.0 / fan_in) * 4.0));
  bias_ = store.add(prefix + ".patch.bias", nn::Tensor({cfg.token_dim}));
  pos_ = sinusoid_grid(grid_h_, grid_w_, cfg.token_dim);
}

nn::Var MaskEncoder::forward(const nn::Var& masks) const {
  const auto& s = masks.shape();
  if (s.size() != 4 || s[1] != cfg_.categories || s[2] != height_ || s[3] != width_) {
    throw ShapeError("mask encoder expects [B, " + std::to_string(cfg_.categories) + ", " + std::to_string(height_) +
                     ", " + std::to_string(width_) + "], got " + nn::shape_str(s));
  }
  const int b = s[0];
  nn::ConvSpec spec;
  spec.stride_h = cfg_.patch_h;
  spec.stride_w = cfg_.patch_w;
  nn::Var grid = nn::conv2d(masks, weight_, bias_, spec);  // [B, d, gh, gw]
  nn::Var tok = nn::transpose_last2(nn::reshape(grid, {b, cfg_.token_dim, tokens()}));
  nn::Tensor pos({b, tokens(), cfg_.token_dim});
  for (int i = 0; i < b; ++i) {
    std::copy(pos_.values().begin(), pos_.values().end(), pos.data() + static_cast<std::size_t>(i) * pos_.size());
  }
  return nn::add(tok, nn::Var::constant(std::move(pos)));
}

nn::Tensor MaskEncoder::encode(const BoxMaskStack& stack) const {
  nn::NoGradGuard guard;
  nn::Tensor t = stack.to_tensor();
  nn::Var out = forward(nn::Var::constant(t.reshaped({1, stack.categories(), stack.height(), stack.width()})));
  return out.value().reshaped({tokens(), cfg_.token_dim});
}

}  // namespace arl::cond
