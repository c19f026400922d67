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

#include "arl/nn/layers.hpp"
#include "arl/range/range_image.hpp"

#include <cstdint>
#include <vector>

namespace arl::gen {

struct AeConfig {
  int height = 16;
  int width = 128;
  int latent_channels = 4;
  int base_channels = 8;
  double kl_weight = 1e-4;
  // Decoded depth below this (normalized) is treated as an empty pixel.
  double empty_threshold = 1.0 / 80.0;
  DepthNorm norm{};
};

struct AeTrainConfig {
  int steps = 600;
  int batch = 4;
  double lr = 2e-3;
  std::uint64_t seed = 1;
};

// [B, 2, H, W] stack of (depth, intensity) channels.
nn::Tensor images_to_tensor(const std::vector<const RangeImage*>& images);

// Convolutional VAE with downsample factor 4. Latents handed to the
// diffusion model are the posterior means, standardized per channel.
class LatentAutoencoder {
 public:
  explicit LatentAutoencoder(const AeConfig& cfg, std::uint64_t seed = 0);

  const AeConfig& config() const { return cfg_; }
  int latent_h() const { return cfg_.height / 4; }
  int latent_w() const { return cfg_.width / 4; }
  nn::Shape latent_shape() const { return {cfg_.latent_channels, latent_h(), latent_w()}; }

  struct Moments {
    nn::Var mu;
    nn::Var logvar;
  };
  Moments encode_graph(const nn::Var& images) const;
  nn::Var decode_graph(const nn::Var& latents) const;

  // Standardized posterior mean, [c, h, w].
  nn::Tensor encode(const RangeImage& img) const;
  // Inverse of encode followed by clamping to [0, 1] and empty-pixel cleanup.
  RangeImage decode(const nn::Tensor& z) const;

  // Trains on the corpus and refreshes the latent statistics. Returns the
  // per-step loss curve.
  std::vector<double> fit(const std::vector<RangeImage>& corpus, const AeTrainConfig& tc);
  void refresh_latent_stats(const std::vector<RangeImage>& corpus);

  const std::vector<double>& latent_mean() const { return mean_; }
  const std::vector<double>& latent_std() const { return std_; }
  void set_latent_stats(std::vector<double> mean, std::vector<double> stddev);

  nn::ParamStore& params() { return store_; }
  const nn::ParamStore& params() const { return store_; }

 private:
  void check_image(const RangeImage& img) const;

  AeConfig cfg_;
  nn::ParamStore store_;
  nn::Conv2d enc0_, enc1_, enc2_, enc_out_;
  nn::Conv2d dec0_, dec1_, dec2_, dec_out_;
  std::vector<double> mean_;
  std::vector<double> std_;
};

}  // namespace arl::gen
