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

#include "arl/gen/autoencoder.hpp"

#include "arl/nn/optim.hpp"
#include "arl/scene/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace arl::gen {

nn::Tensor images_to_tensor(const std::vector<const RangeImage*>& images) {
  if (images.empty()) throw ValidationError("no images to stack");
  const int h = images.front()->height();
  const int w = images.front()->width();
  const auto plane = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
  nn::Tensor t({static_cast<int>(images.size()), 2, h, w});
  for (std::size_t b = 0; b < images.size(); ++b) {
    const RangeImage& img = *images[b];
    if (img.height() != h || img.width() != w) throw ShapeError("images in a batch must share their size");
    double* dst = t.data() + b * 2 * plane;
    for (std::size_t i = 0; i < plane; ++i) {
      dst[i] = img.depth_data()[i];
      dst[plane + i] = img.intensity_data()[i];
    }
  }
  return t;
}

LatentAutoencoder::LatentAutoencoder(const AeConfig& cfg, std::uint64_t seed) : cfg_(cfg) {
  if (cfg.height <= 0 || cfg.width <= 0 || cfg.height % 4 != 0 || cfg.width % 4 != 0) {
    throw ShapeError("autoencoder image size must be a positive multiple of 4");
  }
  if (cfg.latent_channels <= 0 || cfg.base_channels <= 0) throw ValidationError("channel counts must be positive");
  Rng rng(seed);
  const int b = cfg.base_channels;
  const int c = cfg.latent_channels;
  enc0_ = nn::conv3x3(store_, "ae.enc0", 2, b, rng, 1.4);
  enc1_ = nn::conv3x3(store_, "ae.enc1", b, 2 * b, rng, 1.4, 2, 2);
  enc2_ = nn::conv3x3(store_, "ae.enc2", 2 * b, 4 * b, rng, 1.4, 2, 2);
  enc_out_ = nn::conv1x1(store_, "ae.enc_out", 4 * b, 2 * c, rng, 0.5);
  dec0_ = nn::conv3x3(store_, "ae.dec0", c, 4 * b, rng, 1.4);
  dec1_ = nn::conv3x3(store_, "ae.dec1", 4 * b, 2 * b, rng, 1.4);
  dec2_ = nn::conv3x3(store_, "ae.dec2", 2 * b, b, rng, 1.4);
  dec_out_ = nn::conv3x3(store_, "ae.dec_out", b, 2, rng, 0.5);
  mean_.assign(static_cast<std::size_t>(c), 0.0);
  std_.assign(static_cast<std::size_t>(c), 1.0);
}

LatentAutoencoder::Moments LatentAutoencoder::encode_graph(const nn::Var& images) const {
  nn::Var h = nn::silu(enc0_(images));
  h = nn::silu(enc1_(h));
  h = nn::silu(enc2_(h));
  nn::Var out = enc_out_(h);
  const int c = cfg_.latent_channels;
  return {nn::slice_channels(out, 0, c), nn::slice_channels(out, c, 2 * c)};
}

nn::Var LatentAutoencoder::decode_graph(const nn::Var& latents) const {
  nn::Var h = nn::silu(dec0_(latents));
  h = nn::upsample_nearest(h, 2, 2);
  h = nn::silu(dec1_(h));
  h = nn::upsample_nearest(h, 2, 2);
  h = nn::silu(dec2_(h));
  return dec_out_(h);
}

void LatentAutoencoder::check_image(const RangeImage& img) const {
  if (img.height() != cfg_.height || img.width() != cfg_.width) {
    throw ShapeError("range image " + std::to_string(img.height()) + "x" + std::to_string(img.width()) +
                     " does not match the autoencoder size " + std::to_string(cfg_.height) + "x" +
                     std::to_string(cfg_.width));
  }
}

nn::Tensor LatentAutoencoder::encode(const RangeImage& img) const {
  check_image(img);
  nn::NoGradGuard guard;
  const nn::Var mu = encode_graph(nn::Var::constant(images_to_tensor({&img}))).mu;
  nn::Tensor z = mu.value().reshaped(latent_shape());
  const auto plane = static_cast<std::size_t>(latent_h() * latent_w());
  for (int ch = 0; ch < cfg_.latent_channels; ++ch) {
    const auto k = static_cast<std::size_t>(ch);
    for (std::size_t i = 0; i < plane; ++i) z[k * plane + i] = (z[k * plane + i] - mean_[k]) / std_[k];
  }
  return z;
}

RangeImage LatentAutoencoder::decode(const nn::Tensor& z) const {
  if (z.shape() != latent_shape()) {
    throw ShapeError("latent " + nn::shape_str(z.shape()) + " != " + nn::shape_str(latent_shape()));
  }
  nn::Tensor raw = z;
  const auto plane = static_cast<std::size_t>(latent_h() * latent_w());
  for (int ch = 0; ch < cfg_.latent_channels; ++ch) {
    const auto k = static_cast<std::size_t>(ch);
    for (std::size_t i = 0; i < plane; ++i) raw[k * plane + i] = raw[k * plane + i] * std_[k] + mean_[k];
  }
  nn::NoGradGuard guard;
  const nn::Var out =
      decode_graph(nn::Var::constant(raw.reshaped({1, cfg_.latent_channels, latent_h(), latent_w()})));
  RangeImage img(cfg_.height, cfg_.width, cfg_.norm);
  const auto n = static_cast<std::size_t>(cfg_.height) * static_cast<std::size_t>(cfg_.width);
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::clamp(out.value()[i], 0.0, 1.0);
    double a = std::clamp(out.value()[n + i], 0.0, 1.0);
    if (d < cfg_.empty_threshold) d = a = 0.0;
    img.depth_data()[i] = static_cast<float>(d);
    img.intensity_data()[i] = static_cast<float>(a);
  }
  return img;
}

std::vector<double> LatentAutoencoder::fit(const std::vector<RangeImage>& corpus, const AeTrainConfig& tc) {
  if (corpus.empty()) throw ValidationError("autoencoder corpus is empty");
  for (const auto& img : corpus) check_image(img);
  Rng rng(tc.seed);
  nn::AdamConfig ac;
  ac.lr = tc.lr;
  nn::Adam opt(store_, ac);
  std::vector<double> losses;
  losses.reserve(static_cast<std::size_t>(tc.steps));
  const int last = static_cast<int>(corpus.size()) - 1;
  for (int step = 0; step < tc.steps; ++step) {
    std::vector<const RangeImage*> batch;
    for (int i = 0; i < tc.batch; ++i) batch.push_back(&corpus[static_cast<std::size_t>(rng.uniform_int(0, last))]);
    const nn::Tensor x = images_to_tensor(batch);
    const Moments m = encode_graph(nn::Var::constant(x));
    nn::Tensor eps(m.mu.shape());
    for (auto& e : eps.values()) e = rng.normal();
    const nn::Var std_dev = nn::exp(nn::scale(m.logvar, 0.5));
    const nn::Var z = nn::add(m.mu, nn::mul(std_dev, nn::Var::constant(eps)));
    const nn::Var recon = nn::mse(decode_graph(z), x);
    // KL(q || N(0, 1)) per latent element.
    const nn::Var kl_terms = nn::sub(nn::add(nn::mul(m.mu, m.mu), nn::exp(m.logvar)), m.logvar);
    const nn::Var kl = nn::scale(nn::mean(kl_terms), 0.5);
    const nn::Var loss = nn::add(recon, nn::scale(kl, cfg_.kl_weight));
    const double value = loss.value()[0];
    if (!std::isfinite(value)) throw NumericError("autoencoder loss diverged at step " + std::to_string(step));
    nn::backward(loss);
    opt.step();
    losses.push_back(value);
  }
  refresh_latent_stats(corpus);
  return losses;
}

void LatentAutoencoder::refresh_latent_stats(const std::vector<RangeImage>& corpus) {
  const int c = cfg_.latent_channels;
  std::vector<double> sum(static_cast<std::size_t>(c), 0.0), sq(static_cast<std::size_t>(c), 0.0);
  double count = 0.0;
  nn::NoGradGuard guard;
  const auto plane = static_cast<std::size_t>(latent_h() * latent_w());
  for (const auto& img : corpus) {
    const nn::Var mu = encode_graph(nn::Var::constant(images_to_tensor({&img}))).mu;
    for (int ch = 0; ch < c; ++ch) {
      const auto k = static_cast<std::size_t>(ch);
      for (std::size_t i = 0; i < plane; ++i) {
        const double v = mu.value()[k * plane + i];
        sum[k] += v;
        sq[k] += v * v;
      }
    }
    count += static_cast<double>(plane);
  }
  for (std::size_t k = 0; k < sum.size(); ++k) {
    mean_[k] = sum[k] / count;
    const double var = sq[k] / count - mean_[k] * mean_[k];
    std_[k] = std::sqrt(std::max(var, 1e-8));
  }
}

void LatentAutoencoder::set_latent_stats(std::vector<double> mean, std::vector<double> stddev) {
  const auto c = static_cast<std::size_t>(cfg_.latent_channels);
  if (mean.size() != c || stddev.size() != c) throw ShapeError("latent statistics size mismatch");
  for (double s : stddev) {
    if (!(s > 0.0) || !std::isfinite(s)) throw ValidationError("latent std must be positive");
  }
  mean_ = std::move(mean);
  std_ = std::move(stddev);
}

}  // namespace arl::gen
