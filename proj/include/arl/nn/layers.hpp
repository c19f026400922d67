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

#include "arl/nn/autograd.hpp"
#include "arl/nn/ops.hpp"

#include <cmath>
#include <string>

namespace arl::nn {

// He-style initialized convolution registered in a ParamStore.
class Conv2d {
 public:
  Conv2d() = default;
  Conv2d(ParamStore& store, const std::string& name, int in_ch, int out_ch, int kernel_h, int kernel_w,
         ConvSpec spec, Rng& rng, double init_gain = 1.0)
      : spec_(spec) {
    const double fan_in = static_cast<double>(in_ch * kernel_h * kernel_w);
    weight_ = store.add(name + ".weight",
                        Tensor::randn({out_ch, in_ch, kernel_h, kernel_w}, rng, init_gain * std::sqrt(1.0 / fan_in)));
    bias_ = store.add(name + ".bias", Tensor({out_ch}));
  }

  Var operator()(const Var& x) const { return conv2d(x, weight_, bias_, spec_); }

 private:
  ConvSpec spec_;
  Var weight_;
  Var bias_;
};

// 3x3 "same" convolution, circular along the width (azimuth) axis.
inline Conv2d conv3x3(ParamStore& store, const std::string& name, int in_ch, int out_ch, Rng& rng,
                      double gain = 1.0, int stride_h = 1, int stride_w = 1) {
  ConvSpec s;
  s.stride_h = stride_h;
  s.stride_w = stride_w;
  s.pad_h = 1;
  s.pad_w = 1;
  s.circular_w = true;
  return Conv2d(store, name, in_ch, out_ch, 3, 3, s, rng, gain);
}

inline Conv2d conv1x1(ParamStore& store, const std::string& name, int in_ch, int out_ch, Rng& rng,
                      double gain = 1.0) {
  return Conv2d(store, name, in_ch, out_ch, 1, 1, ConvSpec{}, rng, gain);
}

class Linear {
 public:
  Linear() = default;
  Linear(ParamStore& store, const std::string& name, int in_features, int out_features, Rng& rng,
         double init_gain = 1.0) {
    weight_ = store.add(name + ".weight",
                        Tensor::randn({out_features, in_features}, rng, init_gain * std::sqrt(1.0 / in_features)));
    bias_ = store.add(name + ".bias", Tensor({out_features}));
  }

  Var operator()(const Var& x) const { return linear(x, weight_, bias_); }
  const Var& weight() const { return weight_; }
  const Var& bias() const { return bias_; }

 private:
  Var weight_;
  Var bias_;
};

}  // namespace arl::nn
