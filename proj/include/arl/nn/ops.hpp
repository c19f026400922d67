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

#include <vector>

namespace arl::nn {

// Elementwise, identical shapes.
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var scale(const Var& a, double s);
Var silu(const Var& x);
Var exp(const Var& x);

// x: [N, C, ...], v: [N, C]; broadcast v over the trailing dimensions.
Var add_channel(const Var& x, const Var& v);
Var mul_channel(const Var& x, const Var& v);

// [N, C, H, W] channel concatenation / slice [c0, c1).
Var concat_channels(const std::vector<Var>& xs);
Var slice_channels(const Var& x, int c0, int c1);

Var avg_pool(const Var& x, int kh, int kw);
Var upsample_nearest(const Var& x, int kh, int kw);
// Nearest-neighbour resampling to an arbitrary [Ho, Wo].
Var resize_nearest(const Var& x, int out_h, int out_w);

struct ConvSpec {
  int stride_h = 1;
  int stride_w = 1;
  int pad_h = 0;
  int pad_w = 0;
  bool circular_w = false;  // wrap the width axis (azimuth) instead of zero padding
};

// x: [N, Ci, H, W], w: [Co, Ci, kh, kw], b: [Co] (may be undefined).
Var conv2d(const Var& x, const Var& w, const Var& b, const ConvSpec& spec);

// x: [N, F], w: [O, F], b: [O] (may be undefined).
Var linear(const Var& x, const Var& w, const Var& b);

// Batched matmul [B, M, K] x [B, K, P] and transposition of the last two axes.
Var bmm(const Var& a, const Var& b);
Var transpose_last2(const Var& a);
Var softmax_last(const Var& x);
Var reshape(const Var& x, Shape shape);

Var sum(const Var& x);
Var mean(const Var& x);
// Mean squared difference against a constant target.
Var mse(const Var& pred, const Tensor& target);

}  // namespace arl::nn
