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

#include "arl/nn/optim.hpp"

#include <cmath>

namespace arl::nn {

Adam::Adam(ParamStore& store, AdamConfig cfg) : store_(store), cfg_(cfg) {
  for (const auto& p : store_.params()) {
    m_.emplace_back(p.var.shape());
    v_.emplace_back(p.var.shape());
  }
}

double Adam::step() {
  auto& params = store_.params();
  double sq = 0.0;
  for (auto& p : params) {
    for (double g : p.var.grad().values()) sq += g * g;
  }
  const double norm = std::sqrt(sq);
  const double clip = (cfg_.clip_norm > 0.0 && norm > cfg_.clip_norm) ? cfg_.clip_norm / norm : 1.0;

  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t k = 0; k < params.size(); ++k) {
    Tensor& w = params[k].var.mutable_value();
    const Tensor& g = params[k].var.grad();
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double gi = g[i] * clip;
      m_[k][i] = cfg_.beta1 * m_[k][i] + (1.0 - cfg_.beta1) * gi;
      v_[k][i] = cfg_.beta2 * v_[k][i] + (1.0 - cfg_.beta2) * gi * gi;
      w[i] -= cfg_.lr * (m_[k][i] / bc1) / (std::sqrt(v_[k][i] / bc2) + cfg_.eps);
    }
  }
  store_.zero_grad();
  return norm;
}

}  // namespace arl::nn
