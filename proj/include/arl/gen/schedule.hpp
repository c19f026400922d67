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

#include "arl/nn/tensor.hpp"
#include "arl/scene/rng.hpp"

#include <vector>

namespace arl::gen {

// Discrete DDPM noise schedule over t = 1..T; alpha_bar(0) = 1.
class DiffusionSchedule {
 public:
  explicit DiffusionSchedule(std::vector<double> betas);

  // Linear betas. For T != 1000 both ends are scaled by 1000 / T (capped
  // below 1) so that alpha_bar(T) stays near zero at short schedules.
  static DiffusionSchedule linear(int steps, double beta_start = 1e-4, double beta_end = 2e-2);

  int steps() const { return static_cast<int>(betas_.size()); }
  double beta(int t) const;
  double alpha(int t) const { return 1.0 - beta(t); }
  double alpha_bar(int t) const;
  const std::vector<double>& betas() const { return betas_; }

 private:
  std::vector<double> betas_;
  std::vector<double> alpha_bar_;  // index 0..T
};

struct NMConfig {
  int n_max = 0;
};

// sqrt(ab) * z0 + sqrt(1 - ab) * eps with exact endpoints.
nn::Tensor forward_noise(const nn::Tensor& z0, double alpha_bar, const nn::Tensor& eps);
nn::Tensor forward_noise(const nn::Tensor& z0, int t, const nn::Tensor& eps, const DiffusionSchedule& sched);

// Draws n ~ U{0..n_max} and eps ~ N(0, 1), returns forward_noise(cond, n, eps).
// The drawn level is written to `level` when given.
nn::Tensor noise_modulate(const nn::Tensor& cond, Rng& rng, const NMConfig& nm, const DiffusionSchedule& sched,
                          int* level = nullptr);

}  // namespace arl::gen
