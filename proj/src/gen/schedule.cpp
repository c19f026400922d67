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

#include "arl/gen/schedule.hpp"

#include "arl/scene/errors.hpp"

#include <algorithm>
#include <cmath>

namespace arl::gen {

DiffusionSchedule::DiffusionSchedule(std::vector<double> betas) : betas_(std::move(betas)) {
  if (betas_.empty()) throw ValidationError("schedule needs at least one step");
  alpha_bar_.assign(betas_.size() + 1, 1.0);
  for (std::size_t i = 0; i < betas_.size(); ++i) {
    const double b = betas_[i];
    if (!(b > 0.0 && b < 1.0)) throw ValidationError("beta must lie in (0, 1)");
    alpha_bar_[i + 1] = alpha_bar_[i] * (1.0 - b);
  }
}

DiffusionSchedule DiffusionSchedule::linear(int steps, double beta_start, double beta_end) {
  if (steps <= 0) throw ValidationError("schedule step count must be positive");
  const double k = 1000.0 / steps;
  const double lo = std::min(beta_start * k, 0.999);
  const double hi = std::min(beta_end * k, 0.999);
  std::vector<double> betas(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double f = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    betas[static_cast<std::size_t>(i)] = lo + (hi - lo) * f;
  }
  return DiffusionSchedule(std::move(betas));
}

double DiffusionSchedule::beta(int t) const {
  if (t < 1 || t > steps()) throw ValidationError("timestep " + std::to_string(t) + " outside [1, T]");
  return betas_[static_cast<std::size_t>(t - 1)];
}

double DiffusionSchedule::alpha_bar(int t) const {
  if (t < 0 || t > steps()) throw ValidationError("timestep " + std::to_string(t) + " outside [0, T]");
  return alpha_bar_[static_cast<std::size_t>(t)];
}

nn::Tensor forward_noise(const nn::Tensor& z0, double alpha_bar, const nn::Tensor& eps) {
  if (z0.shape() != eps.shape()) throw ShapeError("noise shape " + nn::shape_str(eps.shape()) + " != latent shape " +
                                                  nn::shape_str(z0.shape()));
  if (!(alpha_bar >= 0.0 && alpha_bar <= 1.0)) throw ValidationError("alpha_bar outside [0, 1]");
  if (alpha_bar == 1.0) return z0;
  if (alpha_bar == 0.0) return eps;
  const double a = std::sqrt(alpha_bar);
  const double s = std::sqrt(1.0 - alpha_bar);
  nn::Tensor out(z0.shape());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * z0[i] + s * eps[i];
  return out;
}

nn::Tensor forward_noise(const nn::Tensor& z0, int t, const nn::Tensor& eps, const DiffusionSchedule& sched) {
  return forward_noise(z0, sched.alpha_bar(t), eps);
}

nn::Tensor noise_modulate(const nn::Tensor& cond, Rng& rng, const NMConfig& nm, const DiffusionSchedule& sched,
                          int* level) {
  if (nm.n_max < 0 || nm.n_max > sched.steps()) throw ValidationError("N_max outside [0, T]");
  const int n = nm.n_max == 0 ? 0 : rng.uniform_int(0, nm.n_max);
  if (level) *level = n;
  if (n == 0) return cond;
  nn::Tensor eps(cond.shape());
  for (auto& e : eps.values()) e = rng.normal();
  return forward_noise(cond, n, eps, sched);
}

}  // namespace arl::gen
