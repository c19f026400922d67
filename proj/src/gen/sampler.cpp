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

#include "arl/gen/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace arl::gen {

nn::Tensor sample_latent(const ConditionedDenoiser& model, const DiffusionSchedule& sched, const ConditionInputs& cond,
                         Rng& rng, double x0_clip) {
  nn::NoGradGuard guard;
  const Conditioning prepared = model.prepare(cond);
  const nn::Shape lat = model.latent_shape();
  const int b = cond.prev.dim(0);
  nn::Tensor x({b, lat[0], lat[1], lat[2]});
  for (auto& v : x.values()) v = rng.normal();
  for (int t = sched.steps(); t >= 1; --t) {
    const nn::Tensor eps = model.predict(prepared, nn::Var::constant(x), std::vector<int>(static_cast<std::size_t>(b), t)).value();
    const double ab = sched.alpha_bar(t);
    const double ab_prev = sched.alpha_bar(t - 1);
    const double beta = sched.beta(t);
    const double c0 = std::sqrt(ab_prev) * beta / (1.0 - ab);
    const double ct = std::sqrt(sched.alpha(t)) * (1.0 - ab_prev) / (1.0 - ab);
    const double sigma = t > 1 ? std::sqrt(beta * (1.0 - ab_prev) / (1.0 - ab)) : 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double x0 = std::clamp((x[i] - std::sqrt(1.0 - ab) * eps[i]) / std::sqrt(ab), -x0_clip, x0_clip);
      x[i] = c0 * x0 + ct * x[i];
    }
    if (t > 1) {
      for (auto& v : x.values()) v += sigma * rng.normal();
    }
  }
  return x;
}

}  // namespace arl::gen
