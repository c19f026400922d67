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

#include "arl/gen/generator.hpp"

#include "arl/range/codec.hpp"
#include "arl/scene/errors.hpp"
#include "arl/scene/geometry.hpp"
#include "arl/sde/sde.hpp"

namespace arl::gen {

GeneratorContext build_context(const FrameRecord& prev_frame, const std::vector<BBox>& cur_boxes,
                               const EgoState& cur_ego, const ContextConfig& cfg) {
  const sde::SdeEstimate est = sde::sde_step(prev_frame, cur_boxes, cur_ego);
  GeneratorContext ctx;
  ctx.prev = project(prev_frame.cloud, cfg.beams, cfg.width, cfg.norm);
  ctx.fg = project(est.foreground, cfg.beams, cfg.width, cfg.norm);
  ctx.bg = project(est.background, cfg.beams, cfg.width, cfg.norm);
  ctx.masks_cur = cond::box_masks(cur_boxes, cfg.beams, cfg.width, cfg.categories, cfg.mask_step, cfg.norm);
  ctx.masks_prev = cond::box_masks(prev_frame.boxes, cfg.beams, cfg.width, cfg.categories, cfg.mask_step, cfg.norm);
  ctx.ego = cond::ego_feature(cur_ego);
  ctx.rel = cond::relpose_vector(compose_relative(prev_frame.ego, cur_ego));
  return ctx;
}

RangeImage SdeBaselineGenerator::generate(const GeneratorContext& ctx) const {
  return merge_nearest(ctx.fg, ctx.bg);
}

DiffusionGenerator::DiffusionGenerator(std::shared_ptr<const DiffusionModel> model) : model_(std::move(model)) {
  if (!model_) throw ValidationError("diffusion generator needs a model");
}

RangeImage DiffusionGenerator::generate(const GeneratorContext& ctx) const { return model_->sample(ctx); }

}  // namespace arl::gen
