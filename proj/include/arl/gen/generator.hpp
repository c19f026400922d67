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

#include "arl/gen/context.hpp"
#include "arl/gen/model.hpp"

#include <memory>
#include <string>

namespace arl::gen {

class Generator {
 public:
  virtual ~Generator() = default;
  virtual RangeImage generate(const GeneratorContext& ctx) const = 0;
  virtual std::string name() const = 0;
};

// Nearest-wins merge of the SDE foreground and background projections.
class SdeBaselineGenerator final : public Generator {
 public:
  RangeImage generate(const GeneratorContext& ctx) const override;
  std::string name() const override { return "sde-baseline"; }
};

class DiffusionGenerator final : public Generator {
 public:
  explicit DiffusionGenerator(std::shared_ptr<const DiffusionModel> model);
  RangeImage generate(const GeneratorContext& ctx) const override;
  std::string name() const override { return "diffusion"; }
  const DiffusionModel& model() const { return *model_; }

 private:
  std::shared_ptr<const DiffusionModel> model_;
};

}  // namespace arl::gen
