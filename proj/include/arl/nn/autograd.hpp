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

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace arl::nn {

struct Node {
  Tensor value;
  Tensor grad;  // allocated on first accumulation
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> inputs;
  // Propagates this node's grad into its inputs.
  std::function<void(Node&)> backward;

  Tensor& grad_buffer();
};

// Handle to a graph node. Copies share the node.
class Var {
 public:
  Var() = default;

  static Var constant(Tensor t);
  static Var leaf(Tensor t);  // trainable: requires grad

  const Tensor& value() const { return node_->value; }
  Tensor& mutable_value() { return node_->value; }
  const Shape& shape() const { return node_->value.shape(); }
  bool requires_grad() const { return node_ && node_->requires_grad; }
  bool defined() const { return static_cast<bool>(node_); }

  // Gradient accumulated by backward(); zeros if none reached this node yet.
  const Tensor& grad() const { return node_->grad_buffer(); }
  void zero_grad();

  const std::shared_ptr<Node>& node() const { return node_; }

 private:
  friend Var make_op(Tensor value, std::vector<Var> inputs, std::function<void(Node&)> backward);
  std::shared_ptr<Node> node_;
};

// Builds an op result. The backward closure is dropped when no input
// requires grad or when gradient recording is disabled.
Var make_op(Tensor value, std::vector<Var> inputs, std::function<void(Node&)> backward);

// Reverse-mode sweep from a scalar root.
void backward(const Var& root);

bool grad_enabled();

class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

struct NamedParam {
  std::string name;
  Var var;
};

// Flat registry of a model's trainable tensors.
class ParamStore {
 public:
  Var add(const std::string& name, Tensor init);
  const std::vector<NamedParam>& params() const { return params_; }
  std::vector<NamedParam>& params() { return params_; }
  Var find(const std::string& name) const;
  std::size_t count() const;
  void zero_grad();

 private:
  std::vector<NamedParam> params_;
};

}  // namespace arl::nn
