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

#include "arl/gen/checkpoint.hpp"

#include "arl/scene/binary_io.hpp"
#include "arl/scene/errors.hpp"

#include <fstream>
#include <map>

namespace arl::gen {

using nlohmann::json;

void write_checkpoint(std::ostream& out, const Checkpoint& ck) {
  binio::put_magic(out, "LGCK");
  binio::put_u32(out, Checkpoint::kVersion);
  const std::string manifest = ck.manifest.dump();
  binio::put_u32(out, static_cast<std::uint32_t>(manifest.size()));
  out.write(manifest.data(), static_cast<std::streamsize>(manifest.size()));
  binio::put_u32(out, static_cast<std::uint32_t>(ck.blobs.size()));
  for (const auto& b : ck.blobs) {
    if (b.name.size() > 0xFFFF) throw FormatError("blob name too long");
    if (nn::shape_numel(b.shape) != b.data.size()) throw ShapeError("blob " + b.name + " shape/data mismatch");
    binio::put_u16(out, static_cast<std::uint16_t>(b.name.size()));
    out.write(b.name.data(), static_cast<std::streamsize>(b.name.size()));
    binio::put_u32(out, static_cast<std::uint32_t>(b.shape.size()));
    for (int d : b.shape) binio::put_u32(out, static_cast<std::uint32_t>(d));
    for (float v : b.data) binio::put_f32(out, v);
  }
  if (!out) throw FormatError("checkpoint write failed");
}

Checkpoint read_checkpoint(std::istream& in) {
  binio::expect_magic(in, "LGCK");
  const std::uint32_t version = binio::get_u32(in, "checkpoint version");
  if (version != Checkpoint::kVersion) throw FormatError("unsupported checkpoint version " + std::to_string(version));
  Checkpoint ck;
  std::string manifest(binio::get_u32(in, "manifest length"), '\0');
  binio::read_exact(in, manifest.data(), manifest.size(), "manifest");
  try {
    ck.manifest = json::parse(manifest);
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint manifest: ") + e.what());
  }
  const std::uint32_t count = binio::get_u32(in, "blob count");
  for (std::uint32_t i = 0; i < count; ++i) {
    CheckpointBlob b;
    b.name.resize(binio::get_u16(in, "blob name length"));
    binio::read_exact(in, b.name.data(), b.name.size(), "blob name");
    const std::uint32_t rank = binio::get_u32(in, "blob rank");
    if (rank > 8) throw FormatError("blob " + b.name + " has implausible rank");
    for (std::uint32_t r = 0; r < rank; ++r) b.shape.push_back(static_cast<int>(binio::get_u32(in, "blob dim")));
    const std::size_t n = nn::shape_numel(b.shape);
    b.data.resize(n);
    for (std::size_t k = 0; k < n; ++k) b.data[k] = binio::get_f32(in, "blob data");
    ck.blobs.push_back(std::move(b));
  }
  return ck;
}

json model_config_to_json(const ModelConfig& cfg) {
  const auto& a = cfg.ae;
  const auto& d = cfg.denoiser;
  return json{
      {"ae",
       {{"height", a.height},
        {"width", a.width},
        {"latent_channels", a.latent_channels},
        {"base_channels", a.base_channels},
        {"kl_weight", a.kl_weight},
        {"empty_threshold", a.empty_threshold},
        {"r_max", a.norm.r_max}}},
      {"denoiser",
       {{"latent_channels", d.latent_channels},
        {"latent_h", d.latent_h},
        {"latent_w", d.latent_w},
        {"channels", d.channels},
        {"emb_dim", d.emb_dim},
        {"image_h", d.image_h},
        {"image_w", d.image_w},
        {"categories", d.masks.categories},
        {"patch_h", d.masks.patch_h},
        {"patch_w", d.masks.patch_w},
        {"token_dim", d.masks.token_dim}}},
      {"steps", cfg.steps},
      {"n_max", cfg.nm.n_max},
      {"seed", cfg.seed}};
}

ModelConfig model_config_from_json(const json& j) {
  try {
    ModelConfig cfg;
    const auto& a = j.at("ae");
    cfg.ae.height = a.at("height");
    cfg.ae.width = a.at("width");
    cfg.ae.latent_channels = a.at("latent_channels");
    cfg.ae.base_channels = a.at("base_channels");
    cfg.ae.kl_weight = a.at("kl_weight");
    cfg.ae.empty_threshold = a.at("empty_threshold");
    cfg.ae.norm.r_max = a.at("r_max");
    const auto& d = j.at("denoiser");
    cfg.denoiser.latent_channels = d.at("latent_channels");
    cfg.denoiser.latent_h = d.at("latent_h");
    cfg.denoiser.latent_w = d.at("latent_w");
    cfg.denoiser.channels = d.at("channels").get<std::vector<int>>();
    cfg.denoiser.emb_dim = d.at("emb_dim");
    cfg.denoiser.image_h = d.at("image_h");
    cfg.denoiser.image_w = d.at("image_w");
    cfg.denoiser.masks.categories = d.at("categories");
    cfg.denoiser.masks.patch_h = d.at("patch_h");
    cfg.denoiser.masks.patch_w = d.at("patch_w");
    cfg.denoiser.masks.token_dim = d.at("token_dim");
    cfg.steps = j.at("steps");
    cfg.nm.n_max = j.at("n_max");
    cfg.seed = j.at("seed");
    return cfg;
  } catch (const json::exception& e) {
    throw FormatError(std::string("model manifest: ") + e.what());
  }
}

namespace {

void export_params(const nn::ParamStore& store, std::vector<CheckpointBlob>& out) {
  for (const auto& p : store.params()) {
    CheckpointBlob b{p.name, p.var.shape(), {}};
    b.data.assign(p.var.value().values().begin(), p.var.value().values().end());
    out.push_back(std::move(b));
  }
}

void import_params(nn::ParamStore& store, const std::map<std::string, const CheckpointBlob*>& blobs) {
  for (auto& p : store.params()) {
    const auto it = blobs.find(p.name);
    if (it == blobs.end()) throw FormatError("checkpoint lacks parameter " + p.name);
    if (it->second->shape != p.var.shape()) {
      throw FormatError("parameter " + p.name + " has shape " + nn::shape_str(it->second->shape) + ", expected " +
                        nn::shape_str(p.var.shape()));
    }
    auto& dst = p.var.mutable_value().values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = it->second->data[i];
  }
}

}  // namespace

void save_model(const std::filesystem::path& path, const DiffusionModel& model) {
  Checkpoint ck;
  ck.manifest = {{"model", model_config_to_json(model.config())},
                 {"latent_mean", model.autoencoder().latent_mean()},
                 {"latent_std", model.autoencoder().latent_std()}};
  export_params(model.autoencoder().params(), ck.blobs);
  export_params(model.denoiser().params(), ck.blobs);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_checkpoint(out, ck);
}

std::unique_ptr<DiffusionModel> load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  const Checkpoint ck = read_checkpoint(in);
  auto model = std::make_unique<DiffusionModel>(model_config_from_json(ck.manifest.at("model")));
  std::map<std::string, const CheckpointBlob*> blobs;
  for (const auto& b : ck.blobs) blobs[b.name] = &b;
  import_params(model->autoencoder().params(), blobs);
  import_params(model->denoiser().params(), blobs);
  try {
    model->autoencoder().set_latent_stats(ck.manifest.at("latent_mean").get<std::vector<double>>(),
                                          ck.manifest.at("latent_std").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("latent statistics: ") + e.what());
  }
  return model;
}

}  // namespace arl::gen
