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

#include "arl/metrics/report.hpp"

#include "arl/metrics/chamfer.hpp"
#include "arl/metrics/ray_errors.hpp"
#include "arl/scene/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace arl::metrics {

std::string HorizonReport::table() const {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%10s %12s %10s %10s\n", "horizon_s", "cd_m2", "l1_m", "absrel_pct");
  out << line;
  for (const auto& r : rows) {
    const std::string l1 = r.l1 ? std::to_string(*r.l1) : "-";
    const std::string ar = r.absrel ? std::to_string(*r.absrel) : "-";
    std::snprintf(line, sizeof line, "%10.2f %12.6f %10s %10s\n", r.horizon_s, r.cd, l1.c_str(), ar.c_str());
    out << line;
  }
  return out.str();
}

std::string HorizonReport::jsonl() const {
  std::ostringstream out;
  for (const auto& r : rows) {
    nlohmann::json j{{"horizon", r.horizon_s}, {"cd", r.cd}};
    j["l1"] = r.l1 ? nlohmann::json(*r.l1) : nlohmann::json(nullptr);
    j["absrel"] = r.absrel ? nlohmann::json(*r.absrel) : nlohmann::json(nullptr);
    out << j.dump() << "\n";
  }
  return out.str();
}

HorizonReport eval_sequence(const std::vector<PointCloud>& gen, const std::vector<PointCloud>& gt, double cadence_s,
                            const std::vector<RangeImage>* gen_images, const std::vector<RangeImage>* gt_images) {
  if (gen.size() != gt.size()) {
    throw ValidationError("sequence lengths differ: " + std::to_string(gen.size()) + " vs " + std::to_string(gt.size()));
  }
  const bool rays = gen_images && gt_images;
  if (rays && (gen_images->size() != gen.size() || gt_images->size() != gen.size())) {
    throw ValidationError("image sequences do not match the cloud sequences");
  }
  if (!(cadence_s > 0.0)) throw ValidationError("cadence must be positive");
  HorizonReport rep;
  for (std::size_t i = 0; i < gen.size(); ++i) {
    HorizonRow row;
    row.horizon_s = static_cast<double>(i + 1) * cadence_s;
    row.cd = chamfer(gen[i], gt[i]);
    if (rays) {
      const RayErrors e = ray_errors((*gen_images)[i], (*gt_images)[i]);
      row.l1 = e.l1;
      row.absrel = e.absrel;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

HorizonReport mean_report(const std::vector<HorizonReport>& reports) {
  if (reports.empty()) throw ValidationError("no reports to average");
  HorizonReport out = reports.front();
  const double n = static_cast<double>(reports.size());
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    double cd = 0.0, l1 = 0.0, ar = 0.0;
    bool rays = true;
    for (const auto& r : reports) {
      if (r.rows.size() != out.rows.size() || r.rows[i].horizon_s != out.rows[i].horizon_s) {
        throw ValidationError("reports have different horizons");
      }
      cd += r.rows[i].cd;
      rays = rays && r.rows[i].l1.has_value();
      if (rays) {
        l1 += *r.rows[i].l1;
        ar += *r.rows[i].absrel;
      }
    }
    out.rows[i].cd = cd / n;
    if (rays) {
      out.rows[i].l1 = l1 / n;
      out.rows[i].absrel = ar / n;
    } else {
      out.rows[i].l1.reset();
      out.rows[i].absrel.reset();
    }
  }
  return out;
}

}  // namespace arl::metrics
