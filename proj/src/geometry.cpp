// SPDX-License-Identifier: Apache-2.0
//
// ris-locate  RIS-assisted MISO localization simulator and estimator
// Copyright (C) 2026 ris-locate contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risloc/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace risloc {

double distance(const Position3& a, const Position3& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double path_loss(double dist_m, double mu) {
  if (!(dist_m > 0.0)) {
    throw std::domain_error("path_loss: distance must be > 0");
  }
  return std::pow(dist_m, -mu / 2.0);
}

double propagation_delay(double dist_m) {
  if (dist_m < 0.0) {
    throw std::domain_error("propagation_delay: distance must be >= 0");
  }
  return dist_m / kSpeedOfLight;
}

namespace {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

double norm2(const Vec2& v) { return std::hypot(v.x, v.y); }

/// Residual vector f_i = ||p - a_i|| - r_i and its squared norm.
double residual(const Vec2& p, const std::array<Vec2, 3>& anchors,
                const std::array<double, 3>& ranges,
                std::array<double, 3>* out) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    double fi =
        std::hypot(p.x - anchors[i].x, p.y - anchors[i].y) - ranges[i];
    if (out != nullptr) (*out)[i] = fi;
    s += fi * fi;
  }
  return s;
}

/// Linear initialization: subtracting the circle equation of anchor 0 from
/// anchors 1 and 2 leaves a 2x2 linear system in p.
Vec2 linear_init(const std::array<Vec2, 3>& a,
                 const std::array<double, 3>& r) {
  double a11 = 2.0 * (a[1].x - a[0].x);
  double a12 = 2.0 * (a[1].y - a[0].y);
  double a21 = 2.0 * (a[2].x - a[0].x);
  double a22 = 2.0 * (a[2].y - a[0].y);
  double b1 = r[0] * r[0] - r[1] * r[1] + a[1].x * a[1].x - a[0].x * a[0].x +
              a[1].y * a[1].y - a[0].y * a[0].y;
  double b2 = r[0] * r[0] - r[2] * r[2] + a[2].x * a[2].x - a[0].x * a[0].x +
              a[2].y * a[2].y - a[0].y * a[0].y;
  double det = a11 * a22 - a12 * a21;
  double scale = std::abs(a11) + std::abs(a12) + std::abs(a21) + std::abs(a22);
  if (std::abs(det) <= 1e-12 * scale * scale) {
    throw std::invalid_argument("trilaterate: anchors are collinear");
  }
  return {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a21 * b1) / det};
}

}  // namespace

TrilaterationResult trilaterate(const std::array<double, 3>& distances_m,
                                const std::array<Position3, 3>& anchors,
                                double ms_height_m) {
  TrilaterationResult out;

  // Reduce each 3-D anchor distance to a horizontal range in the known MS
  // height plane. Noise can push the measured distance below the pure
  // vertical separation; clamp and report.
  std::array<Vec2, 3> a2;
  std::array<double, 3> ranges;
  for (int i = 0; i < 3; ++i) {
    a2[i] = {anchors[i].x, anchors[i].y};
    double dz = anchors[i].z - ms_height_m;
    double rr = distances_m[i] * distances_m[i] - dz * dz;
    if (rr < 0.0) {
      rr = 0.0;
      out.clamped_range = true;
    }
    ranges[i] = std::sqrt(rr);
  }

  Vec2 p = linear_init(a2, ranges);
  std::array<double, 3> f{};
  double cost = residual(p, a2, ranges, &f);
  out.linear_residual_norm = std::sqrt(cost);

  // Damped Gauss-Newton on f_i = ||p - a_i|| - r_i. Backtracking keeps the
  // cost non-increasing, so the refined fix is never worse than the
  // linear one.
  constexpr int kMaxIters = 50;
  constexpr double kStepTol = 1e-9;
  int iter = 0;
  for (; iter < kMaxIters; ++iter) {
    // J_i = (p - a_i)^T / ||p - a_i||; accumulate the 2x2 normal equations.
    double jtj11 = 0.0, jtj12 = 0.0, jtj22 = 0.0, jtf1 = 0.0, jtf2 = 0.0;
    for (int i = 0; i < 3; ++i) {
      double dx = p.x - a2[i].x;
      double dy = p.y - a2[i].y;
      double dist = std::hypot(dx, dy);
      if (dist <= 1e-12) continue;  // at an anchor; no usable gradient row
      double jx = dx / dist;
      double jy = dy / dist;
      jtj11 += jx * jx;
      jtj12 += jx * jy;
      jtj22 += jy * jy;
      jtf1 += jx * f[i];
      jtf2 += jy * f[i];
    }
    double det = jtj11 * jtj22 - jtj12 * jtj12;
    if (std::abs(det) <= 1e-15) break;
    double step_x = -(jtf1 * jtj22 - jtf2 * jtj12) / det;
    double step_y = -(jtj11 * jtf2 - jtj12 * jtf1) / det;

    double lambda = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 20; ++bt) {
      Vec2 cand{p.x + lambda * step_x, p.y + lambda * step_y};
      std::array<double, 3> fc{};
      double cc = residual(cand, a2, ranges, &fc);
      if (cc <= cost) {
        p = cand;
        f = fc;
        cost = cc;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
    if (lambda * norm2({step_x, step_y}) < kStepTol) {
      ++iter;
      break;
    }
  }

  out.position = {p.x, p.y};
  out.residual_norm = std::sqrt(cost);
  out.iterations = iter;
  return out;
}

}  // namespace risloc
