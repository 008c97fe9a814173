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

#pragma once

#include <array>

namespace risloc {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct Position3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Position3&) const = default;
};

struct Position2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Position2&) const = default;
};

/// Euclidean distance between two nodes, meters.
double distance(const Position3& a, const Position3& b);

/// Free-space amplitude decay dist^(-mu/2), dimensionless.
/// Throws std::domain_error for dist <= 0.
double path_loss(double dist_m, double mu);

/// Propagation delay dist/c, seconds. Throws std::domain_error for dist < 0.
double propagation_delay(double dist_m);

struct TrilaterationResult {
  Position2 position;
  double residual_norm = 0.0;         // 2-D range residual norm at the estimate
  double linear_residual_norm = 0.0;  // same norm at the linear initialization
  bool clamped_range = false;  // a 3-D range was shorter than the anchor height
  int iterations = 0;
};

/// Planar position of a receiver at known height from its 3-D distances to
/// three anchors. Each distance is first reduced to a horizontal range (ranges
/// below the anchor height offset are clamped to zero and flagged), a linear
/// solve of the pairwise sphere differences initializes the estimate, and a
/// damped Gauss-Newton pass refines it against the 2-D range residuals. The
/// refinement never returns a residual norm above the initialization's.
/// Throws std::invalid_argument when the projected anchors are collinear or a
/// distance is negative.
TrilaterationResult trilaterate(const std::array<double, 3>& distances_m,
                                const std::array<Position3, 3>& anchors,
                                double ms_height_m);

}  // namespace risloc
