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
//
// Complex baseband model for one multi-antenna base station (BS), three
// reflective surfaces (RIS) with per-element phase control, and a
// single-antenna mobile station (MS). Four links are modeled: the direct
// BS-MS link and one two-hop link through each RIS. All arrays are uniform
// linear arrays; a link contributes an amplitude path loss, a carrier phase
// from its propagation delay, and array steering phases on each side.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "risloc/geometry.hpp"
#include "risloc/rng.hpp"

namespace risloc {

using Complex = std::complex<double>;

// ---------------------------------------------------------------- profiles

/// Every element applies the same phase.
struct UniformPhase {
  double value = 0.0;
  bool operator==(const UniformPhase&) const = default;
};

/// Element t (0-based) applies phase t * step; equivalent to steering the
/// reflected beam.
struct LinearRamp {
  double step = 0.0;
  bool operator==(const LinearRamp&) const = default;
};

/// One explicit phase per element.
struct ExplicitPhases {
  std::vector<double> phases;
  bool operator==(const ExplicitPhases&) const = default;
};

using PhaseProfile = std::variant<UniformPhase, LinearRamp, ExplicitPhases>;

/// Phase applied by element t (0-based) under the given profile.
double profile_phase(const PhaseProfile& profile, std::size_t t);

// ------------------------------------------------------------------- links

/// Parameters of one physical link between two arrays.
struct LinkParams {
  double rho = 1.0;        // amplitude path loss
  double tau = 0.0;        // propagation delay, s
  double aoa_phi = 0.0;    // arrival angle at the receiving array, rad
  double aod_theta = 0.0;  // departure angle at the transmitting array, rad
  double k_tx = 0.0;       // 2*pi*spacing/lambda at the transmitting array
  double k_rx = 0.0;       // 2*pi*spacing/lambda at the receiving array
};

/// Receive steering vector: entry i is e^{j i k cos(angle)} (0-based).
std::vector<Complex> steering(std::size_t n_elems, double k, double angle_rad);

/// Dense row-major complex matrix, sized for small array dimensions.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Complex& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Complex& at(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
};

/// BS-to-RIS channel, n_ris x n_bs, entry (m, n) =
/// rho e^{-j2 pi f tau} e^{j(m k_rx cos(phi) - n k_tx cos(theta))}.
ComplexMatrix channel_bs_ris(const LinkParams& p, std::size_t n_ris,
                             std::size_t n_bs, double carrier_freq_hz);

/// RIS-to-MS channel row, 1 x n_ris; the single-antenna receive side
/// contributes no steering phase.
std::vector<Complex> channel_ris_ms(const LinkParams& p, std::size_t n_ris,
                                    double carrier_freq_hz);

/// Direct BS-to-MS channel row, 1 x n_bs.
std::vector<Complex> channel_bs_ms(const LinkParams& p, std::size_t n_bs,
                                   double carrier_freq_hz);

/// Diagonal of the RIS phase control matrix: entries e^{j omega_t}.
/// Throws std::invalid_argument when an explicit profile length != n_ris.
std::vector<Complex> omega_matrix(const PhaseProfile& profile,
                                  std::size_t n_ris);

/// Two-hop channel row h_ris_ms * diag(omega) * h_bs_ris, 1 x n_bs.
/// Throws std::invalid_argument on dimension mismatch.
std::vector<Complex> cascade(const std::vector<Complex>& h_ris_ms,
                             const std::vector<Complex>& omega_diag,
                             const ComplexMatrix& h_bs_ris);

/// sum_{t=0}^{n-1} e^{j t step}, evaluated in the numerically stable
/// Dirichlet form e^{j(n-1)u/2} sin(n u/2)/sin(u/2) with u reduced to
/// (-pi, pi]; the removable singularity at u = 0 returns n exactly.
Complex geometric_phase_sum(double step_rad, std::size_t n);

/// Array gain of an n_ris-element RIS under a linear ramp:
/// sum_t e^{j t [k (cos(phi_bs_ris) - cos(theta_ris_ms)) + rho_step]}.
/// Magnitude peaks at n_ris when the bracket vanishes modulo 2*pi.
Complex lambda_closed_form(double rho_step, double k, double phi_bs_ris,
                           double theta_ris_ms, std::size_t n_ris);

/// BS departure sum over n_bs antennas: sum_t e^{-j t k cos(theta_bs_ris)}.
Complex xi(std::size_t n_bs, double k, double theta_bs_ris);

// ------------------------------------------------------------------- scene

enum class AngleMode {
  explicit_angles,  // angles are configuration inputs
  derived,          // cos(angle) from array axes and node positions
};

/// Node placement and propagation constants; ground truth for the simulator.
struct ScenarioGeometry {
  Position3 bs;
  std::array<Position3, 3> ris;
  Position3 ms_true;
  double carrier_freq_hz = 2.0e9;
  double bs_spacing_m = 0.0;                    // 0 = lambda/4
  std::array<double, 3> ris_spacing_m{};        // 0 = lambda/4
  double mu = 2.0;                              // path loss exponent
};

/// Full simulation scene: geometry plus array sizes, pilot, and link angles.
struct Scene {
  ScenarioGeometry geometry;
  std::size_t n_bs = 20;
  std::array<std::size_t, 3> n_ris{100, 100, 100};
  Complex pilot{1.0, 0.0};   // every BS antenna transmits this value
  double ms_height_m = 0.0;  // known height plane of the MS

  AngleMode angle_mode = AngleMode::explicit_angles;
  std::array<double, 3> aoa_bs_ris{};   // arrival at RIS g from the BS
  std::array<double, 3> aod_bs_ris{};   // departure at the BS toward RIS g
  std::array<double, 3> aod_ris_ms{};   // departure at RIS g toward the MS
  double aod_bs_ms = 0.0;               // departure at the BS toward the MS

  // Array orientations, used only in derived angle mode.
  std::array<double, 3> bs_axis{1.0, 0.0, 0.0};
  std::array<std::array<double, 3>, 3> ris_axis{
      {{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}};

  double wavelength() const;
  double bs_spacing() const;                  // resolves the lambda/4 default
  double ris_spacing(std::size_t g) const;
  double k_bs() const;                        // 2*pi*d/lambda at the BS
  double k_ris(std::size_t g) const;

  /// The reference evaluation scene: BS at (0,0,10), RISs at (30,20,20),
  /// (20,40,20), (40,40,20), MS at (60,20,0), 2 GHz, quarter-wave spacing,
  /// mu = 2, 20 BS antennas, 100 elements per RIS.
  static Scene reference();
};

/// Validation issues, one message per violated constraint, each naming the
/// offending field. Empty means the scene is usable.
std::vector<std::string> scene_errors(const Scene& scene);

/// All four link parameter sets of a scene.
struct LinkSet {
  LinkParams bs_ms;
  std::array<LinkParams, 3> bs_ris;
  std::array<LinkParams, 3> ris_ms;
};

LinkSet make_links(const Scene& scene);

/// Total 1 x n_bs channel: direct row plus the three cascades. Built from
/// the full per-link matrices; this is the reference route.
std::vector<Complex> total_channel(const LinkSet& links, std::size_t n_bs,
                                   const std::array<std::size_t, 3>& n_ris,
                                   double carrier_freq_hz,
                                   const std::array<PhaseProfile, 3>& profiles);

/// One noisy reception: h * pilot + n, with n drawn circularly symmetric of
/// total variance sigma^2 (sigma = 0 adds nothing and draws nothing).
Complex receive(const std::vector<Complex>& h_row,
                const std::vector<Complex>& pilot, double sigma,
                NoiseStream& noise);

/// Precomputed per-scene channel evaluator. The factored route costs O(1)
/// per slot for uniform and ramp profiles and matches the matrix route to
/// floating-point accuracy.
class ChannelSimulator {
 public:
  /// Throws std::invalid_argument when scene_errors() is non-empty.
  explicit ChannelSimulator(Scene scene);

  const Scene& scene() const { return scene_; }
  const LinkSet& links() const { return links_; }

  /// Reference route: assembles the full channel row.
  std::vector<Complex> total_channel(
      const std::array<PhaseProfile, 3>& profiles) const;

  /// Factored route: the received value h * pilot without noise.
  Complex received_noiseless(const std::array<PhaseProfile, 3>& profiles) const;

  /// Factored route plus one noise draw of total variance sigma^2.
  Complex receive(const std::array<PhaseProfile, 3>& profiles, double sigma,
                  NoiseStream& noise) const;

 private:
  Scene scene_;
  LinkSet links_;
  Complex direct_term_;                      // direct row times pilot
  std::array<Complex, 3> cascade_prefactor_; // path loss, delays, pilot, xi
  std::array<double, 3> ramp_offset_;        // k (cos(phi) - cos(theta_ms))
};

}  // namespace risloc
