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

#include "risloc/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace risloc {

namespace {

Complex unit_phasor(double phase_rad) {
  return {std::cos(phase_rad), std::sin(phase_rad)};
}

/// Carrier phase factor e^{-j 2 pi f tau}.
Complex delay_phasor(double carrier_freq_hz, double tau_s) {
  return unit_phasor(-2.0 * M_PI * carrier_freq_hz * tau_s);
}

double dot3(const std::array<double, 3>& a, const Position3& v) {
  return a[0] * v.x + a[1] * v.y + a[2] * v.z;
}

double axis_norm(const std::array<double, 3>& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

/// Angle between an array axis and the line of sight from `from` toward
/// `to`, used when angles are derived from geometry.
double los_angle(const Position3& from, const Position3& to,
                 const std::array<double, 3>& axis) {
  Position3 d{to.x - from.x, to.y - from.y, to.z - from.z};
  double len = distance(from, to);
  double an = axis_norm(axis);
  double c = dot3(axis, d) / (len * an);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

}  // namespace

double profile_phase(const PhaseProfile& profile, std::size_t t) {
  if (const auto* u = std::get_if<UniformPhase>(&profile)) {
    return u->value;
  }
  if (const auto* r = std::get_if<LinearRamp>(&profile)) {
    return static_cast<double>(t) * r->step;
  }
  const auto& e = std::get<ExplicitPhases>(profile);
  if (t >= e.phases.size()) {
    throw std::invalid_argument("profile_phase: element index out of range");
  }
  return e.phases[t];
}

std::vector<Complex> steering(std::size_t n_elems, double k,
                              double angle_rad) {
  std::vector<Complex> v(n_elems);
  double step = k * std::cos(angle_rad);
  for (std::size_t i = 0; i < n_elems; ++i) {
    v[i] = unit_phasor(static_cast<double>(i) * step);
  }
  return v;
}

ComplexMatrix channel_bs_ris(const LinkParams& p, std::size_t n_ris,
                             std::size_t n_bs, double carrier_freq_hz) {
  ComplexMatrix h(n_ris, n_bs);
  Complex scale = p.rho * delay_phasor(carrier_freq_hz, p.tau);
  double rx_step = p.k_rx * std::cos(p.aoa_phi);
  double tx_step = p.k_tx * std::cos(p.aod_theta);
  for (std::size_t m = 0; m < n_ris; ++m) {
    Complex rx = unit_phasor(static_cast<double>(m) * rx_step);
    for (std::size_t n = 0; n < n_bs; ++n) {
      h.at(m, n) =
          scale * rx * unit_phasor(-(static_cast<double>(n) * tx_step));
    }
  }
  return h;
}

std::vector<Complex> channel_ris_ms(const LinkParams& p, std::size_t n_ris,
                                    double carrier_freq_hz) {
  std::vector<Complex> h(n_ris);
  Complex scale = p.rho * delay_phasor(carrier_freq_hz, p.tau);
  double tx_step = p.k_tx * std::cos(p.aod_theta);
  for (std::size_t t = 0; t < n_ris; ++t) {
    h[t] = scale * unit_phasor(-(static_cast<double>(t) * tx_step));
  }
  return h;
}

std::vector<Complex> channel_bs_ms(const LinkParams& p, std::size_t n_bs,
                                   double carrier_freq_hz) {
  std::vector<Complex> h(n_bs);
  Complex scale = p.rho * delay_phasor(carrier_freq_hz, p.tau);
  double tx_step = p.k_tx * std::cos(p.aod_theta);
  for (std::size_t t = 0; t < n_bs; ++t) {
    h[t] = scale * unit_phasor(-(static_cast<double>(t) * tx_step));
  }
  return h;
}

std::vector<Complex> omega_matrix(const PhaseProfile& profile,
                                  std::size_t n_ris) {
  if (const auto* e = std::get_if<ExplicitPhases>(&profile)) {
    if (e->phases.size() != n_ris) {
      throw std::invalid_argument(
          "omega_matrix: explicit profile length does not match element "
          "count");
    }
  }
  std::vector<Complex> d(n_ris);
  for (std::size_t t = 0; t < n_ris; ++t) {
    d[t] = unit_phasor(profile_phase(profile, t));
  }
  return d;
}

std::vector<Complex> cascade(const std::vector<Complex>& h_ris_ms,
                             const std::vector<Complex>& omega_diag,
                             const ComplexMatrix& h_bs_ris) {
  if (h_ris_ms.size() != omega_diag.size() ||
      omega_diag.size() != h_bs_ris.rows) {
    throw std::invalid_argument("cascade: dimension mismatch");
  }
  std::vector<Complex> row(h_bs_ris.cols, Complex{0.0, 0.0});
  for (std::size_t t = 0; t < h_bs_ris.rows; ++t) {
    Complex w = h_ris_ms[t] * omega_diag[t];
    for (std::size_t n = 0; n < h_bs_ris.cols; ++n) {
      row[n] += w * h_bs_ris.at(t, n);
    }
  }
  return row;
}

Complex geometric_phase_sum(double step_rad, std::size_t n) {
  if (n == 0) return {0.0, 0.0};
  // Dirichlet kernel form. The naive ratio (1-e^{jnu})/(1-e^{ju}) cancels
  // catastrophically near the peak, which is exactly where this function
  // gets evaluated; reducing u first keeps sin() arguments small and makes
  // the removable singularity an exact branch.
  double u = std::remainder(step_rad, 2.0 * M_PI);
  if (u == 0.0) return {static_cast<double>(n), 0.0};
  double half = 0.5 * u;
  double nn = static_cast<double>(n);
  double ratio = std::sin(nn * half) / std::sin(half);
  return ratio * unit_phasor((nn - 1.0) * half);
}

Complex lambda_closed_form(double rho_step, double k, double phi_bs_ris,
                           double theta_ris_ms, std::size_t n_ris) {
  double step = k * (std::cos(phi_bs_ris) - std::cos(theta_ris_ms)) + rho_step;
  return geometric_phase_sum(step, n_ris);
}

Complex xi(std::size_t n_bs, double k, double theta_bs_ris) {
  return geometric_phase_sum(-(k * std::cos(theta_bs_ris)), n_bs);
}

// ------------------------------------------------------------------- scene

double Scene::wavelength() const {
  return kSpeedOfLight / geometry.carrier_freq_hz;
}

double Scene::bs_spacing() const {
  return geometry.bs_spacing_m > 0.0 ? geometry.bs_spacing_m
                                     : wavelength() / 4.0;
}

double Scene::ris_spacing(std::size_t g) const {
  return geometry.ris_spacing_m[g] > 0.0 ? geometry.ris_spacing_m[g]
                                         : wavelength() / 4.0;
}

double Scene::k_bs() const { return 2.0 * M_PI * bs_spacing() / wavelength(); }

double Scene::k_ris(std::size_t g) const {
  return 2.0 * M_PI * ris_spacing(g) / wavelength();
}

Scene Scene::reference() {
  Scene s;
  s.geometry.bs = {0.0, 0.0, 10.0};
  s.geometry.ris = {Position3{30.0, 20.0, 20.0}, Position3{20.0, 40.0, 20.0},
                    Position3{40.0, 40.0, 20.0}};
  s.geometry.ms_true = {60.0, 20.0, 0.0};
  s.geometry.carrier_freq_hz = 2.0e9;
  s.geometry.mu = 2.0;
  s.n_bs = 20;
  s.n_ris = {100, 100, 100};
  s.pilot = {1.0, 0.0};
  s.ms_height_m = 0.0;
  s.angle_mode = AngleMode::explicit_angles;
  s.aoa_bs_ris = {M_PI / 6.0, M_PI / 3.0, M_PI / 4.0};
  s.aod_bs_ris = {M_PI / 6.0, M_PI / 3.0, M_PI / 4.0};
  s.aod_ris_ms = {M_PI / 6.0, M_PI / 3.0, M_PI / 4.0};
  s.aod_bs_ms = M_PI / 4.0;
  return s;
}

std::vector<std::string> scene_errors(const Scene& scene) {
  std::vector<std::string> errs;
  const auto& g = scene.geometry;

  if (!(g.carrier_freq_hz > 0.0)) {
    errs.push_back("scene.carrier_freq_hz: must be > 0");
  }
  if (!(g.mu > 0.0)) {
    errs.push_back("scene.mu: must be > 0");
  }
  if (g.bs_spacing_m < 0.0 || !std::isfinite(g.bs_spacing_m)) {
    errs.push_back("scene.bs_spacing_m: must be >= 0 (0 selects lambda/4)");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (g.ris_spacing_m[i] < 0.0 || !std::isfinite(g.ris_spacing_m[i])) {
      errs.push_back("scene.ris_spacing_m: entry " + std::to_string(i + 1) +
                     " must be >= 0 (0 selects lambda/4)");
    }
  }
  if (scene.n_bs < 1) {
    errs.push_back("scene.n_bs: must be >= 1");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (scene.n_ris[i] < 1) {
      errs.push_back("scene.n_ris: entry " + std::to_string(i + 1) +
                     " must be >= 1");
    }
  }
  if (!(std::abs(scene.pilot) > 0.0)) {
    errs.push_back("scene.pilot: must be nonzero");
  }
  if (!std::isfinite(scene.ms_height_m)) {
    errs.push_back("scene.ms_height_m: must be finite");
  }

  // Distinct node positions; every link needs a positive distance.
  for (std::size_t i = 0; i < 3; ++i) {
    if (distance(g.bs, g.ris[i]) <= 0.0) {
      errs.push_back("scene.ris" + std::to_string(i + 1) +
                     ": coincides with the BS position");
    }
    if (distance(g.ms_true, g.ris[i]) <= 0.0) {
      errs.push_back("scene.ris" + std::to_string(i + 1) +
                     ": coincides with the MS position");
    }
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (distance(g.ris[i], g.ris[j]) <= 0.0) {
        errs.push_back("scene.ris" + std::to_string(j + 1) +
                       ": duplicates ris" + std::to_string(i + 1));
      }
    }
  }
  if (distance(g.bs, g.ms_true) <= 0.0) {
    errs.push_back("scene.ms: coincides with the BS position");
  }

  // Trilateration needs horizontally non-collinear anchors.
  {
    double ax = g.ris[1].x - g.ris[0].x;
    double ay = g.ris[1].y - g.ris[0].y;
    double bx = g.ris[2].x - g.ris[0].x;
    double by = g.ris[2].y - g.ris[0].y;
    double cross = ax * by - ay * bx;
    double scale = std::abs(ax) + std::abs(ay) + std::abs(bx) + std::abs(by);
    if (std::abs(cross) <= 1e-12 * scale * scale) {
      errs.push_back("scene.ris: horizontal anchor positions are collinear");
    }
  }

  auto finite_angle = [&errs](double v, const std::string& key) {
    if (!std::isfinite(v)) {
      errs.push_back(key + ": must be finite");
    }
  };
  for (std::size_t i = 0; i < 3; ++i) {
    std::string n = std::to_string(i + 1);
    finite_angle(scene.aoa_bs_ris[i], "scene.aoa_bs_ris_rad entry " + n);
    finite_angle(scene.aod_bs_ris[i], "scene.aod_bs_ris_rad entry " + n);
    finite_angle(scene.aod_ris_ms[i], "scene.aod_ris_ms_rad entry " + n);
  }
  finite_angle(scene.aod_bs_ms, "scene.aod_bs_ms_rad");

  if (scene.angle_mode == AngleMode::derived) {
    if (axis_norm(scene.bs_axis) <= 0.0) {
      errs.push_back("scene.bs_axis: must have nonzero length");
    }
    for (std::size_t i = 0; i < 3; ++i) {
      if (axis_norm(scene.ris_axis[i]) <= 0.0) {
        errs.push_back("scene.ris" + std::to_string(i + 1) +
                       "_axis: must have nonzero length");
      }
    }
  }
  return errs;
}

LinkSet make_links(const Scene& scene) {
  const auto& g = scene.geometry;
  LinkSet links;
  bool derived = scene.angle_mode == AngleMode::derived;

  {
    double d = distance(g.bs, g.ms_true);
    links.bs_ms.rho = path_loss(d, g.mu);
    links.bs_ms.tau = propagation_delay(d);
    links.bs_ms.aod_theta = derived ? los_angle(g.bs, g.ms_true, scene.bs_axis)
                                    : scene.aod_bs_ms;
    links.bs_ms.aoa_phi = 0.0;  // single-antenna receive side
    links.bs_ms.k_tx = scene.k_bs();
    links.bs_ms.k_rx = 0.0;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    {
      double d = distance(g.bs, g.ris[i]);
      LinkParams& p = links.bs_ris[i];
      p.rho = path_loss(d, g.mu);
      p.tau = propagation_delay(d);
      p.aod_theta = derived ? los_angle(g.bs, g.ris[i], scene.bs_axis)
                            : scene.aod_bs_ris[i];
      p.aoa_phi = derived ? los_angle(g.ris[i], g.bs, scene.ris_axis[i])
                          : scene.aoa_bs_ris[i];
      p.k_tx = scene.k_bs();
      p.k_rx = scene.k_ris(i);
    }
    {
      double d = distance(g.ris[i], g.ms_true);
      LinkParams& p = links.ris_ms[i];
      p.rho = path_loss(d, g.mu);
      p.tau = propagation_delay(d);
      p.aod_theta = derived ? los_angle(g.ris[i], g.ms_true, scene.ris_axis[i])
                            : scene.aod_ris_ms[i];
      p.aoa_phi = 0.0;  // single-antenna receive side
      p.k_tx = scene.k_ris(i);
      p.k_rx = 0.0;
    }
  }
  return links;
}

std::vector<Complex> total_channel(
    const LinkSet& links, std::size_t n_bs,
    const std::array<std::size_t, 3>& n_ris, double carrier_freq_hz,
    const std::array<PhaseProfile, 3>& profiles) {
  std::vector<Complex> total = channel_bs_ms(links.bs_ms, n_bs,
                                             carrier_freq_hz);
  for (std::size_t g = 0; g < 3; ++g) {
    ComplexMatrix h_br =
        channel_bs_ris(links.bs_ris[g], n_ris[g], n_bs, carrier_freq_hz);
    std::vector<Complex> h_rm =
        channel_ris_ms(links.ris_ms[g], n_ris[g], carrier_freq_hz);
    std::vector<Complex> omega = omega_matrix(profiles[g], n_ris[g]);
    std::vector<Complex> casc = cascade(h_rm, omega, h_br);
    for (std::size_t n = 0; n < n_bs; ++n) {
      total[n] += casc[n];
    }
  }
  return total;
}

Complex receive(const std::vector<Complex>& h_row,
                const std::vector<Complex>& pilot, double sigma,
                NoiseStream& noise) {
  if (h_row.size() != pilot.size()) {
    throw std::invalid_argument("receive: pilot length mismatch");
  }
  Complex y{0.0, 0.0};
  for (std::size_t i = 0; i < h_row.size(); ++i) {
    y += h_row[i] * pilot[i];
  }
  if (sigma > 0.0) {
    y += sigma * noise.complex_normal();
  }
  return y;
}

// --------------------------------------------------------------- simulator

ChannelSimulator::ChannelSimulator(Scene scene) : scene_(std::move(scene)) {
  std::vector<std::string> errs = scene_errors(scene_);
  if (!errs.empty()) {
    std::ostringstream msg;
    msg << "invalid scene:";
    for (const auto& e : errs) msg << "\n  " << e;
    throw std::invalid_argument(msg.str());
  }
  links_ = make_links(scene_);

  const double f = scene_.geometry.carrier_freq_hz;
  direct_term_ = links_.bs_ms.rho * delay_phasor(f, links_.bs_ms.tau) *
                 scene_.pilot *
                 xi(scene_.n_bs, scene_.k_bs(), links_.bs_ms.aod_theta);
  for (std::size_t g = 0; g < 3; ++g) {
    const LinkParams& br = links_.bs_ris[g];
    const LinkParams& rm = links_.ris_ms[g];
    cascade_prefactor_[g] = br.rho * rm.rho *
                            delay_phasor(f, br.tau + rm.tau) * scene_.pilot *
                            xi(scene_.n_bs, scene_.k_bs(), br.aod_theta);
    ramp_offset_[g] =
        scene_.k_ris(g) * (std::cos(br.aoa_phi) - std::cos(rm.aod_theta));
  }
}

std::vector<Complex> ChannelSimulator::total_channel(
    const std::array<PhaseProfile, 3>& profiles) const {
  return risloc::total_channel(links_, scene_.n_bs, scene_.n_ris,
                               scene_.geometry.carrier_freq_hz, profiles);
}

Complex ChannelSimulator::received_noiseless(
    const std::array<PhaseProfile, 3>& profiles) const {
  Complex y = direct_term_;
  for (std::size_t g = 0; g < 3; ++g) {
    std::size_t n = scene_.n_ris[g];
    Complex gain;
    if (const auto* u = std::get_if<UniformPhase>(&profiles[g])) {
      gain = unit_phasor(u->value) * geometric_phase_sum(ramp_offset_[g], n);
    } else if (const auto* r = std::get_if<LinearRamp>(&profiles[g])) {
      gain = geometric_phase_sum(ramp_offset_[g] + r->step, n);
    } else {
      const auto& e = std::get<ExplicitPhases>(profiles[g]);
      if (e.phases.size() != n) {
        throw std::invalid_argument(
            "received_noiseless: explicit profile length does not match "
            "element count");
      }
      gain = {0.0, 0.0};
      for (std::size_t t = 0; t < n; ++t) {
        gain += unit_phasor(e.phases[t] +
                            static_cast<double>(t) * ramp_offset_[g]);
      }
    }
    y += cascade_prefactor_[g] * gain;
  }
  return y;
}

Complex ChannelSimulator::receive(const std::array<PhaseProfile, 3>& profiles,
                                  double sigma, NoiseStream& noise) const {
  Complex y = received_noiseless(profiles);
  if (sigma > 0.0) {
    y += sigma * noise.complex_normal();
  }
  return y;
}

}  // namespace risloc
