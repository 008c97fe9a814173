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

#include <complex>
#include <cstdint>

namespace risloc {

/// Advances a SplitMix64 state and returns the next output word.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Combines (master_seed, group, trial) into an independent per-trial seed.
/// The derivation is a pure function of its arguments, so results do not
/// depend on the order in which trials are executed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t group,
                          std::uint64_t trial);

/// Deterministic noise source. All draws are fully specified here (SplitMix64
/// words mapped through Box-Muller), so a given seed produces the same
/// sequence on every platform and in every run.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed) : state_(seed) {}

  /// Uniform double in [0, 1).
  double uniform01();

  /// Circularly symmetric complex Gaussian with unit total variance
  /// (variance 1/2 per quadrature). Consumes exactly two uniform draws.
  std::complex<double> complex_normal();

 private:
  std::uint64_t state_;
};

}  // namespace risloc
