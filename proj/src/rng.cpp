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
// SplitMix64 with a hand-rolled Box-Muller transform. The standard library
// distributions are implementation-defined, which would break byte-exact
// reproducibility across toolchains; these primitives are fully specified.

#include "risloc/rng.hpp"

#include <cmath>

namespace risloc {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t group,
                          std::uint64_t trial) {
  // Feed the inputs through the mixer sequentially; equal master seeds with
  // different (group, trial) pairs land in uncorrelated streams.
  std::uint64_t s = master_seed;
  std::uint64_t h = splitmix64_next(s);
  s ^= group + 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64_next(s);
  s ^= trial + 0xbf58476d1ce4e5b9ULL;
  h ^= splitmix64_next(s);
  return h;
}

double NoiseStream::uniform01() {
  // 53 random bits into [0, 1).
  return static_cast<double>(splitmix64_next(state_) >> 11) * 0x1.0p-53;
}

std::complex<double> NoiseStream::complex_normal() {
  // Box-Muller. u1 is mapped to (0, 1] so the log never sees zero. The
  // radius uses sqrt(-ln u1), not the usual sqrt(-2 ln u1): each quadrature
  // then has variance 1/2 and the complex sample has unit total variance.
  double u1 = 1.0 - uniform01();
  double u2 = uniform01();
  double r = std::sqrt(-std::log(u1));
  double a = 2.0 * M_PI * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace risloc
