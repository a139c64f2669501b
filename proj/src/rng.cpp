// Copyright 2026 The Authors.
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

#include "nonsubmax/rng.hpp"

#include <cmath>
#include <numbers>

#include "nonsubmax/errors.hpp"

namespace nonsubmax {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix(seed + kGamma);
  for (std::uint64_t id : path) key = mix(key ^ (id + kGamma));
  return SplitMix64(key);
}

std::uint64_t SplitMix64::next() {
  state_ += kGamma;
  return mix(state_);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::normal() {
  double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double SplitMix64::exponential(double rate) {
  if (rate <= 0) throw InvalidInputError("exponential rate must be positive");
  return -std::log1p(-uniform()) / rate;
}

int SplitMix64::uniform_int(int lo, int hi) {
  if (lo > hi) throw InvalidInputError("uniform_int range is empty");
  std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  return lo + static_cast<int>(next() % span);
}

}  // namespace nonsubmax
