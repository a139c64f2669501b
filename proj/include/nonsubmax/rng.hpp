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

#ifndef NONSUBMAX_RNG_HPP_
#define NONSUBMAX_RNG_HPP_

#include <cstdint>
#include <initializer_list>

namespace nonsubmax {

// Counter-based generator (splitmix64): the output at position k is a pure
// function of (key, k), so streams derived from distinct key paths are
// independent of evaluation order and of each other. Every random draw in
// the benchmark harness goes through this class, which is what makes
// experiment CSVs byte-reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t key) : state_(key) {}

  // Derives an independent stream from a seed and a path of ids, e.g.
  // {sigma_index, trial}.
  static SplitMix64 stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

  std::uint64_t next();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Standard normal via Box-Muller (cosine branch only, so each call
  // consumes exactly two uniforms).
  double normal();

  double exponential(double rate);

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

 private:
  std::uint64_t state_;
};

}  // namespace nonsubmax

#endif  // NONSUBMAX_RNG_HPP_
