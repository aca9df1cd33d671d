// Copyright 2026 The otlab authors
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

#ifndef OTLAB_RNG_HPP_
#define OTLAB_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <string>

// Counter-based random numbers: every variate is a pure function of
// (seed, stream tag, counters), so draws are reproducible regardless of
// evaluation order or thread count.

namespace otlab::rng {

inline constexpr const char* kGeneratorName = "splitmix64-boxmuller";

// Stream tags keep independent purposes on disjoint streams.
inline constexpr std::uint64_t kStreamCloud = 0x11c9dc5a6f2b9e01ULL;
inline constexpr std::uint64_t kStreamNoise = 0x5851f42d4c957f2dULL;
inline constexpr std::uint64_t kStreamInstance = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ b);
}

// Hash an arbitrary-length key of counters down to one word.
inline std::uint64_t key(std::uint64_t seed, std::uint64_t tag, std::uint64_t c0,
                         std::uint64_t c1 = 0, std::uint64_t c2 = 0, std::uint64_t c3 = 0) {
  std::uint64_t h = splitmix64(seed ^ tag);
  h = mix(h, c0);
  h = mix(h, c1);
  h = mix(h, c2);
  h = mix(h, c3);
  return h;
}

// Uniform in (0,1): 53 mantissa bits, offset by half an ulp so 0 and 1
// are never produced (safe for logs and Box-Muller).
inline double to_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform(std::uint64_t seed, std::uint64_t tag, std::uint64_t c0,
                      std::uint64_t c1 = 0, std::uint64_t c2 = 0, std::uint64_t c3 = 0) {
  return to_unit(key(seed, tag, c0, c1, c2, c3));
}

// Standard normal via Box-Muller on two derived uniforms.
inline double gaussian(std::uint64_t seed, std::uint64_t tag, std::uint64_t c0,
                       std::uint64_t c1 = 0, std::uint64_t c2 = 0, std::uint64_t c3 = 0) {
  std::uint64_t k = key(seed, tag, c0, c1, c2, c3);
  double u1 = to_unit(k);
  double u2 = to_unit(splitmix64(k ^ 0xd1b54a32d192ed03ULL));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace otlab::rng

#endif  // OTLAB_RNG_HPP_
