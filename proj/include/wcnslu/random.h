// include/wcnslu/random.h

// Copyright 2026  The wcnslu Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef WCNSLU_RANDOM_H_
#define WCNSLU_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace wcnslu {

// Seed for a named substream of a top-level seed, so that adding a consumer
// of randomness never perturbs the streams of existing consumers.
uint64_t DeriveSeed(uint64_t seed, std::string_view stream);

// Portable generator: the engine is std::mt19937_64, but the real-valued
// draws are computed here because the standard distributions are not
// bit-identical across library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  Rng(uint64_t seed, std::string_view stream) : engine_(DeriveSeed(seed, stream)) {}

  uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  double Normal();
  // Uniform integer in [0, n).
  size_t Index(size_t n);
  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename Container>
  void Shuffle(Container& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = Index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wcnslu

#endif  // WCNSLU_RANDOM_H_
