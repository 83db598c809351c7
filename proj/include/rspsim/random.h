// Copyright 2026 The rspsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RSPSIM_RANDOM_H
#define RSPSIM_RANDOM_H

#include <cstdint>
#include <random>

#include "rspsim/qstate.h"

namespace rspsim {

/// SplitMix64 finalizer. Used only to derive stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for sub-stream `index` of a run seeded with `seed`.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

/// A reproducible random stream.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Doubles are built from the top 53 bits of one engine output, so
/// the same seed gives the same draws on every conforming platform (unlike
/// std::uniform_real_distribution, whose algorithm is unspecified).
class RandomStream {
   public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {
    }

    /// Sub-stream `index` of `seed`; distinct indices give independent streams.
    static RandomStream substream(std::uint64_t seed, std::uint64_t index) {
        return RandomStream(derive_stream_seed(seed, index));
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t next_u64() {
        return engine_();
    }

   private:
    std::mt19937_64 engine_;
};

/// Haar-random pure state: theta = acos(1 - 2u), phi = 2 pi v.
PureQubit random_qubit(RandomStream &rng);
/// Uniform direction on the unit sphere.
BlochVector random_direction(RandomStream &rng);

}  // namespace rspsim

#endif
