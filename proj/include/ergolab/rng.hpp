#pragma once

#include <cstdint>

namespace ergolab {

// Counter-based generator: value(i) depends only on (seed, stream, i), so
// parallel consumers draw from disjoint streams without sequencing.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    uint64_t bits(uint64_t counter) const {
        uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * (counter + 1) +
                     0xBF58476D1CE4E5B9ULL * (stream_ + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform(uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // uniform in [lo, hi)
    double uniform(uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }

    uint64_t index(uint64_t counter, uint64_t n) const { return bits(counter) % n; }

    CounterRng substream(uint64_t stream) const { return CounterRng(seed_, stream_ * 0x9E37u + stream + 1); }

    uint64_t seed() const { return seed_; }

  private:
    uint64_t seed_;
    uint64_t stream_;
};

}  // namespace ergolab
