#pragma once

// Counter-based random streams.  Every (seed, stream, substream) triple
// yields an independent deterministic sequence, so replica-parallel runs
// produce identical output regardless of scheduling.

#include <cstdint>

namespace soupfall {

class CounterRng {
public:
    using result_type = uint64_t;

    explicit CounterRng(uint64_t seed, uint64_t stream = 0, uint64_t substream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    result_type operator()();

    double uniform();                      // [0, 1)
    double uniform(double a, double b);    // [a, b)
    // Portable Poisson sampler (exponential-gap counting).
    uint64_t poisson(double mean);
    // Uniform integer in [0, n).
    uint64_t below(uint64_t n);

private:
    uint64_t state_;
};

}  // namespace soupfall
