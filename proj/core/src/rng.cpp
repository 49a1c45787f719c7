#include "soupfall/rng.hpp"

#include <cmath>

namespace soupfall {

namespace {

uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(uint64_t seed, uint64_t stream, uint64_t substream) {
    // fold the triple into one state; each component passes through the
    // finalizer so nearby triples decorrelate
    uint64_t s = mix(seed + 0x9e3779b97f4a7c15ULL);
    s = mix(s ^ mix(stream + 0x6a09e667f3bcc909ULL));
    s = mix(s ^ mix(substream + 0xbb67ae8584caa73bULL));
    state_ = s;
}

CounterRng::result_type CounterRng::operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
}

double CounterRng::uniform() {
    // 53-bit mantissa, value in [0, 1)
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double a, double b) { return a + (b - a) * uniform(); }

uint64_t CounterRng::poisson(double mean) {
    if (!(mean > 0)) return 0;
    // exponential-gap counting; portable across platforms
    uint64_t k = 0;
    double acc = 0.0;
    for (;;) {
        double u = uniform();
        if (u <= 0) u = 0x1.0p-53;
        acc += -std::log(u);
        if (acc >= mean) return k;
        ++k;
    }
}

uint64_t CounterRng::below(uint64_t n) {
    if (n <= 1) return 0;
    // rejection to avoid modulo bias
    uint64_t limit = (~0ULL / n) * n;  // largest multiple of n below 2^64
    for (;;) {
        uint64_t v = (*this)();
        if (v < limit) return v % n;
    }
}

}  // namespace soupfall
