#pragma once
// Counter-based splittable RNG (SplitMix64 core).
//
// Every draw is mix64 of an advancing counter, so a stream is a pure
// function of its initial state: the same (master, replicate) pair gives
// bit-identical output on every platform. Replicate streams and per-layer
// substreams are derived with fork(), never by sharing state.

#include <cstdint>

namespace feuille {

struct Seed {
    std::uint64_t master = 0;
    std::uint64_t replicate = 0;
};

class Rng {
  public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    static Rng from(Seed s) {
        std::uint64_t h = mix64(s.master + 0x9e3779b97f4a7c15ull);
        h = mix64(h ^ mix64(s.replicate + 0xbf58476d1ce4e5b9ull));
        return Rng(h);
    }

    // Independent substream tagged by `tag`; does not advance this stream.
    Rng fork(std::uint64_t tag) const {
        return Rng(mix64(state_ ^ mix64(tag * 0x9e3779b97f4a7c15ull + 0x94d049bb133111ebull)));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    // Unbiased uniform draw in [0, bound) via masked rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> countl_zero_u64(bound - 1);
        for (;;) {
            std::uint64_t r = next() & mask;
            if (r < bound) return r;
        }
    }

    // Uniform spatial increment in {-1, 0, +1}.
    std::int64_t step3() { return static_cast<std::int64_t>(below(3)) - 1; }

  private:
    static int countl_zero_u64(std::uint64_t x) {
        int c = 0;
        for (std::uint64_t bit = std::uint64_t{1} << 63; bit; bit >>= 1) {
            if (x & bit) break;
            ++c;
        }
        return c;
    }

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

}  // namespace feuille
