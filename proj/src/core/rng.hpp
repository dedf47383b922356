// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "core/bytes.hpp"

namespace intersnap {

/// Deterministic random stream. Same seed, same call sequence, same output,
/// on every platform: bounded draws use rejection sampling on the raw 64-bit
/// stream instead of std distributions, whose output is implementation-defined.
class DetRng {
public:
    explicit DetRng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    /// Uniform draw in [0, bound). bound must be > 0.
    uint64_t below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform draw in [lo, hi] inclusive.
    uint64_t range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

    bool chance(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 < p;
    }

    Bytes bytes(size_t n) {
        Bytes out(n);
        fill(out.data(), n);
        return out;
    }

    template <size_t N>
    std::array<uint8_t, N> array() {
        std::array<uint8_t, N> out;
        fill(out.data(), N);
        return out;
    }

    /// Derives an independent child stream; used so that subsystems do not
    /// perturb each other's draw sequences.
    DetRng fork(uint64_t label) { return DetRng(next_u64() ^ label * 0x9e3779b97f4a7c15ULL); }

private:
    void fill(uint8_t* out, size_t n) {
        size_t i = 0;
        while (i < n) {
            uint64_t v = engine_();
            for (int j = 0; j < 8 && i < n; ++j, ++i) {
                out[i] = static_cast<uint8_t>(v >> (j * 8));
            }
        }
    }

    std::mt19937_64 engine_;
};

}  // namespace intersnap
