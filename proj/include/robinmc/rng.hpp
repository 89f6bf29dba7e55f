#pragma once

#include <cmath>
#include <cstdint>

namespace robinmc {

// xoshiro256++ with splitmix64 key derivation. Hand-rolled so that the
// stream for path i is a pure function of (seed, path, substream) and
// results are bit-identical across platforms and worker counts.
// Substream 0 carries the driving noise, substream 1 auxiliary variates
// (bridge uniforms, exponential clocks, initial-point draws); coupled
// runs that consume different amounts of auxiliary randomness therefore
// see identical Brownian increments.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t path, std::uint64_t substream) {
        std::uint64_t x = seed;
        x = mix(x + 0x9e3779b97f4a7c15ULL * (2 * path + 1));
        x = mix(x + 0x9e3779b97f4a7c15ULL * (2 * substream + 1));
        for (auto& w : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            w = mix(x);
        }
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform on [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform on (0,1), never returns an exact endpoint
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    // standard normal, Marsaglia polar with cached spare
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double fac = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * fac;
        has_spare_ = true;
        return u * fac;
    }

    // Exp(rate), strictly positive
    double exponential(double rate) { return -std::log(uniform_open()) / rate; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace robinmc
