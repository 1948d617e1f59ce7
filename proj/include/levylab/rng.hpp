#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>

namespace levylab {

// SplitMix64 step; used for seeding and for deriving replica streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-derived stream seed: replica i of a run with base_seed gets an
// independent stream, identical whether replicas run serially or in parallel.
inline std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t replica) {
    std::uint64_t s = base_seed;
    std::uint64_t a = splitmix64(s);
    s ^= (replica + 0x9E3779B97F4A7C15ULL) * 0xD1342543DE82EF95ULL;
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x632BE59BD9B4E019ULL);
}

// xoshiro256++ with distribution helpers. Self-contained so that streams are
// reproducible independently of the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
        have_cached_normal_ = false;
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

    // U(0,1), never exactly 0 or 1.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // N(0,1) by the polar (Marsaglia) method with pair caching.
    double normal() {
        if (have_cached_normal_) {
            have_cached_normal_ = false;
            return cached_normal_;
        }
        double u, v, r2;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            r2 = u * u + v * v;
        } while (r2 >= 1.0 || r2 == 0.0);
        const double m = std::sqrt(-2.0 * std::log(r2) / r2);
        cached_normal_ = v * m;
        have_cached_normal_ = true;
        return u * m;
    }

    double exponential(double rate) {
        if (!(rate > 0.0)) throw std::invalid_argument("Rng::exponential: rate must be > 0");
        return -std::log(uniform()) / rate;
    }

    // Knuth product method, chunked so the running product never underflows.
    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0)) throw std::invalid_argument("Rng::poisson: mean must be >= 0");
        std::uint64_t count = 0;
        double remaining = mean;
        while (remaining > 0.0) {
            const double lambda = remaining > 500.0 ? 500.0 : remaining;
            remaining -= lambda;
            const double limit = std::exp(-lambda);
            double prod = uniform();
            while (prod > limit) {
                ++count;
                prod *= uniform();
            }
        }
        return count;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
    double cached_normal_{};
    bool have_cached_normal_{};
};

} // namespace levylab
