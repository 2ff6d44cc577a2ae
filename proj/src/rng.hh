#ifndef OWCSIM_RNG_HH
#define OWCSIM_RNG_HH

// Deterministic randomness with stable cross-platform streams.  mt19937_64
// itself is pinned by the standard, but std::*_distribution sequences are
// implementation-defined, so uniforms and Gaussians are derived by hand.
// substream() gives independent per-sample streams (splitmix64 mixing) so
// Monte Carlo loops can be reordered or parallelized without changing any
// drawn value.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace owcsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1) with 53 random mantissa bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; uniform() == 0 is nudged away from
    // log(0).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        if (u1 <= 0.0)
            u1 = 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Independent stream for sample `index` of a run seeded with `seed`.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index)));
}

} // namespace owcsim

#endif
