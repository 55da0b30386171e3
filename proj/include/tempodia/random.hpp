#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace tempodia {

/// Seeded generator with platform-independent sampling.
///
/// The std:: distributions are implementation-defined, so every draw here is
/// derived from the raw 64-bit engine output. Fixtures depend on this staying put.
class Rng {
  public:
    static constexpr std::string_view algorithm = "mt19937_64/tempodia-sampling-v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    double normal(double mean, double stddev);
    std::int64_t poisson(double rate);
    /// Pareto type I with minimum `scale`.
    double pareto(double shape, double scale);

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    /// `count` distinct values from [0, population), in draw order.
    std::vector<std::uint64_t> sample_without_replacement(std::uint64_t population, std::uint64_t count);

  private:
    std::mt19937_64 engine_;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

/// Mixes a base seed with stream indices (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

} // namespace tempodia
