#include "tempodia/random.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace tempodia {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("Rng::below: bound must be positive");
    // rejection on the top of the range keeps the draw unbiased
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit)
        x = engine_();
    return x % bound;
}

double Rng::normal(double mean, double stddev) {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return mean + stddev * spare_normal_;
    }
    // Marsaglia polar method
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    has_spare_normal_ = true;
    return mean + stddev * u * f;
}

std::int64_t Rng::poisson(double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("Rng::poisson: rate must be finite and non-negative");
    if (rate == 0.0)
        return 0;
    if (rate < 500.0) {
        // sequential inversion
        double p = std::exp(-rate);
        double cdf = p;
        const double u = uniform01();
        std::int64_t k = 0;
        while (u > cdf) {
            ++k;
            p *= rate / static_cast<double>(k);
            cdf += p;
            if (p == 0.0 && cdf < u)
                break; // tail exhausted by rounding
        }
        return k;
    }
    // large rates: normal approximation is plenty for degree sequences
    const double x = std::round(normal(rate, std::sqrt(rate)));
    return x < 0.0 ? 0 : static_cast<std::int64_t>(x);
}

double Rng::pareto(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("Rng::pareto: shape and scale must be positive");
    const double u = 1.0 - uniform01(); // (0, 1]
    return scale / std::pow(u, 1.0 / shape);
}

std::vector<std::uint64_t> Rng::sample_without_replacement(std::uint64_t population, std::uint64_t count) {
    if (count > population)
        throw std::invalid_argument("sample_without_replacement: count exceeds population");
    std::vector<std::uint64_t> out;
    out.reserve(count);
    if (count * 4 >= population) {
        std::vector<std::uint64_t> all(population);
        for (std::uint64_t i = 0; i < population; ++i)
            all[i] = i;
        // partial Fisher-Yates
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto j = i + below(population - i);
            std::swap(all[i], all[j]);
            out.push_back(all[i]);
        }
        return out;
    }
    // Floyd's algorithm for sparse draws
    std::unordered_set<std::uint64_t> chosen;
    for (std::uint64_t j = population - count; j < population; ++j) {
        const auto t = below(j + 1);
        if (chosen.insert(t).second)
            out.push_back(t);
        else {
            chosen.insert(j);
            out.push_back(j);
        }
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(base) ^ a) ^ (b * 0xd6e8feb86659fd93ULL));
}

} // namespace tempodia
