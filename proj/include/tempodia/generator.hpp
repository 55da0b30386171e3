#pragma once

#include "tempodia/random.hpp"
#include "tempodia/temporal_graph.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tempodia {

struct NormalDegrees {
    double mean = 10.0;
    double stddev = 2.5;
};

struct ParetoDegrees {
    double shape = 2.5;
    double scale = 6.0; // minimum value x_m
};

struct PoissonDegrees {
    double rate = 10.0;
};

using DegreeDistribution = std::variant<NormalDegrees, ParetoDegrees, PoissonDegrees>;

enum class DegreeFamily { normal, pareto, poisson };

DegreeFamily parse_family(std::string_view name);
std::string_view to_string(DegreeFamily family);
DegreeFamily family_of(const DegreeDistribution &d);

/// Toolkit defaults for a target mean degree: normal(k, k/4), pareto(2.5, scale
/// giving mean k), poisson(k).
DegreeDistribution default_distribution(DegreeFamily family, double target_avg_degree);

/// Mean of the continuous family (infinite for pareto shape <= 1).
double distribution_mean(const DegreeDistribution &d);

class GenerationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct GeneratorConfig {
    std::size_t n_nodes = 500;
    DegreeDistribution distribution = NormalDegrees{};
    double target_avg_degree = 10.0;
    Step active_time = 10; // zeta
    Step horizon = 10;     // T
    std::uint64_t seed = 0;

    /// Config with the default distribution for `family` and mean `k`.
    static GeneratorConfig make(DegreeFamily family, std::size_t n_nodes, double k, Step active_time, Step horizon,
                                std::uint64_t seed);

    /// Throws std::invalid_argument naming the offending parameter.
    void validate() const;

    /// key/value echo recorded in the serialized graph header
    std::map<std::string, std::string> describe() const;
};

/// Draws a degree sequence (rounded, clamped to [1, N-1], parity fixed).
std::vector<std::size_t> draw_degree_sequence(const GeneratorConfig &config, Rng &rng);

/// Random temporal network: configuration-model static graph (no self-loops or
/// multi-edges), then every edge active at `active_time` distinct uniformly
/// chosen steps of [0, horizon). Deterministic in the config and seed.
TemporalGraph generate(const GeneratorConfig &config);

} // namespace tempodia
