#include "tempodia/generator.hpp"

#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace tempodia {

namespace {

constexpr int kRewireAttemptsPerEdge = 2000;
constexpr int kStubRedraws = 20;

std::uint64_t edge_key(std::size_t a, std::size_t b) {
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

} // namespace

DegreeFamily parse_family(std::string_view name) {
    if (name == "normal")
        return DegreeFamily::normal;
    if (name == "pareto")
        return DegreeFamily::pareto;
    if (name == "poisson")
        return DegreeFamily::poisson;
    throw std::invalid_argument("unknown degree distribution '" + std::string(name) + "'");
}

std::string_view to_string(DegreeFamily family) {
    switch (family) {
    case DegreeFamily::normal:
        return "normal";
    case DegreeFamily::pareto:
        return "pareto";
    case DegreeFamily::poisson:
        return "poisson";
    }
    return "?";
}

DegreeFamily family_of(const DegreeDistribution &d) {
    return static_cast<DegreeFamily>(d.index());
}

DegreeDistribution default_distribution(DegreeFamily family, double k) {
    switch (family) {
    case DegreeFamily::normal:
        return NormalDegrees{k, k / 4.0};
    case DegreeFamily::pareto: {
        constexpr double shape = 2.5;
        return ParetoDegrees{shape, k * (shape - 1.0) / shape};
    }
    case DegreeFamily::poisson:
        return PoissonDegrees{k};
    }
    throw std::invalid_argument("unknown degree family");
}

double distribution_mean(const DegreeDistribution &d) {
    return std::visit(
        [](const auto &dist) -> double {
            using T = std::decay_t<decltype(dist)>;
            if constexpr (std::is_same_v<T, NormalDegrees>)
                return dist.mean;
            else if constexpr (std::is_same_v<T, ParetoDegrees>)
                return dist.shape > 1.0 ? dist.shape * dist.scale / (dist.shape - 1.0)
                                        : std::numeric_limits<double>::infinity();
            else
                return dist.rate;
        },
        d);
}

GeneratorConfig GeneratorConfig::make(DegreeFamily family, std::size_t n_nodes, double k, Step active_time,
                                      Step horizon, std::uint64_t seed) {
    GeneratorConfig c;
    c.n_nodes = n_nodes;
    c.distribution = default_distribution(family, k);
    c.target_avg_degree = k;
    c.active_time = active_time;
    c.horizon = horizon;
    c.seed = seed;
    return c;
}

void GeneratorConfig::validate() const {
    if (n_nodes < 2)
        throw std::invalid_argument("n_nodes must be >= 2");
    if (n_nodes > std::numeric_limits<NodeId>::max())
        throw std::invalid_argument("n_nodes too large");
    if (horizon < 1 || active_time < 1 || active_time > horizon)
        throw std::invalid_argument("need 1 <= zeta <= T (zeta=" + std::to_string(active_time) +
                                    ", T=" + std::to_string(horizon) + ")");
    if (!(target_avg_degree > 0.0) || !std::isfinite(target_avg_degree))
        throw std::invalid_argument("target average degree must be positive");
    std::visit(
        [](const auto &dist) {
            using T = std::decay_t<decltype(dist)>;
            if constexpr (std::is_same_v<T, NormalDegrees>) {
                if (!std::isfinite(dist.mean) || !(dist.stddev >= 0.0) || !std::isfinite(dist.stddev))
                    throw std::invalid_argument("normal: need finite mean and stddev >= 0");
            } else if constexpr (std::is_same_v<T, ParetoDegrees>) {
                if (!(dist.shape > 1.0) || !std::isfinite(dist.shape))
                    throw std::invalid_argument("pareto: shape must exceed 1 for a finite mean");
                if (!(dist.scale > 0.0) || !std::isfinite(dist.scale))
                    throw std::invalid_argument("pareto: scale must be positive");
            } else {
                if (!(dist.rate > 0.0) || !std::isfinite(dist.rate))
                    throw std::invalid_argument("poisson: rate must be positive");
            }
        },
        distribution);
}

std::map<std::string, std::string> GeneratorConfig::describe() const {
    using detail::format_number;
    std::map<std::string, std::string> m;
    m["generator.n_nodes"] = std::to_string(n_nodes);
    m["generator.distribution"] = std::string(to_string(family_of(distribution)));
    std::visit(
        [&](const auto &dist) {
            using T = std::decay_t<decltype(dist)>;
            if constexpr (std::is_same_v<T, NormalDegrees>) {
                m["generator.mean"] = format_number(dist.mean);
                m["generator.stddev"] = format_number(dist.stddev);
            } else if constexpr (std::is_same_v<T, ParetoDegrees>) {
                m["generator.shape"] = format_number(dist.shape);
                m["generator.scale"] = format_number(dist.scale);
            } else {
                m["generator.rate"] = format_number(dist.rate);
            }
        },
        distribution);
    m["generator.target_avg_degree"] = format_number(target_avg_degree);
    m["generator.active_time"] = std::to_string(active_time);
    m["generator.horizon"] = std::to_string(horizon);
    m["generator.seed"] = std::to_string(seed);
    m["generator.rng"] = std::string(Rng::algorithm);
    return m;
}

std::vector<std::size_t> draw_degree_sequence(const GeneratorConfig &config, Rng &rng) {
    const std::size_t n = config.n_nodes;
    const double hi = static_cast<double>(n - 1);
    std::vector<std::size_t> degrees(n);
    for (auto &d : degrees) {
        const double x = std::visit(
            [&](const auto &dist) -> double {
                using T = std::decay_t<decltype(dist)>;
                if constexpr (std::is_same_v<T, NormalDegrees>)
                    return rng.normal(dist.mean, dist.stddev);
                else if constexpr (std::is_same_v<T, ParetoDegrees>)
                    return rng.pareto(dist.shape, dist.scale);
                else
                    return static_cast<double>(rng.poisson(dist.rate));
            },
            config.distribution);
        d = static_cast<std::size_t>(std::clamp(std::round(x), 1.0, hi));
    }
    std::size_t sum = 0;
    for (auto d : degrees)
        sum += d;
    if (sum % 2 == 1) {
        std::vector<std::size_t> room;
        for (std::size_t i = 0; i < n; ++i)
            if (degrees[i] < n - 1)
                room.push_back(i);
        if (room.empty())
            throw GenerationError("cannot fix degree parity");
        ++degrees[room[rng.below(room.size())]];
    }
    return degrees;
}

namespace {

std::vector<std::pair<NodeId, NodeId>> configuration_model(const std::vector<std::size_t> &degrees, Rng &rng) {
    std::vector<NodeId> stubs;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        stubs.insert(stubs.end(), degrees[i], static_cast<NodeId>(i));

    for (int round = 0; round < kStubRedraws; ++round) {
        rng.shuffle(std::span<NodeId>(stubs));
        std::vector<std::pair<NodeId, NodeId>> edges;
        std::vector<std::pair<NodeId, NodeId>> bad;
        std::unordered_set<std::uint64_t> present;
        edges.reserve(stubs.size() / 2);
        present.reserve(stubs.size());
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            const NodeId a = stubs[i], b = stubs[i + 1];
            if (a == b || !present.insert(edge_key(a, b)).second)
                bad.emplace_back(a, b);
            else
                edges.emplace_back(a, b);
        }

        // Degree-preserving rewiring: (a,b) + (c,d) -> (a,c) + (b,d).
        bool ok = true;
        for (const auto &[a, b] : bad) {
            bool fixed = false;
            for (int attempt = 0; attempt < kRewireAttemptsPerEdge && !edges.empty(); ++attempt) {
                const auto j = static_cast<std::size_t>(rng.below(edges.size()));
                auto [c, d] = edges[j];
                if (rng.below(2) == 1)
                    std::swap(c, d);
                if (a == c || b == d)
                    continue;
                const auto k1 = edge_key(a, c), k2 = edge_key(b, d);
                if (k1 == k2 || present.count(k1) || present.count(k2))
                    continue;
                present.erase(edge_key(c, d));
                present.insert(k1);
                present.insert(k2);
                edges[j] = {a, c};
                edges.emplace_back(b, d);
                fixed = true;
                break;
            }
            if (!fixed) {
                ok = false;
                break;
            }
        }
        if (ok) {
            for (auto &e : edges)
                if (e.first > e.second)
                    std::swap(e.first, e.second);
            std::sort(edges.begin(), edges.end());
            return edges;
        }
    }
    throw GenerationError("degree sequence not realizable as a simple graph within the retry budget");
}

} // namespace

TemporalGraph generate(const GeneratorConfig &config) {
    config.validate();
    Rng rng(config.seed);
    const auto degrees = draw_degree_sequence(config, rng);
    const auto edges = configuration_model(degrees, rng);

    std::vector<ContactEvent> events;
    events.reserve(edges.size() * static_cast<std::size_t>(config.active_time));
    const auto horizon = static_cast<std::uint64_t>(config.horizon);
    const auto zeta = static_cast<std::uint64_t>(config.active_time);
    for (const auto &[u, v] : edges)
        for (auto t : rng.sample_without_replacement(horizon, zeta))
            events.push_back({static_cast<Step>(t), u, v});

    return TemporalGraph::from_events(config.n_nodes, std::move(events), config.horizon)
        .with_metadata(config.describe());
}

} // namespace tempodia
