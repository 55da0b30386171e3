#pragma once

#include "tempodia/flow.hpp"
#include "tempodia/random.hpp"
#include "tempodia/temporal_graph.hpp"

#include <algorithm>
#include <filesystem>
#include <unistd.h>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fixtures {

using namespace tempodia;

// v_i -> id i - 1
constexpr NodeId v(int i) { return static_cast<NodeId>(i - 1); }

// Nine nodes; the flow from v6 reaches {v2,v3} at 2, v1 at 3, {v4,v9} at 4,
// v8 at 5 and v5 at 6, and never reaches v7.
inline TemporalGraph nine_node() {
    std::vector<ContactEvent> events = {
        {2, v(6), v(2)}, {2, v(6), v(3)}, {3, v(2), v(1)}, {4, v(1), v(4)},
        {4, v(3), v(9)}, {5, v(9), v(8)}, {6, v(4), v(5)}, {1, v(5), v(7)},
    };
    return TemporalGraph::from_events(9, std::move(events));
}

inline TemporalGraph random_graph(Rng &rng, std::size_t max_n, Step max_t, double density) {
    const std::size_t n = 1 + rng.below(max_n);
    const Step horizon = 1 + static_cast<Step>(rng.below(static_cast<std::uint64_t>(max_t)));
    std::vector<ContactEvent> events;
    for (Step t = 0; t < horizon; ++t)
        for (NodeId a = 0; a < n; ++a)
            for (NodeId b = a + 1; b < n; ++b)
                if (rng.uniform01() < density)
                    events.push_back({t, a, b});
    return TemporalGraph::from_events(n, std::move(events), horizon);
}

// Earliest arrival by exhaustive enumeration of every event sequence whose
// times strictly increase, starting after step 0 at the source.
inline std::vector<std::optional<Step>> brute_force_arrivals(const TemporalGraph &g, NodeId source) {
    std::vector<std::optional<Step>> best(g.n_nodes());
    best[source] = 0;
    const auto events = g.events();
    std::function<void(NodeId, Step)> walk = [&](NodeId at, Step last) {
        for (const auto &e : events) {
            if (e.t <= last || (e.u != at && e.v != at))
                continue;
            const NodeId next = e.u == at ? e.v : e.u;
            if (!best[next] || e.t < *best[next])
                best[next] = e.t;
            walk(next, e.t);
        }
    };
    walk(source, 0);
    return best;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string &tag) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("tempodia_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string operator/(const std::string &name) const { return (path / name).string(); }
};

} // namespace fixtures
