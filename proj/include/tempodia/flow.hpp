#pragma once

#include "tempodia/temporal_graph.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace tempodia {

inline constexpr Step kUnreached = -1;

/// Result of spreading a flow from one source.
///
/// A node reached at step a forwards over its contacts at steps strictly
/// greater than a, so the source (arrival 0) first transmits at step 1 and
/// contacts at step 0 never carry the flow.
struct FlowTrace {
    NodeId source = 0;
    std::vector<Step> arrival;                  // kUnreached when never reached
    std::vector<NodeId> predecessor;            // meaningful only for reached non-source nodes
    std::vector<std::vector<NodeId>> new_per_step; // index t -> nodes first reached at t (sorted)
    Step horizon_used = 0;

    std::optional<Step> arrival_of(NodeId v) const {
        if (v >= arrival.size() || arrival[v] == kUnreached)
            return std::nullopt;
        return arrival[v];
    }
    std::size_t reached_count() const;
};

/// Compact per-source summary: (step, number of nodes first reached at that step)
/// for every step that reached at least one node, ascending.
struct ArrivalProfile {
    NodeId source = 0;
    std::vector<std::pair<Step, std::size_t>> new_counts;
};

/// Earliest-arrival flow from `source`. Runs steps 1..T-1 and stops early once
/// every node is reached. Throws std::out_of_range for a bad source.
FlowTrace propagate(const TemporalGraph &g, NodeId source);

/// d_T(source, target): arrival step, or empty when unreachable.
std::optional<Step> shortest_arrival(const FlowTrace &trace, NodeId target);

/// One trace per source, in source order. jobs == 0 uses every core.
std::vector<FlowTrace> propagate_all(const TemporalGraph &g, unsigned jobs = 1);

ArrivalProfile profile_of(const FlowTrace &trace);

/// Same flow semantics as propagate(), evaluated 64 sources at a time with
/// bitmasks. Used for whole-network metrics where full traces would not fit.
std::vector<ArrivalProfile> arrival_profiles(const TemporalGraph &g, unsigned jobs = 1);

} // namespace tempodia
