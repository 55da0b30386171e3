#pragma once

#include "tempodia/flow.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tempodia {

/// Effective (~D), Peak (*D) and tau (tauD) diameters of one flow, in 0-based steps.
struct SourceDiameters {
    NodeId source = 0;
    Step effective = 0;        // latest arrival among reached nodes
    Step peak = 0;             // earliest step with the most newly reached nodes
    std::optional<Step> tau;   // first step where reached (source included) >= ceil(N/3)
    std::size_t reached_count = 1;

    friend bool operator==(const SourceDiameters &, const SourceDiameters &) = default;
};

/// How per-source values become network values.
///
///  paper_default: effective = max, tau = min, peak taken from the source
///                 attaining the minimal tau (lowest id on ties; falls back to
///                 max peak when no source reaches a third of the nodes)
///  max/min/mean:  applied uniformly to all three metrics, skipping absent taus
enum class Aggregation { paper_default, max, min, mean };

std::string_view to_string(Aggregation a);
/// Throws std::invalid_argument for unknown names.
Aggregation parse_aggregation(std::string_view name);

struct DiameterReport {
    std::vector<SourceDiameters> per_source;
    double effective_net = 0.0;
    double peak_net = 0.0;
    std::optional<double> tau_net;
    Aggregation aggregation = Aggregation::paper_default;
};

SourceDiameters source_diameters(const ArrivalProfile &profile, std::size_t n_nodes);
SourceDiameters source_diameters(const FlowTrace &trace, std::size_t n_nodes);

/// Throws std::invalid_argument on an empty list.
DiameterReport network_diameters(std::span<const SourceDiameters> per_source, Aggregation aggregation);
DiameterReport network_diameters(std::span<const FlowTrace> traces, std::size_t n_nodes,
                                 Aggregation aggregation = Aggregation::paper_default);

/// Flow from every node via arrival_profiles(); the usual entry point for whole graphs.
/// Throws std::invalid_argument for a graph without nodes.
DiameterReport network_diameters(const TemporalGraph &g, Aggregation aggregation = Aggregation::paper_default,
                                 unsigned jobs = 1);

} // namespace tempodia
