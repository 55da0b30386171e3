#include "tempodia/diameters.hpp"

#include <algorithm>
#include <stdexcept>

namespace tempodia {

std::string_view to_string(Aggregation a) {
    switch (a) {
    case Aggregation::paper_default:
        return "paper-default";
    case Aggregation::max:
        return "max";
    case Aggregation::min:
        return "min";
    case Aggregation::mean:
        return "mean";
    }
    return "?";
}

Aggregation parse_aggregation(std::string_view name) {
    if (name == "paper-default" || name == "default")
        return Aggregation::paper_default;
    if (name == "max")
        return Aggregation::max;
    if (name == "min")
        return Aggregation::min;
    if (name == "mean")
        return Aggregation::mean;
    throw std::invalid_argument("unknown aggregation '" + std::string(name) + "'");
}

SourceDiameters source_diameters(const ArrivalProfile &profile, std::size_t n_nodes) {
    SourceDiameters d;
    d.source = profile.source;
    // ceil(N/3), counting the source itself
    const std::size_t threshold = (n_nodes + 2) / 3;
    std::size_t cumulative = 1;
    std::size_t best = 0;
    if (cumulative >= threshold)
        d.tau = 0;
    for (const auto &[t, count] : profile.new_counts) {
        if (count == 0)
            continue;
        cumulative += count;
        d.effective = t;
        if (count > best) {
            best = count;
            d.peak = t;
        }
        if (!d.tau && cumulative >= threshold)
            d.tau = t;
    }
    d.reached_count = cumulative;
    return d;
}

SourceDiameters source_diameters(const FlowTrace &trace, std::size_t n_nodes) {
    return source_diameters(profile_of(trace), n_nodes);
}

DiameterReport network_diameters(std::span<const SourceDiameters> per_source, Aggregation aggregation) {
    if (per_source.empty())
        throw std::invalid_argument("network_diameters: no sources");

    DiameterReport r;
    r.per_source.assign(per_source.begin(), per_source.end());
    r.aggregation = aggregation;

    std::vector<double> taus;
    for (const auto &s : per_source)
        if (s.tau)
            taus.push_back(static_cast<double>(*s.tau));

    auto fold = [&](auto &&metric, auto &&op) {
        double acc = metric(per_source.front());
        for (const auto &s : per_source.subspan(1))
            acc = op(acc, metric(s));
        return acc;
    };
    auto effective = [](const SourceDiameters &s) { return static_cast<double>(s.effective); };
    auto peak = [](const SourceDiameters &s) { return static_cast<double>(s.peak); };
    auto take_max = [](double a, double b) { return std::max(a, b); };
    auto take_min = [](double a, double b) { return std::min(a, b); };
    auto plus = [](double a, double b) { return a + b; };

    switch (aggregation) {
    case Aggregation::paper_default: {
        r.effective_net = fold(effective, take_max);
        const SourceDiameters *earliest = nullptr;
        for (const auto &s : per_source)
            if (s.tau && (!earliest || *s.tau < *earliest->tau))
                earliest = &s;
        if (earliest) {
            r.tau_net = static_cast<double>(*earliest->tau);
            r.peak_net = static_cast<double>(earliest->peak);
        } else {
            r.peak_net = fold(peak, take_max);
        }
        break;
    }
    case Aggregation::max:
        r.effective_net = fold(effective, take_max);
        r.peak_net = fold(peak, take_max);
        if (!taus.empty())
            r.tau_net = *std::max_element(taus.begin(), taus.end());
        break;
    case Aggregation::min:
        r.effective_net = fold(effective, take_min);
        r.peak_net = fold(peak, take_min);
        if (!taus.empty())
            r.tau_net = *std::min_element(taus.begin(), taus.end());
        break;
    case Aggregation::mean: {
        const double n = static_cast<double>(per_source.size());
        r.effective_net = fold(effective, plus) / n;
        r.peak_net = fold(peak, plus) / n;
        if (!taus.empty()) {
            double sum = 0.0;
            for (double t : taus)
                sum += t;
            r.tau_net = sum / static_cast<double>(taus.size());
        }
        break;
    }
    }
    return r;
}

DiameterReport network_diameters(std::span<const FlowTrace> traces, std::size_t n_nodes, Aggregation aggregation) {
    std::vector<SourceDiameters> per_source;
    per_source.reserve(traces.size());
    for (const auto &t : traces)
        per_source.push_back(source_diameters(t, n_nodes));
    return network_diameters(per_source, aggregation);
}

DiameterReport network_diameters(const TemporalGraph &g, Aggregation aggregation, unsigned jobs) {
    const auto profiles = arrival_profiles(g, jobs);
    std::vector<SourceDiameters> per_source;
    per_source.reserve(profiles.size());
    for (const auto &p : profiles)
        per_source.push_back(source_diameters(p, g.n_nodes()));
    return network_diameters(per_source, aggregation);
}

} // namespace tempodia
