#include "tempodia/flow.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace tempodia {

std::size_t FlowTrace::reached_count() const {
    return static_cast<std::size_t>(
        std::count_if(arrival.begin(), arrival.end(), [](Step a) { return a != kUnreached; }));
}

FlowTrace propagate(const TemporalGraph &g, NodeId source) {
    const std::size_t n = g.n_nodes();
    if (source >= n)
        throw std::out_of_range("source " + std::to_string(source) + " out of range");

    FlowTrace trace;
    trace.source = source;
    trace.arrival.assign(n, kUnreached);
    trace.predecessor.assign(n, source);
    trace.arrival[source] = 0;
    trace.new_per_step.emplace_back(); // step 0: only the source

    std::size_t reached = 1;
    Step t = 1;
    for (; t < g.horizon() && reached < n; ++t) {
        auto &fresh = trace.new_per_step.emplace_back();
        for (const auto &e : g.events_at(t)) {
            // Nodes reached during step t carry arrival t, so the `< t` guard
            // already blocks same-step relays.
            const Step au = trace.arrival[e.u];
            const Step av = trace.arrival[e.v];
            if (au != kUnreached && au < t && av == kUnreached) {
                trace.arrival[e.v] = t;
                trace.predecessor[e.v] = e.u;
                fresh.push_back(e.v);
            } else if (av != kUnreached && av < t && au == kUnreached) {
                trace.arrival[e.u] = t;
                trace.predecessor[e.u] = e.v;
                fresh.push_back(e.u);
            }
        }
        std::sort(fresh.begin(), fresh.end());
        reached += fresh.size();
    }
    trace.horizon_used = t;
    return trace;
}

std::optional<Step> shortest_arrival(const FlowTrace &trace, NodeId target) {
    if (target >= trace.arrival.size())
        throw std::out_of_range("target " + std::to_string(target) + " out of range");
    return trace.arrival_of(target);
}

std::vector<FlowTrace> propagate_all(const TemporalGraph &g, unsigned jobs) {
    std::vector<FlowTrace> traces(g.n_nodes());
    detail::parallel_for(traces.size(), jobs,
                         [&](std::size_t s) { traces[s] = propagate(g, static_cast<NodeId>(s)); });
    return traces;
}

ArrivalProfile profile_of(const FlowTrace &trace) {
    ArrivalProfile p;
    p.source = trace.source;
    for (std::size_t t = 1; t < trace.new_per_step.size(); ++t)
        if (!trace.new_per_step[t].empty())
            p.new_counts.emplace_back(static_cast<Step>(t), trace.new_per_step[t].size());
    return p;
}

namespace {

// Static connected-component size of every node; a flow never leaves its component.
std::vector<std::size_t> component_sizes(const TemporalGraph &g) {
    const std::size_t n = g.n_nodes();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto &e : g.events()) {
        const auto a = find(e.u), b = find(e.v);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> size(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        ++size[find(i)];
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = size[find(i)];
    return out;
}

constexpr std::size_t kBatch = 64;

void run_batch(const TemporalGraph &g, std::size_t first, const std::vector<std::size_t> &component,
               std::span<ArrivalProfile> out) {
    const std::size_t n = g.n_nodes();
    const std::size_t width = out.size();

    std::vector<std::uint64_t> reached(n, 0), pending(n, 0);
    std::vector<NodeId> touched;
    std::array<std::size_t, kBatch> step_count{};
    std::array<std::size_t, kBatch> total{};
    std::uint64_t unfinished = 0;

    for (std::size_t b = 0; b < width; ++b) {
        const auto src = static_cast<NodeId>(first + b);
        out[b].source = src;
        reached[src] |= std::uint64_t{1} << b;
        total[b] = 1;
        if (component[src] > 1)
            unfinished |= std::uint64_t{1} << b;
    }

    for (Step t = 1; t < g.horizon() && unfinished != 0; ++t) {
        for (const auto &e : g.events_at(t)) {
            const std::uint64_t to_v = reached[e.u] & ~reached[e.v];
            const std::uint64_t to_u = reached[e.v] & ~reached[e.u];
            if (to_v) {
                if (pending[e.v] == 0)
                    touched.push_back(e.v);
                pending[e.v] |= to_v;
            }
            if (to_u) {
                if (pending[e.u] == 0)
                    touched.push_back(e.u);
                pending[e.u] |= to_u;
            }
        }
        if (touched.empty())
            continue;
        std::uint64_t stepped = 0;
        for (auto w : touched) {
            std::uint64_t bits = pending[w];
            reached[w] |= bits;
            pending[w] = 0;
            stepped |= bits;
            while (bits) {
                ++step_count[static_cast<std::size_t>(std::countr_zero(bits))];
                bits &= bits - 1;
            }
        }
        touched.clear();
        while (stepped) {
            const auto b = static_cast<std::size_t>(std::countr_zero(stepped));
            stepped &= stepped - 1;
            out[b].new_counts.emplace_back(t, step_count[b]);
            total[b] += step_count[b];
            step_count[b] = 0;
            if (total[b] == component[first + b])
                unfinished &= ~(std::uint64_t{1} << b);
        }
    }
}

} // namespace

std::vector<ArrivalProfile> arrival_profiles(const TemporalGraph &g, unsigned jobs) {
    const std::size_t n = g.n_nodes();
    std::vector<ArrivalProfile> profiles(n);
    if (n == 0)
        return profiles;
    const auto component = component_sizes(g);
    const std::size_t batches = (n + kBatch - 1) / kBatch;
    detail::parallel_for(batches, jobs, [&](std::size_t i) {
        const std::size_t first = i * kBatch;
        const std::size_t width = std::min(kBatch, n - first);
        run_batch(g, first, component, std::span<ArrivalProfile>(profiles).subspan(first, width));
    });
    return profiles;
}

} // namespace tempodia
