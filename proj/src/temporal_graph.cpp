#include "tempodia/temporal_graph.hpp"

#include "tempodia/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>
#include <string_view>
#include <unordered_map>

namespace tempodia {

namespace {

constexpr std::string_view kCanonicalTag = "# tempodia-graph";

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        if (i > start)
            out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t value = 0;
    const auto *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end)
        return std::nullopt;
    return value;
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

struct RawContact {
    std::int64_t ts;
    std::int64_t a;
    std::int64_t b;
    std::size_t line;
};

// Canonical files: header fields carry N, T and resolution; ids and steps are used verbatim.
TemporalGraph read_canonical(std::istream &in, std::string_view header, std::size_t header_line) {
    std::optional<std::int64_t> n_nodes, horizon, resolution;
    for (auto field : split_fields(header.substr(kCanonicalTag.size()))) {
        const auto eq = field.find('=');
        if (eq == std::string_view::npos)
            continue;
        const auto key = field.substr(0, eq);
        const auto value = parse_int(field.substr(eq + 1));
        if (key == "n_nodes")
            n_nodes = value;
        else if (key == "horizon")
            horizon = value;
        else if (key == "resolution")
            resolution = value;
    }
    if (!n_nodes || *n_nodes < 0 || !horizon || *horizon < 0)
        throw ParseError(header_line, "canonical header needs n_nodes= and horizon=");

    std::map<std::string, std::string> metadata;
    std::vector<ContactEvent> events;
    std::string line;
    std::size_t lineno = header_line;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (is_blank(view))
            continue;
        if (view.starts_with("# meta ")) {
            auto rest = view.substr(7);
            const auto sp = rest.find(' ');
            if (sp == std::string_view::npos)
                metadata.emplace(std::string(rest), "");
            else
                metadata.emplace(std::string(rest.substr(0, sp)), std::string(rest.substr(sp + 1)));
            continue;
        }
        if (view.front() == '#')
            continue;
        const auto fields = split_fields(view);
        if (fields.size() < 3)
            throw ParseError(lineno, "expected 3 fields");
        const auto t = parse_int(fields[0]), u = parse_int(fields[1]), v = parse_int(fields[2]);
        if (!t || !u || !v || *u < 0 || *v < 0 || *t < 0)
            throw ParseError(lineno, "malformed canonical contact");
        if (*u == *v)
            throw ParseError(lineno, "self-contact");
        if (*u >= *n_nodes || *v >= *n_nodes || *t >= *horizon)
            throw ParseError(lineno, "contact outside header bounds");
        events.push_back({*t, static_cast<NodeId>(*u), static_cast<NodeId>(*v)});
    }
    auto g = TemporalGraph::from_events(static_cast<std::size_t>(*n_nodes), std::move(events), *horizon,
                                        resolution);
    return g.with_metadata(std::move(metadata));
}

} // namespace

TemporalGraph TemporalGraph::from_events(std::size_t n_nodes, std::vector<ContactEvent> events,
                                         std::optional<Step> horizon,
                                         std::optional<std::int64_t> resolution_seconds) {
    if (resolution_seconds && *resolution_seconds <= 0)
        throw std::invalid_argument("resolution must be positive");
    Step max_t = -1;
    for (auto &e : events) {
        if (e.u == e.v)
            throw std::invalid_argument("self-contact on node " + std::to_string(e.u));
        if (e.t < 0)
            throw std::invalid_argument("negative step");
        if (e.u > e.v)
            std::swap(e.u, e.v);
        if (e.v >= n_nodes)
            throw std::invalid_argument("node id " + std::to_string(e.v) + " out of range");
        max_t = std::max(max_t, e.t);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    const Step h = horizon.value_or(max_t + 1);
    if (h < max_t + 1)
        throw std::invalid_argument("horizon does not cover all events");

    TemporalGraph g;
    g.n_nodes_ = n_nodes;
    g.horizon_ = h;
    g.resolution_ = resolution_seconds;
    g.events_ = std::move(events);
    g.step_offsets_.assign(static_cast<std::size_t>(h) + 1, 0);
    for (const auto &e : g.events_)
        ++g.step_offsets_[static_cast<std::size_t>(e.t) + 1];
    for (std::size_t i = 1; i < g.step_offsets_.size(); ++i)
        g.step_offsets_[i] += g.step_offsets_[i - 1];
    return g;
}

std::span<const ContactEvent> TemporalGraph::events_at(Step t) const {
    if (t < 0 || t >= horizon_)
        return {};
    const auto i = static_cast<std::size_t>(t);
    return std::span<const ContactEvent>(events_).subspan(step_offsets_[i], step_offsets_[i + 1] - step_offsets_[i]);
}

TemporalGraph TemporalGraph::with_metadata(std::map<std::string, std::string> metadata) const {
    TemporalGraph g = *this;
    g.metadata_ = std::move(metadata);
    return g;
}

TemporalGraph ingest_sociopatterns(std::istream &in, std::int64_t resolution_seconds) {
    if (resolution_seconds <= 0)
        throw std::invalid_argument("resolution must be a positive number of seconds");

    std::vector<RawContact> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (is_blank(view))
            continue;
        if (raw.empty() && view.starts_with(kCanonicalTag))
            return read_canonical(in, view, lineno);
        if (view.front() == '#')
            continue;
        const auto fields = split_fields(view);
        if (fields.size() < 3)
            throw ParseError(lineno, "expected at least 3 fields, got " + std::to_string(fields.size()));
        const auto ts = parse_int(fields[0]);
        const auto a = parse_int(fields[1]);
        const auto b = parse_int(fields[2]);
        if (!ts)
            throw ParseError(lineno, "timestamp is not an integer: '" + std::string(fields[0]) + "'");
        if (!a || !b)
            throw ParseError(lineno, "node label is not an integer");
        if (*a == *b)
            throw ParseError(lineno, "self-contact on label " + std::to_string(*a));
        raw.push_back({*ts, *a, *b, lineno});
    }
    if (raw.empty())
        throw EmptyGraphError("input contains no contacts");

    std::vector<std::int64_t> labels;
    labels.reserve(raw.size() * 2);
    std::int64_t min_ts = raw.front().ts;
    for (const auto &r : raw) {
        labels.push_back(r.a);
        labels.push_back(r.b);
        min_ts = std::min(min_ts, r.ts);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    auto id_of = [&](std::int64_t label) {
        return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
    };

    std::vector<ContactEvent> events;
    events.reserve(raw.size());
    for (const auto &r : raw)
        events.push_back({(r.ts - min_ts) / resolution_seconds, id_of(r.a), id_of(r.b)});
    return TemporalGraph::from_events(labels.size(), std::move(events), std::nullopt, resolution_seconds);
}

TemporalGraph ingest_sociopatterns_file(const std::string &path, std::int64_t resolution_seconds) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open " + path);
    return ingest_sociopatterns(in, resolution_seconds);
}

void write_canonical(std::ostream &out, const TemporalGraph &g) {
    out << kCanonicalTag << " v1 n_nodes=" << g.n_nodes() << " horizon=" << g.horizon();
    if (g.resolution_seconds())
        out << " resolution=" << *g.resolution_seconds();
    out << '\n';
    for (const auto &[key, value] : g.metadata())
        out << "# meta " << key << ' ' << value << '\n';
    for (const auto &e : g.events())
        out << e.t << ' ' << e.u << ' ' << e.v << '\n';
}

RemovalResult remove_nodes(const TemporalGraph &g, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction < 1.0))
        throw std::invalid_argument("removal fraction must lie in [0, 1)");
    const std::size_t n = g.n_nodes();
    // floor(p * N); the epsilon absorbs p values like 0.29 that land just below an integer
    auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
    count = std::min(count, n);

    std::vector<bool> removed(n, false);
    Rng rng(seed);
    for (auto id : rng.sample_without_replacement(n, count))
        removed[id] = true;

    RemovalResult result;
    result.mapping.assign(n, std::nullopt);
    NodeId next = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!removed[i])
            result.mapping[i] = next++;

    std::vector<ContactEvent> kept;
    for (const auto &e : g.events()) {
        if (removed[e.u] || removed[e.v])
            continue;
        kept.push_back({e.t, *result.mapping[e.u], *result.mapping[e.v]});
    }
    result.graph = TemporalGraph::from_events(next, std::move(kept), g.horizon(), g.resolution_seconds())
                       .with_metadata(g.metadata());
    return result;
}

StaticProjection static_projection(const TemporalGraph &g) {
    StaticProjection p;
    p.n_nodes = g.n_nodes();
    p.edges.reserve(g.events().size());
    for (const auto &e : g.events())
        p.edges.emplace_back(e.u, e.v);
    std::sort(p.edges.begin(), p.edges.end());
    p.edges.erase(std::unique(p.edges.begin(), p.edges.end()), p.edges.end());

    p.degrees.assign(p.n_nodes, 0);
    for (const auto &[u, v] : p.edges) {
        ++p.degrees[u];
        ++p.degrees[v];
    }
    if (p.n_nodes > 0) {
        const double n = static_cast<double>(p.n_nodes);
        p.avg_degree = 2.0 * static_cast<double>(p.edges.size()) / n;
        double sq = 0.0;
        for (auto d : p.degrees)
            sq += static_cast<double>(d) * static_cast<double>(d);
        p.second_moment = sq / n;
    }
    return p;
}

namespace {

// Calls fn(previous_run_end, run_start, run_end) for every maximal run of each pair,
// with previous_run_end empty for a pair's first run.
template <typename Fn>
void for_each_pair_run(const TemporalGraph &g, Fn &&fn) {
    std::vector<ContactEvent> byPair(g.events().begin(), g.events().end());
    std::sort(byPair.begin(), byPair.end(), [](const ContactEvent &a, const ContactEvent &b) {
        return std::tie(a.u, a.v, a.t) < std::tie(b.u, b.v, b.t);
    });
    std::size_t i = 0;
    while (i < byPair.size()) {
        std::optional<Step> prev_end;
        std::size_t j = i;
        while (j < byPair.size() && byPair[j].u == byPair[i].u && byPair[j].v == byPair[i].v) {
            const Step start = byPair[j].t;
            Step end = start;
            ++j;
            while (j < byPair.size() && byPair[j].u == byPair[i].u && byPair[j].v == byPair[i].v &&
                   byPair[j].t == end + 1) {
                end = byPair[j].t;
                ++j;
            }
            fn(prev_end, start, end);
            prev_end = end;
        }
        i = j;
    }
}

} // namespace

std::vector<Step> contact_durations(const TemporalGraph &g) {
    std::vector<Step> out;
    for_each_pair_run(g, [&](std::optional<Step>, Step start, Step end) { out.push_back(end - start + 1); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Step> contact_gaps(const TemporalGraph &g) {
    std::vector<Step> out;
    for_each_pair_run(g, [&](std::optional<Step> prev_end, Step start, Step) {
        if (prev_end)
            out.push_back(start - *prev_end - 1);
    });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace tempodia
