#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tempodia {

using NodeId = std::uint32_t;
using Step = std::int64_t;

/// Malformed dataset input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Input that parsed cleanly but holds no contacts.
class EmptyGraphError : public ParseError {
  public:
    explicit EmptyGraphError(const std::string &what) : ParseError(0, what) {}
};

/// One undirected contact, stored with u < v.
struct ContactEvent {
    Step t = 0;
    NodeId u = 0;
    NodeId v = 0;

    friend auto operator<=>(const ContactEvent &, const ContactEvent &) = default;
};

/// Node set plus chronologically sorted contacts over the steps [0, horizon).
///
/// Immutable once built. Events are kept sorted by (t, u, v) without duplicates
/// and are additionally indexed by step so a single step's contacts can be
/// scanned without searching.
class TemporalGraph {
  public:
    TemporalGraph() = default;

    /// Canonicalizes (orders endpoints, sorts, drops duplicates) and validates.
    /// `horizon` defaults to 1 + max step (0 for an event-free graph).
    /// Throws std::invalid_argument on self-contacts, negative steps, node ids
    /// >= n_nodes, or a horizon that does not cover every event.
    static TemporalGraph from_events(std::size_t n_nodes, std::vector<ContactEvent> events,
                                     std::optional<Step> horizon = std::nullopt,
                                     std::optional<std::int64_t> resolution_seconds = std::nullopt);

    std::size_t n_nodes() const noexcept { return n_nodes_; }
    Step horizon() const noexcept { return horizon_; }
    std::optional<std::int64_t> resolution_seconds() const noexcept { return resolution_; }

    std::span<const ContactEvent> events() const noexcept { return events_; }
    std::span<const ContactEvent> events_at(Step t) const;

    /// Free-form provenance carried through serialization (generator config, seed, ...).
    const std::map<std::string, std::string> &metadata() const noexcept { return metadata_; }
    TemporalGraph with_metadata(std::map<std::string, std::string> metadata) const;

    friend bool operator==(const TemporalGraph &a, const TemporalGraph &b) {
        return a.n_nodes_ == b.n_nodes_ && a.horizon_ == b.horizon_ && a.events_ == b.events_;
    }

  private:
    std::size_t n_nodes_ = 0;
    Step horizon_ = 0;
    std::optional<std::int64_t> resolution_;
    std::vector<ContactEvent> events_;
    std::vector<std::size_t> step_offsets_; // size horizon + 1
    std::map<std::string, std::string> metadata_;
};

/// Time-aggregated simple graph.
struct StaticProjection {
    std::size_t n_nodes = 0;
    std::vector<std::pair<NodeId, NodeId>> edges; // sorted, u < v
    std::vector<std::size_t> degrees;
    double avg_degree = 0.0;    // 2E / N
    double second_moment = 0.0; // mean of squared degrees

    std::size_t n_edges() const noexcept { return edges.size(); }
};

struct RemovalResult {
    TemporalGraph graph;
    /// old id -> new id, empty for removed nodes
    std::vector<std::optional<NodeId>> mapping;
};

/// Reads SocioPatterns-style `<timestamp> <id> <id> [extras...]` lines.
///
/// Labels are remapped to [0, N) in ascending label order and timestamps become
/// (ts - min_ts) / resolution. Lines starting with '#' are skipped. Input that
/// starts with the canonical header written by write_canonical() is read back
/// verbatim (ids and steps taken as-is, N and T from the header).
TemporalGraph ingest_sociopatterns(std::istream &in, std::int64_t resolution_seconds);
TemporalGraph ingest_sociopatterns_file(const std::string &path, std::int64_t resolution_seconds);

/// Canonical serialization: a `# tempodia-graph` header followed by sorted `t u v` lines.
void write_canonical(std::ostream &out, const TemporalGraph &g);

/// Removes floor(fraction * N) uniformly chosen nodes and every contact touching them.
RemovalResult remove_nodes(const TemporalGraph &g, double fraction, std::uint64_t seed);

StaticProjection static_projection(const TemporalGraph &g);

/// Lengths (in steps) of maximal runs of consecutive active steps, over all pairs. Sorted.
std::vector<Step> contact_durations(const TemporalGraph &g);

/// Strict in-between step counts separating consecutive runs of the same pair. Sorted.
std::vector<Step> contact_gaps(const TemporalGraph &g);

} // namespace tempodia
