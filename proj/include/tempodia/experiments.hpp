#pragma once

#include "tempodia/analytic.hpp"
#include "tempodia/diameters.hpp"
#include "tempodia/generator.hpp"
#include "tempodia/temporal_graph.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace tempodia {

// ---------------------------------------------------------------------------
// Summary statistics
// ---------------------------------------------------------------------------

double mean_of(std::span<const double> xs);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double stddev_of(std::span<const double> xs);
/// stddev / |mean|; empty when the mean is zero or there are no values.
std::optional<double> coefficient_of_variation(std::span<const double> xs);
/// Empty when either side has zero variance or fewer than two pairs.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};
/// Ordinary least squares of ys on xs. Throws std::invalid_argument if xs is constant.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

struct ErrorMetrics {
    double rmse = 0.0;
    double mse = 0.0;
    double mae = 0.0;
    std::size_t points = 0;
};
/// Throws std::invalid_argument on empty or mismatched input.
ErrorMetrics error_metrics(std::span<const double> observed, std::span<const double> predicted);

// ---------------------------------------------------------------------------
// Theory vs simulation sweeps
// ---------------------------------------------------------------------------

struct SweepPoint {
    double axis_value = 0.0;
    std::size_t n_nodes = 0;
    double avg_degree = 0.0;       // static target <k>
    double effective_degree = 0.0; // <k> * zeta / T
    double p_hat = 1.0;
    std::vector<double> samples; // network ~D per repeat
    double sim_mean = 0.0;
    double sim_std = 0.0;
    std::optional<double> pred_recurrence;
    std::optional<double> pred_closed_form;
};

struct SweepResult {
    std::string axis; // "k", "N" or "p_hat"
    GeneratorConfig base;
    std::size_t repeats = 0;
    std::vector<SweepPoint> points;
    /// simulated means vs recurrence predictions, over points with a prediction
    std::optional<ErrorMetrics> errors;
};

struct SweepOptions {
    std::size_t repeats = 10;
    unsigned jobs = 1;
    /// step cap for the recurrence; points that do not settle get no prediction
    std::size_t recurrence_max_steps = 100000;
};

/// Sweeps the static mean degree. The base distribution is rescaled to each
/// target mean (normal keeps its coefficient of variation, pareto its shape).
SweepResult degree_sweep(const GeneratorConfig &base, std::span<const double> degrees, const SweepOptions &options);

/// Sweeps N at the base config's degree, zeta and T (so <k^> stays fixed).
SweepResult size_sweep(const GeneratorConfig &base, std::span<const std::size_t> sizes, const SweepOptions &options);

/// Sweeps p^ = zeta / T at the base config's static degree and horizon;
/// zeta = round(p^ T).
SweepResult activation_sweep(const GeneratorConfig &base, std::span<const double> p_hats,
                             const SweepOptions &options);

// ---------------------------------------------------------------------------
// Node-removal sweeps and correlations
// ---------------------------------------------------------------------------

struct RemovalRow {
    double fraction = 0.0;
    double n_nodes = 0.0;
    double n_edges = 0.0;
    double avg_degree = 0.0;
    std::optional<double> effective;
    std::optional<double> tau;
    std::optional<double> peak;
    bool emptied = false;
    std::size_t repeats = 0;
};

struct RemovalSweep {
    std::vector<RemovalRow> rows;
    std::uint64_t seed = 0;
    Aggregation aggregation = Aggregation::paper_default;
};

struct RemovalOptions {
    std::size_t repeats = 1;
    Aggregation aggregation = Aggregation::paper_default;
    unsigned jobs = 1;
};

/// For every fraction, removes nodes (seeded), then recomputes static stats and
/// the network diameters. With several repeats each row holds means.
RemovalSweep removal_sweep(const TemporalGraph &g, std::span<const double> fractions, std::uint64_t seed,
                           const RemovalOptions &options = {});

inline constexpr std::array<const char *, 6> kCorrelationVariables = {"N", "E", "k_avg", "eff_d", "tau_d", "peak_d"};

struct CorrelationMatrix {
    std::array<std::array<std::optional<double>, 6>, 6> pearson{};
    std::size_t complete_rows = 0;
};

/// Pairwise Pearson over sweep rows. Throws std::invalid_argument with fewer
/// than three complete rows; zero-variance pairs stay empty.
CorrelationMatrix correlations(const RemovalSweep &sweep);

struct SensitivityReport {
    std::optional<double> cv_effective;
    std::optional<double> cv_tau;
    std::optional<double> cv_peak;
};

/// Coefficient of variation of each diameter column across the sweep rows.
SensitivityReport removal_sensitivity(const RemovalSweep &sweep);

// ---------------------------------------------------------------------------
// Contact duration / gap distributions
// ---------------------------------------------------------------------------

struct LogBin {
    Step lo = 0; // inclusive
    Step hi = 0; // inclusive
    std::size_t count = 0;
    double density = 0.0; // count / (hi - lo + 1)
};

struct Histogram {
    std::vector<Step> raw;
    std::vector<LogBin> bins; // [1,1], [2,3], [4,7], ...
};

struct DistributionReport {
    Histogram durations;
    Histogram gaps;
};

/// Base-2 logarithmic binning of positive values.
Histogram log_binned(std::vector<Step> values);
DistributionReport distribution_report(const TemporalGraph &g);

// ---------------------------------------------------------------------------
// Serialization (CSV tables with a '#' config echo, JSON mirrors)
// ---------------------------------------------------------------------------

using Echo = std::vector<std::pair<std::string, std::string>>;

void write_sweep_csv(std::ostream &out, const SweepResult &sweep, const Echo &echo = {});
nlohmann::json sweep_json(const SweepResult &sweep);

void write_removal_csv(std::ostream &out, const RemovalSweep &sweep, const Echo &echo = {});
nlohmann::json removal_json(const RemovalSweep &sweep);

void write_correlation_csv(std::ostream &out, const CorrelationMatrix &m, const Echo &echo = {});
nlohmann::json correlation_json(const CorrelationMatrix &m);

void write_histogram_csv(std::ostream &out, const Histogram &h, const Echo &echo = {});
nlohmann::json histogram_json(const Histogram &h);

void write_diameters_csv(std::ostream &out, const DiameterReport &report, const Echo &echo = {});
nlohmann::json report_json(const DiameterReport &report, const StaticProjection &stats, const TemporalGraph &g);

} // namespace tempodia
