#include "tempodia/experiments.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tempodia {

double mean_of(std::span<const double> xs) {
    if (xs.empty())
        return 0.0;
    double s = 0.0;
    for (double x : xs)
        s += x;
    return s / static_cast<double>(xs.size());
}

double stddev_of(std::span<const double> xs) {
    if (xs.size() < 2)
        return 0.0;
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs)
        ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::optional<double> coefficient_of_variation(std::span<const double> xs) {
    if (xs.empty())
        return std::nullopt;
    const double m = mean_of(xs);
    if (m == 0.0)
        return std::nullopt;
    return stddev_of(xs) / std::abs(m);
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("pearson: length mismatch");
    if (xs.size() < 2)
        return std::nullopt;
    const double mx = mean_of(xs), my = mean_of(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("linear_fit: need at least two paired values");
    const double mx = mean_of(xs), my = mean_of(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("linear_fit: constant regressor");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

ErrorMetrics error_metrics(std::span<const double> observed, std::span<const double> predicted) {
    if (observed.empty() || observed.size() != predicted.size())
        throw std::invalid_argument("error_metrics: need equally sized, non-empty inputs");
    ErrorMetrics e;
    e.points = observed.size();
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double d = observed[i] - predicted[i];
        e.mse += d * d;
        e.mae += std::abs(d);
    }
    e.mse /= static_cast<double>(e.points);
    e.mae /= static_cast<double>(e.points);
    e.rmse = std::sqrt(e.mse);
    return e;
}

namespace {

DegreeDistribution with_mean(const DegreeDistribution &d, double k) {
    return std::visit(
        [k](const auto &dist) -> DegreeDistribution {
            using T = std::decay_t<decltype(dist)>;
            if constexpr (std::is_same_v<T, NormalDegrees>) {
                const double cv = dist.mean != 0.0 ? dist.stddev / dist.mean : 0.25;
                return NormalDegrees{k, k * cv};
            } else if constexpr (std::is_same_v<T, ParetoDegrees>) {
                return ParetoDegrees{dist.shape, k * (dist.shape - 1.0) / dist.shape};
            } else {
                return PoissonDegrees{k};
            }
        },
        d);
}

struct PointSpec {
    double axis_value;
    GeneratorConfig config;
};

SweepResult run_sweep(std::string axis, const GeneratorConfig &base, std::vector<PointSpec> specs,
                      const SweepOptions &options) {
    if (specs.empty())
        throw std::invalid_argument("sweep needs at least one point");
    if (options.repeats < 1)
        throw std::invalid_argument("sweep needs repeats >= 1");
    for (const auto &s : specs)
        s.config.validate();

    const std::size_t repeats = options.repeats;
    std::vector<double> samples(specs.size() * repeats);
    detail::parallel_for(samples.size(), options.jobs, [&](std::size_t job) {
        const std::size_t i = job / repeats, r = job % repeats;
        GeneratorConfig cfg = specs[i].config;
        cfg.seed = derive_seed(base.seed, i, r);
        try {
            samples[job] = network_diameters(generate(cfg), Aggregation::paper_default, 1).effective_net;
        } catch (const GenerationError &e) {
            std::string where;
            for (const auto &[key, value] : cfg.describe())
                where += " " + key + "=" + value;
            throw GenerationError(std::string(e.what()) + " [" + where.substr(1) + "]");
        }
    });

    SweepResult result;
    result.axis = std::move(axis);
    result.base = base;
    result.repeats = repeats;
    std::vector<double> observed, predicted;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto &cfg = specs[i].config;
        SweepPoint p;
        p.axis_value = specs[i].axis_value;
        p.n_nodes = cfg.n_nodes;
        p.avg_degree = cfg.target_avg_degree;
        p.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(i * repeats),
                         samples.begin() + static_cast<std::ptrdiff_t>((i + 1) * repeats));
        p.sim_mean = mean_of(p.samples);
        p.sim_std = stddev_of(p.samples);

        const auto params = ModelParams::make(static_cast<double>(cfg.n_nodes), cfg.target_avg_degree,
                                              static_cast<double>(cfg.active_time), static_cast<double>(cfg.horizon));
        p.p_hat = params.p_hat;
        p.effective_degree = params.effective_degree;
        if (auto d = recurrence_curve(params, options.recurrence_max_steps).predicted_diameter())
            p.pred_recurrence = static_cast<double>(*d);
        try {
            p.pred_closed_form = effective_diameter_estimate(params);
        } catch (const std::domain_error &) {
        }
        if (p.pred_recurrence) {
            observed.push_back(p.sim_mean);
            predicted.push_back(*p.pred_recurrence);
        }
        result.points.push_back(std::move(p));
    }
    if (!observed.empty())
        result.errors = error_metrics(observed, predicted);
    return result;
}

} // namespace

SweepResult degree_sweep(const GeneratorConfig &base, std::span<const double> degrees, const SweepOptions &options) {
    std::vector<PointSpec> specs;
    for (double k : degrees) {
        GeneratorConfig cfg = base;
        cfg.target_avg_degree = k;
        cfg.distribution = with_mean(base.distribution, k);
        specs.push_back({k, cfg});
    }
    return run_sweep("k", base, std::move(specs), options);
}

SweepResult size_sweep(const GeneratorConfig &base, std::span<const std::size_t> sizes, const SweepOptions &options) {
    std::vector<PointSpec> specs;
    for (std::size_t n : sizes) {
        GeneratorConfig cfg = base;
        cfg.n_nodes = n;
        specs.push_back({static_cast<double>(n), cfg});
    }
    return run_sweep("N", base, std::move(specs), options);
}

SweepResult activation_sweep(const GeneratorConfig &base, std::span<const double> p_hats,
                             const SweepOptions &options) {
    std::vector<PointSpec> specs;
    for (double p : p_hats) {
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("activation probability must lie in (0, 1]");
        GeneratorConfig cfg = base;
        cfg.active_time = std::max<Step>(1, static_cast<Step>(std::llround(p * static_cast<double>(base.horizon))));
        specs.push_back({p, cfg});
    }
    return run_sweep("p_hat", base, std::move(specs), options);
}

RemovalSweep removal_sweep(const TemporalGraph &g, std::span<const double> fractions, std::uint64_t seed,
                           const RemovalOptions &options) {
    if (options.repeats < 1)
        throw std::invalid_argument("removal sweep needs repeats >= 1");
    for (double p : fractions)
        if (!(p >= 0.0 && p < 1.0))
            throw std::invalid_argument("removal fractions must lie in [0, 1)");

    struct Sample {
        StaticProjection stats;
        std::optional<DiameterReport> report;
    };
    const std::size_t repeats = options.repeats;
    std::vector<Sample> samples(fractions.size() * repeats);
    detail::parallel_for(samples.size(), options.jobs, [&](std::size_t job) {
        const std::size_t i = job / repeats, r = job % repeats;
        const auto removed = remove_nodes(g, fractions[i], derive_seed(seed, i, r));
        samples[job].stats = static_projection(removed.graph);
        if (removed.graph.n_nodes() > 0)
            samples[job].report = network_diameters(removed.graph, options.aggregation, 1);
    });

    RemovalSweep sweep;
    sweep.seed = seed;
    sweep.aggregation = options.aggregation;
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        RemovalRow row;
        row.fraction = fractions[i];
        row.repeats = repeats;
        std::vector<double> n, e, k, eff, tau, peak;
        for (std::size_t r = 0; r < repeats; ++r) {
            const auto &s = samples[i * repeats + r];
            n.push_back(static_cast<double>(s.stats.n_nodes));
            e.push_back(static_cast<double>(s.stats.n_edges()));
            k.push_back(s.stats.avg_degree);
            if (s.report) {
                eff.push_back(s.report->effective_net);
                peak.push_back(s.report->peak_net);
                if (s.report->tau_net)
                    tau.push_back(*s.report->tau_net);
            }
        }
        row.n_nodes = mean_of(n);
        row.n_edges = mean_of(e);
        row.avg_degree = mean_of(k);
        row.emptied = eff.empty();
        if (!eff.empty()) {
            row.effective = mean_of(eff);
            row.peak = mean_of(peak);
        }
        if (!tau.empty())
            row.tau = mean_of(tau);
        sweep.rows.push_back(row);
    }
    return sweep;
}

namespace {

std::array<std::optional<double>, 6> row_values(const RemovalRow &r) {
    if (r.emptied)
        return {r.n_nodes, r.n_edges, r.avg_degree, std::nullopt, std::nullopt, std::nullopt};
    return {r.n_nodes, r.n_edges, r.avg_degree, r.effective, r.tau, r.peak};
}

} // namespace

CorrelationMatrix correlations(const RemovalSweep &sweep) {
    CorrelationMatrix m;
    std::vector<std::array<std::optional<double>, 6>> table;
    for (const auto &r : sweep.rows) {
        table.push_back(row_values(r));
        const auto &v = table.back();
        if (std::all_of(v.begin(), v.end(), [](const auto &x) { return x.has_value(); }))
            ++m.complete_rows;
    }
    if (m.complete_rows < 3)
        throw std::invalid_argument("correlations need at least 3 complete rows, got " +
                                    std::to_string(m.complete_rows));

    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = a; b < 6; ++b) {
            std::vector<double> xs, ys;
            for (const auto &v : table) {
                if (v[a] && v[b]) {
                    xs.push_back(*v[a]);
                    ys.push_back(*v[b]);
                }
            }
            auto r = pearson(xs, ys);
            if (a == b && r)
                r = 1.0;
            m.pearson[a][b] = r;
            m.pearson[b][a] = r;
        }
    }
    return m;
}

SensitivityReport removal_sensitivity(const RemovalSweep &sweep) {
    std::vector<double> eff, tau, peak;
    for (const auto &r : sweep.rows) {
        if (r.effective)
            eff.push_back(*r.effective);
        if (r.tau)
            tau.push_back(*r.tau);
        if (r.peak)
            peak.push_back(*r.peak);
    }
    return {coefficient_of_variation(eff), coefficient_of_variation(tau), coefficient_of_variation(peak)};
}

Histogram log_binned(std::vector<Step> values) {
    Histogram h;
    std::sort(values.begin(), values.end());
    h.raw = std::move(values);
    if (h.raw.empty())
        return h;
    if (h.raw.front() < 1)
        throw std::invalid_argument("log binning needs positive values");
    const Step max = h.raw.back();
    for (Step lo = 1; lo <= max; lo *= 2)
        h.bins.push_back({lo, lo * 2 - 1, 0, 0.0});
    for (Step v : h.raw) {
        // index = floor(log2 v)
        std::size_t idx = 0;
        for (Step x = v; x > 1; x >>= 1)
            ++idx;
        ++h.bins[idx].count;
    }
    for (auto &b : h.bins)
        b.density = static_cast<double>(b.count) / static_cast<double>(b.hi - b.lo + 1);
    return h;
}

DistributionReport distribution_report(const TemporalGraph &g) {
    return {log_binned(contact_durations(g)), log_binned(contact_gaps(g))};
}

} // namespace tempodia
