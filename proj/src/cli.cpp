#include "tempodia/cli.hpp"

#include "format.hpp"
#include "tempodia/experiments.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#ifndef TEMPODIA_VERSION
#define TEMPODIA_VERSION "0.0.0"
#endif

namespace tempodia {

namespace fs = std::filesystem;
using detail::format_number;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string &s) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(x))
        throw std::invalid_argument("not a number: '" + s + "'");
    return x;
}

} // namespace

std::vector<double> parse_range(std::string_view text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        const std::string item = trim(text.substr(pos, comma - pos));
        pos = comma + 1;
        if (item.empty())
            throw std::invalid_argument("empty item in list '" + std::string(text) + "'");
        std::vector<std::string> parts;
        std::stringstream ss(item);
        for (std::string part; std::getline(ss, part, ':');)
            parts.push_back(trim(part));
        if (parts.size() == 1) {
            values.push_back(to_double(parts[0]));
        } else if (parts.size() == 3) {
            const double start = to_double(parts[0]), stop = to_double(parts[1]), step = to_double(parts[2]);
            if (!(step > 0.0) || stop < start)
                throw std::invalid_argument("range '" + item + "' needs step > 0 and start <= stop");
            const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
            for (std::size_t i = 0; i < count; ++i) {
                // snap away accumulated binary noise (0.30000000000000004 -> 0.3)
                const double v = start + static_cast<double>(i) * step;
                values.push_back(std::round(v * 1e12) / 1e12);
            }
        } else {
            throw std::invalid_argument("expected start:stop:step, got '" + item + "'");
        }
    }
    return values;
}

namespace {

std::string sha256_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(0, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed for " + path);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &flag) {
    if (flag)
        return *flag;
    if (const char *env = std::getenv("TEMPODIA_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string_view(env).size())
                return v;
        } catch (const std::exception &) {
        }
        throw UsageError(std::string("TEMPODIA_SEED is not an unsigned integer: '") + env + "'");
    }
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// One command invocation: resolved flags, inputs and buffered outputs. Files
// are only written once everything succeeded.
struct Run {
    std::string command;
    std::vector<std::pair<std::string, std::string>> flags;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> inputs; // path, sha256
    std::string out_dir = "out";
    unsigned jobs = 0;
    std::map<std::string, std::string> files;

    void flag(const std::string &name, const std::string &value) { flags.emplace_back(name, value); }

    void input(const std::string &path) { inputs.emplace_back(path, sha256_file(path)); }

    // Config echo for table headers. Output directory and job count do not
    // affect results, so they stay out of it.
    Echo echo() const {
        Echo e;
        e.emplace_back("tempodia.version", TEMPODIA_VERSION);
        e.emplace_back("command", command);
        e.emplace_back("seed", std::to_string(seed));
        for (const auto &[k, v] : flags)
            e.emplace_back("flag." + k, v);
        for (const auto &[path, digest] : inputs)
            e.emplace_back("input.sha256", digest);
        return e;
    }

    std::vector<std::string> argv() const {
        std::vector<std::string> a{command};
        for (const auto &[k, v] : flags) {
            a.push_back("--" + k);
            a.push_back(v);
        }
        a.push_back("--seed");
        a.push_back(std::to_string(seed));
        a.push_back("--out");
        a.push_back(out_dir);
        a.push_back("--jobs");
        a.push_back(std::to_string(jobs));
        return a;
    }

    void put(const std::string &name, std::string content) { files[name] = std::move(content); }
    void put_json(const std::string &name, const json &j) { files[name] = j.dump(2) + "\n"; }

    void commit() const {
        fs::create_directories(out_dir);
        for (const auto &[name, content] : files) {
            std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
            f << content;
            if (!f)
                throw std::runtime_error("cannot write " + (fs::path(out_dir) / name).string());
        }
        json manifest;
        manifest["command"] = command;
        manifest["argv"] = argv();
        json flag_map = json::object();
        for (const auto &[k, v] : flags)
            flag_map[k] = v;
        manifest["flags"] = flag_map;
        manifest["seed"] = seed;
        json in = json::array();
        for (const auto &[path, digest] : inputs)
            in.push_back({{"path", path}, {"sha256", digest}});
        manifest["inputs"] = in;
        json outputs = json::array();
        for (const auto &[name, content] : files)
            outputs.push_back(name);
        manifest["outputs"] = outputs;
        manifest["version"] = TEMPODIA_VERSION;
        manifest["rng"] = std::string(Rng::algorithm);
        manifest["timestamp"] = utc_timestamp();
        std::ofstream f(fs::path(out_dir) / "manifest.json", std::ios::binary);
        f << manifest.dump(2) << "\n";
    }
};

template <typename F>
std::string render(F &&write) {
    std::ostringstream s;
    write(s);
    return s.str();
}

struct CommonFlags {
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    unsigned jobs = 0;
};

void add_common(CLI::App *cmd, CommonFlags &c) {
    cmd->add_option("--seed", c.seed, "RNG seed (fallback: TEMPODIA_SEED, then random; recorded in manifest.json)");
    cmd->add_option("--out", c.out, "output directory")->capture_default_str();
    cmd->add_option("--jobs", c.jobs, "worker threads (0 = all cores)")->capture_default_str();
}

void start(Run &run, const std::string &command, const CommonFlags &c) {
    run.command = command;
    run.seed = resolve_seed(c.seed);
    run.out_dir = c.out;
    run.jobs = c.jobs;
}

void write_report_files(Run &run, const TemporalGraph &g, const DiameterReport &report) {
    const auto stats = static_projection(g);
    const auto echo = run.echo();
    run.put("diameters.csv", render([&](std::ostream &o) { write_diameters_csv(o, report, echo); }));
    run.put_json("report.json", report_json(report, stats, g));
}

void print_report(std::ostream &out, const TemporalGraph &g, const DiameterReport &report) {
    const auto stats = static_projection(g);
    out << "N=" << g.n_nodes() << " E=" << stats.n_edges() << " k_avg=" << format_number(stats.avg_degree)
        << " events=" << g.events().size() << " T=" << g.horizon() << '\n';
    out << "effective=" << format_number(report.effective_net) << " tau=" << detail::format_optional(report.tau_net)
        << " peak=" << format_number(report.peak_net) << " (" << to_string(report.aggregation) << ")\n";
}

TemporalGraph load_graph(Run &run, const std::string &path, std::int64_t resolution) {
    run.input(path);
    auto g = ingest_sociopatterns_file(path, resolution);
    if (g.n_nodes() == 0)
        throw EmptyGraphError("graph has no nodes");
    return g;
}

// --- analyze -----------------------------------------------------------------

struct AnalyzeFlags {
    CommonFlags common;
    std::string input;
    std::int64_t resolution = 20;
    std::string aggregation = "paper-default";
};

void cmd_analyze(const AnalyzeFlags &f, std::ostream &out) {
    Run run;
    start(run, "analyze", f.common);
    const auto agg = parse_aggregation(f.aggregation);
    run.flag("input", f.input);
    run.flag("resolution", std::to_string(f.resolution));
    run.flag("aggregation", std::string(to_string(agg)));
    const auto g = load_graph(run, f.input, f.resolution);

    const auto report = network_diameters(g, agg, f.common.jobs);
    write_report_files(run, g, report);
    const auto dist = distribution_report(g);
    const auto echo = run.echo();
    run.put("hist_durations.csv", render([&](std::ostream &o) { write_histogram_csv(o, dist.durations, echo); }));
    run.put("hist_gaps.csv", render([&](std::ostream &o) { write_histogram_csv(o, dist.gaps, echo); }));
    run.put_json("histograms.json",
                 {{"durations", histogram_json(dist.durations)}, {"gaps", histogram_json(dist.gaps)}});
    run.commit();
    print_report(out, g, report);
}

// --- simulate ----------------------------------------------------------------

struct DistributionFlags {
    std::string dist = "normal";
    std::optional<double> mean, stddev, shape, scale, rate;
};

void add_distribution(CLI::App *cmd, DistributionFlags &d) {
    cmd->add_option("--dist", d.dist, "degree distribution: normal, pareto, poisson")->capture_default_str();
    cmd->add_option("--shape", d.shape, "pareto shape (default 2.5; must exceed 1)");
    cmd->add_option("--mean", d.mean, "normal mean (default --k)");
    cmd->add_option("--stddev", d.stddev, "normal stddev (default k/4)");
    cmd->add_option("--scale", d.scale, "pareto minimum (default k(shape-1)/shape)");
    cmd->add_option("--rate", d.rate, "poisson rate (default --k)");
}

// Builds the distribution and records every parameter that was set.
DegreeDistribution build_distribution(Run &run, const DistributionFlags &d, double k) {
    const auto family = parse_family(d.dist);
    auto dist = default_distribution(family, k);
    run.flag("dist", std::string(to_string(family)));
    if (auto *n = std::get_if<NormalDegrees>(&dist)) {
        if (d.mean)
            n->mean = *d.mean;
        if (d.stddev)
            n->stddev = *d.stddev;
        run.flag("mean", format_number(n->mean));
        run.flag("stddev", format_number(n->stddev));
    } else if (auto *p = std::get_if<ParetoDegrees>(&dist)) {
        if (d.shape)
            p->shape = *d.shape;
        p->scale = d.scale ? *d.scale : k * (p->shape - 1.0) / p->shape;
        run.flag("shape", format_number(p->shape));
        run.flag("scale", format_number(p->scale));
    } else if (auto *q = std::get_if<PoissonDegrees>(&dist)) {
        if (d.rate)
            q->rate = *d.rate;
        run.flag("rate", format_number(q->rate));
    }
    return dist;
}

struct SimulateFlags {
    CommonFlags common;
    std::size_t n = 500;
    double k = 10.0;
    std::optional<Step> zeta;
    Step horizon = 32;
    DistributionFlags dist;
    std::string aggregation = "paper-default";
};

void cmd_simulate(const SimulateFlags &f, std::ostream &out) {
    Run run;
    start(run, "simulate", f.common);
    const auto agg = parse_aggregation(f.aggregation);
    GeneratorConfig cfg;
    cfg.n_nodes = f.n;
    cfg.target_avg_degree = f.k;
    cfg.horizon = f.horizon;
    cfg.active_time = f.zeta.value_or(f.horizon);
    cfg.seed = run.seed;
    run.flag("n", std::to_string(f.n));
    run.flag("k", format_number(f.k));
    run.flag("zeta", std::to_string(cfg.active_time));
    run.flag("horizon", std::to_string(cfg.horizon));
    run.flag("aggregation", std::string(to_string(agg)));
    cfg.distribution = build_distribution(run, f.dist, f.k);
    cfg.validate();

    const auto g = generate(cfg);
    const auto report = network_diameters(g, agg, f.common.jobs);
    run.put("graph.txt", render([&](std::ostream &o) { write_canonical(o, g); }));
    write_report_files(run, g, report);
    run.commit();
    print_report(out, g, report);
}

// --- validate ----------------------------------------------------------------

struct ValidateFlags {
    CommonFlags common;
    std::string mode = "degree";
    std::size_t n = 500;
    double k = 5.0;
    std::string degrees = "10:70:10";
    std::string sizes = "250,500,1000,2000,4000";
    std::string p_hats = "0.2:1.0:0.1";
    std::size_t repeats = 10;
    Step horizon = 32;
    std::optional<Step> zeta;
    DistributionFlags dist;
};

void cmd_validate(const ValidateFlags &f, std::ostream &out) {
    Run run;
    start(run, "validate", f.common);
    if (f.mode != "degree" && f.mode != "size" && f.mode != "activation")
        throw UsageError("--mode must be degree, size or activation");
    run.flag("mode", f.mode);
    run.flag("n", std::to_string(f.n));
    run.flag("k", format_number(f.k));
    run.flag("repeats", std::to_string(f.repeats));
    run.flag("horizon", std::to_string(f.horizon));
    const Step zeta = f.zeta.value_or(f.horizon);
    run.flag("zeta", std::to_string(zeta));

    GeneratorConfig base;
    base.n_nodes = f.n;
    base.target_avg_degree = f.k;
    base.horizon = f.horizon;
    base.active_time = zeta;
    base.seed = run.seed;
    DistributionFlags d = f.dist;
    base.distribution = build_distribution(run, d, f.k);

    SweepOptions opts;
    opts.repeats = f.repeats;
    opts.jobs = f.common.jobs;
    SweepResult sweep;
    if (f.mode == "degree") {
        const auto degrees = parse_range(f.degrees);
        run.flag("degrees", f.degrees);
        sweep = degree_sweep(base, degrees, opts);
    } else if (f.mode == "size") {
        std::vector<std::size_t> sizes;
        for (double x : parse_range(f.sizes)) {
            if (x < 2 || x != std::floor(x))
                throw UsageError("--sizes needs integers >= 2");
            sizes.push_back(static_cast<std::size_t>(x));
        }
        run.flag("sizes", f.sizes);
        sweep = size_sweep(base, sizes, opts);
    } else {
        const auto p = parse_range(f.p_hats);
        run.flag("p-hats", f.p_hats);
        sweep = activation_sweep(base, p, opts);
    }

    run.put("sweep.csv", render([&](std::ostream &o) { write_sweep_csv(o, sweep, run.echo()); }));
    run.put_json("sweep.json", sweep_json(sweep));
    run.commit();

    out << sweep.axis << "  sim_mean  sim_std  pred_recurrence  pred_closed_form\n";
    for (const auto &p : sweep.points)
        out << format_number(p.axis_value) << "  " << format_number(p.sim_mean) << "  " << format_number(p.sim_std)
            << "  " << detail::format_optional(p.pred_recurrence) << "  "
            << detail::format_optional(p.pred_closed_form) << '\n';
    if (sweep.errors)
        out << "RMSE=" << format_number(sweep.errors->rmse) << " MSE=" << format_number(sweep.errors->mse)
            << " MAE=" << format_number(sweep.errors->mae) << '\n';
    else
        out << "no recurrence predictions; errors not computed\n";
}

// --- removal -----------------------------------------------------------------

struct RemovalFlags {
    CommonFlags common;
    std::string input;
    std::int64_t resolution = 20;
    std::string fractions = "0:0.9:0.1";
    std::size_t repeats = 1;
    std::string aggregation = "paper-default";
};

void cmd_removal(const RemovalFlags &f, std::ostream &out, std::ostream &err) {
    Run run;
    start(run, "removal", f.common);
    const auto agg = parse_aggregation(f.aggregation);
    const auto fractions = parse_range(f.fractions);
    run.flag("input", f.input);
    run.flag("resolution", std::to_string(f.resolution));
    run.flag("fractions", f.fractions);
    run.flag("repeats", std::to_string(f.repeats));
    run.flag("aggregation", std::string(to_string(agg)));
    const auto g = load_graph(run, f.input, f.resolution);

    RemovalOptions opts;
    opts.repeats = f.repeats;
    opts.aggregation = agg;
    opts.jobs = f.common.jobs;
    const auto sweep = removal_sweep(g, fractions, run.seed, opts);
    const auto sens = removal_sensitivity(sweep);
    const auto echo = run.echo();
    run.put("removal.csv", render([&](std::ostream &o) { write_removal_csv(o, sweep, echo); }));
    auto summary = removal_json(sweep);
    summary["sensitivity"] = {{"cv_eff_d", sens.cv_effective ? json(*sens.cv_effective) : json(nullptr)},
                              {"cv_tau_d", sens.cv_tau ? json(*sens.cv_tau) : json(nullptr)},
                              {"cv_peak_d", sens.cv_peak ? json(*sens.cv_peak) : json(nullptr)}};
    run.put_json("removal.json", summary);
    try {
        const auto corr = correlations(sweep);
        run.put("corr.csv", render([&](std::ostream &o) { write_correlation_csv(o, corr, echo); }));
        run.put_json("corr.json", correlation_json(corr));
    } catch (const std::invalid_argument &e) {
        err << "warning: correlations skipped: " << e.what() << '\n';
    }
    run.commit();

    out << "p  N  E  k_avg  eff_d  tau_d  peak_d\n";
    for (const auto &r : sweep.rows)
        out << format_number(r.fraction) << "  " << format_number(r.n_nodes) << "  " << format_number(r.n_edges)
            << "  " << format_number(r.avg_degree) << "  " << detail::format_optional(r.effective) << "  "
            << detail::format_optional(r.tau) << "  " << detail::format_optional(r.peak) << '\n';
}

// --- replay ------------------------------------------------------------------

std::vector<std::string> replay_args(const std::string &manifest_path, const std::optional<std::string> &out_dir) {
    std::ifstream in(manifest_path);
    if (!in)
        throw ParseError(0, "cannot open " + manifest_path);
    json m;
    try {
        in >> m;
    } catch (const json::exception &e) {
        throw ParseError(0, manifest_path + ": " + e.what());
    }
    if (!m.contains("argv") || !m["argv"].is_array() || m["argv"].empty())
        throw ParseError(0, manifest_path + ": no argv recorded");
    auto args = m["argv"].get<std::vector<std::string>>();
    if (args.front() == "replay")
        throw ParseError(0, manifest_path + ": refusing to replay a replay");
    if (out_dir) {
        for (std::size_t i = 0; i + 1 < args.size(); ++i)
            if (args[i] == "--out")
                args[i + 1] = *out_dir;
    }
    return args;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"tempodia: temporal network diameters, flows and model validation", "tempodia"};
    app.require_subcommand(1);
    app.set_version_flag("--version", TEMPODIA_VERSION);
    app.footer("Lists accept start:stop:step ranges (stop inclusive) and comma lists, e.g. 0:0.9:0.1 or "
               "250,500,1000.\nExit codes: 0 ok, 2 usage or input error, 3 empty graph.");

    AnalyzeFlags analyze;
    auto *a = app.add_subcommand("analyze", "diameters and contact statistics of a dataset");
    a->add_option("--input", analyze.input, "contact file (timestamp id id ...)")->required();
    a->add_option("--resolution", analyze.resolution, "seconds per step")->capture_default_str();
    a->add_option("--aggregation", analyze.aggregation, "paper-default, max, min or mean")->capture_default_str();
    add_common(a, analyze.common);

    SimulateFlags simulate;
    auto *s = app.add_subcommand("simulate", "generate a random temporal network and measure it");
    s->add_option("--n", simulate.n, "number of nodes")->capture_default_str();
    s->add_option("--k", simulate.k, "target average static degree")->capture_default_str();
    s->add_option("--zeta", simulate.zeta, "active steps per edge (default: horizon)");
    s->add_option("--horizon", simulate.horizon, "number of steps T")->capture_default_str();
    s->add_option("--aggregation", simulate.aggregation, "paper-default, max, min or mean")->capture_default_str();
    add_distribution(s, simulate.dist);
    add_common(s, simulate.common);

    ValidateFlags validate;
    auto *v = app.add_subcommand("validate", "compare simulated and predicted effective diameters");
    v->add_option("--mode", validate.mode, "degree, size or activation")->capture_default_str();
    v->add_option("--n", validate.n, "number of nodes (degree and activation modes)")->capture_default_str();
    v->add_option("--k", validate.k, "average static degree (size and activation modes)")->capture_default_str();
    v->add_option("--degrees", validate.degrees, "degree list")->capture_default_str();
    v->add_option("--sizes", validate.sizes, "node-count list")->capture_default_str();
    v->add_option("--p-hats", validate.p_hats, "zeta/T list")->capture_default_str();
    v->add_option("--repeats", validate.repeats, "seeds per point")->capture_default_str();
    v->add_option("--horizon", validate.horizon, "number of steps T")->capture_default_str();
    v->add_option("--zeta", validate.zeta, "active steps per edge (default: horizon)");
    add_distribution(v, validate.dist);
    add_common(v, validate.common);

    RemovalFlags removal;
    auto *r = app.add_subcommand("removal", "random node-removal sweep with correlations");
    r->add_option("--input", removal.input, "contact file (timestamp id id ...)")->required();
    r->add_option("--resolution", removal.resolution, "seconds per step")->capture_default_str();
    r->add_option("--fractions", removal.fractions, "removal fractions in [0, 1)")->capture_default_str();
    r->add_option("--repeats", removal.repeats, "seeds per fraction (rows hold means)")->capture_default_str();
    r->add_option("--aggregation", removal.aggregation, "paper-default, max, min or mean")->capture_default_str();
    add_common(r, removal.common);

    std::string manifest_path;
    std::optional<std::string> replay_out;
    auto *p = app.add_subcommand("replay", "re-run the command recorded in a manifest.json");
    p->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required();
    p->add_option("--out", replay_out, "output directory (default: the recorded one)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (a->parsed())
            cmd_analyze(analyze, out);
        else if (s->parsed())
            cmd_simulate(simulate, out);
        else if (v->parsed())
            cmd_validate(validate, out);
        else if (r->parsed())
            cmd_removal(removal, out, err);
        else if (p->parsed())
            return run_cli(replay_args(manifest_path, replay_out), out, err);
    } catch (const EmptyGraphError &e) {
        err << "error: " << e.what() << '\n';
        return kExitEmpty;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const GenerationError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}

} // namespace tempodia
