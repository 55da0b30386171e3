#include "tempodia/experiments.hpp"

#include "format.hpp"

namespace tempodia {

using detail::format_number;
using detail::format_optional;
using nlohmann::json;

namespace {

void write_echo(std::ostream &out, const Echo &echo) {
    for (const auto &[key, value] : echo)
        out << "# " << key << " = " << value << '\n';
}

json optional_json(const std::optional<double> &x) {
    return x ? json(*x) : json(nullptr);
}

json errors_json(const std::optional<ErrorMetrics> &e) {
    if (!e)
        return nullptr;
    return {{"rmse", e->rmse}, {"mse", e->mse}, {"mae", e->mae}, {"points", e->points}};
}

} // namespace

void write_sweep_csv(std::ostream &out, const SweepResult &sweep, const Echo &echo) {
    write_echo(out, echo);
    if (sweep.errors) {
        out << "# rmse = " << format_number(sweep.errors->rmse) << '\n';
        out << "# mse = " << format_number(sweep.errors->mse) << '\n';
        out << "# mae = " << format_number(sweep.errors->mae) << '\n';
    }
    out << sweep.axis << ",n_nodes,avg_degree,effective_degree,p_hat,sim_mean,sim_std,pred_recurrence,pred_closed_form\n";
    for (const auto &p : sweep.points) {
        out << format_number(p.axis_value) << ',' << p.n_nodes << ',' << format_number(p.avg_degree) << ','
            << format_number(p.effective_degree) << ',' << format_number(p.p_hat) << ','
            << format_number(p.sim_mean) << ',' << format_number(p.sim_std) << ','
            << format_optional(p.pred_recurrence) << ',' << format_optional(p.pred_closed_form) << '\n';
    }
}

json sweep_json(const SweepResult &sweep) {
    json points = json::array();
    for (const auto &p : sweep.points) {
        points.push_back({{"axis_value", p.axis_value},
                          {"n_nodes", p.n_nodes},
                          {"avg_degree", p.avg_degree},
                          {"effective_degree", p.effective_degree},
                          {"p_hat", p.p_hat},
                          {"samples", p.samples},
                          {"sim_mean", p.sim_mean},
                          {"sim_std", p.sim_std},
                          {"pred_recurrence", optional_json(p.pred_recurrence)},
                          {"pred_closed_form", optional_json(p.pred_closed_form)}});
    }
    return {{"axis", sweep.axis},
            {"repeats", sweep.repeats},
            {"base", sweep.base.describe()},
            {"points", points},
            {"errors", errors_json(sweep.errors)}};
}

void write_removal_csv(std::ostream &out, const RemovalSweep &sweep, const Echo &echo) {
    write_echo(out, echo);
    out << "p,N,E,k_avg,eff_d,tau_d,peak_d,emptied\n";
    for (const auto &r : sweep.rows) {
        out << format_number(r.fraction) << ',' << format_number(r.n_nodes) << ',' << format_number(r.n_edges) << ','
            << format_number(r.avg_degree) << ',' << format_optional(r.effective) << ',' << format_optional(r.tau)
            << ',' << format_optional(r.peak) << ',' << (r.emptied ? 1 : 0) << '\n';
    }
}

json removal_json(const RemovalSweep &sweep) {
    json rows = json::array();
    for (const auto &r : sweep.rows) {
        rows.push_back({{"p", r.fraction},
                        {"N", r.n_nodes},
                        {"E", r.n_edges},
                        {"k_avg", r.avg_degree},
                        {"eff_d", optional_json(r.effective)},
                        {"tau_d", optional_json(r.tau)},
                        {"peak_d", optional_json(r.peak)},
                        {"emptied", r.emptied},
                        {"repeats", r.repeats}});
    }
    return {{"seed", sweep.seed}, {"aggregation", std::string(to_string(sweep.aggregation))}, {"rows", rows}};
}

void write_correlation_csv(std::ostream &out, const CorrelationMatrix &m, const Echo &echo) {
    write_echo(out, echo);
    out << "variable";
    for (const auto *name : kCorrelationVariables)
        out << ',' << name;
    out << '\n';
    for (std::size_t a = 0; a < kCorrelationVariables.size(); ++a) {
        out << kCorrelationVariables[a];
        for (std::size_t b = 0; b < kCorrelationVariables.size(); ++b)
            out << ',' << format_optional(m.pearson[a][b]);
        out << '\n';
    }
}

json correlation_json(const CorrelationMatrix &m) {
    json matrix = json::array();
    for (const auto &row : m.pearson) {
        json r = json::array();
        for (const auto &x : row)
            r.push_back(optional_json(x));
        matrix.push_back(r);
    }
    return {{"variables", kCorrelationVariables}, {"pearson", matrix}, {"complete_rows", m.complete_rows}};
}

void write_histogram_csv(std::ostream &out, const Histogram &h, const Echo &echo) {
    write_echo(out, echo);
    out << "bin_lo,bin_hi,count,density\n";
    for (const auto &b : h.bins)
        out << b.lo << ',' << b.hi << ',' << b.count << ',' << format_number(b.density) << '\n';
}

json histogram_json(const Histogram &h) {
    json bins = json::array();
    for (const auto &b : h.bins)
        bins.push_back({{"bin_lo", b.lo}, {"bin_hi", b.hi}, {"count", b.count}, {"density", b.density}});
    return {{"samples", h.raw.size()}, {"bins", bins}};
}

void write_diameters_csv(std::ostream &out, const DiameterReport &report, const Echo &echo) {
    write_echo(out, echo);
    out << "# aggregation = " << to_string(report.aggregation) << '\n';
    out << "# effective_net = " << format_number(report.effective_net) << '\n';
    out << "# peak_net = " << format_number(report.peak_net) << '\n';
    out << "# tau_net = " << format_optional(report.tau_net) << '\n';
    out << "source,effective,peak,tau,reached\n";
    for (const auto &s : report.per_source) {
        out << s.source << ',' << s.effective << ',' << s.peak << ',';
        if (s.tau)
            out << *s.tau;
        out << ',' << s.reached_count << '\n';
    }
}

json report_json(const DiameterReport &report, const StaticProjection &stats, const TemporalGraph &g) {
    json resolution = g.resolution_seconds() ? json(*g.resolution_seconds()) : json(nullptr);
    return {{"graph",
             {{"n_nodes", g.n_nodes()},
              {"n_events", g.events().size()},
              {"horizon", g.horizon()},
              {"resolution_seconds", resolution},
              {"metadata", g.metadata()}}},
            {"static",
             {{"n_edges", stats.n_edges()}, {"avg_degree", stats.avg_degree}, {"second_moment", stats.second_moment}}},
            {"diameters",
             {{"aggregation", std::string(to_string(report.aggregation))},
              {"effective", report.effective_net},
              {"peak", report.peak_net},
              {"tau", optional_json(report.tau_net)}}}};
}

} // namespace tempodia
