#include "tempodia/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace tempodia {

ModelParams ModelParams::make(double n_nodes, double avg_degree, double active_time, double horizon) {
    if (!(n_nodes >= 1.0) || !std::isfinite(n_nodes))
        throw std::invalid_argument("model needs N >= 1");
    if (!(avg_degree >= 0.0) || !std::isfinite(avg_degree))
        throw std::invalid_argument("model needs <k> >= 0");
    if (!(active_time > 0.0) || !(active_time <= horizon) || !std::isfinite(horizon))
        throw std::invalid_argument("model needs 0 < zeta <= T");
    ModelParams p;
    p.n_nodes = n_nodes;
    p.avg_degree = avg_degree;
    p.active_time = active_time;
    p.horizon = horizon;
    p.p_hat = active_time / horizon;
    p.effective_degree = avg_degree * p.p_hat;
    return p;
}

ModelParams ModelParams::from_effective_degree(double n_nodes, double effective_degree) {
    return make(n_nodes, effective_degree, 1.0, 1.0);
}

std::optional<std::size_t> GrowthCurve::predicted_diameter() const {
    if (saturation_step)
        return saturation_step;
    if (truncated)
        return std::nullopt;
    for (std::size_t t = new_per_step.size(); t-- > 1;)
        if (new_per_step[t] >= 0.5)
            return t;
    return std::size_t{0};
}

GrowthCurve recurrence_curve(const ModelParams &params, std::size_t max_steps) {
    if (max_steps < 1)
        throw std::invalid_argument("recurrence_curve: max_steps must be >= 1");
    const double n = params.n_nodes;
    const double k = params.effective_degree;

    GrowthCurve c;
    c.new_per_step.push_back(1.0);
    c.per_step_cumulative.push_back(1.0);

    auto record = [&](std::size_t t, double fresh) {
        double cumulative = c.per_step_cumulative.back() + fresh;
        c.new_per_step.push_back(fresh);
        if (cumulative >= n) {
            c.clamped_total = c.clamped_total || cumulative > n;
            cumulative = n;
            c.saturation_step = t;
        }
        c.per_step_cumulative.push_back(cumulative);
    };

    if (c.per_step_cumulative.back() >= n) {
        c.saturation_step = 0;
        return c;
    }
    record(1, k);
    for (std::size_t t = 2; t <= max_steps && !c.saturation_step; ++t) {
        const double remaining = n - c.per_step_cumulative.back();
        const auto spreaders = static_cast<long long>(std::llround(c.new_per_step.back()));
        double fresh = 0.0;
        for (long long l = 1; l <= spreaders; ++l) {
            const double taken = k * static_cast<double>(l) * static_cast<double>(l + 1) / 2.0;
            const double term = k * (remaining - taken) / n;
            // terms shrink with l, so the first non-positive one ends the sum
            if (term <= 0.0) {
                c.clamped_summand = c.clamped_summand || term < 0.0;
                break;
            }
            fresh += term;
        }
        record(t, fresh);
        if (!c.saturation_step && fresh < 0.5) {
            c.stall_step = t;
            return c;
        }
    }
    if (!c.saturation_step)
        c.truncated = true;
    return c;
}

double tau_estimate(const ModelParams &params) {
    if (!(params.effective_degree > 0.0))
        throw std::domain_error("tau estimate undefined for zero effective degree");
    const double n = params.n_nodes;
    return std::log(n / 3.0) / std::log1p(params.effective_degree / n);
}

double effective_diameter_estimate(const ModelParams &params, EstimateForm form) {
    const double n = params.n_nodes;
    const double rate = form == EstimateForm::scaled ? params.p_hat * params.effective_degree : params.effective_degree;
    if (!(rate > 0.0))
        throw std::domain_error("effective diameter estimate undefined for zero effective connectivity");
    return std::log(n) / std::log1p(rate / n);
}

double log_growth_estimate(const ModelParams &params) {
    if (!(params.active_time > 0.0) || !(params.effective_degree > 0.0))
        throw std::domain_error("log growth estimate needs zeta > 0 and <k^> > 0");
    return params.horizon / (params.active_time * params.effective_degree) * std::log(params.n_nodes);
}

double exponential_reach(const ModelParams &params, double t) {
    const double n = params.n_nodes;
    return n * (1.0 - std::exp(-t * params.effective_degree / n));
}

LogisticPeak logistic_peak_estimate(double n_nodes, double avg_degree, double initial, double dt) {
    if (!(n_nodes > 0.0) || !(avg_degree > 0.0))
        throw std::invalid_argument("logistic peak needs N > 0 and <k> > 0");
    if (!(initial > 0.0 && initial < n_nodes))
        throw std::invalid_argument("logistic peak needs 0 < i0 < N");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("logistic peak needs dt > 0");

    constexpr std::size_t kMaxSteps = 100'000'000;
    auto rate = [&](double i) { return avg_degree * (n_nodes - i) * i; };

    double i = initial;
    double r = rate(i);
    for (std::size_t step = 0; step < kMaxSteps; ++step) {
        const double next = i + dt * r;
        if (!std::isfinite(next) || next > n_nodes)
            throw std::runtime_error("logistic integration diverged; reduce dt");
        const double next_rate = rate(next);
        if (next_rate < r)
            return {static_cast<double>(step) * dt, i, step};
        i = next;
        r = next_rate;
    }
    throw std::runtime_error("logistic integration did not reach its peak");
}

} // namespace tempodia
