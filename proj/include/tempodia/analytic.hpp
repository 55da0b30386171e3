#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace tempodia {

/// Parameters of the random temporal network growth model.
struct ModelParams {
    double n_nodes = 1.0;
    double avg_degree = 0.0;    // static <k>
    double active_time = 1.0;   // zeta, steps an edge is active
    double horizon = 1.0;       // T
    double p_hat = 1.0;         // zeta / T
    double effective_degree = 0.0; // <k> * p_hat

    /// Validates 0 < zeta <= T, N >= 1, <k> >= 0. Throws std::invalid_argument.
    static ModelParams make(double n_nodes, double avg_degree, double active_time, double horizon);
    /// Parameters for a prescribed effective degree, with zeta = T.
    static ModelParams from_effective_degree(double n_nodes, double effective_degree);
};

/// Expected reachable-set growth from the layered recurrence.
///
/// new_per_step[t] is the expected number of nodes first reached at step t
/// (new_per_step[0] = 1, the source); per_step_cumulative[t] sums them and is
/// clamped to N.
struct GrowthCurve {
    std::vector<double> new_per_step;
    std::vector<double> per_step_cumulative;
    std::optional<std::size_t> saturation_step; // first t with cumulative >= N
    std::optional<std::size_t> stall_step;      // first t >= 2 expecting < 1/2 new node
    bool clamped_summand = false;  // some overlap correction went negative
    bool clamped_total = false;    // cumulative overshot N
    bool truncated = false;        // max_steps hit before saturating or stalling

    /// Step by which the model expects the flow to be over: the saturation step,
    /// else the last step still expected to reach half a node.
    std::optional<std::size_t> predicted_diameter() const;
};

/// Layered recurrence: |R_1| = <k^>, and for t > 1
///   |R_t| = sum_{l=1}^{round |R_{t-1}|} <k^> (n - sum_{t'<t} |R_t'| - sum_{z=0}^{l} z <k^>) / n
/// with negative summands clamped to zero. Iterates steps 1..max_steps.
GrowthCurve recurrence_curve(const ModelParams &params, std::size_t max_steps);

/// ln(N/3) / ln(1 + <k^>/N). Throws std::domain_error when <k^> == 0.
double tau_estimate(const ModelParams &params);

enum class EstimateForm {
    scaled,   // ln N / ln(1 + p^ <k^> / N)
    unscaled, // ln N / ln(1 + <k^> / N)
};

/// Throws std::domain_error when the effective connectivity is zero.
double effective_diameter_estimate(const ModelParams &params, EstimateForm form = EstimateForm::scaled);

/// (T / (zeta <k^>)) ln N. Throws std::domain_error for zero zeta or <k^>.
double log_growth_estimate(const ModelParams &params);

/// |R_t| ~ N (1 - exp(-t <k^> / N)), the continuous approximation.
/// Note it gives 0 at t = 0 rather than <k^>.
double exponential_reach(const ModelParams &params, double t);

struct LogisticPeak {
    double time = 0.0;    // when di/dt is largest
    double visited = 0.0; // i at that time
    std::size_t steps = 0;
};

/// Explicit Euler on di/dt = <k> (N - i) i, stopping once the rate starts falling.
/// Throws std::invalid_argument for bad inputs and std::runtime_error when the
/// integration diverges (dt too large).
LogisticPeak logistic_peak_estimate(double n_nodes, double avg_degree, double initial, double dt);

} // namespace tempodia
