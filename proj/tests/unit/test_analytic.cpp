#include "tempodia/analytic.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace tempodia;

namespace {

struct OracleCurve {
    std::vector<double> cumulative;
    std::optional<std::size_t> saturation;
    std::optional<std::size_t> stall;
    std::size_t predicted = 0;
};

// Scalar iteration written out term by term, overlap sum included.
OracleCurve scalar_recurrence(double n, double k, std::size_t max_steps) {
    OracleCurve o;
    std::vector<double> fresh = {1.0, k};
    o.cumulative = {1.0, std::min(n, 1.0 + k)};
    if (1.0 + k >= n)
        o.saturation = 1;
    for (std::size_t t = 2; t <= max_steps && !o.saturation && !o.stall; ++t) {
        const double reached = o.cumulative.back();
        const double prev = fresh.back();
        const long long count = static_cast<long long>(std::floor(prev + 0.5));
        double sum = 0.0;
        for (long long l = 1; l <= count; ++l) {
            double overlap = 0.0;
            for (long long z = 0; z <= l; ++z)
                overlap += static_cast<double>(z) * k;
            const double term = k * (n - reached - overlap) / n;
            if (term <= 0.0)
                break;
            sum += term;
        }
        fresh.push_back(sum);
        if (reached + sum >= n) {
            o.cumulative.push_back(n);
            o.saturation = t;
        } else {
            o.cumulative.push_back(reached + sum);
            if (sum < 0.5)
                o.stall = t;
        }
    }
    if (o.saturation) {
        o.predicted = *o.saturation;
    } else {
        for (std::size_t t = fresh.size(); t-- > 1;)
            if (fresh[t] >= 0.5) {
                o.predicted = t;
                break;
            }
    }
    return o;
}

} // namespace

TEST_CASE("model parameters") {
    const auto p = ModelParams::make(500, 20, 5, 10);
    CHECK(p.p_hat == 0.5);
    CHECK(p.effective_degree == p.avg_degree * p.p_hat);
    CHECK_THROWS_AS(ModelParams::make(0.5, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::make(10, -1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::make(10, 1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::make(10, 1, 2, 1), std::invalid_argument);
}

TEST_CASE("recurrence: first step equals the effective degree") {
    for (double k : {0.5, 3.0, 10.0, 42.0}) {
        const auto c = recurrence_curve(ModelParams::from_effective_degree(1000, k), 5);
        CHECK(c.new_per_step[1] == k);
        CHECK(c.per_step_cumulative[1] == 1.0 + k);
    }
}

TEST_CASE("recurrence: frozen values for N = 500, k = 10") {
    const auto c = recurrence_curve(ModelParams::from_effective_degree(500, 10), 100000);
    CHECK(c.per_step_cumulative[2] == doctest::Approx(66.02).epsilon(1e-12));
    CHECK(c.per_step_cumulative[3] == doctest::Approx(111.4568).epsilon(1e-12));
    CHECK(c.per_step_cumulative[4] == doctest::Approx(149.623712).epsilon(1e-12));
    CHECK_FALSE(c.saturation_step.has_value());
    CHECK(c.stall_step == 73);
    CHECK(c.predicted_diameter() == 72);
    CHECK(c.per_step_cumulative.back() == doctest::Approx(465.82809707059306).epsilon(1e-9));
    CHECK(c.clamped_summand);
}

TEST_CASE("recurrence: frozen predictions") {
    struct Row {
        double n, k;
        std::size_t predicted;
    };
    for (const auto &row : {Row{500, 20, 61}, Row{500, 70, 30}, Row{1000, 5, 150}, Row{50, 10, 12}}) {
        CAPTURE(row.n);
        CAPTURE(row.k);
        CHECK(recurrence_curve(ModelParams::from_effective_degree(row.n, row.k), 100000).predicted_diameter() ==
              row.predicted);
    }
}

TEST_CASE("recurrence matches the scalar oracle") {
    for (double n : {20.0, 100.0, 500.0, 2000.0}) {
        for (double k : {0.3, 1.0, 2.5, 5.0, 10.0, 33.0, 70.0, 150.0}) {
            CAPTURE(n);
            CAPTURE(k);
            const auto c = recurrence_curve(ModelParams::from_effective_degree(n, k), 100000);
            const auto o = scalar_recurrence(n, k, 100000);
            REQUIRE(c.per_step_cumulative.size() == o.cumulative.size());
            for (std::size_t t = 0; t < o.cumulative.size(); ++t)
                CHECK(c.per_step_cumulative[t] == doctest::Approx(o.cumulative[t]).epsilon(1e-12));
            CHECK(c.saturation_step == o.saturation);
            CHECK(c.stall_step == o.stall);
            CHECK(c.predicted_diameter() == o.predicted);
        }
    }
}

TEST_CASE("recurrence invariants") {
    for (double n : {10.0, 300.0, 5000.0}) {
        for (double k : {0.5, 4.0, 9.0, 60.0, 400.0, 9000.0}) {
            const auto c = recurrence_curve(ModelParams::from_effective_degree(n, k), 10000);
            for (std::size_t t = 1; t < c.per_step_cumulative.size(); ++t) {
                CHECK(c.per_step_cumulative[t] >= c.per_step_cumulative[t - 1]);
                CHECK(c.per_step_cumulative[t] <= n);
                CHECK(c.new_per_step[t] >= 0.0);
            }
            if (k < n - 1) {
                if (c.saturation_step)
                    CHECK(*c.saturation_step >= 2);
            } else {
                // the source counts, so one hop already covers everyone
                CHECK(c.saturation_step == 1);
            }
        }
    }
}

TEST_CASE("recurrence truncation and bad input") {
    const auto c = recurrence_curve(ModelParams::from_effective_degree(10000, 3), 2);
    CHECK(c.truncated);
    CHECK_FALSE(c.predicted_diameter().has_value());
    CHECK_THROWS_AS(recurrence_curve(ModelParams::from_effective_degree(10, 1), 0), std::invalid_argument);
    const auto one = recurrence_curve(ModelParams::from_effective_degree(1, 0), 10);
    CHECK(one.saturation_step == 0);
}

TEST_CASE("tau estimate") {
    CHECK(tau_estimate(ModelParams::from_effective_degree(3, 7)) == 0.0);
    CHECK(tau_estimate(ModelParams::from_effective_degree(500, 10)) ==
          doctest::Approx(std::log(500.0 / 3.0) / std::log(1.02)).epsilon(1e-12));
    CHECK(tau_estimate(ModelParams::from_effective_degree(500, 10)) == doctest::Approx(258.3).epsilon(1e-3));
    double prev = INFINITY;
    for (double k = 1; k < 200; k *= 2) {
        const double t = tau_estimate(ModelParams::from_effective_degree(500, k));
        CHECK(t < prev);
        prev = t;
    }
    CHECK_THROWS_AS(tau_estimate(ModelParams::from_effective_degree(500, 0)), std::domain_error);
}

TEST_CASE("effective diameter estimate") {
    CHECK(effective_diameter_estimate(ModelParams::from_effective_degree(1, 4)) == 0.0);
    // N = 500, <k> = 20, zeta/T = 0.5 -> <k^> = 10 and p^ <k^> = 5
    const auto p = ModelParams::make(500, 20, 5, 10);
    CHECK(p.effective_degree == 10.0);
    CHECK(effective_diameter_estimate(p) == doctest::Approx(std::log(500.0) / std::log(1.01)).epsilon(1e-12));
    CHECK(effective_diameter_estimate(p, EstimateForm::unscaled) ==
          doctest::Approx(std::log(500.0) / std::log(1.02)).epsilon(1e-12));

    double prev = INFINITY;
    for (int zeta = 1; zeta <= 10; ++zeta) {
        const double d = effective_diameter_estimate(ModelParams::make(500, 20, zeta, 10));
        CHECK(d < prev);
        prev = d;
    }
    // with p^ = 1 the estimate is the tau form with N in place of N/3
    const auto full = ModelParams::from_effective_degree(800, 12);
    CHECK(effective_diameter_estimate(full) ==
          doctest::Approx(tau_estimate(full) * std::log(800.0) / std::log(800.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(effective_diameter_estimate(ModelParams::from_effective_degree(10, 0)), std::domain_error);
}

TEST_CASE("log growth estimate") {
    CHECK(log_growth_estimate(ModelParams::from_effective_degree(1, 3)) == 0.0);
    CHECK(log_growth_estimate(ModelParams::from_effective_degree(1000, 10)) ==
          doctest::Approx(0.1 * std::log(1000.0)).epsilon(1e-12));
    const auto a = ModelParams::make(100, 8, 3, 6), b = ModelParams::make(100 * std::exp(1.0), 8, 3, 6);
    CHECK(log_growth_estimate(b) - log_growth_estimate(a) ==
          doctest::Approx(6.0 / (3.0 * a.effective_degree)).epsilon(1e-12));
    CHECK_THROWS_AS(log_growth_estimate(ModelParams::from_effective_degree(10, 0)), std::domain_error);
}

TEST_CASE("exponential reach is zero at t = 0") {
    const auto p = ModelParams::from_effective_degree(100, 5);
    CHECK(exponential_reach(p, 0) == 0.0);
    CHECK(exponential_reach(p, 10) == doctest::Approx(100 * (1 - std::exp(-0.5))));
    CHECK(exponential_reach(p, 1e6) == doctest::Approx(100));
}

TEST_CASE("logistic peak") {
    SUBCASE("starting at N/2 the rate is already maximal") {
        const auto r = logistic_peak_estimate(500, 0.01, 250, 1e-3);
        CHECK(r.time == 0.0);
        CHECK(r.visited == 250.0);
    }
    SUBCASE("closed-form peak time") {
        const double n = 500, k = 0.01, i0 = 1;
        const auto r = logistic_peak_estimate(n, k, i0, 1e-3);
        const double exact = std::log((n - i0) / i0) / (k * n);
        CHECK(r.time == doctest::Approx(exact).epsilon(0.01));
        CHECK(std::abs(r.visited - n / 2) <= 0.02 * n / 2);
    }
    SUBCASE("peak lands near N/2 for many settings") {
        for (double n : {50.0, 500.0, 5000.0})
            for (double k : {0.001, 0.01})
                for (double frac : {0.001, 0.05, 0.3, 0.49}) {
                    const double i0 = std::max(1e-3, frac * n);
                    const double dt = 0.01 / (k * n);
                    const auto r = logistic_peak_estimate(n, k, i0, dt);
                    CHECK(std::abs(r.visited - n / 2) <= 0.02 * n / 2);
                }
    }
    SUBCASE("past N/2 the rate only falls") {
        const auto r = logistic_peak_estimate(500, 0.01, 400, 1e-3);
        CHECK(r.time == 0.0);
        CHECK(r.visited == 400.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(logistic_peak_estimate(500, 0.01, 0, 1e-3), std::invalid_argument);
        CHECK_THROWS_AS(logistic_peak_estimate(500, 0.01, 500, 1e-3), std::invalid_argument);
        CHECK_THROWS_AS(logistic_peak_estimate(500, 0.01, 1, 0), std::invalid_argument);
        CHECK_THROWS_AS(logistic_peak_estimate(500, 0.01, 1, 10), std::runtime_error);
    }
}
