#include "fixtures.hpp"
#include "tempodia/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace tempodia;

TEST_CASE("summary statistics") {
    const std::vector<double> xs = {1, 2, 3, 4, 5};
    CHECK(mean_of(xs) == 3.0);
    CHECK(stddev_of(xs) == doctest::Approx(std::sqrt(2.5)));
    CHECK(stddev_of(std::vector<double>{4}) == 0.0);
    CHECK(*coefficient_of_variation(xs) == doctest::Approx(std::sqrt(2.5) / 3.0));
    CHECK_FALSE(coefficient_of_variation(std::vector<double>{-1, 1}).has_value());

    const std::vector<double> ys = {2, 4, 6, 8, 10};
    CHECK(*pearson(xs, ys) == doctest::Approx(1.0));
    const std::vector<double> flat = {3, 3, 3, 3, 3};
    CHECK_FALSE(pearson(xs, flat).has_value());
    CHECK_THROWS_AS(pearson(xs, std::vector<double>{1}), std::invalid_argument);

    const auto fit = linear_fit(xs, std::vector<double>{3, 5, 7, 9, 11});
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK_THROWS_AS(linear_fit(flat, xs), std::invalid_argument);
}

TEST_CASE("error metrics identities") {
    const std::vector<double> obs = {3, 4, 5.5, 2}, pred = {2, 4, 7, 3.25};
    const auto e = error_metrics(obs, pred);
    CHECK(e.points == 4);
    CHECK(e.rmse * e.rmse == doctest::Approx(e.mse).epsilon(1e-12));
    CHECK(e.mae <= e.rmse);
    CHECK(e.rmse <= std::sqrt(4.0) * e.mae);
    CHECK(e.mae == doctest::Approx((1 + 0 + 1.5 + 1.25) / 4));

    const auto single = error_metrics(std::vector<double>{3}, std::vector<double>{7});
    CHECK(single.rmse == single.mae);
    CHECK_THROWS_AS(error_metrics(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("degree sweep") {
    auto base = GeneratorConfig::make(DegreeFamily::normal, 120, 6, 16, 16, 5);
    SweepOptions opts;
    opts.repeats = 3;
    const std::vector<double> degrees = {4, 8, 16};
    const auto sweep = degree_sweep(base, degrees, opts);
    CHECK(sweep.axis == "k");
    REQUIRE(sweep.points.size() == 3);
    for (const auto &p : sweep.points) {
        CHECK(p.samples.size() == 3);
        CHECK(p.sim_mean == doctest::Approx(mean_of(p.samples)));
        REQUIRE(p.pred_recurrence.has_value());
        REQUIRE(p.pred_closed_form.has_value());
        CHECK(p.effective_degree == p.avg_degree);
    }
    CHECK(sweep.points.front().sim_mean >= sweep.points.back().sim_mean);
    REQUIRE(sweep.errors.has_value());
    CHECK(sweep.errors->rmse * sweep.errors->rmse == doctest::Approx(sweep.errors->mse).epsilon(1e-9));
    CHECK(sweep.errors->mae <= sweep.errors->rmse + 1e-12);

    SUBCASE("job count does not change results") {
        opts.jobs = 4;
        const auto again = degree_sweep(base, degrees, opts);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(again.points[i].samples == sweep.points[i].samples);
    }
    SUBCASE("single point") {
        const std::vector<double> one = {8};
        const auto s = degree_sweep(base, one, opts);
        REQUIRE(s.errors.has_value());
        CHECK(s.errors->rmse == doctest::Approx(s.errors->mae));
        CHECK(s.errors->points == 1);
    }
    SUBCASE("bad input") {
        CHECK_THROWS_AS(degree_sweep(base, std::vector<double>{}, opts), std::invalid_argument);
        opts.repeats = 0;
        CHECK_THROWS_AS(degree_sweep(base, degrees, opts), std::invalid_argument);
    }
    SUBCASE("generation failure names the config") {
        auto dense = GeneratorConfig::make(DegreeFamily::normal, 12, 10, 4, 4, 1);
        dense.distribution = NormalDegrees{10, 4};
        bool threw = false;
        for (std::uint64_t s = 0; s < 20 && !threw; ++s) {
            dense.seed = s;
            try {
                degree_sweep(dense, std::vector<double>{10.5}, opts);
            } catch (const GenerationError &e) {
                threw = true;
                CHECK(std::string(e.what()).find("generator.n_nodes=12") != std::string::npos);
            }
        }
        CHECK(threw);
    }
}

TEST_CASE("size and activation sweeps") {
    auto base = GeneratorConfig::make(DegreeFamily::normal, 100, 5, 20, 20, 9);
    SweepOptions opts;
    opts.repeats = 2;
    const std::vector<std::size_t> sizes = {60, 240};
    const auto s = size_sweep(base, sizes, opts);
    CHECK(s.axis == "N");
    CHECK(s.points[0].n_nodes == 60);
    CHECK(s.points[1].n_nodes == 240);

    const std::vector<double> ps = {0.25, 1.0};
    const auto a = activation_sweep(base, ps, opts);
    CHECK(a.axis == "p_hat");
    CHECK(a.points[0].p_hat == 0.25);
    CHECK(a.points[0].effective_degree == doctest::Approx(1.25));
    CHECK(a.points[1].p_hat == 1.0);
    CHECK_THROWS_AS(activation_sweep(base, std::vector<double>{0.0}, opts), std::invalid_argument);
    CHECK_THROWS_AS(activation_sweep(base, std::vector<double>{1.5}, opts), std::invalid_argument);
}

TEST_CASE("removal sweep") {
    const auto g = generate(GeneratorConfig::make(DegreeFamily::poisson, 150, 6, 5, 20, 3));
    const auto stats = static_projection(g);
    const auto full = network_diameters(g);

    SUBCASE("fraction 0 reproduces the untouched graph") {
        const auto sweep = removal_sweep(g, std::vector<double>{0.0}, 1);
        REQUIRE(sweep.rows.size() == 1);
        const auto &r = sweep.rows[0];
        CHECK(r.n_nodes == 150.0);
        CHECK(r.n_edges == static_cast<double>(stats.n_edges()));
        CHECK(r.avg_degree == stats.avg_degree);
        CHECK(r.effective == full.effective_net);
        CHECK(r.tau == full.tau_net);
        CHECK(r.peak == full.peak_net);
    }
    SUBCASE("N and E shrink with p") {
        const std::vector<double> ps = {0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        RemovalOptions opts;
        opts.repeats = 2;
        opts.jobs = 3;
        const auto sweep = removal_sweep(g, ps, 11, opts);
        REQUIRE(sweep.rows.size() == 10);
        for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
            CHECK(sweep.rows[i].n_nodes < sweep.rows[i - 1].n_nodes);
            CHECK(sweep.rows[i].n_edges <= sweep.rows[i - 1].n_edges);
        }
        const auto again = removal_sweep(g, ps, 11, opts);
        std::ostringstream a, b;
        write_removal_csv(a, sweep);
        write_removal_csv(b, again);
        CHECK(a.str() == b.str());

        const auto m = correlations(sweep);
        CHECK(m.complete_rows == 10);
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(m.pearson[i][i] == 1.0);
            for (std::size_t j = 0; j < 6; ++j) {
                CHECK(m.pearson[i][j] == m.pearson[j][i]);
                if (m.pearson[i][j]) {
                    CHECK(*m.pearson[i][j] >= -1.0);
                    CHECK(*m.pearson[i][j] <= 1.0);
                }
            }
        }
        CHECK(*m.pearson[2][1] > 0.0); // <k> rises with E
    }
    SUBCASE("rejected fractions") {
        CHECK_THROWS_AS(removal_sweep(g, std::vector<double>{1.0}, 1), std::invalid_argument);
    }
}

TEST_CASE("correlations need three complete rows and flag constant columns") {
    RemovalSweep sweep;
    sweep.rows.push_back({0.0, 10, 20, 4, 3.0, 1.0, 2.0, false, 1});
    sweep.rows.push_back({0.1, 9, 15, 3.3, 4.0, 1.0, 2.0, false, 1});
    CHECK_THROWS_AS(correlations(sweep), std::invalid_argument);
    sweep.rows.push_back({0.2, 8, 11, 2.75, 5.0, 1.0, 2.0, false, 1});
    const auto m = correlations(sweep);
    CHECK(m.complete_rows == 3);
    CHECK_FALSE(m.pearson[4][0].has_value()); // tau column is constant
    CHECK_FALSE(m.pearson[4][4].has_value());
    CHECK(*m.pearson[3][2] < 0.0);

    RemovalSweep dup;
    for (int i = 0; i < 4; ++i)
        dup.rows.push_back({0.0, 10, 20, 4, 3.0, 1.0, 2.0, false, 1});
    const auto d = correlations(dup);
    for (const auto &row : d.pearson)
        for (const auto &x : row)
            CHECK_FALSE(x.has_value());

    const auto sens = removal_sensitivity(sweep);
    CHECK(*sens.cv_tau == 0.0);
    CHECK(*sens.cv_effective > 0.0);
}

TEST_CASE("log-binned histograms") {
    const auto h = log_binned({1, 1, 1, 2, 3, 3, 5, 9});
    REQUIRE(h.bins.size() == 4);
    CHECK(h.bins[0].lo == 1);
    CHECK(h.bins[0].hi == 1);
    CHECK(h.bins[0].count == 3);
    CHECK(h.bins[1].count == 3);
    CHECK(h.bins[1].density == 1.5);
    CHECK(h.bins[2].lo == 4);
    CHECK(h.bins[2].hi == 7);
    CHECK(h.bins[2].count == 1);
    CHECK(h.bins[3].count == 1);
    CHECK(h.raw.size() == 8);
    CHECK(log_binned({}).bins.empty());
    CHECK_THROWS_AS(log_binned({0, 1}), std::invalid_argument);

    const auto report = distribution_report(TemporalGraph::from_events(3, {{2, 0, 1}, {3, 0, 1}, {4, 0, 1}, {9, 0, 1}}));
    CHECK(report.durations.raw == std::vector<Step>{1, 3});
    CHECK(report.gaps.raw == std::vector<Step>{4});
    const auto empty = distribution_report(TemporalGraph::from_events(3, {}));
    CHECK(empty.durations.bins.empty());
    CHECK(empty.gaps.bins.empty());
}

TEST_CASE("table writers") {
    RemovalSweep sweep;
    sweep.rows.push_back({0.0, 10, 20, 4, 3.0, 1.0, 2.0, false, 1});
    sweep.rows.push_back({0.5, 5, 0, 0, std::nullopt, std::nullopt, std::nullopt, true, 1});
    std::ostringstream out;
    write_removal_csv(out, sweep, {{"seed", "4"}});
    CHECK(out.str() == "# seed = 4\n"
                       "p,N,E,k_avg,eff_d,tau_d,peak_d,emptied\n"
                       "0,10,20,4,3,1,2,0\n"
                       "0.5,5,0,0,,,,1\n");
    const auto j = removal_json(sweep);
    CHECK(j["rows"][1]["eff_d"].is_null());
    CHECK(j["rows"][0]["N"] == 10.0);

    std::ostringstream hist;
    write_histogram_csv(hist, log_binned({1, 2, 2}));
    CHECK(hist.str() == "bin_lo,bin_hi,count,density\n1,1,1,1\n2,3,2,1\n");
}
