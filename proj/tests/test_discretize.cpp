#include <doctest.h>

#include <random>

#include "flexautomata/discretize.hpp"
#include "flexautomata/error.hpp"
#include "flexautomata/sample_io.hpp"

using namespace flexautomata;

TEST_CASE("uniform edges split [min, max] evenly") {
    const std::vector<double> xs{0.0, 3.0, 9.0, 6.0};
    DiscretizationSpec spec{UniformBins{3}};
    auto e = bin_edges(xs, spec);
    REQUIRE(e.size() == 2);
    CHECK(e[0] == doctest::Approx(3.0));
    CHECK(e[1] == doctest::Approx(6.0));
    // Values on an edge fall in the lower bin.
    CHECK(bin_of(e, 3.0) == 0);
    CHECK(bin_of(e, 3.0001) == 1);
    CHECK(bin_of(e, 9.0) == 2);
    CHECK(bin_of(e, -100.0) == 0);
}

TEST_CASE("quantile edges balance the mass") {
    std::vector<double> xs;
    for (int i = 1; i <= 12; ++i) xs.push_back(i);
    DiscretizationSpec spec{QuantileBins{4}};
    auto e = bin_edges(xs, spec);
    CHECK(e == std::vector<double>{3.0, 6.0, 9.0});
    std::vector<int> per_bin(4);
    for (double x : xs) per_bin[bin_of(e, x)]++;
    CHECK(per_bin == std::vector<int>{3, 3, 3, 3});
}

TEST_CASE("duplicate quantile edges collapse with a warning") {
    const std::vector<double> xs{1, 1, 1, 1, 1, 1, 1, 2};
    std::vector<std::string> warnings;
    auto e = bin_edges(xs, DiscretizationSpec{QuantileBins{4}}, &warnings);
    CHECK(e == std::vector<double>{1.0});
    CHECK(warnings.size() == 1);
}

TEST_CASE("bad inputs") {
    const std::vector<double> xs{1, 2, 3};
    CHECK_THROWS_AS(bin_edges(xs, DiscretizationSpec{UniformBins{0}}), InputError);
    CHECK_THROWS_AS(bin_edges(std::vector<double>{}, DiscretizationSpec{}), InputError);
    DiscretizationSpec w3;
    w3.window = 3;
    CHECK_THROWS_AS(discretize(xs, w3), InputError);
    DiscretizationSpec w0;
    w0.window = 0;
    CHECK_THROWS_AS(discretize(xs, w0), InputError);
}

TEST_CASE("sliding windows carry the next step as target") {
    const std::vector<double> xs{0.0, 10.0, 5.0, 2.0, 8.0};
    DiscretizationSpec spec{UniformBins{2}};
    spec.window = 2;
    Discretization d = discretize(xs, spec);
    // Edge at 5: bins 0,1,0,0,1.
    REQUIRE(d.sample.traces.size() == 3);
    CHECK(d.sample.traces[0].word() == Word{0, 1});
    CHECK(d.sample.traces[1].word() == Word{1, 0});
    CHECK(d.sample.traces[2].word() == Word{0, 0});
    CHECK(*d.sample.traces[0].symbols[1].target == doctest::Approx(-5.0));
    CHECK(*d.sample.traces[2].symbols[1].target == doctest::Approx(6.0));
    CHECK_FALSE(d.sample.traces[0].symbols[0].target.has_value());
    CHECK(d.sample.alphabet == std::vector<std::string>{"(-inf,5]", "(5,+inf)"});
    for (const auto& t : d.sample.traces) CHECK(t.label == TraceLabel::Unlabeled);

    spec.target = TargetKind::NextValue;
    Discretization v = discretize(xs, spec);
    CHECK(*v.sample.traces[1].symbols[1].target == doctest::Approx(2.0));
}

TEST_CASE("discretized samples survive the augmented format") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0, 1);
    std::vector<double> xs(300);
    for (auto& x : xs) x = g(rng);
    DiscretizationSpec spec{QuantileBins{5}};
    spec.window = 4;
    Discretization d = discretize(xs, spec);
    CHECK(d.sample.traces.size() == xs.size() - 4);
    Sample back = parse_augmented(write_augmented(d.sample));
    CHECK(back.traces == d.sample.traces);
    // The text format stores only the alphabet size, not the interval names.
    CHECK(back.alphabet.size() == d.sample.alphabet.size());
}
