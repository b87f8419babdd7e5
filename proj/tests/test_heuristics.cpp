#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "flexautomata/apta.hpp"
#include "flexautomata/error.hpp"
#include "flexautomata/heuristics.hpp"
#include "flexautomata/merge.hpp"
#include "flexautomata/sample_io.hpp"
#include "oracles.hpp"

using namespace flexautomata;

TEST_CASE("Hoeffding bound against direct evaluation") {
    const double alpha = 0.05;
    const double direct = std::sqrt(std::log(2.0 / alpha) / 2.0) * (2.0 / std::sqrt(10.0));
    CHECK(std::abs(hoeffding_bound(10, 10, alpha) - direct) < 1e-12);
    CHECK(std::abs(hoeffding_bound(10, 10, alpha) - 0.8589388) < 1e-6);
    CHECK_FALSE(hoeffding_compatible(10, 10, 0, 10, alpha));
    CHECK(hoeffding_compatible(5, 10, 5, 10, alpha));
    CHECK(hoeffding_compatible(3, 0, 0, 10, alpha));
    // Bound shrinks as alpha grows.
    CHECK(hoeffding_bound(20, 30, 0.5) < hoeffding_bound(20, 30, 0.01));
}

TEST_CASE("heuristic parameters are validated") {
    CHECK_NOTHROW(validate(Edsm{}));
    CHECK_NOTHROW(validate(Alergia{0.3}));
    CHECK_THROWS_AS(validate(Alergia{0.0}), InputError);
    CHECK_THROWS_AS(validate(Alergia{1.0}), InputError);
    CHECK_THROWS_AS(validate(Mse{-1.0}), InputError);
    CHECK_THROWS_AS(validate(Mse{std::numeric_limits<double>::quiet_NaN()}), InputError);
    CHECK(to_string(HeuristicId{Edsm{}}) == "edsm");
}

TEST_CASE("EDSM score is the label agreement count") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + rng() % 15;
        Automaton a = oracle::random_automaton(rng, n, 2, 0.6, 0.5);
        StateId q = static_cast<StateId>(rng() % n);
        StateId q2 = static_cast<StateId>((q + 1 + rng() % (n - 1)) % n);
        auto ref = oracle::reference_merge(oracle::from_automaton(a), q, q2);
        EvidenceScore e = evidence_edsm(a, q, q2);
        if (!ref.automaton) {
            CHECK(e.failed());
            CHECK(e.failure() == EvidenceFailure::Inconsistent);
        } else {
            REQUIRE_FALSE(e.failed());
            CHECK(e.value() == static_cast<double>(ref.label_matches));
        }
    }
}

TEST_CASE("Alergia rejects clearly different futures") {
    // Ten traces "0" end after one step in the red subtree; ten traces "1 1 ..." never end there.
    std::string text;
    for (int i = 0; i < 10; ++i) text += "1 1 0\n";
    for (int i = 0; i < 10; ++i) text += "1 3 1 1 1\n";
    Automaton a = build_apta(parse_abbadingo(text));
    // State 1 (after "0") always ends; state 2 (after "1") always continues.
    EvidenceScore e = evidence_alergia(a, 1, 2, 0.05);
    CHECK(e.failed());
    CHECK(e.failure() == EvidenceFailure::Incompatible);

    // Two subtrees with the same behaviour are compatible.
    std::string same;
    for (int i = 0; i < 10; ++i) same += "1 2 0 0\n1 2 1 0\n";
    Automaton b = build_apta(parse_abbadingo(same));
    EvidenceScore f = evidence_alergia(b, 1, 2, 0.05);
    REQUIRE_FALSE(f.failed());
    CHECK(f.value() == static_cast<double>(trial_merge(b, 1, 2).merged_pairs.size()));
}

TEST_CASE("MSE score is negated SSE increase plus penalty") {
    Automaton plain = build_apta(parse_abbadingo("1 2 0 1\n1 2 1 1\n"));
    EvidenceScore none = evidence_mse(plain, 1, 2, 0.0);
    CHECK(none.failed());
    CHECK(none.failure() == EvidenceFailure::NoTargets);

    Automaton a = build_apta(parse_augmented("? 2 0/0 1/1\n? 2 0/0 1/1\n? 2 1/2 1/1\n? 2 1/2 1/1\n"));
    // States 1 (targets 0,0) and 2 (targets 2,2) merge; children 3 and 4 both hold 1,1.
    MergeOutcome m = trial_merge(a, 1, 2);
    REQUIRE(m.succeeded());
    CHECK(m.sse_delta == doctest::Approx(4.0));
    for (double penalty : {0.0, 0.5, 3.0}) {
        EvidenceScore e = evidence_mse(a, 1, 2, penalty);
        REQUIRE_FALSE(e.failed());
        CHECK(e.value() == doctest::Approx(-4.0 + penalty * static_cast<double>(m.merged_pairs.size())));
    }
    CHECK(evidence(a, 1, 2, Mse{}).value() == doctest::Approx(-4.0));
}

TEST_CASE("score_outcome agrees with the evidence functions") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 60; ++i) {
        auto target = oracle::random_target(rng, 3, 2);
        Sample s = oracle::random_sample(rng, target, 40, 6, true);
        Automaton a = build_apta(s);
        if (a.size() < 3) continue;
        StateId q2 = static_cast<StateId>(1 + rng() % (a.size() - 1));
        MergeOutcome m = trial_merge(a, 0, q2);
        for (HeuristicId h : {HeuristicId{Edsm{}}, HeuristicId{Alergia{0.05}}, HeuristicId{Mse{0.1}}}) {
            EvidenceScore x = score_outcome(m, h);
            EvidenceScore y = evidence(a, 0, q2, h);
            CHECK(x.failed() == y.failed());
            if (!x.failed()) CHECK(x.value() == doctest::Approx(y.value()));
        }
    }
}

TEST_CASE("scaling targets by c scales the SSE increase by c squared") {
    const std::string base = "? 2 0/0.5 1/1\n? 2 0/1.5 1/4\n? 2 1/2 1/1\n? 2 1/-1 1/0\n";
    Automaton a = build_apta(parse_augmented(base));
    const double d1 = trial_merge(a, 1, 2).sse_delta;
    for (double c : {2.0, -3.0, 0.5}) {
        Automaton b = a;
        for (auto id : b.state_ids()) {
            auto& st = b.state(id).stats;
            st.target_sum *= c;
            st.target_sumsq *= c * c;
        }
        CHECK(trial_merge(b, 1, 2).sse_delta == doctest::Approx(c * c * d1));
    }
    CHECK(d1 > 0.0);
}
