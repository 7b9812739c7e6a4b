#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ctmc/numerics.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace ctmc;
using testsup::point_mass;

TEST_CASE("two-state closed form 1 - exp(-at)") {
    Ctmc c = testsup::two_state_chain(1.0);
    std::vector<double> d = transient_distribution(c, point_mass(2, 0), 1.0);
    CHECK(std::abs(d[1] - (1.0 - std::exp(-1.0))) < 1e-9);
    CHECK(std::abs(d[0] + d[1] - 1.0) < 1e-9);

    Ctmc fast = testsup::two_state_chain(3.5);
    d = transient_distribution(fast, point_mass(2, 0), 2.0);
    CHECK(std::abs(d[1] - (1.0 - std::exp(-7.0))) < 1e-9);
}

TEST_CASE("t=0 returns the initial distribution exactly") {
    Ctmc c = testsup::two_state_chain(1.0);
    std::vector<double> init{0.25, 0.75};
    std::vector<double> d = transient_distribution(c, init, 0.0);
    CHECK(d == init);
}

TEST_CASE("random 30-state chain matches the dense matrix exponential") {
    Rng rng(7);
    Ctmc c = testsup::random_ctmc(rng, 30);
    double t = 2.5;
    std::vector<double> got = transient_distribution(c, point_mass(c.n_states, 0), t);
    std::vector<double> e = matrix_exponential_oracle(testsup::dense_generator(c), c.n_states, t);
    for (std::uint32_t j = 0; j < c.n_states; ++j)
        CHECK(std::abs(got[j] - e[std::size_t(0) * c.n_states + j]) < 1e-8);
}

TEST_CASE("probability conservation on random chains") {
    Rng rng(8);
    for (int i = 0; i < 10; ++i) {
        Ctmc c = testsup::random_ctmc(rng, 40);
        for (double t : {0.1, 1.0, 5.0}) {
            std::vector<double> d = transient_distribution(c, point_mass(c.n_states, 0), t);
            double sum = 0.0;
            for (double v : d) {
                CHECK(v >= 0.0);
                sum += v;
            }
            CHECK(std::abs(sum - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("invalid inputs are rejected") {
    Ctmc c = testsup::two_state_chain(1.0);
    CHECK_THROWS_AS(transient_distribution(c, point_mass(2, 0), -1.0), NumericError);
    CHECK_THROWS_AS(transient_distribution(c, {0.5, 0.4}, 1.0), NumericError);
    CHECK_THROWS_AS(transient_distribution(c, {1.0}, 1.0), NumericError);
    CHECK_THROWS_AS(transient_distribution(c, {-0.1, 1.1}, 1.0), NumericError);
}

TEST_CASE("all-absorbing chain stays put") {
    Ctmc c = testsup::make_chain(3, {});
    std::vector<double> init{0.2, 0.3, 0.5};
    std::vector<double> d = transient_distribution(c, init, 4.0);
    for (int i = 0; i < 3; ++i) CHECK(d[i] == doctest::Approx(init[i]).epsilon(1e-12));
}

TEST_CASE("backward values against forward sums") {
    // E_s[ind(X_t = j)] computed backward equals the forward transient row
    Rng rng(9);
    Ctmc c = testsup::random_ctmc(rng, 20);
    double t = 1.7;
    std::uint32_t target = c.n_states - 1;
    std::vector<double> ind(c.n_states, 0.0);
    ind[target] = 1.0;
    std::vector<double> back = backward_transient_values(c, ind, t, nullptr);
    for (std::uint32_t s = 0; s < std::min<std::uint32_t>(c.n_states, 5); ++s) {
        std::vector<double> fwd = transient_distribution(c, point_mass(c.n_states, s), t);
        CHECK(back[s] == doctest::Approx(fwd[target]).epsilon(1e-9));
    }
}

TEST_CASE("absorbing mask freezes values through the evolution") {
    // make state 1 absorbing: value there must stay exactly at its seed
    Ctmc c = testsup::make_chain(3, {{0, 1, 1.0}, {1, 2, 5.0}, {2, 0, 2.0}});
    std::vector<std::uint8_t> absorbing{0, 1, 0};
    std::vector<double> u0{0.0, 1.0, 0.0};
    std::vector<double> u = backward_transient_values(c, u0, 3.0, &absorbing);
    CHECK(u[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u[0] > 0.0);
    CHECK(u[0] <= 1.0);
    // state 0's value equals P(hit 1 by t) on the masked chain = 1 - e^{-t}
    CHECK(u[0] == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-9));
}

TEST_CASE("uniformization rate uses the configured factor") {
    Ctmc c = testsup::two_state_chain(2.0);
    SolverConfig cfg;
    CHECK(uniformization_rate(c, cfg) == doctest::Approx(2.04));
    cfg.unif_factor = 1.5;
    CHECK(uniformization_rate(c, cfg) == doctest::Approx(3.0));
    Ctmc still = testsup::make_chain(2, {});
    CHECK(uniformization_rate(still, cfg) == 1.0);
}
