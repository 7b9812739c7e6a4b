#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ctmc/fox_glynn.hpp"
#include "ctmc/errors.hpp"

using ctmc::fox_glynn;
using ctmc::FoxGlynnWeights;

namespace {

// direct Poisson pmf through log-gamma; the implementation under test uses
// recurrences from the mode instead
double poisson_pmf(double qt, std::uint64_t k) {
    return std::exp(-qt + k * std::log(qt) - std::lgamma(double(k) + 1.0));
}

} // namespace

TEST_CASE("qt=0 collapses to a point mass") {
    FoxGlynnWeights fg = fox_glynn(0.0, 1e-6);
    CHECK(fg.left == 0);
    CHECK(fg.right == 0);
    REQUIRE(fg.weights.size() == 1);
    CHECK(fg.weights[0] == 1.0);
    CHECK(fg.total_weight == 1.0);
}

TEST_CASE("normalized weights match the direct pmf for qt=10") {
    double qt = 10.0;
    FoxGlynnWeights fg = fox_glynn(qt, 1e-6);
    // window-conditional comparison term by term
    double window_mass = 0.0;
    for (std::uint64_t k = fg.left; k <= fg.right; ++k) window_mass += poisson_pmf(qt, k);
    for (std::uint64_t k = fg.left; k <= fg.right; ++k) {
        double got = fg.weight(k) / fg.total_weight;
        double want = poisson_pmf(qt, k) / window_mass;
        CHECK(std::abs(got - want) < 1e-10);
    }
}

TEST_CASE("window covers all but epsilon of the true mass") {
    for (double qt : {0.5, 10.0, 4000.0}) {
        for (double eps : {1e-6, 1e-8}) {
            FoxGlynnWeights fg = fox_glynn(qt, eps);
            double mass = 0.0;
            for (std::uint64_t k = fg.left; k <= fg.right; ++k) mass += poisson_pmf(qt, k);
            CAPTURE(qt);
            CAPTURE(eps);
            CHECK(mass >= 1.0 - eps);
            CHECK(mass <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("window straddles the mode and is O(sqrt(qt)) wide at qt=4000") {
    double qt = 4000.0;
    FoxGlynnWeights fg = fox_glynn(qt, 1e-8);
    std::uint64_t mode = static_cast<std::uint64_t>(qt);
    CHECK(fg.left <= mode);
    CHECK(mode <= fg.right);
    double width = double(fg.right - fg.left);
    CHECK(width < 60.0 * std::sqrt(qt));   // Theta(sqrt(qt)) scaling, generous constant
    CHECK(width > std::sqrt(qt) / 4.0);

    // normalized sum of true pmf over the window within 1e-8 of 1
    double mass = 0.0;
    for (std::uint64_t k = fg.left; k <= fg.right; ++k) mass += poisson_pmf(qt, k);
    CHECK(std::abs(mass - 1.0) < 1e-8);
}

TEST_CASE("stable up to qt = 1e6") {
    FoxGlynnWeights fg = fox_glynn(1e6, 1e-10);
    CHECK(std::isfinite(fg.total_weight));
    CHECK(fg.total_weight > 0.0);
    CHECK(fg.left < fg.right);
    // spot-check one flank value against the direct pmf (conditioned)
    std::uint64_t probe = fg.left + (fg.right - fg.left) / 4;
    double rel = (fg.weight(probe) / fg.weight(static_cast<std::uint64_t>(1e6)));
    double want = poisson_pmf(1e6, probe) / poisson_pmf(1e6, static_cast<std::uint64_t>(1e6));
    CHECK(rel == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("invalid arguments are rejected") {
    CHECK_THROWS_AS(fox_glynn(-1.0, 1e-6), ctmc::NumericError);
    CHECK_THROWS_AS(fox_glynn(1.0, 0.0), ctmc::NumericError);
    CHECK_THROWS_AS(fox_glynn(1.0, 1.5), ctmc::NumericError);
    CHECK_THROWS_AS(fox_glynn(1.0, 1e-300), ctmc::NumericError);
}

TEST_CASE("weights are positive across the window") {
    FoxGlynnWeights fg = fox_glynn(123.4, 1e-12);
    for (double w : fg.weights) CHECK(w > 0.0);
}
