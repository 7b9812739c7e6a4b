#ifndef CTMC_FOX_GLYNN_HPP
#define CTMC_FOX_GLYNN_HPP

#include <cstdint>
#include <vector>

namespace ctmc {

// Truncated window of Poisson(qt) masses used as uniformization weights.
// weights[k - left] is the mass at k, scaled so the mode carries weight 1;
// total_weight is the normalizer. The omitted tail mass (relative to the
// true distribution) is below the accuracy requested at construction.
struct FoxGlynnWeights {
    double qt = 0.0;
    std::uint64_t left = 0;
    std::uint64_t right = 0;
    std::vector<double> weights;
    double total_weight = 0.0;

    double weight(std::uint64_t k) const {
        return (k < left || k > right) ? 0.0 : weights[k - left];
    }
};

FoxGlynnWeights fox_glynn(double qt, double epsilon);

} // namespace ctmc

#endif
