#include "ctmc/fox_glynn.hpp"

#include <cmath>
#include <deque>

#include "ctmc/errors.hpp"

namespace ctmc {

// Weights are generated by the two-sided multiplicative recurrence anchored
// at the mode m = floor(qt):
//   w(m) = 1,  w(k-1) = w(k) * k/qt,  w(k+1) = w(k) * qt/(k+1).
// Expansion stops once a geometric bound on the remaining tail drops below
// epsilon/4. Since poisson(k) = w(k) * poisson(m) and poisson(m) <= 1, the
// scaled bound dominates the true tail mass. Ratios fall monotonically when
// moving away from the mode, so the geometric estimate is valid as soon as
// the local ratio is bounded away from 1.
FoxGlynnWeights fox_glynn(double qt, double epsilon) {
    if (qt < 0.0 || !std::isfinite(qt)) throw NumericError("fox-glynn: qt must be finite and >= 0");
    if (!(epsilon > 0.0) || epsilon >= 1.0)
        throw NumericError("fox-glynn: accuracy must lie in (0,1)");
    if (epsilon < 1e-280)
        throw NumericError("fox-glynn: requested accuracy too small for double scaling");

    FoxGlynnWeights fg;
    fg.qt = qt;
    if (qt == 0.0) {
        fg.left = fg.right = 0;
        fg.weights = {1.0};
        fg.total_weight = 1.0;
        return fg;
    }

    const std::uint64_t mode = static_cast<std::uint64_t>(qt);
    const double tail_budget = epsilon / 4.0;

    std::deque<double> w;
    w.push_back(1.0);

    // downward from the mode
    std::uint64_t left = mode;
    {
        double wk = 1.0;
        while (left > 0) {
            double ratio = static_cast<double>(left) / qt;   // w(left-1)/w(left)
            if (ratio < 0.9 && wk * ratio / (1.0 - ratio) < tail_budget) break;
            wk *= ratio;
            if (wk < 1e-305) break;   // deeper terms are negligible at any accuracy
            w.push_front(wk);
            --left;
        }
    }

    // upward from the mode
    std::uint64_t right = mode;
    {
        double wk = 1.0;
        for (;;) {
            double ratio = qt / static_cast<double>(right + 1);   // w(right+1)/w(right)
            if (ratio < 0.9 && wk * ratio / (1.0 - ratio) < tail_budget) break;
            wk *= ratio;
            if (wk < 1e-305) break;
            w.push_back(wk);
            ++right;
        }
    }

    fg.left = left;
    fg.right = right;
    fg.weights.assign(w.begin(), w.end());
    // sum small-to-large from both flanks toward the mode
    double sum = 0.0;
    std::size_t mode_off = mode - left;
    for (std::size_t i = 0; i < mode_off; ++i) sum += fg.weights[i];
    for (std::size_t i = fg.weights.size(); i-- > mode_off;) sum += fg.weights[i];
    fg.total_weight = sum;
    if (!(fg.total_weight > 0.0) || !std::isfinite(fg.total_weight))
        throw NumericError("fox-glynn: weight scaling failed");
    return fg;
}

} // namespace ctmc
