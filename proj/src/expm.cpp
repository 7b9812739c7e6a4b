#include <cmath>
#include <cstring>

#include "ctmc/numerics.hpp"

namespace ctmc {

namespace {

void mat_mul(const std::vector<double>& a, const std::vector<double>& b,
             std::vector<double>& out, std::size_t n) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            double aik = a[i * n + k];
            if (aik == 0.0) continue;
            const double* brow = b.data() + k * n;
            double* orow = out.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
        }
}

} // namespace

// Scaling-and-squaring with a long Taylor series; accuracy well beyond the
// 1e-8 comparisons it backs. Test oracle only -- O(n^3 log) dense work.
std::vector<double> matrix_exponential_oracle(const std::vector<double>& q_dense, std::size_t n,
                                              double t) {
    if (n > 200) throw NumericError("matrix exponential oracle capped at 200 states");
    if (q_dense.size() != n * n) throw NumericError("dense matrix has wrong dimension");

    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n * n; ++i) a[i] = q_dense[i] * t;

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(a[i * n + j]);
        norm = std::max(norm, row);
    }
    int squarings = 0;
    while (norm > 0.25) {
        norm /= 2.0;
        ++squarings;
    }
    double scale = std::ldexp(1.0, -squarings);
    for (double& v : a) v *= scale;

    // exp(a) by Taylor: term_k = a^k / k!
    std::vector<double> result(n * n, 0.0), term(n * n, 0.0), tmp(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        result[i * n + i] = 1.0;
        term[i * n + i] = 1.0;
    }
    for (int k = 1; k <= 40; ++k) {
        mat_mul(term, a, tmp, n);
        double inv_k = 1.0 / k;
        double max_term = 0.0;
        for (std::size_t i = 0; i < n * n; ++i) {
            term[i] = tmp[i] * inv_k;
            result[i] += term[i];
            max_term = std::max(max_term, std::abs(term[i]));
        }
        if (max_term < 1e-300) break;
    }
    for (int s = 0; s < squarings; ++s) {
        mat_mul(result, result, tmp, n);
        result.swap(tmp);
    }
    return result;
}

} // namespace ctmc
