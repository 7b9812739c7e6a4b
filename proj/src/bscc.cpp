#include <algorithm>

#include "ctmc/numerics.hpp"

namespace ctmc {

// Iterative Tarjan (explicit frame stack; recursion would overflow on large
// chains).
BsccDecomposition bscc_decompose(const Ctmc& c) {
    const std::uint32_t n = c.n_states;
    const std::uint32_t NONE = UINT32_MAX;

    std::vector<std::uint32_t> index(n, NONE), lowlink(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<std::uint32_t> stack;
    std::uint32_t next_index = 0;

    BsccDecomposition out;
    out.scc_of.assign(n, 0);

    struct Frame {
        std::uint32_t v;
        std::uint64_t edge;
    };
    std::vector<Frame> frames;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != NONE) continue;
        frames.push_back({root, c.row_ptr[root]});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < c.row_ptr[f.v + 1]) {
                std::uint32_t w = c.col[f.edge++];
                if (index[w] == NONE) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, c.row_ptr[w]});
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
                continue;
            }
            std::uint32_t v = f.v;
            frames.pop_back();
            if (!frames.empty())
                lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
            if (lowlink[v] == index[v]) {
                // pop one component
                std::uint32_t id = out.scc_count++;
                for (;;) {
                    std::uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    out.scc_of[w] = id;
                    if (w == v) break;
                }
            }
        }
    }

    // bottom = no edge leaving the component
    std::vector<std::uint8_t> bottom(out.scc_count, 1);
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k)
            if (out.scc_of[c.col[k]] != out.scc_of[s]) bottom[out.scc_of[s]] = 0;

    std::vector<std::int32_t> bscc_index(out.scc_count, -1);
    std::int32_t nb = 0;
    for (std::uint32_t i = 0; i < out.scc_count; ++i)
        if (bottom[i]) bscc_index[i] = nb++;

    out.bsccs.assign(static_cast<std::size_t>(nb), {});
    out.bscc_of.assign(n, -1);
    for (std::uint32_t s = 0; s < n; ++s) {
        std::int32_t b = bscc_index[out.scc_of[s]];
        out.bscc_of[s] = b;
        if (b >= 0)
            out.bsccs[static_cast<std::size_t>(b)].push_back(s);
        else
            out.transient_states.push_back(s);
    }
    return out;
}

} // namespace ctmc
