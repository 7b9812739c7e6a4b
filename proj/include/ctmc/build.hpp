#ifndef CTMC_BUILD_HPP
#define CTMC_BUILD_HPP

#include "ctmc/ctmc.hpp"

namespace ctmc {

struct BuildOptions {
    std::uint64_t max_states = 10'000'000;
};

// Breadth-first reachability composition of a validated program.
//
// Unlabeled commands fire alone. For an action label, a composed transition
// exists iff every module containing that label has an enabled command; one
// firing per combination of enabled commands, rate = product of the
// participating rates (implicit 1 where omitted). Firings that leave the
// global state unchanged are dropped; parallel firings onto the same target
// merge by rate addition. State indexing is BFS discovery order with FIFO
// queue and per-module command order, so repeated builds are identical.
Ctmc build_state_space(const ModelAst& ast, const BuildOptions& opts = {});

} // namespace ctmc

#endif
