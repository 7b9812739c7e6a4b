#ifndef CTMC_TESTS_FIXTURES_HPP
#define CTMC_TESTS_FIXTURES_HPP

#include <string>
#include <tuple>
#include <vector>

#include "ctmc/build.hpp"
#include "ctmc/ctmc.hpp"
#include "ctmc/parser.hpp"

namespace testsup {

using Edge = std::tuple<std::uint32_t, std::uint32_t, double>;

// Programmatic chain over one synthetic variable s = state index; expressions
// like "s=2" work against it. Optional reward block "r" from a per-state
// vector.
ctmc::Ctmc make_chain(std::uint32_t n, const std::vector<Edge>& edges,
                      const std::vector<double>& state_reward = {});

// Row-major dense generator matrix Q (off-diagonals = rates, diagonal = -exit).
std::vector<double> dense_generator(const ctmc::Ctmc& c);

std::vector<double> point_mass(std::uint32_t n, std::uint32_t at);

std::string models_dir();
std::string slurp(const std::string& path);
ctmc::ModelAst load_pdgf();

// two-state chain: 0 ->(rate a) 1, absorbing 1; reward 1 on state 0
ctmc::Ctmc two_state_chain(double a);

} // namespace testsup

#endif
