#include "support/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace testsup {

ctmc::Ctmc make_chain(std::uint32_t n, const std::vector<Edge>& edges,
                      const std::vector<double>& state_reward) {
    ctmc::Ctmc c;
    c.n_states = n;
    c.init_index = 0;
    c.vars.push_back({"s", "M", 0, static_cast<std::int64_t>(n) - 1});
    c.state_values.resize(n);
    for (std::uint32_t s = 0; s < n; ++s) c.state_values[s] = static_cast<std::int32_t>(s);

    ctmc::Symbols::VarInfo info{0, 0, "s", 0, static_cast<std::int64_t>(n) - 1, 0};
    c.symbols.variables.push_back(info);
    c.symbols.var_by_name.emplace("s", 0);

    std::map<std::pair<std::uint32_t, std::uint32_t>, double> merged;
    for (const auto& [src, dst, rate] : edges) {
        if (src == dst) continue;
        merged[{src, dst}] += rate;
    }
    c.row_ptr.assign(n + 1, 0);
    for (const auto& [key, unused] : merged) {
        (void)unused;
        ++c.row_ptr[key.first + 1];
    }
    for (std::uint32_t s = 0; s < n; ++s) c.row_ptr[s + 1] += c.row_ptr[s];
    c.col.resize(merged.size());
    c.rate.resize(merged.size());
    std::vector<std::uint64_t> fill(c.row_ptr.begin(), c.row_ptr.end() - 1);
    for (const auto& [key, rate] : merged) {
        c.col[fill[key.first]] = key.second;
        c.rate[fill[key.first]] = rate;
        ++fill[key.first];
    }
    c.exit_rate.assign(n, 0.0);
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k)
            c.exit_rate[s] += c.rate[k];
    for (std::uint32_t s = 0; s < n; ++s)
        if (c.exit_rate[s] == 0.0) c.deadlocks.push_back(s);

    if (!state_reward.empty()) {
        ctmc::Ctmc::RewardData rd;
        rd.name = "r";
        rd.state_reward = state_reward;
        rd.trans_reward_rate.assign(n, 0.0);
        c.rewards.push_back(std::move(rd));
    }
    return c;
}

std::vector<double> dense_generator(const ctmc::Ctmc& c) {
    std::size_t n = c.n_states;
    std::vector<double> q(n * n, 0.0);
    for (std::uint32_t s = 0; s < n; ++s) {
        for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k)
            q[std::size_t(s) * n + c.col[k]] += c.rate[k];
        q[std::size_t(s) * n + s] -= c.exit_rate[s];
    }
    return q;
}

std::vector<double> point_mass(std::uint32_t n, std::uint32_t at) {
    std::vector<double> d(n, 0.0);
    d[at] = 1.0;
    return d;
}

std::string models_dir() {
    if (const char* env = std::getenv("CTMC_MODELS_DIR")) return env;
    return "models";
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ctmc::IoError("cannot open '" + path + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

ctmc::ModelAst load_pdgf() {
    std::string dir = models_dir();
    return ctmc::parse_model_sources({
        {slurp(dir + "/pdgf-rates.gcm"), dir + "/pdgf-rates.gcm"},
        {slurp(dir + "/pdgf-structure.gcm"), dir + "/pdgf-structure.gcm"},
    });
}

ctmc::Ctmc two_state_chain(double a) {
    return make_chain(2, {{0, 1, a}}, {1.0, 0.0});
}

} // namespace testsup
