#pragma once

#include "rcdesign/grid.hpp"

#include <random>
#include <string>
#include <vector>

namespace rcdtest {

inline std::string fixture(const std::string& name) {
    return std::string(RCDESIGN_TEST_DATA_DIR) + "/" + name;
}

// Random isotopism: permute rows, columns and symbols.
inline rcd::Grid random_isotope(const rcd::Grid& g, std::mt19937& rng) {
    std::vector<int> pr(g.rows), pc(g.cols), pv(g.num_symbols);
    for (int i = 0; i < g.rows; ++i) pr[i] = i;
    for (int j = 0; j < g.cols; ++j) pc[j] = j;
    for (int s = 0; s < g.num_symbols; ++s) pv[s] = s;
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    std::shuffle(pv.begin(), pv.end(), rng);
    rcd::Grid out(g.rows, g.cols, g.num_symbols);
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j)
            if (g.at(pr[i], pc[j]) != rcd::kEmpty) out.set(i, j, pv[g.at(pr[i], pc[j])]);
    return out;
}

}  // namespace rcdtest
