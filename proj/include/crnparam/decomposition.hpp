#pragma once

#include "crnparam/network.hpp"

#include <cstddef>
#include <vector>

namespace crnparam {

struct Decomposition {
    std::vector<std::vector<std::size_t>> blocks;  // reaction indices, ordered by smallest member
    std::vector<std::size_t> block_ranks;
    std::size_t total_rank = 0;
    bool independent = false;  // sum of block ranks equals total rank
};

// Connected components of the vector matroid of reaction vectors.
Decomposition finest_independent_decomposition(const ReactionNetwork& net);
// Recomputes ranks for the given partition.
Decomposition verify_independence(const ReactionNetwork& net, std::vector<std::vector<std::size_t>> blocks);

// Keeps the full species list so vectors of a block live in the same space.
ReactionNetwork subnetwork(const ReactionNetwork& net, const std::vector<std::size_t>& reactions);
// Union by species name; reactions keep per-part order.
ReactionNetwork merge_subnetworks(const std::vector<ReactionNetwork>& parts);

}  // namespace crnparam
