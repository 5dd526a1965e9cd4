#pragma once

#include "crnparam/efm.hpp"
#include "crnparam/network.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace crnparam {

using Edge = std::pair<std::size_t, std::size_t>;

// Reaction-to-reaction graph; vertices are reaction indices.
struct ReactionGraph {
    std::size_t vertices = 0;
    std::vector<Edge> edges;  // sorted, no loops, no duplicates

    bool has_edge(std::size_t i, std::size_t j) const;
    bool operator==(const ReactionGraph&) const = default;
};

// Edges ordered by (head, tail); used as the deterministic tie-break key.
std::vector<Edge> predecessor_key(const ReactionGraph& g);

struct BlpVariable {
    enum class Kind { edge, cycle, order };
    Kind kind = Kind::edge;
    std::size_t mode = 0;  // for cycle and order variables
    std::size_t i = 0;
    std::size_t j = 0;     // unused for order variables
    long lower = 0;
    long upper = 1;
};

struct BlpConstraint {
    enum class Sense { le, eq, ge };
    std::vector<std::pair<std::size_t, long>> terms;
    Sense sense = Sense::le;
    long rhs = 0;
};

struct BlpModel {
    std::size_t reactions = 0;
    std::vector<std::vector<std::size_t>> cycle_supports;  // supports of modes with >= 2 reactions
    std::vector<BlpVariable> variables;
    std::vector<BlpConstraint> constraints;
    std::vector<long> objective;

    std::size_t edge_variable(std::size_t i, std::size_t j) const;  // index of x_ij
    void add_no_good(const ReactionGraph& g);
    bool feasible(const std::vector<long>& assignment) const;
    long objective_value(const std::vector<long>& assignment) const;
};

BlpModel build_blp_model(const ReactionNetwork& net, const FluxModeSet& modes);

struct CompatibilityReport {
    bool cs_ok = true;
    bool em_ok = true;
    bool ps_ok = true;
    std::vector<std::string> violations;
};

// Vertex sets of directed simple cycles that contain no smaller cycle's vertex set.
std::vector<std::vector<std::size_t>> minimal_cycle_supports(const ReactionGraph& g, std::size_t limit = 200000);
CompatibilityReport compatibility_check(const ReactionNetwork& net, const ReactionGraph& g, const FluxModeSet& modes);

struct GraphSearchOptions {
    std::uint64_t node_budget = 1000000;
    std::size_t max_rounds = 1000;  // no-good iterations
};

struct GraphSearchResult {
    enum class Status { found, not_unitary, not_covering, infeasible, budget_exhausted };
    Status status = Status::infeasible;
    ReactionGraph graph;
    std::vector<long> assignment;  // satisfies model constraints when found
    BlpModel model;
    std::uint64_t nodes = 0;
    std::size_t rounds = 0;
    std::string message;
};

std::string to_string(GraphSearchResult::Status s);

// Minimum-edge CS- and EM-compatible graph. `accept` can reject candidates; rejected
// candidates are cut off and the search resumes.
GraphSearchResult build_reaction_graph(const ReactionNetwork& net, const FluxModeSet& modes, const GraphSearchOptions& options = {},
                                       const std::function<bool(const ReactionGraph&)>& accept = {});

}  // namespace crnparam
