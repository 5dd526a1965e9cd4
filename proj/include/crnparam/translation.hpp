#pragma once

#include "crnparam/network.hpp"
#include "crnparam/reaction_graph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace crnparam {

struct TranslationResult {
    bool consistent = false;
    std::vector<ComplexVector> alpha;  // one per reaction, nonnegative
    std::size_t rank_a = 0;
    std::size_t rank_augmented = 0;
    std::vector<std::string> violations;
};

// Solves alpha_i - alpha_j = y_s(j) - y_p(i) over the graph edges, seeds each component at its
// lowest reaction with 0, then shifts every linkage class of the result to be nonnegative.
TranslationResult translation_complexes(const ReactionNetwork& net, const ReactionGraph& g);

ReactionNetwork translate_network(const ReactionNetwork& net, const std::vector<ComplexVector>& alpha);

struct GcrnVertex {
    std::size_t stoich_complex = 0;  // index into stoich_network.complexes()
    ComplexVector kinetic;
    bool has_source = true;  // false: kinetic complex taken from an incoming reaction
};

struct GcrnEdge {
    std::size_t tail = 0;
    std::size_t head = 0;
    std::string symbol;
    bool phantom = false;
    std::optional<std::size_t> reaction;  // original reaction index for effective edges
};

struct Gcrn {
    std::vector<std::string> species;
    ReactionNetwork original;
    ReactionNetwork stoich_network;  // translated reactions followed by phantom edges
    std::vector<GcrnVertex> vertices;
    std::vector<GcrnEdge> edges;
    std::vector<ComplexVector> alpha;

    std::vector<std::string> sigma_symbols() const;
    std::vector<std::string> rate_symbols() const;
};

Gcrn build_gcrn(const ReactionNetwork& net, const std::vector<ComplexVector>& alpha);
// Untranslated network viewed as its own GCRN.
Gcrn build_gcrn(const ReactionNetwork& net);

struct GcrnSummary {
    StructuralSummary stoichiometric;
    std::size_t vertices = 0;
    std::size_t kinetic_linkage_classes = 0;
    std::size_t kinetic_rank = 0;
    std::int64_t effective_deficiency = 0;
    std::int64_t kinetic_deficiency = 0;
    bool stoichiometric_weakly_reversible = false;
    bool kinetic_weakly_reversible = false;
    bool both_weakly_reversible = false;
};

GcrnSummary gcrn_summary(const Gcrn& g);
std::string kinetic_order_text(const Gcrn& g);

}  // namespace crnparam
