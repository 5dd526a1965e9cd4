#pragma once

#include "crnparam/linalg.hpp"
#include "crnparam/polynomial.hpp"
#include "crnparam/translation.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crnparam {

enum class ForestOrder { breadth_first, reverse };

struct SpanningForest {
    std::vector<std::size_t> edges;  // indices into Gcrn::edges
    std::vector<std::size_t> roots;
};

SpanningForest spanning_forest(const Gcrn& g, ForestOrder order = ForestOrder::breadth_first);
// Row per forest edge: kinetic(head) - kinetic(tail).
RationalMatrix kinetic_difference_matrix(const Gcrn& g, const SpanningForest& f);
// Sum over spanning trees of each linkage class rooted at (directed toward) the vertex.
std::vector<Polynomial> tree_constants(const Gcrn& g);

struct PowerFactor {
    Polynomial base;
    Rational exponent;
};

// prod base^exponent * prod free_symbol^free_exponent
struct SymbolicPowerProduct {
    std::vector<PowerFactor> factors;
    std::vector<Rational> free_exponents;

    double evaluate(const std::map<std::string, double>& values, const std::vector<std::string>& free_symbols) const;
    std::string to_string(const std::vector<std::string>& free_symbols) const;
    SymbolSet symbols() const;
};

struct SolvedSymbol {
    std::string symbol;
    RationalFunction value;
};

struct SideCondition {
    Polynomial equation;     // equation == 0
    std::string designated;  // symbol solved for, or to be solved numerically
    bool solved = false;     // eliminated symbolically
    bool trivial = false;    // holds identically
};

struct EquilibriumParametrization {
    std::vector<std::string> species;
    std::vector<SymbolicPowerProduct> expressions;
    std::vector<std::string> free_symbols;     // columns of free exponents
    std::vector<std::string> free_parameters;  // free symbols plus undetermined sigma symbols
    std::vector<std::string> rate_symbols;
    std::vector<std::string> sigma_symbols;
    std::vector<SolvedSymbol> solved;
    std::vector<SideCondition> side_conditions;
    std::int64_t kinetic_deficiency = 0;
    std::int64_t effective_deficiency = 0;
    bool all_positive_equilibria = false;  // effective deficiency zero
    bool substitution_fallback = false;

    // Exponent data kept to re-express the parametrization.
    std::vector<RationalFunction> tree_constants;                  // after elimination
    std::vector<std::pair<std::size_t, std::size_t>> forest_edges;  // (tail, head) vertex pairs
    RationalMatrix edge_exponents;                                  // species x forest edges
    RationalMatrix free_exponent_matrix;                            // species x free symbols

    std::size_t species_index(const std::string& name) const;
    // Symbols that must be computed from the others before evaluation.
    std::vector<std::string> numeric_unknowns() const;
};

struct ParametrizeOptions {
    ForestOrder forest = ForestOrder::breadth_first;
    bool eliminate = true;
};

// Requires a weakly reversible kinetic graph; throws std::domain_error otherwise.
EquilibriumParametrization parametrize_equilibria(const Gcrn& g, const ParametrizeOptions& options = {});
// Replaces free symbols by species, preferred names first, then by increasing species index.
EquilibriumParametrization express_in_species(const EquilibriumParametrization& p,
                                              const std::vector<std::string>& preferred = {});
// Rebuilds factored expressions from exponent data.
void rebuild_expressions(EquilibriumParametrization& p);

// Completes values for solved and numerically determined symbols; false if no positive solution was found.
bool complete_values(const EquilibriumParametrization& p, std::map<std::string, double>& values);
std::vector<double> evaluate_species(const EquilibriumParametrization& p, const std::map<std::string, double>& values);

}  // namespace crnparam
