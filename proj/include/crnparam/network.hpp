#pragma once

#include "crnparam/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace crnparam {

using ComplexVector = std::vector<std::int64_t>;
using RateMap = std::map<std::string, double>;

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct Reaction {
    std::string label;
    std::size_t source = 0;   // complex index
    std::size_t product = 0;  // complex index
    std::string rate_symbol;
    bool phantom = false;

    bool operator==(const Reaction&) const = default;
};

// A reaction given by explicit complex vectors, used to build networks.
struct ReactionSpec {
    std::string label;
    ComplexVector source;
    ComplexVector product;
    std::string rate_symbol;
    bool phantom = false;
};

class ReactionNetwork {
public:
    ReactionNetwork() = default;
    // Complexes are deduplicated in order of first appearance (source before product).
    ReactionNetwork(std::vector<std::string> species, const std::vector<ReactionSpec>& reactions);

    const std::vector<std::string>& species() const { return species_; }
    const std::vector<ComplexVector>& complexes() const { return complexes_; }
    const std::vector<Reaction>& reactions() const { return reactions_; }

    std::size_t species_count() const { return species_.size(); }
    std::size_t reaction_count() const { return reactions_.size(); }
    std::size_t complex_count() const { return complexes_.size(); }

    const ComplexVector& source_of(std::size_t r) const { return complexes_[reactions_[r].source]; }
    const ComplexVector& product_of(std::size_t r) const { return complexes_[reactions_[r].product]; }
    std::size_t species_index(const std::string& name) const;  // throws std::out_of_range
    std::vector<ReactionSpec> reaction_specs() const;

    bool operator==(const ReactionNetwork&) const = default;

private:
    std::vector<std::string> species_;
    std::vector<ComplexVector> complexes_;
    std::vector<Reaction> reactions_;
};

ReactionNetwork parse_network(const std::string& text);
ReactionNetwork load_network(const std::string& path);
std::string serialize_network(const ReactionNetwork& net);
std::string format_complex(const ComplexVector& c, const std::vector<std::string>& species);

// Species x reactions; column k is y_p(k) - y_s(k).
RationalMatrix stoichiometric_matrix(const ReactionNetwork& net);

struct StructuralSummary {
    std::size_t species = 0;            // m
    std::size_t complexes = 0;          // n
    std::size_t reactions = 0;          // r
    std::size_t rank = 0;               // s
    std::size_t linkage_classes = 0;    // l
    std::size_t strong_linkage_classes = 0;
    std::int64_t deficiency = 0;        // n - l - s
    bool weakly_reversible = false;
    std::vector<std::vector<std::size_t>> linkage_class_members;  // complex indices
    std::vector<std::vector<std::size_t>> strong_class_members;
};

StructuralSummary structural_summary(const ReactionNetwork& net);

// Weak components of a directed graph on n vertices, ordered by lowest member.
std::vector<std::vector<std::size_t>> weak_components(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
// Strongly connected components, ordered by lowest member.
std::vector<std::vector<std::size_t>> strong_components(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

std::vector<double> reaction_fluxes(const ReactionNetwork& net, const RateMap& rates, std::span<const double> x);
std::vector<double> ode_rhs(const ReactionNetwork& net, const RateMap& rates, std::span<const double> x);

// Columns span the left kernel of N.
RationalMatrix conservation_laws(const ReactionNetwork& net);

}  // namespace crnparam
