#pragma once

#include "crnparam/json_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crnparam {

inline constexpr int schema_version = 1;

enum ExitCode { exit_ok = 0, exit_input_error = 1, exit_no_translation = 2, exit_verification_failed = 3 };

struct BlockTranslation {
    std::vector<std::size_t> reactions;  // indices into the parent network
    ReactionNetwork block;
    bool already_suitable = false;       // weakly reversible with deficiency zero, alpha = 0
    std::optional<FluxModeSet> modes;
    std::optional<GraphSearchResult> search;
    std::vector<ComplexVector> alpha;    // per block reaction
    bool ok = false;
    std::string message;
};

struct NetworkTranslation {
    Decomposition decomposition;
    std::vector<BlockTranslation> blocks;
    ReactionNetwork merged;  // block subnetworks merged in block order
    std::optional<Gcrn> gcrn;
    bool ok = false;
    std::string message;
};

// Translates every block of the finest independent decomposition and merges the results.
NetworkTranslation translate_by_blocks(const ReactionNetwork& net, std::uint64_t node_budget = 1000000);
// A block is accepted when the translated block is weakly reversible with deficiency zero.
bool block_translation_acceptable(const ReactionNetwork& block, const ReactionGraph& g);

struct PipelineConfig {
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    std::uint64_t blp_budget = 1000000;
    std::size_t samples = 100;
    std::string stage = "all";
    std::vector<std::string> express;  // species tried first when replacing free symbols
    std::vector<std::string> acr_species;  // empty: every species
    std::size_t acr_draws = 50;
};

struct PipelineResult {
    int exit_code = exit_ok;
    Json report;
    std::string message;
};

const std::vector<std::string>& stage_names();
// `input` is network text or a JSON state produced by an earlier run.
PipelineResult run_pipeline(const std::string& input, const PipelineConfig& config);

}  // namespace crnparam
