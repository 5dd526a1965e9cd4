#include "crnparam/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <future>
#include <stdexcept>

namespace crnparam {

namespace {

struct StageFailure : std::runtime_error {
    int code;
    StageFailure(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

bool suitable_as_is(const ReactionNetwork& block) {
    StructuralSummary s = structural_summary(block);
    return s.weakly_reversible && s.deficiency == 0;
}

void translate_block(BlockTranslation& bt, std::uint64_t node_budget) {
    const std::size_t m = bt.block.species_count();
    if (bt.already_suitable) {
        bt.alpha.assign(bt.block.reaction_count(), ComplexVector(m, 0));
        bt.ok = true;
        return;
    }
    GraphSearchOptions options;
    options.node_budget = node_budget;
    auto accept = [&](const ReactionGraph& g) { return block_translation_acceptable(bt.block, g); };
    bt.search = build_reaction_graph(bt.block, *bt.modes, options, accept);
    if (bt.search->status != GraphSearchResult::Status::found) {
        bt.message = bt.search->message.empty() ? to_string(bt.search->status) : bt.search->message;
        return;
    }
    TranslationResult tr = translation_complexes(bt.block, bt.search->graph);
    bt.alpha = tr.alpha;
    bt.ok = tr.consistent;
    if (!bt.ok) bt.message = "translation complexes are inconsistent";
}

// Blocks are independent, so each search runs on its own thread; results keep block order.
void translate_blocks(std::vector<BlockTranslation>& blocks, std::uint64_t node_budget) {
    std::vector<std::future<void>> jobs;
    for (auto& bt : blocks) jobs.push_back(std::async(std::launch::async, [&bt, node_budget] { translate_block(bt, node_budget); }));
    for (auto& j : jobs) j.get();
}

std::vector<std::size_t> indices_of(const ReactionNetwork& net, const Json& labels) {
    std::vector<std::size_t> out;
    for (const auto& l : labels) {
        std::string label = l.get<std::string>();
        auto it = std::find_if(net.reactions().begin(), net.reactions().end(),
                               [&](const Reaction& r) { return r.label == label; });
        if (it == net.reactions().end()) throw StageFailure(exit_input_error, "unknown reaction " + label);
        out.push_back(static_cast<std::size_t>(it - net.reactions().begin()));
    }
    return out;
}

Json label_list(const ReactionNetwork& net, const std::vector<std::size_t>& idx) {
    Json a = Json::array();
    for (std::size_t i : idx) a.push_back(net.reactions()[i].label);
    return a;
}

ReactionNetwork state_network(const Json& state) { return network_from_json(state.at("parse").at("network")); }

void parse_stage(Json& state, const std::string& text) {
    ReactionNetwork net = parse_network(text);
    state["network"] = serialize_network(net);
    Json sec;
    sec["network"] = network_to_json(net);
    sec["summary"] = summary_to_json(structural_summary(net));
    state["parse"] = std::move(sec);
}

void decompose_stage(Json& state) {
    ReactionNetwork net = state_network(state);
    Decomposition d = finest_independent_decomposition(net);
    Json sec = decomposition_to_json(net, d);
    Json summaries = Json::array();
    for (const auto& b : d.blocks) summaries.push_back(summary_to_json(structural_summary(subnetwork(net, b))));
    sec["block_summaries"] = std::move(summaries);
    state["decompose"] = std::move(sec);
}

void efm_stage(Json& state) {
    ReactionNetwork net = state_network(state);
    Json blocks = Json::array();
    for (const auto& labels : state.at("decompose").at("blocks")) {
        ReactionNetwork block = subnetwork(net, indices_of(net, labels));
        Json b;
        b["reactions"] = labels;
        b["already_suitable"] = suitable_as_is(block);
        FluxModeSet modes = compute_efms(stoichiometric_matrix(block));
        b["flux_modes"] = modes_to_json(block, modes);
        blocks.push_back(std::move(b));
    }
    state["efm"] = {{"blocks", std::move(blocks)}};
}

void translate_stage(Json& state, std::uint64_t node_budget) {
    ReactionNetwork net = state_network(state);
    Json blocks = Json::array();
    std::vector<ReactionNetwork> parts;
    std::vector<ComplexVector> alpha;
    bool ok = true;
    std::string failure;
    std::vector<BlockTranslation> translations;
    for (const auto& eb : state.at("efm").at("blocks")) {
        BlockTranslation bt;
        bt.reactions = indices_of(net, eb.at("reactions"));
        bt.block = subnetwork(net, bt.reactions);
        bt.already_suitable = eb.at("already_suitable").get<bool>();
        if (!bt.already_suitable) bt.modes = modes_from_json(bt.block, eb.at("flux_modes"));
        translations.push_back(std::move(bt));
    }
    translate_blocks(translations, node_budget);
    for (const auto& bt : translations) {
        Json b;
        b["reactions"] = label_list(net, bt.reactions);
        b["translated"] = !bt.already_suitable;
        b["ok"] = bt.ok;
        if (bt.search) {
            b["status"] = to_string(bt.search->status);
            b["nodes"] = bt.search->nodes;
            b["rounds"] = bt.search->rounds;
            if (bt.search->status == GraphSearchResult::Status::found) b["graph"] = graph_to_json(bt.block, bt.search->graph);
        }
        if (bt.ok) {
            Json a = Json::array();
            for (const auto& v : bt.alpha) a.push_back(format_complex(v, net.species()));
            b["alpha"] = std::move(a);
            parts.push_back(bt.block);
            alpha.insert(alpha.end(), bt.alpha.begin(), bt.alpha.end());
        } else {
            ok = false;
            b["message"] = bt.message;
            if (failure.empty()) failure = "block " + std::to_string(blocks.size() + 1) + ": " + bt.message;
        }
        blocks.push_back(std::move(b));
    }
    Json sec;
    sec["blocks"] = std::move(blocks);
    sec["ok"] = ok;
    if (ok) {
        Gcrn g = build_gcrn(merge_subnetworks(parts), alpha);
        sec["gcrn"] = gcrn_to_json(g);
        sec["summary"] = gcrn_summary_to_json(gcrn_summary(g));
    }
    state["translate"] = std::move(sec);
    if (!ok) throw StageFailure(exit_no_translation, "no valid translation: " + failure);
}

void parametrize_stage(Json& state, const PipelineConfig& config) {
    Gcrn g = gcrn_from_json(state.at("translate").at("gcrn"));
    EquilibriumParametrization p;
    try {
        p = parametrize_equilibria(g);
    } catch (const std::domain_error& e) {
        throw StageFailure(exit_no_translation, e.what());
    }
    try {
        p = express_in_species(p, config.express);
    } catch (const std::out_of_range& e) {
        throw StageFailure(exit_input_error, e.what());
    }
    state["parametrize"] = parametrization_to_json(p);
}

void verify_stage(Json& state, const PipelineConfig& config) {
    ReactionNetwork net = state_network(state);
    EquilibriumParametrization p = parametrization_from_json(state.at("parametrize"));
    VerificationReport r = verify_equilibrium(net, p, config.samples, config.tolerance, config.seed);
    state["verify"] = verification_to_json(r);
    if (!r.passed) throw StageFailure(exit_verification_failed, "verification failed");
}

void acr_stage(Json& state, const PipelineConfig& config) {
    EquilibriumParametrization p = parametrization_from_json(state.at("parametrize"));
    std::vector<std::string> species = config.acr_species.empty() ? p.species : config.acr_species;
    Json list = Json::array();
    for (const auto& s : species) {
        try {
            list.push_back(acr_to_json(detect_acr(p, s, config.seed, config.acr_draws), p.free_symbols));
        } catch (const std::out_of_range& e) {
            throw StageFailure(exit_input_error, e.what());
        }
    }
    state["acr"] = std::move(list);
}

bool looks_like_json(const std::string& s) {
    auto it = std::find_if(s.begin(), s.end(), [](unsigned char c) { return !std::isspace(c); });
    return it != s.end() && *it == '{';
}

}  // namespace

bool block_translation_acceptable(const ReactionNetwork& block, const ReactionGraph& g) {
    TranslationResult tr = translation_complexes(block, g);
    if (!tr.consistent) return false;
    return suitable_as_is(translate_network(block, tr.alpha));
}

NetworkTranslation translate_by_blocks(const ReactionNetwork& net, std::uint64_t node_budget) {
    NetworkTranslation out;
    out.decomposition = finest_independent_decomposition(net);
    std::vector<ReactionNetwork> parts;
    std::vector<ComplexVector> alpha;
    out.ok = true;
    for (const auto& b : out.decomposition.blocks) {
        BlockTranslation bt;
        bt.reactions = b;
        bt.block = subnetwork(net, b);
        bt.already_suitable = suitable_as_is(bt.block);
        if (!bt.already_suitable) bt.modes = compute_efms(stoichiometric_matrix(bt.block));
        out.blocks.push_back(std::move(bt));
    }
    translate_blocks(out.blocks, node_budget);
    for (const auto& bt : out.blocks) {
        if (bt.ok) {
            parts.push_back(bt.block);
            alpha.insert(alpha.end(), bt.alpha.begin(), bt.alpha.end());
        } else if (out.ok) {
            out.ok = false;
            out.message = bt.message;
        }
    }
    if (out.ok) {
        out.merged = merge_subnetworks(parts);
        out.gcrn = build_gcrn(out.merged, alpha);
    }
    return out;
}

const std::vector<std::string>& stage_names() {
    static const std::vector<std::string> names{"parse", "decompose", "efm", "translate", "parametrize", "verify", "acr"};
    return names;
}

PipelineResult run_pipeline(const std::string& input, const PipelineConfig& config) {
    PipelineResult res;
    const auto& names = stage_names();
    std::size_t target = names.size() - 1;
    if (config.stage != "all") {
        auto it = std::find(names.begin(), names.end(), config.stage);
        if (it == names.end()) {
            res.exit_code = exit_input_error;
            res.message = "unknown stage " + config.stage;
            return res;
        }
        target = static_cast<std::size_t>(it - names.begin());
    }

    Json state;
    std::string text;
    try {
        if (looks_like_json(input)) {
            state = Json::parse(input);
            if (state.value("schema_version", 0) != schema_version) throw StageFailure(exit_input_error, "unsupported schema_version");
            if (!state.contains("parse")) throw StageFailure(exit_input_error, "state has no parse section");
            state.erase("timing");
            state.erase("status");
        } else {
            state["schema_version"] = schema_version;
            text = input;
        }
    } catch (const Json::exception& e) {
        res.exit_code = exit_input_error;
        res.message = std::string("invalid JSON state: ") + e.what();
        return res;
    } catch (const StageFailure& e) {
        res.exit_code = e.code;
        res.message = e.what();
        return res;
    }

    std::vector<StageTiming> timings;
    try {
        for (std::size_t i = 0; i <= target; ++i) {
            const std::string& name = names[i];
            if (state.contains(name)) continue;
            auto t0 = std::chrono::steady_clock::now();
            try {
                if (name == "parse") parse_stage(state, text);
                else if (name == "decompose") decompose_stage(state);
                else if (name == "efm") efm_stage(state);
                else if (name == "translate") translate_stage(state, config.blp_budget);
                else if (name == "parametrize") parametrize_stage(state, config);
                else if (name == "verify") verify_stage(state, config);
                else acr_stage(state, config);
            } catch (...) {
                auto t1 = std::chrono::steady_clock::now();
                timings.push_back({name, std::chrono::duration<double>(t1 - t0).count()});
                throw;
            }
            auto t1 = std::chrono::steady_clock::now();
            timings.push_back({name, std::chrono::duration<double>(t1 - t0).count()});
        }
    } catch (const StageFailure& e) {
        res.exit_code = e.code;
        res.message = e.what();
    } catch (const ParseError& e) {
        res.exit_code = exit_input_error;
        res.message = e.what();
    } catch (const Json::exception& e) {
        res.exit_code = exit_input_error;
        res.message = std::string("malformed state: ") + e.what();
    } catch (const std::invalid_argument& e) {
        res.exit_code = exit_input_error;
        res.message = e.what();
    }
    state["timing"] = timing_to_json(timing_report(timings));
    Json status;
    status["exit_code"] = res.exit_code;
    if (!res.message.empty()) status["message"] = res.message;
    state["status"] = std::move(status);
    res.report = std::move(state);
    return res;
}

}  // namespace crnparam
