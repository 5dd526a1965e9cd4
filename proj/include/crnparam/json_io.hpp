#pragma once

#include "crnparam/analysis.hpp"
#include "crnparam/decomposition.hpp"
#include "crnparam/efm.hpp"
#include "crnparam/parametrize.hpp"
#include "crnparam/translation.hpp"

#include "json.hpp"

namespace crnparam {

using Json = nlohmann::ordered_json;

Json network_to_json(const ReactionNetwork& net);
ReactionNetwork network_from_json(const Json& j);
Json summary_to_json(const StructuralSummary& s);
Json matrix_to_json(const RationalMatrix& m);
// `cols` sizes an empty matrix.
RationalMatrix matrix_from_json(const Json& j, std::size_t cols);
Json decomposition_to_json(const ReactionNetwork& net, const Decomposition& d);
Json modes_to_json(const ReactionNetwork& block, const FluxModeSet& modes);
FluxModeSet modes_from_json(const ReactionNetwork& block, const Json& j);
Json graph_to_json(const ReactionNetwork& block, const ReactionGraph& g);
Json gcrn_to_json(const Gcrn& g);
Gcrn gcrn_from_json(const Json& j);
Json gcrn_summary_to_json(const GcrnSummary& s);
Json power_product_tree(const SymbolicPowerProduct& p, const std::vector<std::string>& free_symbols);
Json parametrization_to_json(const EquilibriumParametrization& p);
EquilibriumParametrization parametrization_from_json(const Json& j);
Json verification_to_json(const VerificationReport& r);
Json acr_to_json(const AcrReport& r, const std::vector<std::string>& free_symbols);
Json timing_to_json(const TimingReport& t);

}  // namespace crnparam
