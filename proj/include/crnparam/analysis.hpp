#pragma once

#include "crnparam/network.hpp"
#include "crnparam/parametrize.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crnparam {

struct VerificationReport {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    double tolerance = 0;
    std::vector<double> residuals;  // relative residual per evaluated sample
    std::size_t skipped = 0;
    double max_residual = 0;
    bool passed = false;
};

// Samples rate constants and free parameters log-uniformly in [1e-2, 1e2] and checks
// max_i |f_i(x)| / max_k |v_k(x)| on the original network.
VerificationReport verify_equilibrium(const ReactionNetwork& net, const EquilibriumParametrization& p, std::size_t samples,
                                      double tolerance, std::uint64_t seed);

struct AcrReport {
    std::string species;
    bool is_acr = false;
    bool symbolic = false;
    bool numeric = false;
    double spread = 0;  // (max - min) / max over the draws
    std::size_t draws = 0;
    std::optional<SymbolicPowerProduct> witness;
};

AcrReport detect_acr(const EquilibriumParametrization& p, const std::string& species, std::uint64_t seed = 42,
                     std::size_t draws = 50);

struct StageTiming {
    std::string stage;
    double seconds = 0;
};

struct TimingReport {
    std::vector<StageTiming> stages;
    double total = 0;
    std::string table() const;
};

TimingReport timing_report(const std::vector<StageTiming>& stages);

}  // namespace crnparam
