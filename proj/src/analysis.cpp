#include "crnparam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace crnparam {

namespace {

double log_uniform(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return std::pow(10.0, u(rng));
}

std::vector<std::string> sampled_rates(const EquilibriumParametrization& p) {
    std::vector<std::string> out;
    for (const auto& k : p.rate_symbols)
        if (std::none_of(p.solved.begin(), p.solved.end(), [&](const SolvedSymbol& s) { return s.symbol == k; }))
            out.push_back(k);
    return out;
}

}  // namespace

VerificationReport verify_equilibrium(const ReactionNetwork& net, const EquilibriumParametrization& p, std::size_t samples,
                                      double tolerance, std::uint64_t seed) {
    VerificationReport rep;
    rep.seed = seed;
    rep.samples = samples;
    rep.tolerance = tolerance;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> species_map;
    for (const auto& s : net.species()) species_map.push_back(p.species_index(s));
    const std::vector<std::string> rates = sampled_rates(p);
    for (std::size_t n = 0; n < samples; ++n) {
        std::map<std::string, double> values;
        for (const auto& k : rates) values[k] = log_uniform(rng);
        for (const auto& f : p.free_parameters) values[f] = log_uniform(rng);
        if (!complete_values(p, values)) {
            ++rep.skipped;
            continue;
        }
        std::vector<double> xp = evaluate_species(p, values);
        std::vector<double> x(net.species_count());
        bool finite = true;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = xp[species_map[i]];
            if (!std::isfinite(x[i]) || x[i] <= 0) finite = false;
        }
        if (!finite) {
            ++rep.skipped;
            continue;
        }
        RateMap rate_values;
        for (const auto& r : net.reactions())
            if (!r.phantom) rate_values[r.rate_symbol] = values.at(r.rate_symbol);
        std::vector<double> flux = reaction_fluxes(net, rate_values, x);
        std::vector<double> f = ode_rhs(net, rate_values, x);
        double scale = 0, worst = 0;
        for (double v : flux) scale = std::max(scale, std::fabs(v));
        for (double v : f) worst = std::max(worst, std::fabs(v));
        double rel = scale > 0 ? worst / scale : worst;
        rep.residuals.push_back(rel);
        rep.max_residual = std::max(rep.max_residual, rel);
    }
    rep.passed = !rep.residuals.empty() && rep.max_residual <= tolerance;
    return rep;
}

AcrReport detect_acr(const EquilibriumParametrization& p, const std::string& species, std::uint64_t seed, std::size_t draws) {
    AcrReport rep;
    rep.species = species;
    const std::size_t j = p.species_index(species);
    const SymbolicPowerProduct& e = p.expressions[j];
    SymbolSet undetermined(p.free_parameters.begin(), p.free_parameters.end());
    for (const auto& u : p.numeric_unknowns()) undetermined.insert(u);
    bool free_exponents_zero =
        std::all_of(e.free_exponents.begin(), e.free_exponents.end(), [](const Rational& q) { return sgn(q) == 0; });
    bool rate_only = true;
    for (const auto& s : e.symbols())
        if (undetermined.count(s)) rate_only = false;
    rep.symbolic = free_exponents_zero && rate_only;
    if (rep.symbolic) rep.witness = e;

    std::mt19937_64 rng(seed);
    std::map<std::string, double> base;
    for (const auto& k : sampled_rates(p)) base[k] = log_uniform(rng);
    double lo = INFINITY, hi = 0;
    for (std::size_t d = 0; d < draws; ++d) {
        std::map<std::string, double> values = base;
        for (const auto& f : p.free_parameters) values[f] = log_uniform(rng);
        if (!complete_values(p, values)) continue;
        double v = e.evaluate(values, p.free_symbols);
        if (!std::isfinite(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        ++rep.draws;
    }
    rep.spread = rep.draws > 0 && hi > 0 ? (hi - lo) / hi : INFINITY;
    rep.numeric = rep.spread <= 1e-9;
    rep.is_acr = rep.symbolic;
    return rep;
}

std::string TimingReport::table() const {
    std::string out;
    char buf[128];
    for (const auto& s : stages) {
        std::snprintf(buf, sizeof buf, "%-12s %10.6f s\n", s.stage.c_str(), s.seconds);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "%-12s %10.6f s\n", "total", total);
    return out + buf;
}

TimingReport timing_report(const std::vector<StageTiming>& stages) {
    TimingReport t;
    t.stages = stages;
    for (const auto& s : stages) t.total += s.seconds;
    return t;
}

}  // namespace crnparam
