#include "crnparam/pipeline.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"Positive equilibrium parametrizations of mass-action reaction networks"};
    std::string input, out;
    crnparam::PipelineConfig config;
    app.add_option("--input", input, "Network file or JSON state from an earlier stage ('-' for stdin)")->required();
    app.add_option("--out", out, "Output JSON file (default: stdout)");
    app.add_option("--seed", config.seed, "Random seed for sampling")->capture_default_str();
    app.add_option("--tol", config.tolerance, "Relative residual tolerance")->capture_default_str();
    app.add_option("--stage", config.stage, "Last stage to run")
        ->check(CLI::IsMember({"all", "parse", "decompose", "efm", "translate", "parametrize", "verify", "acr"}))
        ->capture_default_str();
    app.add_option("--blp-budget", config.blp_budget, "Node budget for the reaction graph search")->capture_default_str();
    app.add_option("--samples", config.samples, "Verification samples")->capture_default_str();
    app.add_option("--express", config.express, "Species to use as free parameters, in order of preference");
    app.add_option("--acr-species", config.acr_species, "Species checked for absolute concentration robustness");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : crnparam::exit_input_error;
    }

    std::string text;
    if (input == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(input);
        if (!in) {
            std::cerr << "error: cannot open " << input << "\n";
            return crnparam::exit_input_error;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    crnparam::PipelineResult res = crnparam::run_pipeline(text, config);
    if (!res.message.empty()) std::cerr << "error: " << res.message << "\n";
    if (!res.report.is_null()) {
        std::string dump = res.report.dump(2) + "\n";
        if (out.empty()) {
            std::cout << dump;
        } else {
            std::ofstream o(out);
            if (!o) {
                std::cerr << "error: cannot write " << out << "\n";
                return crnparam::exit_input_error;
            }
            o << dump;
        }
    }
    return res.exit_code;
}
