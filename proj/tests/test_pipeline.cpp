#include "doctest.h"
#include "helpers.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace crnparam;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string network_text(const std::string& name) { return read_file(testing::data_dir + "/" + name + ".crn"); }

PipelineResult run(const std::string& input, const std::string& stage = "all") {
    PipelineConfig c;
    c.stage = stage;
    c.samples = 30;
    return run_pipeline(input, c);
}

Json without_timing(Json j) {
    j.erase("timing");
    return j;
}

int cli(const std::string& args) {
    std::string cmd = std::string("\"") + CRNPARAM_CLI + "\" " + args + " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_SUITE("pipeline") {
    TEST_CASE("histidine kinase full run") {
        PipelineResult r = run(network_text("histidine_kinase"));
        REQUIRE(r.exit_code == exit_ok);
        const Json& j = r.report;
        CHECK(j["schema_version"] == schema_version);
        for (const auto& s : stage_names()) CHECK(j.contains(s));
        CHECK(j["efm"]["blocks"].size() == 1);
        CHECK(j["efm"]["blocks"][0]["flux_modes"]["modes"].size() == 2);
        CHECK(j["translate"]["ok"] == true);
        CHECK(j["translate"]["blocks"][0]["status"] == "found");
        CHECK(j["verify"]["passed"] == true);
        CHECK(j["status"]["exit_code"] == 0);
        CHECK(j["timing"]["stages"].size() == stage_names().size());
    }

    TEST_CASE("two-protein network translates two of five blocks") {
        PipelineResult r = run(network_text("two_protein"));
        REQUIRE(r.exit_code == exit_ok);
        const Json& blocks = r.report["translate"]["blocks"];
        REQUIRE(blocks.size() == 5);
        int translated = 0;
        for (const auto& b : blocks) translated += b["translated"].get<bool>();
        CHECK(translated == 2);
        CHECK(r.report["parametrize"]["kinetic_deficiency"] == 0);
    }

    TEST_CASE("network without translation exits with code 2") {
        PipelineResult r = run(network_text("no_translation"));
        CHECK(r.exit_code == exit_no_translation);
        CHECK(r.report["translate"]["ok"] == false);
        CHECK_FALSE(r.report.contains("parametrize"));
        CHECK(r.report["status"]["exit_code"] == 2);
    }

    TEST_CASE("input errors exit with code 1") {
        PipelineResult bad = run("R1: A -> B ; k1\nR2: B -> ; k2\n");
        CHECK(bad.exit_code == exit_input_error);
        CHECK(bad.message.find("2") != std::string::npos);
        CHECK(run(network_text("toy"), "simulate").exit_code == exit_input_error);
        CHECK(run("{\"schema_version\": 7, \"parse\": {}}").exit_code == exit_input_error);
        CHECK(run("{not json").exit_code == exit_input_error);
        PipelineConfig c;
        c.express = {"Nope"};
        CHECK(run_pipeline(network_text("envz_ompr"), c).exit_code == exit_input_error);
    }

    TEST_CASE("chained stages equal a full run") {
        for (const char* name : {"histidine_kinase", "envz_ompr", "toy"}) {
            CAPTURE(name);
            std::string input = network_text(name);
            Json full = without_timing(run(input).report);
            std::string state = input;
            for (const auto& s : stage_names()) {
                PipelineResult r = run(state, s);
                REQUIRE(r.exit_code == exit_ok);
                state = r.report.dump();
            }
            CHECK(without_timing(Json::parse(state)) == full);
        }
    }

    TEST_CASE("stopping early leaves later sections out") {
        PipelineResult r = run(network_text("toy"), "efm");
        REQUIRE(r.exit_code == exit_ok);
        CHECK(r.report.contains("efm"));
        CHECK_FALSE(r.report.contains("translate"));
    }

    TEST_CASE("same seed gives the same report") {
        std::string input = network_text("envz_ompr");
        CHECK(without_timing(run(input).report) == without_timing(run(input).report));
    }

    TEST_CASE("network JSON round trip") {
        for (const char* name : {"toy", "envz_ompr", "two_protein"}) {
            ReactionNetwork net = testing::load(name);
            CHECK(network_from_json(network_to_json(net)) == net);
        }
    }

    TEST_CASE("flux mode JSON round trip") {
        ReactionNetwork net = testing::load("histidine_kinase");
        FluxModeSet m = compute_efms(stoichiometric_matrix(net));
        FluxModeSet back = modes_from_json(net, modes_to_json(net, m));
        REQUIRE(back.modes.size() == m.modes.size());
        for (std::size_t i = 0; i < m.modes.size(); ++i) {
            CHECK(back.modes[i].support == m.modes[i].support);
            CHECK(back.modes[i].coordinates == m.modes[i].coordinates);
        }
        CHECK(back.unitary == m.unitary);
        CHECK(back.covers == m.covers);
    }

    TEST_CASE("GCRN JSON round trip") {
        NetworkTranslation tr = translate_by_blocks(testing::load("envz_ompr"));
        REQUIRE(tr.ok);
        Gcrn back = gcrn_from_json(gcrn_to_json(*tr.gcrn));
        CHECK(back.stoich_network == tr.gcrn->stoich_network);
        CHECK(back.alpha == tr.gcrn->alpha);
        CHECK(back.vertices.size() == tr.gcrn->vertices.size());
        CHECK(back.sigma_symbols() == tr.gcrn->sigma_symbols());
        CHECK(gcrn_to_json(back) == gcrn_to_json(*tr.gcrn));
    }

    TEST_CASE("parametrization JSON round trip") {
        EquilibriumParametrization p = express_in_species(testing::solve(testing::load("envz_ompr")));
        Json j = parametrization_to_json(p);
        EquilibriumParametrization back = parametrization_from_json(j);
        CHECK(parametrization_to_json(back) == j);
        std::map<std::string, double> v;
        std::mt19937_64 rng(3);
        for (const auto& k : p.rate_symbols) v[k] = testing::log_uniform(rng);
        for (const auto& f : p.free_parameters) v[f] = testing::log_uniform(rng);
        std::map<std::string, double> w = v;
        REQUIRE(complete_values(p, v));
        REQUIRE(complete_values(back, w));
        CHECK(evaluate_species(p, v) == evaluate_species(back, w));
    }

    TEST_CASE("command line exit codes") {
        const std::string dir = testing::data_dir + "/";
        auto out = (std::filesystem::temp_directory_path() / "crnparam_cli_test.json").string();
        CHECK(cli("--input " + dir + "histidine_kinase.crn --out " + out) == 0);
        Json j = Json::parse(read_file(out));
        CHECK(j["schema_version"] == 1);
        CHECK(j["verify"]["passed"] == true);
        CHECK(cli("--input " + dir + "toy.crn --stage translate --out " + out) == 0);
        CHECK(cli("--input " + out + " --stage verify --seed 7 --samples 10") == 0);
        CHECK(cli("--input " + dir + "does_not_exist.crn") == 1);
        CHECK(cli("--input " + dir + "toy.crn --stage bogus") == 1);
        CHECK(cli("--input " + dir + "no_translation.crn") == 2);
        CHECK(cli("--input " + dir + "envz_ompr.crn --tol 1e-30") == 3);
        std::filesystem::remove(out);
    }
}
