#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "chiralp1/reports.hpp"

namespace {

using chiralp1::RunConfig;

// Exit codes: 0 verified, 1 a checked property failed, 2 unusable request.
constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitBadConfig = 2;

int emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << out_path << "\n";
        return kExitBadConfig;
    }
    out << payload;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact two-chart model of the chiral differential forms on the "
        "projective line: verification suites, cohomology characters, and "
        "residue pairing tables."};
    app.require_subcommand(1);

    RunConfig config;
    std::vector<std::string> suite_args;
    std::string out_path;

    auto add_common = [&](CLI::App* cmd, bool with_suites) {
        cmd->add_option("--max-weight", config.max_weight,
                        "Truncate at this conformal weight")
            ->capture_default_str();
        cmd->add_option("--degree-pad", config.degree_pad,
                        "Extra degree window beyond the truncation weight")
            ->capture_default_str();
        cmd->add_option("--format", config.format, "Output format: plain, json, or csv")
            ->capture_default_str();
        cmd->add_option("--seed", config.seed, "Seed for the sampled property checks")
            ->capture_default_str();
        cmd->add_flag("--force-large", config.force_large,
                      "Allow truncation weights past the soft cap");
        cmd->add_option("--out", out_path, "Write the report to this file instead of stdout");
        if (with_suites)
            cmd->add_option("--suite", suite_args,
                            "Run only these suites (repeatable): algebra, module, fields, "
                            "pairing, cohomology, sl2");
    };

    CLI::App* verify = app.add_subcommand("verify", "Run the verification suites");
    CLI::App* characters =
        app.add_subcommand("characters", "Cohomology dimensions by weight and fermion number");
    CLI::App* pairing =
        app.add_subcommand("pairing-table", "Residue pairing blocks between sections and classes");
    CLI::App* cohomology =
        app.add_subcommand("cohomology", "Per-sector cohomology with class representatives");
    add_common(verify, true);
    add_common(characters, false);
    add_common(pairing, false);
    add_common(cohomology, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadConfig;
    }

    config.suites = std::set<std::string>(suite_args.begin(), suite_args.end());
    std::string rejection = chiralp1::validate_config(config);
    if (!rejection.empty()) {
        std::cerr << rejection << "\n";
        return kExitBadConfig;
    }
    if (config.max_weight > 4)
        std::cerr << "note: weight " << config.max_weight
                  << " runs are exponentially large; expect a long wait\n";

    if (verify->parsed()) {
        chiralp1::VerifyReport report = chiralp1::run_verify(config);
        int rc = emit(chiralp1::render_verify(report, config.format), out_path);
        if (rc != kExitOk) return rc;
        if (!report.all_passed) {
            std::cerr << "verification failed: " << report.first_failure << "\n";
            return kExitFailed;
        }
        return kExitOk;
    }
    if (characters->parsed()) {
        chiralp1::CharacterTable table = chiralp1::character_table(config);
        int rc = emit(chiralp1::render_characters(table, config.format), out_path);
        if (rc != kExitOk) return rc;
        if (!table.duality_symmetric || !table.stabilized) {
            std::cerr << "character table violates duality or window stability\n";
            return kExitFailed;
        }
        return kExitOk;
    }
    if (pairing->parsed()) {
        chiralp1::PairingTable table = chiralp1::pairing_table(config);
        int rc = emit(chiralp1::render_pairing(table, config.format), out_path);
        if (rc != kExitOk) return rc;
        if (!table.all_full_rank) {
            std::cerr << "a pairing block is degenerate\n";
            return kExitFailed;
        }
        return kExitOk;
    }
    chiralp1::CohomologyTable table = chiralp1::cohomology_table(config);
    int rc = emit(chiralp1::render_cohomology(table, config.format), out_path);
    if (rc != kExitOk) return rc;
    if (!table.all_stable) {
        std::cerr << "a sector failed to stabilize in the window\n";
        return kExitFailed;
    }
    return kExitOk;
}
