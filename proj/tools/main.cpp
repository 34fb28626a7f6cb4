// qdeco command-line driver. Exit codes: 0 success, 2 invalid input or
// configuration, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qdeco/commands.hpp"
#include "qdeco/errors.hpp"
#include "qdeco/version.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qdeco::ValidationError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void deliver(const qdeco::RunConfig& cfg, const std::string& payload, bool quiet) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw qdeco::ValidationError("cannot open output file: " + cfg.out_path);
    out << payload;
    if (!out) throw qdeco::ValidationError("failed writing output file: " + cfg.out_path);
    if (!quiet) std::cerr << "wrote " << cfg.out_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdeco: qubit decoherence via resonance theory, with a finite-mode oracle"};
    app.set_version_flag("--version", std::string("qdeco ") + qdeco::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    bool compare = false;
    bool quiet = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format, "output format: csv or json");
        sub->add_flag("--quiet", quiet, "suppress informational messages on stderr");
    };

    CLI::App* c_res = app.add_subcommand("resonances", "resonance data for one parameter point");
    CLI::App* c_evo = app.add_subcommand("evolve", "leading-order reduced evolution");
    CLI::App* c_ora = app.add_subcommand("oracle", "finite-mode reference evolution");
    CLI::App* c_swp = app.add_subcommand("sweep", "resonance data over a parameter sweep");
    CLI::App* c_xi = app.add_subcommand("xi", "tabulate the spectral overlap function");
    CLI::App* c_sb = app.add_subcommand("spinboson", "spin-boson to two-level parameter map");
    for (CLI::App* sub : {c_res, c_evo, c_ora, c_swp, c_xi, c_sb}) add_common(sub);
    c_ora->add_flag("--compare", compare, "emit leading-order columns and rate comparison");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        qdeco::RunConfig cfg = qdeco::parse_config(slurp(config_path));
        if (!format.empty()) {
            if (format != "csv" && format != "json") {
                throw qdeco::ValidationError("--format must be csv or json");
            }
            cfg.out_format = format;
        }
        if (!out_path.empty()) cfg.out_path = out_path;

        std::string payload;
        if (c_res->parsed()) {
            payload = qdeco::cmd_resonances(cfg);
        } else if (c_evo->parsed()) {
            payload = qdeco::cmd_evolve(cfg);
        } else if (c_ora->parsed()) {
            payload = qdeco::cmd_oracle(cfg, compare);
        } else if (c_swp->parsed()) {
            payload = qdeco::cmd_sweep(cfg);
        } else if (c_xi->parsed()) {
            payload = qdeco::cmd_xi(cfg);
        } else {
            payload = qdeco::cmd_spinboson(cfg);
        }
        deliver(cfg, payload, quiet);
        return 0;
    } catch (const qdeco::ValidationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qdeco::NumericalFailure& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
