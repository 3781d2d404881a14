// Command-line front end for the experiments.
//
//   maglap <command> [--config file.json] [--out dir] [--seed n] [--refine r]
//                    [--tol name=value]...
//
// Exit status: 0 all checks pass, 1 an inequality or identity fails beyond
// its tolerance, 2 invalid input or configuration, 3 solver failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maglap/harness/experiments.hpp"

namespace h = maglap::harness;

namespace {

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> refine;
    std::vector<std::string> tol;
};

int run(const std::string& command, const Options& o) {
    h::ExperimentConfig cfg = h::default_config(command);
    if (!o.config.empty()) {
        const auto j = h::load_json_file(o.config);
        if (j.is_object() && j.contains("command") && j.at("command") != command)
            throw maglap::ConfigurationError("config file is for command '" +
                                             j.at("command").get<std::string>() + "'");
        h::apply_json(cfg, j);
    }
    if (o.seed) cfg.seed = *o.seed;
    h::assign_seeds(cfg);
    if (o.refine) {
        if (*o.refine < 1) throw maglap::ConfigurationError("--refine must be >= 1");
        cfg.refine = {*o.refine - 1, *o.refine};
    }
    for (const auto& t : o.tol) cfg.tol.set_assignment(t);
    if (!o.out.empty()) cfg.out = o.out;
    h::validate(cfg);

    const h::Result res = h::run_command(cfg);
    const std::filesystem::path dir(cfg.out);
    const std::string resolved = h::to_json(cfg).dump(2) + "\n";
    for (const auto& [stem, table] : res.tables) {
        h::write_file(dir / (stem + ".csv"), table.str());
        h::write_file(dir / (stem + ".config.json"), resolved);
    }
    const std::string text = res.report.text();
    h::write_file(dir / (command + ".report.txt"), text);
    std::cout << text;
    return static_cast<int>(res.report.outcome());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalue inequalities for the magnetic Laplacian on convex domains"};
    app.require_subcommand(1);
    Options o;
    const char* commands[] = {"disk-curves", "counting", "polygon-sweep",
                              "cylinder",    "invariants", "semicontinuity"};
    for (const char* name : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", o.config, "JSON configuration file");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--seed", o.seed, "base seed for random domains");
        sub->add_option("--refine", o.refine, "finest uniform refinement level");
        sub->add_option("--tol", o.tol, "tolerance override name=value")->take_all();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, o);
    } catch (const maglap::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const maglap::AssemblyError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const maglap::EmptySystemError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const maglap::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
