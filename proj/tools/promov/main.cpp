// promov: check movability-type properties of inverse systems from the command line.

#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace promov::cli;

namespace {

const CLI::Range kPositive(1, 1 << 20);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Movability of inverse systems: validate instances, check properties, compose morphisms."};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "text";

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) {
            cmd->add_option("input", config.input, "Instance document (JSON)");
            cmd->add_option("--family", config.family, "Sequence family instead of a file, e.g. doubling:factor=2");
            cmd->add_option("--target-family", config.target_family, "Target sequence family for --morphism-family");
            cmd->add_option("--morphism-family", config.morphism_family, "Morphism family, e.g. reduction");
        }
        cmd->add_option("--horizon-mu", config.horizon.mu_max, "Last mu examined")->check(kPositive);
        cmd->add_option("--horizon-lambda", config.horizon.lambda_max, "Probed lambda")->check(kPositive);
        cmd->add_option("--horizon-muprime", config.horizon.muprime_max, "Last deeper index")
            ->check(kPositive);
        cmd->add_option("--cone-depth", config.horizon.cone_max, "Depth of truncated cones")
            ->check(kPositive);
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "structured"}));
        cmd->add_option("--threads", config.threads, "Worker threads for independent mu")->check(kPositive);
    };

    auto* validate = app.add_subcommand("validate", "Check the axioms of the systems and morphisms in a document");
    add_common(validate, true);

    auto* check = app.add_subcommand("check", "Decide a property of the morphism (or of the system)");
    check->add_option("property", config.property,
                      "movable, strongly-movable, uniformly-movable, co-movable, strongly-co-movable, "
                      "uniformly-co-movable, ml, c0-movable, c0-uniformly-movable")
        ->required();
    add_common(check, true);
    check->add_flag("--oracle", config.oracle, "Use the brute-force enumeration oracle (finite instances)");

    auto* compose = app.add_subcommand("compose", "Compose the morphism with the document's second morphism");
    add_common(compose, true);

    auto* equiv = app.add_subcommand("equiv", "Decide whether the two morphisms of a document are equivalent");
    add_common(equiv, true);

    auto* demo = app.add_subcommand("demo", "Walk through the dyadic example and a seeded random instance");
    add_common(demo, false);
    demo->add_option("--seed", config.seed, "Seed of the random instance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }
    config.format = format == "structured" ? Format::Structured : Format::Text;

    CommandResult r;
    if (*validate) r = cmd_validate(config);
    else if (*check) r = cmd_check(config);
    else if (*compose) r = cmd_compose(config);
    else if (*equiv) r = cmd_equiv(config);
    else r = cmd_demo(config);

    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
