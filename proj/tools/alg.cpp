#include <cstdlib>
#include <iostream>
#include <unistd.h>

#include <CLI11.hpp>

#include "alg/commands.hpp"

namespace {

bool use_color() {
    if (const char* env = std::getenv("ALG_COLOR")) return std::string(env) == "1";
    return isatty(STDOUT_FILENO) != 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic calculus for almost complex Lie algebroids"};
    app.require_subcommand(0, 1);
    app.allow_extras();
    app.fallthrough();

    alg::RunOptions opt;
    std::string format = "json";
    app.add_option("--seed", opt.zero.seed, "Seed for randomized checks")->default_val(42);
    app.add_option("--samples", opt.zero.samples, "Sample points and random inputs per check")->default_val(8);
    app.add_option("--tol", opt.zero.tol, "Tolerance for numeric checks")->default_val(1e-9);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->default_val("json");
    app.add_flag("--timing", opt.timing, "Include wall time in the report");

    std::string target;
    bool list = false;
    std::string selected;
    for (const std::string& name : alg::command_names()) {
        CLI::App* sub = app.add_subcommand(name, alg::command_summary(name));
        sub->callback([&selected, name] { selected = name; });
        if (alg::command_needs_target(name))
            sub->add_option("target", target, "Fixture expression or document path")->required();
        if (name == "levi-civita") sub->add_flag("--complex-frame", opt.complex_frame, "Also build the complex-frame coefficients");
        if (name == "sectional") sub->add_option("--direction", opt.direction, "Section: e<k> or comma separated components");
        if (name == "chern") {
            sub->add_option("--order", opt.orders, "Order k, repeatable")->default_val(std::vector<int>{1});
            sub->add_option("--source", opt.source, "Forms to emit")->check(CLI::IsMember({"iphi", "block", "both"}));
        }
        if (name == "product") sub->add_option("other", opt.other, "Second factor")->required();
        if (name == "restrict") sub->add_option("--projector", opt.projector, "Projector file")->required();
        if (name == "fixtures") sub->add_flag("--list", list, "List the built-in fixtures");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return alg::kExitInputInvalid;
    }
    if (!app.remaining().empty()) {
        std::cerr << (selected.empty() ? "unknown command '" : "unexpected argument '") << app.remaining().front()
                  << "'\n";
        return alg::kExitInputInvalid;
    }
    if (selected.empty()) {
        std::cerr << app.help();
        return alg::kExitInputInvalid;
    }

    alg::CommandResult res = alg::run_command(selected, target, opt);
    if (format == "text")
        std::cout << alg::render_text(res.report, use_color());
    else
        std::cout << res.report.dump(2) << "\n";
    return res.exit_code;
}
