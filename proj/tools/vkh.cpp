#include "vkh/cli.hpp"
#include "vkh/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Invariants and Khovanov-type homology of virtual links given in PD notation"};
    app.require_subcommand(1);

    vkh::Request req;
    int jobs = 0;

    struct Command {
        const char* name;
        const char* help;
    };
    const Command commands[] = {
        {"bracket", "Kauffman bracket"},
        {"jones", "Jones polynomial of the labelled orientation"},
        {"ujones", "unoriented Jones polynomial for a parity scheme"},
        {"kh", "oriented Khovanov homology"},
        {"ukh", "unoriented Khovanov homology"},
        {"lee", "unoriented Lee homology"},
        {"decompose", "multi-core decomposition"},
        {"invariants", "parities, linking numbers, cores and lambda~"},
        {"selftest", "run built-in consistency checks"},
    };
    for (const Command& s : commands) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->callback([&req, name = std::string(s.name)] { req.subcommand = name; });
        if (std::string(s.name) != "selftest") {
            sub->add_option("--input", req.input, "inline PD code, e.g. \"PD[X[4,3,1,2],X[1,4,2,3]]\"");
            sub->add_option("file", req.input_path, "file holding a PD code ('-' for stdin)");
        }
        sub->add_option("--ring", req.ring, "coefficients for homology")
            ->check(CLI::IsMember({"z", "q", "f2"}));
        sub->add_option("--scheme", req.scheme, "component parity scheme")
            ->check(CLI::IsMember({"multicore", "firstcore", "allone", "none"}));
        sub->add_option("--format", req.format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--incorporate-sign", req.incorporate_sign, "add l~ to the homological shift of ukh");
        sub->add_flag("--debug-dump", req.debug_dump, "write the resolved cube to stderr");
        sub->add_option("--jobs", jobs, "worker threads (default: VKH_JOBS, then all cores)")
            ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        req.jobs = vkh::resolve_jobs(jobs);
    } catch (const vkh::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return vkh::run(req, std::cout, std::cerr);
}
