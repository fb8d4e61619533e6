#include "cuphom/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"cuphom: cup homology, hypercube spectral sequences and model knot surgery"};
    app.require_subcommand(1);
    app.fallthrough();

    cuphom::RunConfig cfg;
    std::string input;
    long long framing = 0;

    app.add_option("--ring", cfg.ring, "coefficient ring: f2, q or both")
        ->check(CLI::IsMember({"f2", "q", "both"}));
    app.add_option("--format", cfg.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", cfg.seed, "seed for randomized property suites");

    long long truncation = 0;
    int pages = 0;
    std::size_t count = 0;

    auto* cup = app.add_subcommand("cup", "homology rank of a cup complex from a three-form");
    cup->add_option("input", input, "three-form JSON file")->required();

    auto* surg = app.add_subcommand("surgery-knot", "integer surgery on a model knot complex");
    surg->add_option("input", input, "model knot complex JSON file")->required();
    surg->add_option("-n,--framing", framing, "surgery framing")->required();
    auto* trunc_opt = surg->add_option("--truncation", truncation, "truncation bound override");

    auto* hyp = app.add_subcommand("hypercube", "relation check and spectral sequence pages");
    hyp->add_option("input", input, "hypercube JSON file")->required();
    auto* pages_opt = hyp->add_option("--pages", pages, "compute page dimensions up to this page");
    hyp->add_flag("--check", cfg.check_only, "relation check only");

    auto* red = app.add_subcommand("reduce", "complexity reduction trace of a three-form");
    red->add_option("input", input, "three-form JSON file")->required();

    auto* props = app.add_subcommand("properties", "randomized property suites");
    auto* count_opt = props->add_option("--count", count, "cases per suite");

    CLI11_PARSE(app, argc, argv);

    if (*trunc_opt) cfg.truncation = truncation;
    if (*pages_opt) cfg.pages = pages;
    if (*count_opt) cfg.count = count;

    if (cup->parsed()) return cuphom::run_cup(input, cfg, std::cout, std::cerr);
    if (surg->parsed()) return cuphom::run_surgery_knot(input, framing, cfg, std::cout, std::cerr);
    if (hyp->parsed()) return cuphom::run_hypercube(input, cfg, std::cout, std::cerr);
    if (red->parsed()) return cuphom::run_reduce(input, cfg, std::cout, std::cerr);
    if (props->parsed()) return cuphom::run_properties(cfg, std::cout, std::cerr);
    return 1;
}
