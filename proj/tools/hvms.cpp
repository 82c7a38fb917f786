// hvms: command-line front end for Hankel pair verification, realization,
// evaluation and expansion certification.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <hvms/cli.hpp>

int main(int argc, char** argv)
{
    using namespace hvms::cli;

    CLI::App app{"Hankel pairs, type-I realizations and expansions at infinity"};
    app.set_help_flag("-h,--help", "Print this help message and exit");

    std::string command, rays, residues;
    std::vector<std::string> points;
    double tol_psd = 0, tol_rank = 0, tol_decay = 0;
    int order = 0, N = 0;
    JobConfig cfg;

    std::string names;
    for (const auto& [n, c] : command_names)
        names += (names.empty() ? "" : ", ") + std::string(n);
    app.add_option("command", command, "One of: " + names)->required();
    app.add_option("-i,--input", cfg.input, "Input JSON document");
    app.add_option("-o,--output", cfg.output, "Report destination (default: stdout)");
    auto* o_psd   = app.add_option("--tol-psd", tol_psd, "Relative PSD slack");
    auto* o_rank  = app.add_option("--tol-rank", tol_rank, "Relative rank cut-off");
    auto* o_decay = app.add_option("--tol-decay", tol_decay, "Certification threshold");
    auto* o_rays  = app.add_option("--rays", rays, "Ray directions \"b1:b2,...\"");
    app.add_option("--smin", cfg.grid.smin, "Smallest s on each ray");
    auto* o_smax = app.add_option("--smax", cfg.grid.smax,
                                  "Largest s on each ray (default 1e5 for realizations, 1e6 for specs)");
    app.add_option("--sratio", cfg.grid.ratio, "Geometric ratio of the s grid");
    auto* o_order = app.add_option("--order", order, "Expansion order for certify");
    auto* o_N     = app.add_option("--N", N, "Size for example and extract");
    app.add_option("--seed", cfg.seed, "Seed for generated examples");
    app.add_option("--point", points, "Evaluation point \"re1,im1,re2,im2\" (repeatable)");
    app.add_option("--csv", cfg.csv, "Write the decay table as CSV");
    app.add_option("--residues", cfg.residues, "Residue table for certify");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input_error;
    }

    try
    {
        cfg.command = parse_command(command);
        if (*o_psd)
            cfg.tol_psd = tol_psd;
        if (*o_rank)
            cfg.tol_rank = tol_rank;
        if (*o_decay)
            cfg.tol_decay = tol_decay;
        cfg.smax_given = o_smax->count() > 0;
        if (*o_rays)
            cfg.rays = parse_rays(rays);
        if (*o_order)
            cfg.order = order;
        if (*o_N)
            cfg.N = N;
        for (const auto& p : points)
            cfg.points.push_back(parse_point(p));
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input_error;
    }
    return run(cfg);
}
