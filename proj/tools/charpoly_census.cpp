// charpoly-census: count matrices or quaternion order elements with a given
// characteristic polynomial and compare with the predicted asymptotic constant.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cpcensus/error.hpp"
#include "cpcensus/pipeline.hpp"

using namespace cpcensus;

int main(int argc, char ** argv)
{
    CLI::App app{"Census of integral elements with a prescribed characteristic polynomial"};
    app.require_subcommand(1, 1);

    std::string spec_path, t_max, out_path;
    unsigned grid = 0, threads = 0;
    std::vector<CLI::App *> subs;
    for (auto const * name : commands) {
        auto * sub = app.add_subcommand(name);
        sub->add_option("--spec", spec_path, "problem spec (JSON)")->required();
        sub->add_option("--t-max", t_max, "largest norm bound T; integer or a/b");
        sub->add_option("--grid", grid, "number of grid points T_max / 2^k")->check(CLI::Range(1, 64));
        sub->add_option("--threads", threads, "census worker threads")->check(CLI::Range(1, 256));
        sub->add_option("--out", out_path, "write the census CSV here");
        subs.push_back(sub);
    }
    subs[0]->description("field invariants d, r1, r2, w, h, R");
    subs[1]->description("one line per relevant prime");
    subs[2]->description("asymptotic constant with its factors");
    subs[3]->description("census CSV (stdout unless --out)");
    subs[4]->description("census plus constant, convergence table");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const & e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const & e) {
        return app.exit(e);
    } catch (CLI::ParseError const & e) {
        std::string msg = e.what();
        for (auto & c : msg)
            if (c == '\n')
                c = ' ';
        std::cerr << "reason=invalid_argument detail=" << msg << '\n';
        return exit_code(Reason::invalid_argument);
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        Overrides ov;
        if (!t_max.empty())
            ov.t_max = parse_rational(t_max);
        if (grid)
            ov.grid_points = grid;
        if (threads)
            ov.threads = threads;
        if (!out_path.empty())
            ov.out_path = out_path;
        ProblemSpec spec = load_spec(spec_path);
        return run_pipeline(command, spec, ov, std::cout, std::cerr);
    } catch (Error const & e) {
        std::cerr << e.machine_line() << '\n';
        return exit_code(e.reason());
    }
}
