#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fdm/commands.hpp"

namespace {

// Opens --out when given, otherwise stdout.
struct OutStream {
    std::ofstream file;
    std::ostream* os = &std::cout;

    bool open(const std::string& path) {
        if (path.empty()) return true;
        file.open(path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file: " << path << "\n";
            return false;
        }
        os = &file;
        return true;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FD-method solver for scalar first-order Cauchy problems"};
    app.require_subcommand(1);

    fdm::CheckOptions check_opt;
    auto* check = app.add_subcommand("check", "verify the convergence-theorem conditions");
    check->add_option("file", check_opt.file, "problem file")->required();
    check->add_option("--u-box", check_opt.u_box, "half width of the u sampling box");
    check->add_option("--x-samples", check_opt.x_samples, "x sample count");
    check->add_option("--u-samples", check_opt.u_samples, "u sample count");

    fdm::SolveOptions solve_opt;
    std::string solve_out;
    auto* solve = app.add_subcommand("solve", "run the FD-method and emit CSV");
    solve->add_option("file", solve_opt.file, "problem file")->required();
    solve->add_option("--m", solve_opt.m, "series order");
    solve->add_option("--quad", solve_opt.quad_override, "samples per subinterval");
    solve->add_option("--out", solve_out, "CSV output path");

    fdm::SolveOptions adm_opt;
    std::string adm_out;
    std::vector<double> adm_window;
    auto* adm = app.add_subcommand("adm", "run the ADM baseline and emit CSV");
    adm->add_option("file", adm_opt.file, "problem file")->required();
    adm->add_option("--m", adm_opt.m, "series order");
    adm->add_option("--quad", adm_opt.quad_override, "samples per subinterval");
    adm->add_option("--window", adm_window, "restrict output to [a,b]")->expected(2);
    adm->add_option("--out", adm_out, "CSV output path");

    fdm::CompareOptions cmp_opt;
    std::string cmp_out;
    std::vector<double> cmp_window;
    auto* cmp = app.add_subcommand("compare", "FD vs ADM sup errors against exact/reference");
    cmp->add_option("file", cmp_opt.file, "problem file")->required();
    cmp->add_option("--m", cmp_opt.m, "series order");
    cmp->add_option("--quad", cmp_opt.quad_override, "samples per subinterval");
    cmp->add_option("--window", cmp_window, "comparison window [a,b]")->expected(2);
    cmp->add_option("--ref-tol", cmp_opt.ref_tol, "reference integrator tolerance");
    cmp->add_option("--out", cmp_out, "CSV output path");

    fdm::RadiusOptions rad_opt;
    double rad_sigma = 0.0;
    auto* rad = app.add_subcommand("radius", "convergence-radius certification");
    rad->add_option("file", rad_opt.file, "problem file")->required();
    auto* sig = rad->add_option("--sigma", rad_sigma, "fixed sigma (overrides the derived value)");
    rad->add_option("--Q", rad_opt.Q, "value of the undetermined constant Q");
    rad->add_option("--u-box", rad_opt.u_box, "half width of the u sampling box");

    fdm::PlotOptions plot_opt;
    auto* plot = app.add_subcommand("plot", "render CSV columns as an SVG line plot");
    plot->add_option("csv", plot_opt.csv_file, "input CSV")->required();
    plot->add_option("--svg", plot_opt.svg_file, "output SVG path")->required();
    plot->add_option("--cols", plot_opt.columns, "columns to plot")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    if (check->parsed()) return fdm::cmd_check(check_opt, std::cout, std::cerr);
    if (solve->parsed()) {
        OutStream os;
        if (!os.open(solve_out)) return fdm::kParseOrIo;
        return fdm::cmd_solve(solve_opt, *os.os, std::cerr);
    }
    if (adm->parsed()) {
        if (adm_window.size() == 2) {
            adm_opt.window_a = adm_window[0];
            adm_opt.window_b = adm_window[1];
        }
        OutStream os;
        if (!os.open(adm_out)) return fdm::kParseOrIo;
        return fdm::cmd_adm(adm_opt, *os.os, std::cerr);
    }
    if (cmp->parsed()) {
        if (cmp_window.size() == 2) {
            cmp_opt.window_a = cmp_window[0];
            cmp_opt.window_b = cmp_window[1];
        }
        OutStream os;
        if (!os.open(cmp_out)) return fdm::kParseOrIo;
        return fdm::cmd_compare(cmp_opt, *os.os, std::cout, std::cerr);
    }
    if (rad->parsed()) {
        if (sig->count() > 0) rad_opt.sigma = rad_sigma;
        return fdm::cmd_radius(rad_opt, std::cout, std::cerr);
    }
    if (plot->parsed()) return fdm::cmd_plot(plot_opt, std::cerr);
    return fdm::kParseOrIo;
}
