#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fdm {

// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kParseOrIo = 1,
    kConditionFailure = 2,
    kAnalysisFailure = 3,
    kSolverFailure = 4,
};

struct CheckOptions {
    std::string file;
    double u_box = 10.0;
    std::size_t x_samples = 2001;
    std::size_t u_samples = 2001;
};

struct SolveOptions {
    std::string file;
    int m = -1;  // -1: use the file's default
    int quad_override = 0;
    std::optional<double> window_a, window_b;
};

struct CompareOptions {
    std::string file;
    int m = -1;
    int quad_override = 0;
    std::optional<double> window_a, window_b;
    double ref_tol = 1e-10;
};

struct RadiusOptions {
    std::string file;
    std::optional<double> sigma;  // fixed sigma; otherwise derived from the theory constants
    double Q = 0.0;
    double u_box = 10.0;
};

struct PlotOptions {
    std::string csv_file;
    std::string svg_file;
    std::vector<std::string> columns;
};

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveOptions& opt, std::ostream& csv, std::ostream& err);
int cmd_adm(const SolveOptions& opt, std::ostream& csv, std::ostream& err);
int cmd_compare(const CompareOptions& opt, std::ostream& csv, std::ostream& summary,
                std::ostream& err);
int cmd_radius(const RadiusOptions& opt, std::ostream& out, std::ostream& err);
int cmd_plot(const PlotOptions& opt, std::ostream& err);

}  // namespace fdm
