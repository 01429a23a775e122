#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fdm/commands.hpp"
#include "fdm/problem_file.hpp"

using fdm::ProblemFile;

namespace {

const std::string kDataDir = FDM_DATA_DIR;

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = "./" + name;
    std::ofstream out(path);
    out << body;
    return path;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("problem file: parse round trip") {
    std::istringstream in(
        "# comment line\n"
        "name = demo\n"
        "x0 = 0\n"
        "x_end = 2\n"
        "u0 = 1/2   # fractions allowed\n"
        "N = \"-(1+u^2)\"  # a '#' inside \"quotes # stays\" would survive\n"
        "phi = \"cos(x)\"\n"
        "grid_h = 1/4\n"
        "grid_n = 8\n"
        "m = 3\n"
        "quadrature_samples = 16\n");
    const auto pf = ProblemFile::parse(in);
    CHECK(pf.name == "demo");
    CHECK(pf.problem.u0 == 0.5);
    CHECK(pf.problem.x_end == 2.0);
    CHECK(pf.grid.nodes.size() == 9);
    CHECK(pf.grid.h == 0.25);
    CHECK(pf.default_m == 3);
    CHECK(pf.quadrature_samples == 16);
    CHECK(pf.problem.N.eval(0.0, 2.0) == -5.0);
}

TEST_CASE("problem file: errors") {
    std::istringstream bad1("x0 = 0\n");
    CHECK_THROWS(ProblemFile::parse(bad1));  // missing keys
    std::istringstream bad2(
        "x0 = 0\nx_end = 1\nu0 = 0\nN = \"-(1+u^2\"\nphi = \"0\"\ngrid_h = 0.5\ngrid_n = 2\n");
    CHECK_THROWS(ProblemFile::parse(bad2));  // unbalanced expression
    std::istringstream bad3(
        "x0 = 0\nx_end = 2\nu0 = 0\nN = \"-1\"\nphi = \"0\"\ngrid_h = 0.5\ngrid_n = 2\n");
    CHECK_THROWS(ProblemFile::parse(bad3));  // grid stops short of x_end
}

TEST_CASE("problem file: ships with both examples") {
    const auto p1 = ProblemFile::load(kDataDir + "/example1.prob");
    CHECK(p1.problem.x_end == doctest::Approx(48.0).epsilon(1e-12));
    CHECK(p1.grid.nodes.size() == 145);
    CHECK(p1.problem.exact.has_value());
    const auto p2 = ProblemFile::load(kDataDir + "/example2.prob");
    CHECK(p2.grid.nodes.size() == 21);
    CHECK(p2.problem.weight.has_value());
    CHECK(p2.problem.singular_at_start());
}

TEST_CASE("cmd_solve: header, row count, determinism") {
    fdm::SolveOptions opt;
    opt.file = kDataDir + "/example1.prob";
    opt.m = 1;
    opt.quad_override = 16;
    std::ostringstream csv1, csv2, err;
    CHECK(fdm::cmd_solve(opt, csv1, err) == fdm::kOk);
    CHECK(fdm::cmd_solve(opt, csv2, err) == fdm::kOk);
    CHECK(csv1.str() == csv2.str());
    CHECK(first_line(csv1.str()) == "x,u0term,u1term,sum0,sum1,exact,delta0,delta1,nu0,nu1");
    std::size_t rows = 0;
    for (char c : csv1.str())
        if (c == '\n') ++rows;
    CHECK(rows == 1 + 144 * 16 + 1);  // header + shared sample nodes
}

TEST_CASE("cmd_solve: m=0 column set") {
    const std::string path = write_temp(
        "t_lin.prob",
        "x0 = 0\nx_end = 1\nu0 = 1\nN = \"-1\"\nphi = \"0\"\ngrid_h = 0.25\ngrid_n = 4\n");
    fdm::SolveOptions opt;
    opt.file = path;
    opt.m = 0;
    std::ostringstream csv, err;
    CHECK(fdm::cmd_solve(opt, csv, err) == fdm::kOk);
    CHECK(first_line(csv.str()) == "x,u0term,sum0,nu0");  // no exact column in this file
    std::remove(path.c_str());
}

TEST_CASE("cmd_check: exit codes") {
    fdm::CheckOptions ok;
    ok.file = kDataDir + "/example1.prob";
    std::ostringstream out, err;
    CHECK(fdm::cmd_check(ok, out, err) == fdm::kOk);
    CHECK(out.str().find("alpha=") != std::string::npos);

    const std::string bad = write_temp(
        "t_growth.prob",
        "x0 = 0\nx_end = 1\nu0 = 0\nN = \"u\"\nphi = \"0\"\ngrid_h = 0.25\ngrid_n = 4\n");
    fdm::CheckOptions growth;
    growth.file = bad;
    std::ostringstream out2, err2;
    CHECK(fdm::cmd_check(growth, out2, err2) == fdm::kConditionFailure);
    std::remove(bad.c_str());

    fdm::CheckOptions missing;
    missing.file = "./no-such-file.prob";
    std::ostringstream out3, err3;
    CHECK(fdm::cmd_check(missing, out3, err3) == fdm::kParseOrIo);

    const std::string malformed = write_temp(
        "t_syntax.prob",
        "x0 = 0\nx_end = 1\nu0 = 0\nN = \"1 + * u\"\nphi = \"0\"\ngrid_h = 0.25\ngrid_n = 4\n");
    fdm::CheckOptions syn;
    syn.file = malformed;
    std::ostringstream out4, err4;
    CHECK(fdm::cmd_check(syn, out4, err4) == fdm::kParseOrIo);
    CHECK(err4.str().find("column") != std::string::npos);
    std::remove(malformed.c_str());
}

TEST_CASE("cmd_adm: file without exact omits error columns") {
    const std::string path = write_temp(
        "t_noexact.prob",
        "x0 = 0\nx_end = 1\nu0 = 1\nN = \"-(1+u^2)\"\nphi = \"0\"\ngrid_h = 0.25\ngrid_n = 4\n"
        "adm_linear = -1\n");
    fdm::SolveOptions opt;
    opt.file = path;
    opt.m = 1;
    std::ostringstream csv, err;
    CHECK(fdm::cmd_adm(opt, csv, err) == fdm::kOk);
    CHECK(first_line(csv.str()) == "x,u0term,u1term,sum0,sum1,nu0,nu1");
    std::remove(path.c_str());
}

TEST_CASE("cmd_radius: nonpolynomial N without coefficients exits 3") {
    const std::string path = write_temp(
        "t_exp.prob",
        "x0 = 0\nx_end = 1\nu0 = 0\nN = \"-exp(u^2)\"\nphi = \"0\"\ngrid_h = 0.25\ngrid_n = 4\n");
    fdm::RadiusOptions opt;
    opt.file = path;
    std::ostringstream out, err;
    CHECK(fdm::cmd_radius(opt, out, err) == fdm::kAnalysisFailure);
    std::remove(path.c_str());
}

TEST_CASE("cmd_radius: example 1 report fields and Q caveat") {
    fdm::RadiusOptions opt;
    opt.file = kDataDir + "/example1.prob";
    std::ostringstream out, err;
    CHECK(fdm::cmd_radius(opt, out, err) == fdm::kOk);
    const std::string s = out.str();
    for (const char* key : {"mu=", "alpha=", "k=", "mu1=", "sigma=", "Sigma=", "admissible_h="})
        CHECK(s.find(key) != std::string::npos);
    CHECK(s.find("Q") != std::string::npos);
}

TEST_CASE("cmd_compare: degenerate window") {
    const std::string path = write_temp(
        "t_deg.prob",
        "x0 = 0\nx_end = 1\nu0 = 0\nN = \"-(1+u^2)\"\nphi = \"cos(x)+sin(x)+sin(x)^3\"\n"
        "exact = \"sin(x)\"\ngrid_h = 0.25\ngrid_n = 4\nadm_linear = -1\n");
    fdm::CompareOptions opt;
    opt.file = path;
    opt.m = 2;
    opt.window_a = 0.0;
    opt.window_b = 0.0;
    std::ostringstream csv, summary, err;
    CHECK(fdm::cmd_compare(opt, csv, summary, err) == fdm::kOk);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "m,fd_sup,adm_sup");
    while (std::getline(lines, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) <= 1e-12);
        CHECK(std::stod(line.substr(c2 + 1)) <= 1e-12);
    }
    std::remove(path.c_str());
}

TEST_CASE("cmd_plot: svg output and error paths") {
    const std::string csv = write_temp("t_plot.csv",
                                       "x,a,b\n0,0,1\n1,1,0\n2,0.5,0.25\n3,0.25,0.5\n");
    fdm::PlotOptions opt;
    opt.csv_file = csv;
    opt.svg_file = "./t_plot.svg";
    opt.columns = {"a", "b"};
    std::ostringstream err;
    CHECK(fdm::cmd_plot(opt, err) == fdm::kOk);
    std::ifstream svg(opt.svg_file);
    std::stringstream body;
    body << svg.rdbuf();
    CHECK(body.str().find("<svg") != std::string::npos);
    CHECK(body.str().find("polyline") != std::string::npos);

    fdm::PlotOptions unknown = opt;
    unknown.columns = {"zzz"};
    std::ostringstream err2;
    CHECK(fdm::cmd_plot(unknown, err2) == fdm::kParseOrIo);

    fdm::PlotOptions none = opt;
    none.columns = {};
    std::ostringstream err3;
    CHECK(fdm::cmd_plot(none, err3) == fdm::kParseOrIo);

    std::remove(csv.c_str());
    std::remove(opt.svg_file.c_str());
}

TEST_CASE("cmd_plot: deterministic bytes") {
    const std::string csv = write_temp("t_plot2.csv", "x,a\n0,0\n1,1\n2,4\n");
    fdm::PlotOptions opt;
    opt.csv_file = csv;
    opt.svg_file = "./t_plot2.svg";
    opt.columns = {"a"};
    std::ostringstream err;
    REQUIRE(fdm::cmd_plot(opt, err) == fdm::kOk);
    std::ifstream f1(opt.svg_file);
    std::stringstream s1;
    s1 << f1.rdbuf();
    f1.close();
    REQUIRE(fdm::cmd_plot(opt, err) == fdm::kOk);
    std::ifstream f2(opt.svg_file);
    std::stringstream s2;
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    std::remove(csv.c_str());
    std::remove(opt.svg_file.c_str());
}
