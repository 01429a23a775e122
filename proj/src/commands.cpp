#include "fdm/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "fdm/adm.hpp"
#include "fdm/analysis.hpp"
#include "fdm/errors.hpp"
#include "fdm/problem_file.hpp"

namespace fdm {

namespace {

std::string fmt(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct LoadedProblem {
    ProblemFile pf;
    Quadrature quad;
    std::size_t m;
};

LoadedProblem load(const std::string& path, int m, int quad_override) {
    LoadedProblem lp{ProblemFile::load(path), {}, 0};
    lp.quad.samples = quad_override > 0 ? quad_override : lp.pf.quadrature_samples;
    lp.m = static_cast<std::size_t>(m >= 0 ? m : lp.pf.default_m);
    return lp;
}

// CSV with one row per sample node: x, terms, partial sums, optional exact
// and delta columns, discrepancy columns.
void write_solution_csv(std::ostream& os, const Problem& p,
                        const std::vector<PiecewiseTerm>& terms,
                        const std::vector<PiecewiseTerm>& sums, double wa, double wb) {
    const std::size_t m = terms.size() - 1;
    os << "x";
    for (std::size_t j = 0; j <= m; ++j) os << ",u" << j << "term";
    for (std::size_t j = 0; j <= m; ++j) os << ",sum" << j;
    const bool with_exact = p.exact.has_value();
    if (with_exact) {
        os << ",exact";
        for (std::size_t j = 0; j <= m; ++j) os << ",delta" << j;
    }
    for (std::size_t j = 0; j <= m; ++j) os << ",nu" << j;
    os << "\n";

    const Grid& g = terms[0].grid();
    const int S = terms[0].samples_per_interval();
    for (std::size_t i = 0; i < g.intervals(); ++i) {
        const SampleLayout lay = terms[0].layout(i);
        for (int s = (i == 0 ? 0 : 1); s <= S; ++s) {
            const double x = lay.position(s);
            if (x < wa || x > wb) continue;
            os << fmt(x);
            for (std::size_t j = 0; j <= m; ++j) os << "," << fmt(terms[j].interval_samples(i)[s]);
            for (std::size_t j = 0; j <= m; ++j) os << "," << fmt(sums[j].interval_samples(i)[s]);
            if (with_exact) {
                const double ex = p.exact->eval(x, 0.0);
                os << "," << fmt(ex);
                for (std::size_t j = 0; j <= m; ++j)
                    os << "," << fmt(ex - sums[j].interval_samples(i)[s]);
            }
            for (std::size_t j = 0; j <= m; ++j) {
                double nu;
                try {
                    nu = discrepancy(p, sums[j], x);
                } catch (const DomainError&) {
                    nu = std::numeric_limits<double>::quiet_NaN();
                }
                os << "," << fmt(nu);
            }
            os << "\n";
        }
    }
}

int classify(const std::exception& e, std::ostream& err, int fallback) {
    err << "error: " << e.what() << "\n";
    return fallback;
}

}  // namespace

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const ProblemFile pf = ProblemFile::load(opt.file);
        const ConditionReport rep =
            check_conditions(pf.problem, opt.u_box, opt.x_samples, opt.u_samples);
        out << "condition 1 (N polynomial in u): "
            << (rep.cond1_polynomial ? "yes" : "no (informational)") << "\n";
        out << "condition 2 (phi bounded): " << (rep.cond2_bounded ? "yes" : "no") << "\n";
        out << "condition 3 ((Nu)'_u <= -alpha < 0): " << (rep.cond3_decay ? "yes" : "no") << "\n";
        out << "box: x in [" << fmt(pf.problem.x0) << "," << fmt(pf.problem.x_end) << "], u in [-"
            << fmt(rep.u_box) << "," << fmt(rep.u_box) << "]\n";
        out << "alpha=" << fmt(rep.alpha) << "\n";
        out << "k=" << fmt(rep.k) << "\n";
        out << "mu=" << fmt(rep.mu) << "\n";
        out << "passed=" << (rep.passed ? 1 : 0) << "\n";
        return rep.passed ? kOk : kConditionFailure;
    } catch (const ParseError& e) {
        return classify(e, err, kParseOrIo);
    } catch (const std::invalid_argument& e) {
        return classify(e, err, kParseOrIo);
    } catch (const std::exception& e) {
        return classify(e, err, kAnalysisFailure);
    }
}

int cmd_solve(const SolveOptions& opt, std::ostream& csv, std::ostream& err) {
    try {
        const LoadedProblem lp = load(opt.file, opt.m, opt.quad_override);
        const FdSolution sol = fd_solve(lp.pf.problem, lp.pf.grid, lp.m, lp.quad);
        for (const std::string& w : sol.warnings) err << "warning: " << w << "\n";
        write_solution_csv(csv, lp.pf.problem, sol.terms, sol.partial_sums,
                           opt.window_a.value_or(lp.pf.grid.x0()),
                           opt.window_b.value_or(lp.pf.grid.x_end()));
        return kOk;
    } catch (const ParseError& e) {
        return classify(e, err, kParseOrIo);
    } catch (const std::invalid_argument& e) {
        return classify(e, err, kParseOrIo);
    } catch (const SolveError& e) {
        return classify(e, err, kSolverFailure);
    } catch (const std::exception& e) {
        return classify(e, err, kSolverFailure);
    }
}

int cmd_adm(const SolveOptions& opt, std::ostream& csv, std::ostream& err) {
    try {
        const LoadedProblem lp = load(opt.file, opt.m, opt.quad_override);
        const AdmSolution sol = adm_solve(lp.pf.problem, lp.m, lp.pf.grid, lp.quad);
        write_solution_csv(csv, lp.pf.problem, sol.terms, sol.partial_sums,
                           opt.window_a.value_or(lp.pf.grid.x0()),
                           opt.window_b.value_or(lp.pf.grid.x_end()));
        return kOk;
    } catch (const ParseError& e) {
        return classify(e, err, kParseOrIo);
    } catch (const std::invalid_argument& e) {
        return classify(e, err, kParseOrIo);
    } catch (const SolveError& e) {
        return classify(e, err, kSolverFailure);
    } catch (const std::exception& e) {
        return classify(e, err, kSolverFailure);
    }
}

int cmd_compare(const CompareOptions& opt, std::ostream& csv, std::ostream& summary,
                std::ostream& err) {
    try {
        const LoadedProblem lp = load(opt.file, opt.m, opt.quad_override);
        const Problem& p = lp.pf.problem;
        std::function<double(double)> truth;
        ReferenceSolution ref;
        if (p.exact) {
            truth = [&p](double x) { return p.exact->eval(x, 0.0); };
        } else {
            ref = reference_solve(p, opt.ref_tol);
            truth = [&ref](double x) { return ref.eval(x); };
        }
        const double wa = opt.window_a.value_or(lp.pf.grid.x0());
        const double wb = opt.window_b.value_or(lp.pf.grid.x_end());
        const MethodComparison cmp =
            adm_compare(p, lp.m, lp.pf.grid, lp.quad, wa, wb, truth);

        csv << "m,fd_sup,adm_sup\n";
        for (std::size_t j = 0; j < cmp.fd_sup.size(); ++j)
            csv << j << "," << fmt(cmp.fd_sup[j]) << "," << fmt(cmp.adm_sup[j]) << "\n";

        auto fit = [](const std::vector<double>& sup) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            std::size_t n = 0;
            for (std::size_t j = 0; j < sup.size(); ++j) {
                if (sup[j] <= 0.0) continue;
                sx += j;
                sy += std::log(sup[j]);
                sxx += static_cast<double>(j) * j;
                sxy += j * std::log(sup[j]);
                ++n;
            }
            if (n < 2) return std::numeric_limits<double>::quiet_NaN();
            return std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
        };
        summary << "window=[" << fmt(wa) << "," << fmt(wb) << "]\n";
        summary << "fd_ratio=" << fmt(fit(cmp.fd_sup)) << "\n";
        summary << "adm_ratio=" << fmt(fit(cmp.adm_sup)) << "\n";
        return kOk;
    } catch (const ParseError& e) {
        return classify(e, err, kParseOrIo);
    } catch (const std::invalid_argument& e) {
        return classify(e, err, kParseOrIo);
    } catch (const SolveError& e) {
        return classify(e, err, kSolverFailure);
    } catch (const std::exception& e) {
        return classify(e, err, kSolverFailure);
    }
}

int cmd_radius(const RadiusOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const ProblemFile pf = ProblemFile::load(opt.file);
        const ConditionReport rep = check_conditions(pf.problem, opt.u_box);
        if (!rep.passed) {
            err << "error: theorem conditions not certified (alpha=" << fmt(rep.alpha) << ")\n";
            return kConditionFailure;
        }
        MajorantSpec spec;
        spec.B = majorant_coefficients(pf.problem);
        spec.V0 = rep.mu;
        const TheoryConstants tc =
            theory_constants(pf.problem, rep, pf.grid.h, opt.Q);
        spec.sigma = opt.sigma.value_or(tc.sigma);
        spec.normalize();
        const RadiusReport rr = radius(spec, tc.mu1);

        out << "mu=" << fmt(rep.mu) << "\n";
        out << "alpha=" << fmt(rep.alpha) << "\n";
        out << "k=" << fmt(rep.k) << "\n";
        out << "mu1=" << fmt(tc.mu1) << "\n";
        out << "sigma=" << fmt(spec.sigma) << " # with Q=" << fmt(opt.Q)
            << " (Q is a configuration value; it is not fixed by the convergence analysis)\n";
        out << "Sigma=" << fmt(spec.Sigma) << "\n";
        if (rr.certified) {
            out << "g_max=" << fmt(rr.g_max) << "\n";
            out << "R=" << fmt(rr.R) << "\n";
            out << "admissible_h=" << fmt(rr.admissible_h) << "\n";
        } else {
            out << "R=none # no certified radius (z(g) never positive)\n";
            out << "admissible_h=" << fmt(rr.mu1) << " # step bound only\n";
        }
        return kOk;
    } catch (const ParseError& e) {
        return classify(e, err, kParseOrIo);
    } catch (const std::invalid_argument& e) {
        return classify(e, err, kParseOrIo);
    } catch (const SolveError& e) {
        return classify(e, err, kAnalysisFailure);
    } catch (const std::exception& e) {
        return classify(e, err, kAnalysisFailure);
    }
}

// ------------------------------------------------------------------- plot

namespace {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open CSV file: " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV file");
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.header.push_back(cell);
    t.columns.resize(t.header.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::size_t c = 0;
        while (std::getline(ls, cell, ',') && c < t.columns.size()) {
            double v;
            try {
                v = std::stod(cell);
            } catch (...) {
                v = std::numeric_limits<double>::quiet_NaN();
            }
            t.columns[c++].push_back(v);
        }
    }
    return t;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

int cmd_plot(const PlotOptions& opt, std::ostream& err) {
    try {
        if (opt.columns.empty()) {
            err << "error: no columns selected\n";
            return kParseOrIo;
        }
        const CsvTable t = read_csv(opt.csv_file);
        std::vector<std::size_t> sel;
        for (const std::string& name : opt.columns) {
            auto it = std::find(t.header.begin(), t.header.end(), name);
            if (it == t.header.end())
                throw std::invalid_argument("unknown column '" + name + "'");
            sel.push_back(static_cast<std::size_t>(it - t.header.begin()));
        }
        const std::vector<double>& xs = t.columns.at(0);
        if (xs.empty()) throw std::invalid_argument("CSV has no data rows");

        double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
        for (std::size_t c : sel)
            for (double v : t.columns[c])
                if (std::isfinite(v)) {
                    ymin = std::min(ymin, v);
                    ymax = std::max(ymax, v);
                }
        if (!(ymax > ymin)) {
            ymax = ymin + 1.0;
            ymin -= 1.0;
        }
        const double xmin = xs.front(), xmax = xs.back();
        const double ml = 70, mr = 20, mt = 20, mb = 50;
        const double W = 800, H = 600;
        auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
        auto sy = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

        std::ofstream os(opt.svg_file);
        if (!os) throw std::invalid_argument("cannot open output: " + opt.svg_file);
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
              "viewBox=\"0 0 800 600\">\n";
        os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
        os << "<line x1=\"" << fmt6(ml) << "\" y1=\"" << fmt6(H - mb) << "\" x2=\"" << fmt6(W - mr)
           << "\" y2=\"" << fmt6(H - mb) << "\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << fmt6(ml) << "\" y1=\"" << fmt6(mt) << "\" x2=\"" << fmt6(ml)
           << "\" y2=\"" << fmt6(H - mb) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt6(W / 2) << "\" y=\"" << fmt6(H - 12)
           << "\" text-anchor=\"middle\" font-size=\"14\">" << t.header[0] << "</text>\n";
        os << "<text x=\"" << fmt6(ml) << "\" y=\"" << fmt6(H - mb + 18) << "\" font-size=\"12\">"
           << fmt6(xmin) << "</text>\n";
        os << "<text x=\"" << fmt6(W - mr) << "\" y=\"" << fmt6(H - mb + 18)
           << "\" text-anchor=\"end\" font-size=\"12\">" << fmt6(xmax) << "</text>\n";
        os << "<text x=\"" << fmt6(ml - 6) << "\" y=\"" << fmt6(H - mb)
           << "\" text-anchor=\"end\" font-size=\"12\">" << fmt6(ymin) << "</text>\n";
        os << "<text x=\"" << fmt6(ml - 6) << "\" y=\"" << fmt6(mt + 4)
           << "\" text-anchor=\"end\" font-size=\"12\">" << fmt6(ymax) << "</text>\n";

        for (std::size_t ci = 0; ci < sel.size(); ++ci) {
            const std::vector<double>& ys = t.columns[sel[ci]];
            os << "<polyline fill=\"none\" stroke=\"" << kPalette[ci % 8]
               << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
                if (!std::isfinite(ys[i])) continue;
                os << fmt6(sx(xs[i])) << "," << fmt6(sy(ys[i])) << " ";
            }
            os << "\"/>\n";
            os << "<text x=\"" << fmt6(W - mr - 4) << "\" y=\"" << fmt6(mt + 16 + 16 * ci)
               << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << kPalette[ci % 8] << "\">"
               << t.header[sel[ci]] << "</text>\n";
        }
        os << "</svg>\n";
        return kOk;
    } catch (const std::exception& e) {
        return classify(e, err, kParseOrIo);
    }
}

}  // namespace fdm
