#include "fdm/problem_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fdm/errors.hpp"

namespace fdm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// strips a trailing comment, respecting double quotes
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

double parse_real(const std::string& raw, const std::string& key) {
    const std::string s = trim(raw);
    const auto slash = s.find('/');
    auto one = [&](const std::string& part) {
        const std::string t = trim(part);
        double v = 0.0;
        const char* b = t.data();
        auto [p, ec] = std::from_chars(b, b + t.size(), v);
        if (ec != std::errc() || p != b + t.size())
            throw std::invalid_argument("bad numeric value for '" + key + "': " + raw);
        return v;
    };
    if (slash == std::string::npos) return one(s);
    const double num = one(s.substr(0, slash));
    const double den = one(s.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in value for '" + key + "'");
    return num / den;
}

std::string unquote(const std::string& raw, const std::string& key) {
    const std::string s = trim(raw);
    if (s.size() < 2 || s.front() != '"' || s.back() != '"')
        throw std::invalid_argument("expression value for '" + key + "' must be double-quoted");
    return s.substr(1, s.size() - 2);
}

}  // namespace

ProblemFile ProblemFile::parse(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(body.substr(0, eq));
        kv[key] = trim(body.substr(eq + 1));
    }

    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument("missing key '" + key + "'");
        return it->second;
    };
    auto have = [&](const std::string& key) { return kv.count(key) > 0; };

    ProblemFile pf;
    if (have("name")) pf.name = kv["name"];
    pf.problem.x0 = parse_real(need("x0"), "x0");
    pf.problem.u0 = parse_real(need("u0"), "u0");
    pf.problem.x_end = parse_real(need("x_end"), "x_end");
    pf.problem.N = Expression::parse(unquote(need("N"), "N"));
    pf.problem.phi = Expression::parse(unquote(need("phi"), "phi"));
    if (have("exact")) pf.problem.exact = Expression::parse(unquote(kv["exact"], "exact"));
    if (have("weight")) pf.problem.weight = Expression::parse(unquote(kv["weight"], "weight"));
    if (have("adm_linear")) pf.problem.adm_linear = parse_real(kv["adm_linear"], "adm_linear");
    if (have("quadrature_samples"))
        pf.quadrature_samples =
            static_cast<int>(parse_real(kv["quadrature_samples"], "quadrature_samples"));
    if (have("m")) pf.default_m = static_cast<int>(parse_real(kv["m"], "m"));

    if (have("grid_nodes")) {
        std::vector<double> nodes;
        std::stringstream ss(kv["grid_nodes"]);
        std::string item;
        while (std::getline(ss, item, ',')) nodes.push_back(parse_real(item, "grid_nodes"));
        pf.grid = Grid::from_nodes(std::move(nodes));
    } else {
        const double h = parse_real(need("grid_h"), "grid_h");
        const std::size_t n = static_cast<std::size_t>(parse_real(need("grid_n"), "grid_n"));
        pf.grid = Grid::uniform(pf.problem.x0, h, n);
    }
    const double end_gap = std::fabs(pf.grid.x_end() - pf.problem.x_end);
    if (end_gap > 1e-9 * (1.0 + std::fabs(pf.problem.x_end)))
        throw std::invalid_argument("grid does not span [x0, x_end]");
    pf.problem.x_end = pf.grid.x_end();  // make the two exactly consistent
    pf.problem.validate();
    return pf;
}

ProblemFile ProblemFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open problem file: " + path);
    return parse(in);
}

}  // namespace fdm
