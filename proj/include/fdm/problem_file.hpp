#pragma once

#include <iosfwd>
#include <string>

#include "fdm/fdcore.hpp"

namespace fdm {

// Flat key=value problem description: one key per line, expressions
// double-quoted, '#' starts a comment. Numeric values accept fractions
// like 1/3.
struct ProblemFile {
    std::string name;
    Problem problem;
    Grid grid;
    int quadrature_samples = 32;
    int default_m = 0;

    static ProblemFile parse(std::istream& in);
    static ProblemFile load(const std::string& path);
};

}  // namespace fdm
