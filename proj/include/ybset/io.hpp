#pragma once

#include <iosfwd>
#include <string>

#include "ybset/solution.hpp"

namespace ybset {

// Solution JSON: {"n": int, "s": [[[a,b],...],...]} with s[x][y] = [S1, S2].
std::string solution_to_json(const SolutionTable& s);
SolutionTable solution_from_json(const std::string& text);

// Compact text: line 1 = n, lines 2..n+1 = images of f_y, space-separated.
std::string solution_to_text(const SolutionTable& s);
SolutionTable solution_from_text(const std::string& text);

SolutionTable load_solution(const std::string& path);

}  // namespace ybset
