#include "ybset/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ybset {

using nlohmann::json;

std::string solution_to_json(const SolutionTable& s) {
    json rows = json::array();
    for (int x = 0; x < s.n; x++) {
        json row = json::array();
        for (int y = 0; y < s.n; y++) row.push_back({s.S1(x, y), s.S2(x, y)});
        rows.push_back(std::move(row));
    }
    json j{{"n", s.n}, {"s", std::move(rows)}};
    return j.dump();
}

SolutionTable solution_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw StructuralError(std::string("bad solution JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("s"))
        throw StructuralError("solution JSON must have fields n and s");
    SolutionTable s;
    s.n = j["n"].get<int>();
    if (s.n < 1) throw StructuralError("n must be >= 1");
    auto& rows = j["s"];
    if (!rows.is_array() || (int)rows.size() != s.n)
        throw StructuralError("s must be an n x n array");
    s.s1.resize((size_t)s.n * s.n);
    s.s2.resize((size_t)s.n * s.n);
    for (int x = 0; x < s.n; x++) {
        if (!rows[x].is_array() || (int)rows[x].size() != s.n)
            throw StructuralError("s must be an n x n array");
        for (int y = 0; y < s.n; y++) {
            auto& cell = rows[x][y];
            if (!cell.is_array() || cell.size() != 2)
                throw StructuralError("each cell must be a pair [S1,S2]");
            s.at1(x, y) = cell[0].get<int>();
            s.at2(x, y) = cell[1].get<int>();
        }
    }
    for (int v : s.s1)
        if (v < 0 || v >= s.n) throw StructuralError("cell value out of range");
    for (int v : s.s2)
        if (v < 0 || v >= s.n) throw StructuralError("cell value out of range");
    return s;
}

std::string solution_to_text(const SolutionTable& s) {
    std::ostringstream out;
    out << s.n << "\n";
    for (int y = 0; y < s.n; y++) {
        for (int x = 0; x < s.n; x++) {
            if (x) out << ' ';
            out << s.S2(x, y);
        }
        out << "\n";
    }
    return out.str();
}

SolutionTable solution_from_text(const std::string& text) {
    std::istringstream in(text);
    int n = 0;
    if (!(in >> n) || n < 1) throw StructuralError("bad size line");
    FMap fm;
    fm.n = n;
    for (int y = 0; y < n; y++) {
        std::vector<int> img(n);
        for (int x = 0; x < n; x++)
            if (!(in >> img[x])) throw StructuralError("truncated f-table");
        fm.f.emplace_back(std::move(img));
    }
    return from_f_table(fm);
}

SolutionTable load_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{'))
        return solution_from_json(text);
    return solution_from_text(text);
}

}  // namespace ybset
