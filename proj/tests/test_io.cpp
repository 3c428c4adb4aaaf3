#include <doctest.h>

#include <random>

#include "ybset/enumerate.hpp"
#include "ybset/io.hpp"

using namespace ybset;

TEST_CASE("JSON and text forms round-trip every class of size 4") {
    enumerate_solutions(4, [&](const SolutionTable& s) {
        CHECK(solution_from_json(solution_to_json(s)) == s);
        CHECK(solution_from_text(solution_to_text(s)) == s);
    });
}

TEST_CASE("JSON rejects malformed documents") {
    CHECK_THROWS_AS(solution_from_json("{"), StructuralError);
    CHECK_THROWS_AS(solution_from_json("{\"n\": 2}"), StructuralError);
    CHECK_THROWS_AS(solution_from_json("{\"n\": 2, \"s\": [[[0,0],[9,0]],[[0,0],[0,0]]]}"),
                    StructuralError);
}

TEST_CASE("text form rejects truncation and bad families") {
    CHECK_THROWS_AS(solution_from_text("3\n0 1 2\n0 1"), StructuralError);
    // a family violating the right-action law parses structurally but fails
    CHECK_THROWS_AS(solution_from_text("2\n0 1\n1 0"), NondegeneracyError);
}
