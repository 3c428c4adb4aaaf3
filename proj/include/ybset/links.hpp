#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ybset/solution.hpp"

namespace ybset {

// A 4-valent oriented diagram: each crossing consumes two edges and emits
// two.  The strand entering on the left leaves on the right (inL -> outR)
// and vice versa (inR -> outL).  A coloring must satisfy
// S(c(inL), c(inR)) = (c(outL), c(outR)) at every crossing.
struct Crossing {
    int inL = -1, inR = -1, outL = -1, outR = -1;
    bool operator==(const Crossing&) const = default;
};

struct LinkDiagram {
    int edges = 0;
    int free_loops = 0;
    std::vector<Crossing> crossings;
    bool operator==(const LinkDiagram&) const = default;
};

// Throws DiagramError if some edge is not used exactly once as input and
// once as output.
void check_diagram(const LinkDiagram& d);

int component_count(const LinkDiagram& d);

long long count_colorings(const LinkDiagram& d, const SolutionTable& s);

enum class Move { R1a, R1b, R2a, R2b, R2c, R3a, R3b };
enum class MoveDir { Insert, Remove };

// Site of a move: edges for insertions (R1: e1, or -1 for a free loop;
// R2: e1 and e2 distinct), crossing ids for removals and for both R3
// directions.
struct MoveSite {
    int e1 = -1, e2 = -1;
    int c1 = -1, c2 = -1, c3 = -1;
};

LinkDiagram apply_move(const LinkDiagram& d, Move move, const MoveSite& site,
                       MoveDir dir);

struct PlanarityReport {
    long long colorings = 0;
    long long expected = 0;
    bool obstructed = false;
};

PlanarityReport planarity_obstruction(const LinkDiagram& d, const SolutionTable& s);

// Two closed curves through one shared crossing; its coloring count equals
// the number of fixed points of R.  Not realizable in the plane.
LinkDiagram two_component_nonplanar_example();

// Applies `moves` random feasible insertions to `loops` free loops.
LinkDiagram random_diagram(int loops, int moves, std::mt19937& rng);

}  // namespace ybset
