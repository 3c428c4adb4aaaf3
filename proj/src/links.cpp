#include "ybset/links.hpp"

#include <algorithm>
#include <string>

namespace ybset {

namespace {

struct PortMaps {
    std::vector<int> sink_cross, sink_port;  // edge -> (crossing, 0=inL 1=inR)
    std::vector<int> src_cross, src_port;    // edge -> (crossing, 0=outL 1=outR)
};

PortMaps port_maps(const LinkDiagram& d) {
    PortMaps pm;
    pm.sink_cross.assign(d.edges, -1);
    pm.sink_port.assign(d.edges, -1);
    pm.src_cross.assign(d.edges, -1);
    pm.src_port.assign(d.edges, -1);
    auto set_sink = [&](int e, int c, int p) {
        if (e < 0 || e >= d.edges) throw DiagramError("edge id out of range");
        if (pm.sink_cross[e] != -1) throw DiagramError("edge used twice as input");
        pm.sink_cross[e] = c;
        pm.sink_port[e] = p;
    };
    auto set_src = [&](int e, int c, int p) {
        if (e < 0 || e >= d.edges) throw DiagramError("edge id out of range");
        if (pm.src_cross[e] != -1) throw DiagramError("edge used twice as output");
        pm.src_cross[e] = c;
        pm.src_port[e] = p;
    };
    for (int c = 0; c < (int)d.crossings.size(); c++) {
        const Crossing& cr = d.crossings[c];
        set_sink(cr.inL, c, 0);
        set_sink(cr.inR, c, 1);
        set_src(cr.outL, c, 0);
        set_src(cr.outR, c, 1);
    }
    for (int e = 0; e < d.edges; e++)
        if (pm.sink_cross[e] == -1 || pm.src_cross[e] == -1)
            throw DiagramError("edge " + std::to_string(e) + " is not a closed strand");
    return pm;
}

}  // namespace

void check_diagram(const LinkDiagram& d) { port_maps(d); }

int component_count(const LinkDiagram& d) {
    port_maps(d);
    // continuation: inL -> outR, inR -> outL
    std::vector<int> next(d.edges, -1);
    for (const Crossing& cr : d.crossings) {
        next[cr.inL] = cr.outR;
        next[cr.inR] = cr.outL;
    }
    std::vector<char> seen(d.edges, 0);
    int comps = d.free_loops;
    for (int e = 0; e < d.edges; e++) {
        if (seen[e]) continue;
        comps++;
        for (int c = e; !seen[c]; c = next[c]) seen[c] = 1;
    }
    return comps;
}

long long count_colorings(const LinkDiagram& d, const SolutionTable& s) {
    port_maps(d);
    const int n = s.n;
    std::vector<int> color(d.edges, -1);

    // propagate: a crossing with both inputs (or both outputs) known forces
    // the other pair; returns false on conflict, tracks touched edges
    auto run = [&](auto&& self) -> long long {
        bool changed = true;
        std::vector<std::pair<int, int>> trail;
        auto set_color = [&](int e, int v) {
            if (color[e] == -1) {
                color[e] = v;
                trail.emplace_back(e, -1);
                return true;
            }
            return color[e] == v;
        };
        bool dead = false;
        while (changed && !dead) {
            changed = false;
            for (const Crossing& cr : d.crossings) {
                if (color[cr.inL] != -1 && color[cr.inR] != -1) {
                    auto [a, b] = s.S(color[cr.inL], color[cr.inR]);
                    int before = (int)trail.size();
                    if (!set_color(cr.outL, a) || !set_color(cr.outR, b)) {
                        dead = true;
                        break;
                    }
                    if ((int)trail.size() != before) changed = true;
                } else if (color[cr.outL] != -1 && color[cr.outR] != -1) {
                    // involutive: inputs are S of outputs
                    auto [a, b] = s.S(color[cr.outL], color[cr.outR]);
                    int before = (int)trail.size();
                    if (!set_color(cr.inL, a) || !set_color(cr.inR, b)) {
                        dead = true;
                        break;
                    }
                    if ((int)trail.size() != before) changed = true;
                }
            }
        }
        long long total = 0;
        if (!dead) {
            int e = -1;
            for (int i = 0; i < d.edges; i++)
                if (color[i] == -1) {
                    e = i;
                    break;
                }
            if (e == -1) {
                total = 1;
            } else {
                for (int v = 0; v < n; v++) {
                    color[e] = v;
                    total += self(self);
                    color[e] = -1;
                }
            }
        }
        for (auto& [e, v] : trail) color[e] = v;
        return total;
    };

    long long base = run(run);
    for (int i = 0; i < d.free_loops; i++) base *= n;
    return base;
}

namespace {

// redirect the input port currently fed by edge `from` to edge `to`
void rewire_sink(LinkDiagram& d, int from, int to) {
    for (Crossing& cr : d.crossings) {
        if (cr.inL == from) {
            cr.inL = to;
            return;
        }
        if (cr.inR == from) {
            cr.inR = to;
            return;
        }
    }
    throw DiagramError("edge has no sink to rewire");
}

// remove edges (descending renumber) and crossings by index
void erase_edges(LinkDiagram& d, std::vector<int> edges) {
    std::sort(edges.rbegin(), edges.rend());
    for (int e : edges) {
        for (Crossing& cr : d.crossings) {
            auto fix = [&](int& v) {
                if (v > e) v--;
            };
            fix(cr.inL);
            fix(cr.inR);
            fix(cr.outL);
            fix(cr.outR);
        }
        d.edges--;
    }
}

void erase_crossings(LinkDiagram& d, std::vector<int> cs) {
    std::sort(cs.rbegin(), cs.rend());
    for (int c : cs) d.crossings.erase(d.crossings.begin() + c);
}

LinkDiagram insert_r1(const LinkDiagram& d0, int e, bool left_loop) {
    LinkDiagram d = d0;
    if (e == -1) {
        // kink a free loop: arc = E, loop = E+1
        if (d.free_loops < 1) throw DiagramError("no free loop to kink");
        d.free_loops--;
        int arc = d.edges, loop = d.edges + 1;
        d.edges += 2;
        if (left_loop)
            d.crossings.push_back({loop, arc, loop, arc});
        else
            d.crossings.push_back({arc, loop, arc, loop});
        return d;
    }
    if (e < 0 || e >= d.edges) throw DiagramError("no such edge");
    int loop = d.edges, e2 = d.edges + 1;
    d.edges += 2;
    rewire_sink(d, e, e2);
    if (left_loop)
        d.crossings.push_back({loop, e, loop, e2});  // R1b
    else
        d.crossings.push_back({e, loop, e2, loop});  // R1a
    return d;
}

LinkDiagram remove_r1(const LinkDiagram& d0, int ci, bool left_loop) {
    LinkDiagram d = d0;
    if (ci < 0 || ci >= (int)d.crossings.size()) throw DiagramError("no such crossing");
    Crossing cr = d.crossings[ci];
    int loop, e, e2;
    if (left_loop) {
        if (cr.inL != cr.outL) throw DiagramError("crossing is not a matching kink");
        loop = cr.inL;
        e = cr.inR;
        e2 = cr.outR;
    } else {
        if (cr.inR != cr.outR) throw DiagramError("crossing is not a matching kink");
        loop = cr.inR;
        e = cr.inL;
        e2 = cr.outL;
    }
    erase_crossings(d, {ci});
    if (e == e2) {
        // a lone kinked loop closes back into a free loop
        d.free_loops++;
        erase_edges(d, {loop, e});
    } else {
        rewire_sink(d, e2, e);
        erase_edges(d, {loop, e2});
    }
    return d;
}

LinkDiagram insert_r2(const LinkDiagram& d0, Move mv, int eA, int eB) {
    LinkDiagram d = d0;
    if (eA < 0 || eA >= d.edges || eB < 0 || eB >= d.edges || eA == eB)
        throw DiagramError("R2 insertion needs two distinct edges");
    int x = d.edges, y = d.edges + 1, a2 = d.edges + 2, b2 = d.edges + 3;
    d.edges += 4;
    rewire_sink(d, eA, a2);
    rewire_sink(d, eB, b2);
    switch (mv) {
        case Move::R2a:
            // parallel strands: A: eA -> y -> a2, B: eB -> x -> b2
            d.crossings.push_back({eA, eB, x, y});
            d.crossings.push_back({x, y, a2, b2});
            break;
        case Move::R2b:
            // antiparallel, B runs against A: A: eA -> x -> a2, B: eB -> y -> b2
            d.crossings.push_back({y, eA, x, b2});
            d.crossings.push_back({x, eB, y, a2});
            break;
        case Move::R2c:
            // mirror of R2b
            d.crossings.push_back({eA, y, b2, x});
            d.crossings.push_back({eB, x, a2, y});
            break;
        default:
            throw DiagramError("not an R2 move");
    }
    return d;
}

LinkDiagram remove_r2(const LinkDiagram& d0, Move mv, int c1, int c2) {
    LinkDiagram d = d0;
    int nc = (int)d.crossings.size();
    if (c1 < 0 || c1 >= nc || c2 < 0 || c2 >= nc || c1 == c2)
        throw DiagramError("R2 removal needs two crossings");
    Crossing A = d.crossings[c1], B = d.crossings[c2];
    int eA, eB, a2, b2, x, y;
    switch (mv) {
        case Move::R2a:
            if (A.outL != B.inL || A.outR != B.inR) throw DiagramError("R2a pattern mismatch");
            eA = A.inL;
            eB = A.inR;
            x = A.outL;
            y = A.outR;
            a2 = B.outL;
            b2 = B.outR;
            break;
        case Move::R2b:
            if (A.outL != B.inL || B.outL != A.inL) throw DiagramError("R2b pattern mismatch");
            eA = A.inR;
            eB = B.inR;
            x = A.outL;
            y = B.outL;
            b2 = A.outR;
            a2 = B.outR;
            break;
        case Move::R2c:
            if (A.outR != B.inR || B.outR != A.inR) throw DiagramError("R2c pattern mismatch");
            eA = A.inL;
            eB = B.inL;
            x = B.inR;
            y = A.inR;
            b2 = A.outL;
            a2 = B.outL;
            break;
        default:
            throw DiagramError("not an R2 move");
    }
    // inner edges and distinct strands must not alias; a strand may close on
    // itself (exit == entry), which becomes a free loop below
    if (x == y || eA == eB || a2 == b2 || eA == x || eA == y || eB == x || eB == y ||
        a2 == x || a2 == y || b2 == x || b2 == y || eA == b2 || eB == a2)
        throw DiagramError("R2 pattern aliases edges");
    erase_crossings(d, {c1, c2});
    // strand A: eA ... a2, strand B: eB ... b2
    std::vector<int> gone{x, y};
    if (a2 == eA) {
        d.free_loops++;
        gone.push_back(eA);
    } else {
        rewire_sink(d, a2, eA);
        gone.push_back(a2);
    }
    if (b2 == eB) {
        d.free_loops++;
        gone.push_back(eB);
    } else {
        rewire_sink(d, b2, eB);
        gone.push_back(b2);
    }
    erase_edges(d, gone);
    return d;
}

LinkDiagram rewrite_r3a(const LinkDiagram& d0, int c1, int c2, int c3, bool forward) {
    LinkDiagram d = d0;
    int nc = (int)d.crossings.size();
    if (c1 < 0 || c1 >= nc || c2 < 0 || c2 >= nc || c3 < 0 || c3 >= nc ||
        c1 == c2 || c1 == c3 || c2 == c3)
        throw DiagramError("R3 needs three distinct crossings");
    Crossing& C1 = d.crossings[c1];
    Crossing& C2 = d.crossings[c2];
    Crossing& C3 = d.crossings[c3];
    auto distinct9 = [](std::vector<int> ids) {
        std::sort(ids.begin(), ids.end());
        return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
    };
    if (forward) {
        // pattern: C1=(e1,e2,f1,f2) C2=(f2,e3,g2,g3) C3=(f1,g2,h1,h2)
        if (C2.inL != C1.outR || C3.inL != C1.outL || C3.inR != C2.outL)
            throw DiagramError("R3a pattern mismatch");
        if (!distinct9({C1.inL, C1.inR, C1.outL, C1.outR, C2.inR, C2.outL, C2.outR,
                        C3.outL, C3.outR}))
            throw DiagramError("R3a pattern aliases edges");
        int e1 = C1.inL, e2 = C1.inR, f1 = C1.outL, f2 = C1.outR;
        int e3 = C2.inR, g2 = C2.outL, g3 = C2.outR;
        int h1 = C3.outL, h2 = C3.outR;
        C1 = {e2, e3, f2, g2};
        C2 = {e1, f2, h1, f1};
        C3 = {f1, g2, h2, g3};
    } else {
        // inverse: C1=(e2,e3,f2,g2) C2=(e1,f2,h1,f1) C3=(f1,g2,h2,g3)
        if (C2.inR != C1.outL || C3.inL != C2.outR || C3.inR != C1.outR)
            throw DiagramError("R3a pattern mismatch");
        if (!distinct9({C1.inL, C1.inR, C1.outL, C1.outR, C2.inL, C2.outL, C2.outR,
                        C3.outL, C3.outR}))
            throw DiagramError("R3a pattern aliases edges");
        int e2 = C1.inL, e3 = C1.inR, f2 = C1.outL, g2 = C1.outR;
        int e1 = C2.inL, h1 = C2.outL, f1 = C2.outR;
        int h2 = C3.outL, g3 = C3.outR;
        C1 = {e1, e2, f1, f2};
        C2 = {f2, e3, g2, g3};
        C3 = {f1, g2, h1, h2};
    }
    return d;
}

LinkDiagram rewrite_r3b(const LinkDiagram& d0, int c1, int c2, int c3, bool forward) {
    LinkDiagram d = d0;
    int nc = (int)d.crossings.size();
    if (c1 < 0 || c1 >= nc || c2 < 0 || c2 >= nc || c3 < 0 || c3 >= nc ||
        c1 == c2 || c1 == c3 || c2 == c3)
        throw DiagramError("R3 needs three distinct crossings");
    Crossing& X1 = d.crossings[c1];
    Crossing& X2 = d.crossings[c2];
    Crossing& X3 = d.crossings[c3];
    auto distinct9 = [](std::vector<int> ids) {
        std::sort(ids.begin(), ids.end());
        return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
    };
    if (forward) {
        // pattern: X1=(b1,a0,a1,b2) X2=(a1,c0,c1,a2) X3=(c1,b0,b1,c2)
        if (X2.inL != X1.outL || X3.inL != X2.outL || X1.inL != X3.outL)
            throw DiagramError("R3b pattern mismatch");
        if (!distinct9({X1.inL, X1.inR, X1.outL, X1.outR, X2.inR, X2.outL, X2.outR,
                        X3.inR, X3.outR}))
            throw DiagramError("R3b pattern aliases edges");
        int b1 = X1.inL, a0 = X1.inR, a1 = X1.outL, b2 = X1.outR;
        int c0 = X2.inR, cc1 = X2.outL, a2 = X2.outR;
        int b0 = X3.inR, c2e = X3.outR;
        X1 = {c0, b1, b2, cc1};
        X2 = {a0, cc1, c2e, a1};
        X3 = {b0, a1, a2, b1};
    } else {
        // pattern: Y1=(c0,b1,b2,c1) Y2=(a0,c1,c2,a1) Y3=(b0,a1,a2,b1)
        if (X2.inR != X1.outR || X3.inR != X2.outR || X1.inR != X3.outR)
            throw DiagramError("R3b pattern mismatch");
        if (!distinct9({X1.inL, X1.inR, X1.outL, X1.outR, X2.inL, X2.outL, X2.outR,
                        X3.inL, X3.outL}))
            throw DiagramError("R3b pattern aliases edges");
        int c0 = X1.inL, b1 = X1.inR, b2 = X1.outL, cc1 = X1.outR;
        int a0 = X2.inL, c2e = X2.outL, a1 = X2.outR;
        int b0 = X3.inL, a2 = X3.outL;
        X1 = {b1, a0, a1, b2};
        X2 = {a1, c0, cc1, a2};
        X3 = {cc1, b0, b1, c2e};
    }
    return d;
}

}  // namespace

LinkDiagram apply_move(const LinkDiagram& d, Move move, const MoveSite& site,
                       MoveDir dir) {
    check_diagram(d);
    LinkDiagram out;
    switch (move) {
        case Move::R1a:
            out = (dir == MoveDir::Insert) ? insert_r1(d, site.e1, false)
                                           : remove_r1(d, site.c1, false);
            break;
        case Move::R1b:
            out = (dir == MoveDir::Insert) ? insert_r1(d, site.e1, true)
                                           : remove_r1(d, site.c1, true);
            break;
        case Move::R2a:
        case Move::R2b:
        case Move::R2c:
            out = (dir == MoveDir::Insert) ? insert_r2(d, move, site.e1, site.e2)
                                           : remove_r2(d, move, site.c1, site.c2);
            break;
        case Move::R3a:
            out = rewrite_r3a(d, site.c1, site.c2, site.c3, dir == MoveDir::Insert);
            break;
        case Move::R3b:
            out = rewrite_r3b(d, site.c1, site.c2, site.c3, dir == MoveDir::Insert);
            break;
    }
    check_diagram(out);
    if (component_count(out) != component_count(d))
        throw InternalInvariantViolation("move changed the component count");
    return out;
}

PlanarityReport planarity_obstruction(const LinkDiagram& d, const SolutionTable& s) {
    PlanarityReport rep;
    rep.colorings = count_colorings(d, s);
    rep.expected = 1;
    int comps = component_count(d);
    for (int i = 0; i < comps; i++) rep.expected *= s.n;
    rep.obstructed = rep.colorings != rep.expected;
    return rep;
}

LinkDiagram two_component_nonplanar_example() {
    LinkDiagram d;
    d.edges = 2;
    d.crossings.push_back({0, 1, 1, 0});
    return d;
}

LinkDiagram random_diagram(int loops, int moves, std::mt19937& rng) {
    LinkDiagram d;
    d.free_loops = loops;
    auto pick = [&](int n) { return (int)(rng() % (std::uint32_t)n); };
    for (int step = 0; step < moves; step++) {
        std::vector<std::pair<Move, MoveSite>> feasible;
        if (d.free_loops > 0) {
            feasible.push_back({Move::R1a, MoveSite{.e1 = -1}});
            feasible.push_back({Move::R1b, MoveSite{.e1 = -1}});
        }
        if (d.edges >= 1) {
            MoveSite s1{.e1 = pick(d.edges)};
            feasible.push_back({Move::R1a, s1});
            feasible.push_back({Move::R1b, s1});
        }
        if (d.edges >= 2) {
            int a = pick(d.edges), b = pick(d.edges);
            if (a != b) {
                MoveSite s2{.e1 = a, .e2 = b};
                feasible.push_back({Move::R2a, s2});
                feasible.push_back({Move::R2b, s2});
                feasible.push_back({Move::R2c, s2});
            }
        }
        // R3 sites: scan for the two forward patterns
        int nc = (int)d.crossings.size();
        for (int i = 0; i < nc; i++)
            for (int j = 0; j < nc; j++)
                for (int k = 0; k < nc; k++) {
                    if (i == j || i == k || j == k) continue;
                    const Crossing &A = d.crossings[i], &B = d.crossings[j],
                                   &C = d.crossings[k];
                    if (B.inL == A.outR && C.inL == A.outL && C.inR == B.outL)
                        feasible.push_back({Move::R3a, MoveSite{.c1 = i, .c2 = j, .c3 = k}});
                    if (B.inL == A.outL && C.inL == B.outL && A.inL == C.outL)
                        feasible.push_back({Move::R3b, MoveSite{.c1 = i, .c2 = j, .c3 = k}});
                }
        if (feasible.empty()) break;
        auto [mv, site] = feasible[pick((int)feasible.size())];
        try {
            d = apply_move(d, mv, site, MoveDir::Insert);
        } catch (const DiagramError&) {
            // degenerate aliased site; skip this attempt
        }
    }
    return d;
}

}  // namespace ybset
