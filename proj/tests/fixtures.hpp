// Hand-built programs and models shared by the unit tests and the acceptance gate.
#pragma once

#include "qhp/enumerate.hpp"

namespace fixtures {

using namespace qhp;

inline BlowupProgram prog(std::vector<Step> steps) { return BlowupProgram{std::move(steps)}; }

/// [2,1,2] through the section point: sprout at the section, then subdivide.
inline BlowupProgram column_212(const std::string& section) {
    return prog({Step::sprout("c0", section), Step::subdivide("c0", "c1")});
}

/// Affine family with fixed boundary: D1=[3], E1=[2,2]; D2=[2], E2=[2]; then N fibers
/// whose D-part is [2,2,2] and whose (-1)-curve of multiplicity 2 is a tip.
inline AffineParams moduli_params(int N) {
    AffineParams p;
    p.fibers.push_back(prog({Step::sprout("c0", "H"), Step::subdivide("c0", "c1"), Step::subdivide("c2", "c1")}));
    p.fibers.push_back(prog({Step::sprout("c0", "H"), Step::subdivide("c0", "c1")}));
    for (int i = 0; i < N; ++i)
        p.fibers.push_back(prog({Step::sprout("c0", "H"), Step::subdivide("c0", "c1"), Step::sprout("c2")}));
    return p;
}

/// Twisted columnar program: sprout at H, then `n` subdivisions against c0.
inline BlowupProgram twisted_column(int n) {
    std::vector<Step> steps{Step::sprout("c0", "H")};
    for (int i = 1; i <= n; ++i) steps.push_back(Step::subdivide("c" + std::to_string(i), "c0"));
    return prog(steps);
}

/// Twisted, no columnar fibers, F0 = [2,1,2].
inline TwistedParams twisted_Ai() { return {}; }

/// Base P1, N = 2, two columnar [2,1,2] fibers; F0 starts at the point of D2 and the
/// last blow-up cuts a (-2)-tip off D, leaving one A1 point.
inline UntwistedP1Params p1_two_columns() {
    UntwistedP1Params p;
    p.N = 2;
    p.columnar = {column_212("D1"), column_212("D1")};
    p.f0 = prog({Step::sprout("c0", "D2"), Step::subdivide("c0", "c1"), Step::sprout("c2"), Step::subdivide("c2", "c3")});
    return p;
}

/// Base C1, one columnar [2,1,2] fiber, F~0 = [2,1,2]; F0 keeps both (-1)-curves, each
/// of multiplicity 2.
inline UntwistedC1Params c1_Bi() {
    UntwistedC1Params p;
    p.columnar = {column_212("D1")};
    p.f0_tilde = column_212("D1");
    p.f0 = prog({Step::sprout("c0", "D2"), Step::subdivide("c0", "c3")});
    return p;
}

inline void set_roles(FiberTree& f, const std::set<VertexId>& s0, const std::set<VertexId>& e) {
    for (const auto& v : f.forest.ids())
        f.role[v] = s0.count(v) ? Role::S0 : e.count(v) ? Role::E : Role::D;
}

/// Hirzebruch pair D0^2 = n, Dinf^2 = -n with a fiber at infinity in D; F0 grown over
/// a point off D: the proper transform C1 of the fiber and the last (-1)-curve C0 are
/// the S0-components, the curve between them is E.
inline RulingModel example_dD_zero_I(long long n) {
    RulingModel m;
    m.h = 2;
    m.nu = 1;
    m.base = "C1";
    m.F0 = "F0";
    m.F_inf = "F_inf";
    FiberTree f0 = replay(new_fiber({"D1", "D2"}), prog({Step::sprout("c0"), Step::sprout("c1")}));
    set_roles(f0, {"c0", "c2"}, {"c1"});
    FiberTree finf = new_fiber({"D1", "D2"});
    set_roles(finf, {}, {});
    m.fibers = {{"F0", f0}, {"F_inf", finf}};
    m.sections = {{"D1", n}, {"D2", -n}};
    return m;
}

/// F1 with D0^2 = 1, Dinf^2 = -1; two fibers [2,1,2] over points of D0 make the chains
/// T0 = T_inf = [2,1,2]; F0 then grows over a point of C1 off T0 + T_inf.
inline RulingModel example_dD_zero_II() {
    RulingModel m;
    m.h = 2;
    m.nu = 0;
    m.base = "P1";
    m.F0 = "F0";
    FiberTree f0 = replay(new_fiber({"D1", "D2"}), prog({Step::sprout("c0", "D1"), Step::subdivide("c0", "c1"),
                                                        Step::sprout("c2"), Step::subdivide("c2", "c3")}));
    set_roles(f0, {"c4"}, {"c3"});
    FiberTree f2 = replay(new_fiber({"D1", "D2"}), column_212("D1"));
    set_roles(f2, {"c2"}, {});
    m.fibers = {{"F2", f2}, {"F0", f0}};
    m.sections = {{"D1", -1}, {"D2", -1}};
    return m;
}

/// Random inner moves; each picks a 0-vertex of degree 2 and a direction.
inline WeightedForest scramble(const WeightedForest& f0, int n, std::mt19937_64& rng) {
    WeightedForest f = f0;
    for (int i = 0; i < n; ++i) {
        std::vector<FlowMove> moves;
        for (const auto& v : f.ids())
            if (f.weight(v) == 0 && f.degree(v) == 2)
                for (const auto& nb : f.neighbors(v)) moves.push_back({v, nb});
        if (moves.empty()) break;
        f = elementary_transform(f, moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)]);
    }
    return f;
}

/// Bracket entries along a chain forest.
inline std::vector<long long> entries(const WeightedForest& f) {
    const auto order = f.path_order();
    std::vector<long long> e;
    for (const auto& v : *order) e.push_back(-f.weight(v));
    return e;
}

/// Two branching vertices x, y, each carrying two (-2)-tips; joined directly, or
/// through a 0-vertex z when `bridge` is set.
inline WeightedForest double_fork(long long wx, long long wy, bool bridge) {
    WeightedForest d;
    d.add_vertex("x", wx);
    d.add_vertex("y", wy);
    for (auto t : {"x1", "x2", "y1", "y2"}) d.add_vertex(t, -2);
    for (auto t : {"x1", "x2"}) d.add_edge("x", t);
    for (auto t : {"y1", "y2"}) d.add_edge("y", t);
    if (bridge) {
        d.add_vertex("z", 0);
        d.add_edge("x", "z");
        d.add_edge("z", "y");
    } else {
        d.add_edge("x", "y");
    }
    return d;
}

/// Fork singularity record with twig discriminants (2, 2, k).
inline Singularity fork_22k(long long k) {
    Singularity s;
    s.kind = Singularity::Kind::Fork;
    s.fork_type = {2, 2, k};
    return s;
}

}  // namespace fixtures
