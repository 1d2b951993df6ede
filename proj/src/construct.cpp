#include "qhp/classify.hpp"

namespace qhp {

namespace {

/// S0 as given; every other vertex is D when its piece of F - S0 meets a section, else E.
void mark_roles(FiberTree& f, const std::set<VertexId>& s0) {
    std::set<VertexId> rest_ids;
    for (const auto& v : f.forest.ids())
        if (!s0.count(v)) rest_ids.insert(v);
    const WeightedForest rest = f.forest.induced(rest_ids);
    for (const auto& comp : rest.components()) {
        bool meets = false;
        for (const auto& v : comp)
            if (!f.sections_at(v).empty()) meets = true;
        f.set_role({comp.begin(), comp.end()}, meets ? Role::D : Role::E);
    }
    f.set_role({s0.begin(), s0.end()}, Role::S0);
}

void count_section_steps(const BlowupProgram& p, std::map<std::string, long long>& w) {
    for (const auto& s : p.steps)
        if (s.kind == Step::Kind::Sprout && !s.at.empty()) --w[s.at];
}

/// Vertex created by the last step, or `fallback` for an empty program.
VertexId last_created(const FiberTree& start, const BlowupProgram& p, const VertexId& fallback) {
    if (p.steps.empty()) return fallback;
    FiberTree f = start;
    VertexId last;
    for (const auto& s : p.steps) {
        last = created_id(f);
        f = apply_step(f, s);
    }
    return last;
}

FiberTree smooth_in_D(const std::vector<std::string>& sections) {
    FiberTree f = new_fiber(sections);
    f.set_role({"c0"}, Role::D);
    return f;
}

}  // namespace

FiberTree twisted_template() {
    FiberTree f;
    f.forest.add_vertex("c0", -2);
    f.forest.add_vertex("c1", -2);
    f.forest.add_vertex("c2", -1);
    f.forest.add_edge("c0", "c2");
    f.forest.add_edge("c2", "c1");
    f.mult = {{"c0", 1}, {"c1", 1}, {"c2", 2}};
    f.role = {{"c0", Role::D}, {"c1", Role::D}, {"c2", Role::D}};
    f.attach = {{"c2", "H"}};
    return f;
}

namespace {

FiberTree columnar_fiber(const BlowupProgram& p, const std::vector<std::string>& sections,
                         const std::string& first) {
    check_columnar_program(p, first);
    FiberTree f = replay(new_fiber(sections), p);
    const auto minus = f.minus_one_vertices();
    if (minus.size() == 1) mark_roles(f, {minus.front()});
    if (minus.size() != 1 || !columnar_split(f))
        throw DomainError("program " + p.encode() + " does not give a columnar fiber");
    return f;
}

std::string fiber_name(std::size_t i) { return "F" + std::to_string(i + 1); }

}  // namespace

void check_columnar_program(const BlowupProgram& p, const std::string& section) {
    if (p.steps.size() < 2) throw DomainError("a columnar program needs at least two steps");
    const Step& s0 = p.steps.front();
    if (s0.kind != Step::Kind::Sprout || s0.a != "c0" || s0.at != section)
        throw DomainError("a columnar program starts with a blow-up of c0 where '" + section + "' meets it");
    FiberTree f;
    f.forest.add_vertex("c0", 0);
    f.mult["c0"] = 1;
    f.role["c0"] = Role::S0;
    f.attach = {{"c0", section}};
    VertexId prev = created_id(f);
    f = apply_step(f, s0);
    for (std::size_t i = 1; i < p.steps.size(); ++i) {
        const Step& s = p.steps[i];
        if (s.kind != Step::Kind::Subdivide || (s.a != prev && s.b != prev))
            throw DomainError("columnar program step " + std::to_string(i) + " is not subdivisional at the newest curve");
        prev = created_id(f);
        f = apply_step(f, s);
    }
}

bool is_connected_program(const FiberTree& start, const BlowupProgram& p) {
    FiberTree f = start;
    VertexId prev;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const Step& s = p.steps[i];
        if (i > 0) {
            const bool on_prev = s.kind == Step::Kind::Sprout ? s.a == prev : (s.a == prev || s.b == prev);
            if (!on_prev) return false;
        }
        prev = created_id(f);
        f = apply_step(f, s);
    }
    return true;
}

RulingModel construct_affine(const AffineParams& p) {
    RulingModel m;
    m.h = 1;
    m.nu = 1;
    m.base = "C1";
    m.affine = true;
    m.F_inf = "F_inf";
    std::map<std::string, long long> w{{"H", p.section_weight}};
    long long interior = 0;
    for (std::size_t i = 0; i < p.fibers.size(); ++i) {
        const auto& prog = p.fibers[i];
        if (prog.steps.empty() || prog.steps[0].kind != Step::Kind::Sprout || prog.steps[0].a != "c0" ||
            prog.steps[0].at != "H")
            throw DomainError("fiber " + std::to_string(i + 1) + " must start with a blow-up where H meets c0");
        FiberTree f = replay(new_fiber({"H"}), prog);
        const auto minus = f.minus_one_vertices();
        if (minus.size() != 1)
            throw DomainError("fiber " + std::to_string(i + 1) + " has " + std::to_string(minus.size()) + " (-1)-curves");
        mark_roles(f, {minus.front()});
        if (f.forest.degree(minus.front()) >= 2) ++interior;
        count_section_steps(prog, w);
        m.fibers.push_back({fiber_name(i), std::move(f)});
    }
    if (interior == 0) throw DomainError("no fiber has an interior (-1)-curve: the surface would be smooth");
    m.fibers.push_back({"F_inf", smooth_in_D({"H"})});
    m.sections = {{"H", w["H"]}};
    validate_model(m);
    return m;
}

RulingModel construct_twisted(const TwistedParams& p) {
    RulingModel m;
    m.h = 1;
    m.nu = 1;
    m.base = "C1";
    m.twisted = true;
    m.F0 = "F0";
    m.F_inf = "F_inf";
    std::map<std::string, long long> w{{"H", 4 - 2 - 2}};
    for (std::size_t i = 0; i < p.columnar.size(); ++i) {
        m.fibers.push_back({fiber_name(i), columnar_fiber(p.columnar[i], {"H", "H"}, "H")});
        count_section_steps(p.columnar[i], w);
    }
    const FiberTree start = twisted_template();
    if (!is_connected_program(start, p.f0)) throw DomainError("the F0 program is not a connected sequence");
    FiberTree f0 = replay(start, p.f0);
    mark_roles(f0, {last_created(start, p.f0, "c2")});
    count_section_steps(p.f0, w);
    m.fibers.push_back({"F0", std::move(f0)});
    m.fibers.push_back({"F_inf", twisted_template()});
    m.sections = {{"H", w["H"]}};
    validate_model(m);
    assemble_boundary(m);
    return m;
}

RulingModel construct_untwisted_c1(const UntwistedC1Params& p) {
    RulingModel m;
    m.h = 2;
    m.nu = 1;
    m.base = "C1";
    m.F0 = "F0";
    m.F_inf = "F_inf";
    std::map<std::string, long long> w{{"D1", 1}, {"D2", -1}};
    for (std::size_t i = 0; i < p.columnar.size(); ++i) {
        m.fibers.push_back({fiber_name(i), columnar_fiber(p.columnar[i], {"D1", "D2"}, "D1")});
        count_section_steps(p.columnar[i], w);
    }
    FiberTree tilde = new_fiber({"D1", "D2"});
    VertexId c_tilde = "c0";
    if (!p.f0_tilde.steps.empty()) {
        tilde = columnar_fiber(p.f0_tilde, {"D1", "D2"}, "D1");
        c_tilde = columnar_split(tilde)->c;
        count_section_steps(p.f0_tilde, w);
    }
    if (p.f0.steps.empty()) throw DomainError("the F0 program must be nonempty");
    if (!is_connected_program(tilde, p.f0)) throw DomainError("the F0 program is not a connected sequence");
    const Step& z = p.f0.steps.front();
    if (z.kind == Step::Kind::Sprout && z.a == c_tilde && z.at != "D1")
        throw DomainError("the first center lies only on C~: an S0-component of F0 would miss D");
    FiberTree f0 = replay(tilde, p.f0);
    mark_roles(f0, {last_created(tilde, p.f0, c_tilde), c_tilde});
    count_section_steps(p.f0, w);
    m.fibers.push_back({"F0", std::move(f0)});
    m.fibers.push_back({"F_inf", smooth_in_D({"D1", "D2"})});
    m.sections = {{"D1", w["D1"]}, {"D2", w["D2"]}};
    validate_model(m);
    assemble_boundary(m);
    return m;
}

RulingModel construct_untwisted_p1(const UntwistedP1Params& p) {
    if (p.N <= 0) throw DomainError("the Hirzebruch degree N must be positive");
    RulingModel m;
    m.h = 2;
    m.nu = 0;
    m.base = "P1";
    m.F0 = "F0";
    std::map<std::string, long long> w{{"D1", p.N}, {"D2", -p.N}};
    for (std::size_t i = 0; i < p.columnar.size(); ++i) {
        m.fibers.push_back({fiber_name(i), columnar_fiber(p.columnar[i], {"D1", "D2"}, "D1")});
        count_section_steps(p.columnar[i], w);
    }
    FiberTree tilde = new_fiber({"D1", "D2"});
    VertexId b = "c0";
    if (!p.f0_tilde.steps.empty()) {
        tilde = columnar_fiber(p.f0_tilde, {"D1", "D2"}, "D1");
        b = columnar_split(tilde)->c;
        count_section_steps(p.f0_tilde, w);
    }

    // the two pieces of D1 + D2 + sum (F_i - C_i) + (F~0 - B); one must be non-degenerate
    {
        WeightedForest g;
        g.add_vertex("D1", w["D1"]);
        g.add_vertex("D2", w["D2"]);
        auto add_piece = [&](const std::string& name, const FiberTree& f, const VertexId& skip) {
            for (const auto& v : f.forest.ids())
                if (v != skip) g.add_vertex(global_id(name, v), f.forest.weight(v));
            for (const auto& [a, c] : f.forest.edges())
                if (a != skip && c != skip) g.add_edge(global_id(name, a), global_id(name, c));
            for (const auto& a : f.attach)
                if (a.vertex != skip) g.add_edge(a.section, global_id(name, a.vertex));
        };
        for (const auto& nf : m.fibers) add_piece(nf.name, nf.fiber, columnar_split(nf.fiber)->c);
        add_piece("F0", tilde, b);
        const auto c1 = component_of(g, "D1");
        const auto c2 = component_of(g, "D2");
        if (discriminant(g.induced(c1)) == 0 && discriminant(g.induced(c2)) == 0)
            throw DomainError("both pieces of the boundary are degenerate");
    }

    if (p.f0.steps.empty()) throw DomainError("the F0 program must be nonempty");
    if (!is_connected_program(tilde, p.f0)) throw DomainError("the F0 program is not a connected sequence");
    const Step& first = p.f0.steps.front();
    if (first.kind != Step::Kind::Sprout || first.a != b || first.at == "D1")
        throw DomainError("the first blow-up must be sprouting for D1 + F~0 with center on B");
    FiberTree f0 = replay(tilde, p.f0);
    mark_roles(f0, {last_created(tilde, p.f0, b)});
    count_section_steps(p.f0, w);
    m.fibers.push_back({"F0", std::move(f0)});
    m.sections = {{"D1", w["D1"]}, {"D2", w["D2"]}};
    validate_model(m);
    assemble_boundary(m);
    return m;
}

}  // namespace qhp
