#include "qhp/classify.hpp"

#include <algorithm>
#include <functional>

namespace qhp {

const char* kind_name(RulingKind k) {
    switch (k) {
        case RulingKind::Affine: return "affine";
        case RulingKind::Twisted: return "twisted";
        case RulingKind::UntwistedC1: return "untwisted-c1";
        case RulingKind::UntwistedP1: return "untwisted-p1";
    }
    return "?";
}

RulingKind parse_kind(const std::string& s) {
    if (s == "affine") return RulingKind::Affine;
    if (s == "twisted") return RulingKind::Twisted;
    if (s == "untwisted-c1") return RulingKind::UntwistedC1;
    if (s == "untwisted-p1") return RulingKind::UntwistedP1;
    throw MalformedInput("unknown construction kind '" + s + "'");
}

// ---------------------------------------------------------------- RulingModel

RulingKind RulingModel::kind() const {
    if (affine) return RulingKind::Affine;
    if (twisted) return RulingKind::Twisted;
    return nu == 1 ? RulingKind::UntwistedC1 : RulingKind::UntwistedP1;
}

bool RulingModel::has_fiber(const std::string& name) const {
    return std::any_of(fibers.begin(), fibers.end(), [&](const NamedFiber& f) { return f.name == name; });
}

const FiberTree& RulingModel::fiber(const std::string& name) const {
    for (const auto& f : fibers)
        if (f.name == name) return f.fiber;
    throw ModelError("missing_fiber", "no fiber named '" + name + "'");
}

long long RulingModel::section_weight(const std::string& id) const {
    for (const auto& s : sections)
        if (s.id == id) return s.weight;
    throw ModelError("unknown_section", "no section named '" + id + "'");
}

long long RulingModel::blowup_count() const {
    long long n = 0;
    for (const auto& f : fibers) n += static_cast<long long>(f.fiber.forest.size()) - 1;
    return n;
}

std::vector<const NamedFiber*> RulingModel::other_fibers() const {
    std::vector<const NamedFiber*> out;
    for (const auto& f : fibers)
        if (f.name != F0 && f.name != F_inf) out.push_back(&f);
    return out;
}

// ---------------------------------------------------------------- validation

std::map<std::string, long long> contracted_section_weights(const RulingModel& m) {
    std::map<std::string, long long> w;
    for (const auto& s : m.sections) w[s.id] = s.weight;
    for (const auto& nf : m.fibers) {
        FiberTree f = nf.fiber;
        while (f.forest.size() > 1) {
            // fewest sections first, so that disjoint sections stay disjoint
            std::optional<VertexId> pick;
            for (const auto& v : f.minus_one_vertices())
                if (f.forest.degree(v) <= 2 && (!pick || f.sections_at(v).size() < f.sections_at(*pick).size()))
                    pick = v;
            if (!pick) throw ModelError("invalid_fiber", "fiber '" + nf.name + "' does not contract to a smooth fiber");
            for (const auto& s : f.sections_at(*pick)) ++w[s];
            f = blow_down(f, *pick);
        }
    }
    return w;
}

void validate_model(const RulingModel& m) {
    if (m.h != 1 && m.h != 2) throw ModelError("signature", "h must be 1 or 2");
    if (m.nu != 0 && m.nu != 1) throw ModelError("signature", "nu must be 0 or 1");
    if (m.base != "P1" && m.base != "C1") throw ModelError("signature", "base must be P1 or C1");
    if ((m.nu == 1) != (m.base == "C1")) throw ModelError("signature", "nu = 1 exactly when the base is C1");
    if (m.affine) {
        if (m.h != 1 || m.twisted || m.nu != 1) throw ModelError("signature", "an affine model has h = 1, nu = 1, no twist");
    } else if (m.twisted != (m.h == 1)) {
        throw ModelError("signature", "a C*-ruling is twisted exactly when h = 1");
    }
    if (static_cast<int>(m.sections.size()) != m.h)
        throw ModelError("signature", "expected " + std::to_string(m.h) + " horizontal sections");
    std::set<std::string> secs;
    for (const auto& s : m.sections)
        if (!secs.insert(s.id).second) throw ModelError("signature", "duplicate section '" + s.id + "'");

    std::set<std::string> names;
    for (const auto& f : m.fibers)
        if (!names.insert(f.name).second) throw ModelError("duplicate_fiber", "duplicate fiber '" + f.name + "'");
    if (m.affine) {
        if (!m.F0.empty()) throw ModelError("signature", "an affine model has no F0");
    } else if (!m.has_fiber(m.F0)) {
        throw ModelError("missing_fiber", "F0 is not among the fibers");
    }
    if ((m.nu == 1) != !m.F_inf.empty()) throw ModelError("signature", "F_inf is present exactly when nu = 1");
    if (m.nu == 1 && !m.has_fiber(m.F_inf)) throw ModelError("missing_fiber", "F_inf is not among the fibers");

    const long long degree = m.twisted ? 2 : 1;
    for (const auto& nf : m.fibers) {
        const auto v = validate_fiber(nf.fiber);
        if (!v.ok()) {
            std::string why;
            for (const auto& s : v.findings) why += (why.empty() ? "" : "; ") + s;
            throw ModelError("invalid_fiber", "fiber '" + nf.name + "': " + why);
        }
        std::map<std::string, long long> meet;
        for (const auto& a : nf.fiber.attach) {
            if (!secs.count(a.section))
                throw ModelError("unknown_section", "fiber '" + nf.name + "' references '" + a.section + "'");
            meet[a.section] += nf.fiber.mu(a.vertex);
        }
        for (const auto& s : secs)
            if (meet[s] != degree)
                throw ModelError("section_degree", "section '" + s + "' meets fiber '" + nf.name + "' with degree " +
                                                       std::to_string(meet[s]));
    }
    if (m.nu == 1) {
        const auto& finf = m.fiber(m.F_inf);
        if (!finf.with_role(Role::E).empty() || !finf.with_role(Role::S0).empty())
            throw ModelError("signature", "F_inf must lie in D");
    }
    for (const auto* nf : m.other_fibers()) {
        if (m.affine) continue;
        if (!columnar_split(nf->fiber)) throw ModelError("not_columnar", "fiber '" + nf->name + "' is not columnar");
    }

    if (!m.affine) {
        const auto w = contracted_section_weights(m);
        if (m.twisted && w.begin()->second != 4)
            throw ModelError("section_weights", "the 2-section must contract to a conic (weight 4)");
        if (m.h == 2) {
            long long sum = 0;
            for (const auto& [id, x] : w) sum += x;
            if (sum != 0) throw ModelError("section_weights", "disjoint sections must contract to weights N and -N");
        }
    }
}

// ---------------------------------------------------------------- assembly

std::string global_id(const std::string& fiber, const VertexId& v) { return fiber + "." + v; }

Boundary assemble_boundary(const RulingModel& m) {
    Boundary out;
    auto link = [](WeightedForest& f, const std::string& a, const std::string& b) {
        try {
            f.add_edge(a, b);
        } catch (const InvalidGraph& e) {
            throw ModelError("d_cycle", std::string("D is not a tree: ") + e.what());
        }
    };
    for (const auto& s : m.sections) out.D.add_vertex(s.id, s.weight);
    for (const auto& nf : m.fibers) {
        const auto& f = nf.fiber;
        for (const auto& v : f.forest.ids()) {
            const Role r = f.role_of(v);
            if (r == Role::D) out.D.add_vertex(global_id(nf.name, v), f.forest.weight(v));
            if (r == Role::E) out.E.add_vertex(global_id(nf.name, v), f.forest.weight(v));
        }
        for (const auto& [a, b] : f.forest.edges()) {
            const Role ra = f.role_of(a), rb = f.role_of(b);
            if ((ra == Role::D && rb == Role::E) || (ra == Role::E && rb == Role::D))
                throw ModelError("e_meets_d", "E meets D in fiber '" + nf.name + "' at " + a + "-" + b);
            if (ra == Role::D && rb == Role::D) link(out.D, global_id(nf.name, a), global_id(nf.name, b));
            if (ra == Role::E && rb == Role::E) out.E.add_edge(global_id(nf.name, a), global_id(nf.name, b));
        }
        for (const auto& a : f.attach) {
            const Role r = f.role_of(a.vertex);
            if (r == Role::E) throw ModelError("e_meets_d", "section '" + a.section + "' meets E in '" + nf.name + "'");
            if (r == Role::D) link(out.D, a.section, global_id(nf.name, a.vertex));
        }
    }
    if (!out.D.is_connected()) throw ModelError("d_disconnected", "D is not connected");
    out.b2_total = 2 + m.blowup_count();
    return out;
}

// ---------------------------------------------------------------- criterion

SigmaFujita sigma_and_fujita(const RulingModel& m) {
    SigmaFujita s;
    s.h = m.h;
    s.nu = m.nu;
    s.b2X = 2 + m.blowup_count();
    s.b2T = static_cast<long long>(m.sections.size());
    for (const auto& nf : m.fibers) {
        s.b2T += static_cast<long long>(nf.fiber.with_role(Role::D).size() + nf.fiber.with_role(Role::E).size());
        if (nf.name == m.F_inf) continue;
        s.Sigma += static_cast<long long>(nf.fiber.with_role(Role::S0).size()) - 1;
    }
    s.rhs = s.h + s.nu + s.b2X - s.b2T - 2;
    s.consistent = s.Sigma == s.rhs;
    return s;
}

CriterionVerdict qhp_criterion(const RulingModel& m) {
    CriterionVerdict v;
    Boundary b;
    try {
        b = assemble_boundary(m);
    } catch (const ModelError& e) {
        v.findings.push_back(e.code + ": " + e.what());
        v.clause_i = e.code != "d_disconnected";
        v.clause_ii = e.code != "d_cycle";
        return v;
    }
    // every E-component is vertical, so D is the only non-vertical component of T
    v.clause_i = true;
    v.clause_ii = true;
    const auto s = sigma_and_fujita(m);
    v.clause_iii = s.Sigma == m.h + m.nu - 2;
    if (!v.clause_iii)
        v.findings.push_back("Sigma = " + std::to_string(s.Sigma) + " but h + nu - 2 = " + std::to_string(m.h + m.nu - 2));
    v.dD = discriminant(b.D);
    v.dE = discriminant(b.E);
    v.clause_iv = v.dD != 0;
    if (!v.clause_iv) v.findings.push_back("d(D) = 0");
    return v;
}

std::vector<std::string> p_minimality_violations(const RulingModel& m) {
    const auto b = assemble_boundary(m);
    std::set<std::string> secs;
    for (const auto& s : m.sections) secs.insert(s.id);
    std::vector<std::string> out;
    for (const auto& v : b.D.ids())
        if (!secs.count(v) && b.D.weight(v) == -1 && b.D.degree(v) <= 2) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------- d(D) = 0 structure

namespace {

/// D together with every vertex of F0, as one graph.
WeightedForest d_with_f0(const RulingModel& m, const Boundary& b) {
    WeightedForest g = b.D;
    const auto& f0 = m.fiber(m.F0);
    for (const auto& v : f0.forest.ids())
        if (f0.role_of(v) != Role::D) g.add_vertex(global_id(m.F0, v), f0.forest.weight(v));
    for (const auto& [a, c] : f0.forest.edges())
        if (f0.role_of(a) != Role::D || f0.role_of(c) != Role::D) g.add_edge(global_id(m.F0, a), global_id(m.F0, c));
    for (const auto& a : f0.attach)
        if (f0.role_of(a.vertex) != Role::D) g.add_edge(a.section, global_id(m.F0, a.vertex));
    return g;
}

}  // namespace

StructuralVerdict dD_structural(const RulingModel& m) {
    StructuralVerdict out;
    const auto b = assemble_boundary(m);
    out.determinant = discriminant(b.D) != 0;
    if (m.h == 1) {
        out.structural = true;
        return out;
    }
    const auto& f0 = m.fiber(m.F0);
    if (m.nu == 1) {
        out.structural = true;
        for (const auto& c : f0.with_role(Role::S0)) {
            bool meets = !f0.sections_at(c).empty();
            for (const auto& n : f0.forest.neighbors(c))
                if (f0.role_of(n) == Role::D) meets = true;
            if (!meets) out.structural = false;
        }
        return out;
    }
    // (h, nu) = (2, 0): the separator of D0, the other section and the rest of F0
    const WeightedForest g = d_with_f0(m, b);
    const std::string d0 = m.sections[0].id;
    const std::string d1 = m.sections[1].id;
    std::vector<std::string> rest;
    for (const auto& v : f0.forest.ids())
        if (f0.role_of(v) != Role::D) rest.push_back(global_id(m.F0, v));
    std::vector<std::string> found;
    for (const auto& v : b.D.ids()) {
        if (v == d0 || v == d1) continue;
        const WeightedForest cut = g.without({v});
        const auto c0 = component_of(cut, d0);
        if (c0.count(d1)) continue;
        const auto c1 = component_of(cut, d1);
        bool ok = true;
        for (const auto& r : rest)
            if (c0.count(r) || c1.count(r)) ok = false;
        if (ok) found.push_back(v);
    }
    if (found.size() != 1)
        throw ModelError("separator", found.empty() ? "no separating component in D" : "separating component is not unique");
    out.separator = found.front();
    const WeightedForest dcut = b.D.without({found.front()});
    out.d_tilde = discriminant(dcut.induced(component_of(dcut, d0)));
    out.structural = *out.d_tilde != 0;
    return out;
}

}  // namespace qhp
