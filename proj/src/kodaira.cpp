#include "qhp/classify.hpp"

#include <algorithm>

namespace qhp {

const char* f0_case_name(F0Case c) {
    switch (c) {
        case F0Case::Ai: return "A.i";
        case F0Case::Aii: return "A.ii";
        case F0Case::Aiii: return "A.iii";
        case F0Case::Aiv: return "A.iv";
        case F0Case::Av: return "A.v";
        case F0Case::Bi: return "B.i";
        case F0Case::Bii: return "B.ii";
        case F0Case::Biii: return "B.iii";
        case F0Case::C: return "C";
    }
    return "?";
}

std::string kod_name(const KodDim& k) { return k ? std::to_string(*k) : "-inf"; }

KodDim kod_from_sign(const Rational& x) {
    if (x < 0) return std::nullopt;
    return x == 0 ? 0 : 1;
}

namespace {

bool adjacent(const FiberTree& f, const VertexId& a, const VertexId& b) { return f.forest.has_edge(a, b); }

bool meets_role(const FiberTree& f, const VertexId& v, Role r) {
    for (const auto& n : f.forest.neighbors(v))
        if (f.role_of(n) == r) return true;
    return false;
}

bool is_212(const WeightedForest& f) {
    const auto order = f.path_order();
    return order && order->size() == 3 && Chain::from_path(f, *order) == Chain{2, 1, 2};
}

}  // namespace

F0Data classify_F0(const RulingModel& m) {
    if (m.affine) throw ModelError("not_cstar", "an affine model has no F0 case");
    const FiberTree& f0 = m.fiber(m.F0);
    const auto s0 = f0.with_role(Role::S0);
    F0Data out;
    std::set<VertexId> marked;
    for (const auto& v : f0.forest.ids()) marked.insert(v);
    const auto trace = contraction_trace(f0, marked);
    out.eta_nontrivial = trace.eta_nontrivial();

    if (m.h == 2 && m.nu == 0) {
        if (s0.size() != 1) throw ModelError("f0_case", "F0 must have one S0-component");
        out.tag = F0Case::C;
        out.C = s0.front();
        out.mu = f0.mu(out.C);
        return out;
    }

    if (m.twisted) {
        if (s0.size() != 1) throw ModelError("f0_case", "F0 must have one S0-component");
        const auto bs = f0.vertices_meeting(m.sections.front().id);
        if (bs.size() != 1) throw ModelError("f0_case", "the 2-section must meet F0 in one component");
        out.C = s0.front();
        out.mu = f0.mu(out.C);
        out.B = bs.front();
        const VertexId& b = *out.B;
        const bool chain = f0.forest.path_order().has_value();
        if (out.eta_nontrivial)
            out.tag = F0Case::Av;
        else if (is_212(f0.forest))
            out.tag = F0Case::Ai;
        else if (f0.forest.degree(b) <= 1)
            out.tag = F0Case::Aiv;
        else if (b != out.C && adjacent(f0, out.C, b))
            out.tag = F0Case::Aii;
        else if (b != out.C && !adjacent(f0, out.C, b) && chain)
            out.tag = F0Case::Aiii;
        else
            throw ModelError("f0_case", "F0 matches no case of the twisted table");
        return out;
    }

    if (s0.size() != 2) throw ModelError("f0_case", "F0 must have two S0-components");
    VertexId c = s0[0], ct = s0[1];
    if (out.eta_nontrivial) {
        const bool e0 = meets_role(f0, c, Role::E), e1 = meets_role(f0, ct, Role::E);
        if (e0 && !e1) {
            std::swap(c, ct);
        } else if (e0 == e1) {
            // C is the component that survives the contractions up to the last sprouting one
            std::size_t last = 0;
            for (std::size_t i = 0; i < trace.steps.size(); ++i)
                if (trace.steps[i].sprouting) last = i;
            std::set<VertexId> gone;
            for (std::size_t i = 0; i <= last; ++i) gone.insert(trace.steps[i].vertex);
            if (gone.count(c) && !gone.count(ct)) std::swap(c, ct);
            if (e0) throw ModelError("f0_case", "both S0-components of F0 meet E");
        }
        out.tag = F0Case::Biii;
    } else {
        out.tag = f0.forest.weight(c) == -1 && f0.forest.weight(ct) == -1 ? F0Case::Bi : F0Case::Bii;
    }
    out.C = c;
    out.C_tilde = ct;
    out.mu = f0.mu(c);
    out.mu_tilde = f0.mu(ct);
    return out;
}

std::vector<long long> columnar_mus(const RulingModel& m) {
    std::vector<long long> out;
    for (const auto* nf : m.other_fibers()) {
        if (m.affine) {
            const auto minus = nf->fiber.minus_one_vertices();
            out.push_back(nf->fiber.mu(minus.front()));
        } else {
            out.push_back(columnar_split(nf->fiber)->mu_c);
        }
    }
    return out;
}

KodairaData kodaira(const RulingModel& m) { return kodaira(m, classify_F0(m)); }

KodairaData kodaira(const RulingModel& m, const F0Data& f0) {
    KodairaData k;
    const auto mus = columnar_mus(m);
    k.lambda = Rational(static_cast<long long>(mus.size()) + m.nu - 1);
    for (const auto mu : mus) k.lambda -= Rational(1, mu);
    const Rational& l = k.lambda;
    const Rational half(1, 2);
    const long long mn = f0.mu_tilde ? std::min(f0.mu, *f0.mu_tilde) : f0.mu;
    switch (f0.tag) {
        case F0Case::Ai: k.kappa = l - half; k.kappa0 = l - half; break;
        case F0Case::Aii: k.kappa = l - half; k.kappa0 = l - Rational(1, 2 * f0.mu); break;
        case F0Case::Aiii: k.kappa = l - half; k.kappa0 = l; break;
        case F0Case::Aiv: k.kappa = l - half; k.kappa0 = l - Rational(1, f0.mu); break;
        case F0Case::Av: k.kappa = l; k.kappa0 = l; break;
        case F0Case::Bi: k.kappa = l - 1; k.kappa0 = l - Rational(1, mn); break;
        case F0Case::Bii: k.kappa = l - Rational(1, mn); k.kappa0 = k.kappa; break;
        case F0Case::Biii: k.kappa = l - Rational(1, f0.mu); k.kappa0 = k.kappa; break;
        case F0Case::C: k.kappa = l; k.kappa0 = l; break;
    }
    k.kod_S0 = kod_from_sign(k.kappa0);
    k.kod_S = kod_from_sign(k.kappa);
    return k;
}

std::optional<std::string> k0_zero_cases(const RulingModel& m) { return k0_zero_cases(m, classify_F0(m)); }

std::optional<std::string> k0_zero_cases(const RulingModel& m, const F0Data& f0) {
    const auto mus = columnar_mus(m);
    const std::size_t n = mus.size();
    const auto all_two = [&] { return std::all_of(mus.begin(), mus.end(), [](long long x) { return x == 2; }); };
    const FiberTree& f = m.fiber(m.F0);
    const RulingKind kind = m.kind();

    if (n == 0 && (f0.tag == F0Case::Aiii || f0.tag == F0Case::Av)) return "i";
    if (kind == RulingKind::Twisted && n == 1 && f0.mu == 2 && mus[0] == 2 && f.with_role(Role::D).empty() &&
        (f0.tag == F0Case::Ai || f0.tag == F0Case::Aiv))
        return "ii";
    if (kind == RulingKind::UntwistedC1 && n == 1 && mus[0] == 2 && f0.mu_tilde &&
        std::min(f0.mu, *f0.mu_tilde) == 2) {
        const auto d_ids = f.with_role(Role::D);
        const WeightedForest d = f.forest.induced({d_ids.begin(), d_ids.end()});
        for (const auto& comp : d.components())
            if (comp.size() == 1 && d.weight(comp.front()) == -2) return "iii";
    }
    if (kind == RulingKind::UntwistedC1 && n == 2 && all_two()) {
        for (const auto& c : f.with_role(Role::S0))
            if (!f.sections_at(c).empty()) return "iv";
    }
    if (kind == RulingKind::UntwistedP1 && n == 2 && all_two()) return "v";
    return std::nullopt;
}

H1Data h1(const RulingModel& m) {
    const auto b = assemble_boundary(m);
    const Int dD = discriminant(b.D);
    const Int dE = discriminant(b.E);
    H1Data out;
    const Int num = abs_int(dD);
    if (dE <= 0 || num % dE != 0 || !exact_sqrt(num / dE, out.order) || out.order == 0)
        throw ModelError("h1_inconsistent", "|d(D)| / d(E) = " + to_string(num) + "/" + to_string(dE) +
                                                " is not a nonzero square");
    if (m.affine) {
        std::vector<Int> factors;
        Int product = 1;
        for (const auto* nf : m.other_fibers()) {
            const auto& f = nf->fiber;
            const auto e_ids = f.with_role(Role::E);
            const Int de = discriminant(f.forest.induced({e_ids.begin(), e_ids.end()}));
            const Int mu = f.mu(f.minus_one_vertices().front());
            if (mu % de != 0) throw ModelError("h1_inconsistent", "d(E) does not divide mu(C) in '" + nf->name + "'");
            const Int q = mu / de;
            product *= q;
            if (q > 1) factors.push_back(q);
        }
        if (product != out.order)
            throw ModelError("h1_inconsistent", "cyclic factors multiply to " + to_string(product) + ", expected " +
                                                    to_string(out.order));
        out.decomposition = std::move(factors);
    }
    return out;
}

std::vector<Singularity> singularities(const RulingModel& m) {
    const auto b = assemble_boundary(m);
    std::vector<Singularity> out;
    for (const auto& comp : b.E.components()) {
        const WeightedForest e = b.E.induced({comp.begin(), comp.end()});
        Singularity s;
        s.ids = comp;
        for (const auto& v : comp)
            if (e.weight(v) > -2) throw ModelError("non_logarithmic", "E-component with a weight above -2 at " + v);
        if (!is_negative_definite(e)) throw ModelError("non_logarithmic", "E-component is not negative definite");
        if (const auto order = e.path_order()) {
            s.kind = Singularity::Kind::Cyclic;
            const Chain c = Chain::from_path(e, *order);
            s.chain = std::min(c, c.reversed());
            if (std::all_of(s.chain.entries.begin(), s.chain.entries.end(), [](long long x) { return x == 2; }))
                s.dynkin = "A" + std::to_string(s.chain.size());
        } else if (const auto fs = fork_shape(e)) {
            s.kind = Singularity::Kind::Fork;
            s.fork_type = fs->type;
            s.center = -e.weight(fs->center);
            for (const auto& t : fs->twigs) s.twigs.push_back(t.chain.reversed());
            if (s.fork_type[0] == 2 && s.fork_type[1] == 2) s.dynkin = "D" + Int(s.fork_type[2] + 2).str();
        } else {
            throw ModelError("non_logarithmic", "E-component is neither a chain nor a fork");
        }
        out.push_back(std::move(s));
    }
    return out;
}

bool two_point_rule_holds(const RulingModel& m, const std::vector<Singularity>& s) {
    if (s.size() < 2) return true;
    if (s.size() != 2 || !m.twisted) return false;
    for (const auto& x : s)
        if (x.kind != Singularity::Kind::Cyclic || !(x.chain == Chain{2})) return false;
    try {
        return classify_F0(m).tag == F0Case::Ai;
    } catch (const DomainError&) {
        return false;
    }
}

}  // namespace qhp
