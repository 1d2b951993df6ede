#include "qhp/classify.hpp"

#include <algorithm>

namespace qhp {

const char* pattern_name(BoundaryPattern p) {
    switch (p) {
        case BoundaryPattern::None: return "none";
        case BoundaryPattern::I: return "i";
        case BoundaryPattern::II: return "ii";
        case BoundaryPattern::III: return "iii";
    }
    return "?";
}

namespace {

/// Both other neighbours of a branching vertex are (-2)-tips.
bool two_minus_two_tips(const WeightedForest& d, const VertexId& v, const VertexId& other) {
    int tips = 0;
    for (const auto& n : d.neighbors(v)) {
        if (n == other) continue;
        if (d.degree(n) == 1 && d.weight(n) == -2) ++tips;
    }
    return tips == 2;
}

}  // namespace

PatternMatch match_boundary_pattern(const BoundaryForest& d) {
    PatternMatch out;
    if (!d.is_connected()) return out;
    std::vector<VertexId> br;
    for (const auto& v : d.ids()) {
        if (d.degree(v) == 3) br.push_back(v);
        if (d.degree(v) > 3) return out;
    }
    if (br.size() != 2) return out;
    const VertexId &x = br[0], &y = br[1];
    if (d.size() == 6 && d.has_edge(x, y)) {
        if (!two_minus_two_tips(d, x, y) || !two_minus_two_tips(d, y, x)) return out;
        const long long wx = d.weight(x), wy = d.weight(y);
        if (wx == -1 && wy == -1) {
            out.pattern = BoundaryPattern::II;
            out.k = -1;
        } else if (wx == -1 || wy == -1) {
            const long long k = wx == -1 ? wy : wx;
            if (k <= -2) {
                out.pattern = BoundaryPattern::I;
                out.k = k;
            }
        }
        return out;
    }
    if (d.size() == 7) {
        VertexId z;
        for (const auto& n : d.neighbors(x))
            if (d.has_edge(n, y)) z = n;
        if (z.empty() || d.weight(z) != 0) return out;
        if (!two_minus_two_tips(d, x, z) || !two_minus_two_tips(d, y, z)) return out;
        out.pattern = BoundaryPattern::III;
        out.k = std::min(d.weight(x), d.weight(y));
        out.m = std::max(d.weight(x), d.weight(y));
    }
    return out;
}

RulingCount count_cstar_rulings(const RulingFlags& flags, const BoundaryForest& d_standard,
                                const std::vector<Singularity>& forks) {
    if (flags.exceptional && flags.kod_S0 != KodDim(0))
        throw DomainError("an exceptional plane has smooth locus of Kodaira dimension 0");
    RulingCount out;
    auto set = [&](std::initializer_list<const char*> kinds) {
        out.r = static_cast<long long>(kinds.size());
        for (const char* k : kinds) out.rulings.push_back({k});
    };
    if (flags.affine_ruled) {
        out.applicable = false;
        return out;
    }
    if (flags.kod_S0 == KodDim(2) || flags.exceptional) {
        out.r = 0;
        return out;
    }
    if (!flags.logarithmic) {
        set({"extendable"});
        return out;
    }
    if (flags.kod_S0 == KodDim(1)) {
        set({"extendable"});
        return out;
    }
    if (!flags.kod_S0) {
        for (const auto& s : forks) {
            if (s.kind != Singularity::Kind::Fork || s.fork_type[0] != 2 || s.fork_type[1] != 2) continue;
            if (s.fork_type[2] == 2)
                set({"non-extendable", "twisted", "twisted", "twisted"});
            else
                set({"non-extendable", "twisted"});
            return out;
        }
        set({"non-extendable"});
        return out;
    }
    out.pattern = match_boundary_pattern(d_standard);
    switch (out.pattern.pattern) {
        case BoundaryPattern::I: set({"twisted"}); break;
        case BoundaryPattern::II: set({"twisted", "twisted"}); break;
        case BoundaryPattern::III: set({"twisted", "twisted", "untwisted-C1"}); break;
        case BoundaryPattern::None: set({"twisted", "untwisted"}); break;
    }
    return out;
}

ContractibleCount count_contractible(const RulingFlags& flags, const RulingCount& rc, int candidates) {
    ContractibleCount out;
    if (flags.exceptional) {
        out.applicable = true;
        out.value = 0;
        return out;
    }
    if (flags.kod_S0 != KodDim(0) || !flags.logarithmic || !rc.applicable || !rc.r || *rc.r == 0) return out;
    out.applicable = true;
    switch (rc.pattern.pattern) {
        case BoundaryPattern::I: out.value = 1; break;
        case BoundaryPattern::II: out.value = 2; break;
        case BoundaryPattern::III: out.value = 2; break;
        case BoundaryPattern::None:
            out.value = 2;
            out.upper_bound = candidates < 2;
            break;
    }
    return out;
}

std::optional<bool> affine_ruling_unique(const BoundaryForest& d_standard) {
    if (d_standard.size() <= 1) return std::nullopt;
    return !d_standard.path_order().has_value();
}

// ---------------------------------------------------------------- report

namespace {

/// Contracts non-branching (-1)-vertices until none is left.
WeightedForest snc_minimal(WeightedForest d) {
    for (;;) {
        if (d.size() <= 1) return d;
        std::optional<VertexId> pick;
        for (const auto& v : d.ids())
            if (d.weight(v) == -1 && d.degree(v) <= 2) {
                pick = v;
                break;
            }
        if (!pick) return d;
        const auto nbrs = d.neighbors(*pick);
        d.remove_vertex(*pick);
        for (const auto& n : nbrs) d.set_weight(n, d.weight(n) + 1);
        if (nbrs.size() == 2) d.add_edge(nbrs[0], nbrs[1]);
    }
}

}  // namespace

ClassificationReport classify(const RulingModel& m) {
    validate_model(m);
    ClassificationReport r;
    r.kind = m.kind();
    r.sigma = sigma_and_fujita(m);
    r.criterion = qhp_criterion(m);
    if (!r.criterion.passes()) {
        r.notes.push_back("not a Q-homology plane");
        return r;
    }
    r.p_minimality = p_minimality_violations(m);
    r.mus = columnar_mus(m);
    r.n_columnar = static_cast<long long>(r.mus.size());
    try {
        r.structural = dD_structural(m);
    } catch (const ModelError& e) {
        r.notes.push_back(std::string("structural test: ") + e.what());
    }
    r.h1 = h1(m);

    RulingFlags flags;
    try {
        r.singularities = singularities(m);
    } catch (const ModelError& e) {
        if (e.code != "non_logarithmic") throw;
        flags.logarithmic = false;
        r.notes.push_back(e.what());
    }

    const Boundary b = assemble_boundary(m);
    WeightedForest d_std = snc_minimal(b.D);
    try {
        d_std = to_standard_form(d_std, true).forest;
    } catch (const DomainError&) {
        r.notes.push_back("boundary has no standard form; counting uses the snc-minimal boundary");
    }
    r.boundary_standard = flow_class_key(d_std);

    if (m.affine) {
        flags.kod_S0 = std::nullopt;
        flags.affine_ruled = true;
        r.affine_unique = affine_ruling_unique(d_std);
    } else if (r.p_minimality.empty()) {
        r.f0 = classify_F0(m);
        r.kod = kodaira(m, *r.f0);
        // the table lists singular planes only
        if (!flags.logarithmic || !r.singularities.empty()) {
            r.k0_zero_case = k0_zero_cases(m, *r.f0);
            if (r.k0_zero_case.has_value() != (r.kod->kappa0 == 0))
                r.notes.push_back("k0 = 0 table and kappa0 disagree");
        } else {
            r.notes.push_back("smooth plane: k0 = 0 table not applicable");
        }
        flags.kod_S0 = r.kod->kod_S0;
        const bool has_fork = std::any_of(r.singularities.begin(), r.singularities.end(),
                                          [](const Singularity& s) { return s.kind == Singularity::Kind::Fork; });
        // smooth locus of negative Kodaira dimension without a non-cyclic point is affine-ruled
        flags.affine_ruled = !flags.kod_S0 && !has_fork;
    } else {
        r.notes.push_back("D is not p-minimal; case tables skipped");
        r.flags = flags;
        return r;
    }
    r.flags = flags;
    if (flags.logarithmic && !flags.affine_ruled) r.two_point_rule = two_point_rule_holds(m, r.singularities);
    r.rulings = count_cstar_rulings(flags, d_std, r.singularities);
    const int candidates = m.kind() == RulingKind::UntwistedC1 ? 2 : 1;
    r.contractible = count_contractible(flags, *r.rulings, candidates);
    return r;
}

}  // namespace qhp
