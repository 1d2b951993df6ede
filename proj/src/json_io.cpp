#include "qhp/json_io.hpp"

#include <limits>

namespace qhp {

namespace {

const json& req(const json& j, const char* key) {
    if (!j.is_object()) throw MalformedInput(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw MalformedInput(std::string("missing key '") + key + "'");
    return *it;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw MalformedInput(e.what());
    }
}

const char* role_str(Role r) { return role_name(r); }

}  // namespace

json parse_json(const std::string& text) {
    return guarded([&] { return json::parse(text); });
}

json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

Int int_from_json(const json& j) {
    return guarded([&]() -> Int {
        if (j.is_number_integer()) return Int(j.get<long long>());
        if (j.is_string()) {
            try {
                return Int(j.get<std::string>());
            } catch (const std::exception&) {
                throw MalformedInput("not an integer: " + j.get<std::string>());
            }
        }
        throw MalformedInput("expected an integer");
    });
}

json rational_to_json(const Rational& r) {
    return {{"num", numerator_of(r).str()}, {"den", denominator_of(r).str()}};
}

Rational rational_from_json(const json& j) {
    return make_rational(int_from_json(req(j, "num")), int_from_json(req(j, "den")));
}

// ---------------------------------------------------------------- forests

json forest_to_json(const WeightedForest& f) {
    json vs = json::array();
    for (const auto& id : f.ids()) vs.push_back({{"id", id}, {"weight", f.weight(id)}});
    json es = json::array();
    for (const auto& [a, b] : f.edges()) es.push_back({a, b});
    return {{"vertices", vs}, {"edges", es}};
}

WeightedForest forest_from_json(const json& j) {
    return guarded([&] {
        if (j.is_object() && j.contains("chain")) {
            const auto& c = j.at("chain");
            if (!c.is_array()) throw MalformedInput("'chain' must be an array");
            return Chain(c.get<std::vector<long long>>()).to_forest();
        }
        WeightedForest f;
        for (const auto& v : req(j, "vertices")) f.add_vertex(req(v, "id").get<std::string>(), req(v, "weight").get<long long>());
        if (j.contains("edges"))
            for (const auto& e : j.at("edges")) {
                if (!e.is_array() || e.size() != 2) throw MalformedInput("an edge is a pair of ids");
                f.add_edge(e[0].get<std::string>(), e[1].get<std::string>());
            }
        return f;
    });
}

// ---------------------------------------------------------------- fibers and programs

json fiber_to_json(const FiberTree& f) {
    json out = forest_to_json(f.forest);
    json mult = json::object(), role = json::object(), attach = json::array();
    for (const auto& [id, mu] : f.mult) mult[id] = mu;
    for (const auto& [id, r] : f.role) role[id] = role_str(r);
    for (const auto& a : f.attach) attach.push_back({a.vertex, a.section});
    out["mult"] = mult;
    out["role"] = role;
    out["attach"] = attach;
    return out;
}

FiberTree fiber_from_json(const json& j) {
    return guarded([&] {
        FiberTree f;
        f.forest = forest_from_json(j);
        for (const auto& [id, mu] : req(j, "mult").items()) f.mult[id] = mu.get<long long>();
        for (const auto& [id, r] : req(j, "role").items()) f.role[id] = parse_role(r.get<std::string>());
        if (j.contains("attach"))
            for (const auto& a : j.at("attach")) {
                if (!a.is_array() || a.size() != 2) throw MalformedInput("an attach record is [vertex, section]");
                f.attach.push_back({a[0].get<std::string>(), a[1].get<std::string>()});
            }
        for (const auto& id : f.forest.ids())
            if (!f.mult.count(id) || !f.role.count(id)) throw MalformedInput("vertex '" + id + "' lacks mult or role");
        if (f.mult.size() != f.forest.size() || f.role.size() != f.forest.size())
            throw MalformedInput("mult or role names an unknown vertex");
        for (const auto& a : f.attach)
            if (!f.forest.contains(a.vertex)) throw MalformedInput("attach names unknown vertex '" + a.vertex + "'");
        return f;
    });
}

json step_to_json(const Step& s) {
    if (s.kind == Step::Kind::Subdivide) return {{"subdivide", {s.a, s.b}}};
    json out = {{"sprout", s.a}};
    if (!s.at.empty()) out["at"] = s.at;
    return out;
}

Step step_from_json(const json& j) {
    return guarded([&] {
        if (!j.is_object()) throw MalformedInput("a step is an object");
        if (j.contains("sprout")) return Step::sprout(j.at("sprout").get<std::string>(), j.value("at", std::string{}));
        if (j.contains("subdivide")) {
            const auto& e = j.at("subdivide");
            if (!e.is_array() || e.size() != 2) throw MalformedInput("subdivide takes two ids");
            return Step::subdivide(e[0].get<std::string>(), e[1].get<std::string>());
        }
        throw MalformedInput("a step is a sprout or a subdivide");
    });
}

json program_to_json(const BlowupProgram& p) {
    json steps = json::array();
    for (const auto& s : p.steps) steps.push_back(step_to_json(s));
    return {{"steps", steps}};
}

BlowupProgram program_from_json(const json& j) {
    return guarded([&] {
        const json& steps = j.is_array() ? j : req(j, "steps");
        if (!steps.is_array()) throw MalformedInput("'steps' must be an array");
        BlowupProgram p;
        for (const auto& s : steps) p.steps.push_back(step_from_json(s));
        return p;
    });
}

json move_to_json(const FlowMove& m) { return {{"zero", m.zero}, {"toward", m.toward}}; }

FlowMove move_from_json(const json& j) {
    return guarded([&] { return FlowMove{req(j, "zero").get<std::string>(), req(j, "toward").get<std::string>()}; });
}

// ---------------------------------------------------------------- models

json model_to_json(const RulingModel& m) {
    json secs = json::array();
    for (const auto& s : m.sections) secs.push_back({{"id", s.id}, {"weight", s.weight}});
    json fibers = json::array();
    for (const auto& nf : m.fibers) {
        json f = fiber_to_json(nf.fiber);
        f["name"] = nf.name;
        fibers.push_back(f);
    }
    json out = {{"h", m.h},           {"nu", m.nu},         {"base", m.base},        {"twisted", m.twisted},
                {"affine", m.affine}, {"sections", secs},   {"fibers", fibers},      {"F0", m.F0},
                {"F_inf", m.F_inf},   {"kind", kind_name(m.kind())}, {"blowup_count", m.blowup_count()}};
    if (m.F0.empty()) out["F0"] = nullptr;
    if (m.F_inf.empty()) out["F_inf"] = nullptr;
    return out;
}

RulingModel model_from_json(const json& j) {
    return guarded([&] {
        RulingModel m;
        m.h = req(j, "h").get<int>();
        m.nu = req(j, "nu").get<int>();
        m.base = req(j, "base").get<std::string>();
        m.twisted = j.value("twisted", false);
        m.affine = j.value("affine", false);
        for (const auto& s : req(j, "sections"))
            m.sections.push_back({req(s, "id").get<std::string>(), req(s, "weight").get<long long>()});
        const auto& fibers = req(j, "fibers");
        if (fibers.is_array()) {
            for (const auto& f : fibers) m.fibers.push_back({req(f, "name").get<std::string>(), fiber_from_json(f)});
        } else if (fibers.is_object()) {
            for (const auto& [name, f] : fibers.items()) m.fibers.push_back({name, fiber_from_json(f)});
        } else {
            throw MalformedInput("'fibers' must be an array or an object");
        }
        if (j.contains("F0") && !j.at("F0").is_null()) m.F0 = j.at("F0").get<std::string>();
        if (j.contains("F_inf") && !j.at("F_inf").is_null()) m.F_inf = j.at("F_inf").get<std::string>();
        return m;
    });
}

namespace {

std::vector<BlowupProgram> programs(const json& j, const char* key) {
    std::vector<BlowupProgram> out;
    if (!j.contains(key)) return out;
    for (const auto& p : j.at(key)) out.push_back(program_from_json(p));
    return out;
}

BlowupProgram optional_program(const json& j, const char* key) {
    return j.contains(key) ? program_from_json(j.at(key)) : BlowupProgram{};
}

}  // namespace

AffineParams affine_params_from_json(const json& j) {
    return guarded([&] {
        AffineParams p;
        p.fibers = programs(j, "fibers");
        p.section_weight = j.value("section_weight", -1LL);
        return p;
    });
}

TwistedParams twisted_params_from_json(const json& j) {
    return guarded([&] { return TwistedParams{programs(j, "columnar"), optional_program(j, "f0")}; });
}

UntwistedC1Params c1_params_from_json(const json& j) {
    return guarded([&] {
        return UntwistedC1Params{programs(j, "columnar"), optional_program(j, "f0_tilde"), optional_program(j, "f0")};
    });
}

UntwistedP1Params p1_params_from_json(const json& j) {
    return guarded([&] {
        return UntwistedP1Params{req(j, "N").get<long long>(), programs(j, "columnar"), optional_program(j, "f0_tilde"),
                                 optional_program(j, "f0")};
    });
}

// ---------------------------------------------------------------- reports

json validation_to_json(const FiberValidation& v) {
    json out = {{"ok", v.ok()},
                {"tree", v.tree},
                {"kernel_law", v.kernel_law},
                {"kernel_recomputed", v.kernel_recomputed},
                {"nonnegative_rule", v.nonnegative_rule},
                {"roles_ok", v.roles_ok},
                {"minus_one_degree", v.minus_one_degree},
                {"clause_c", v.clause_c},
                {"clause_d", v.clause_d},
                {"clause_e", v.clause_e},
                {"findings", v.findings}};
    out["unique_minus_one"] = v.unique_minus_one ? json(*v.unique_minus_one) : json(nullptr);
    return out;
}

json criterion_to_json(const CriterionVerdict& v) {
    return {{"passes", v.passes()},       {"clause_i", v.clause_i},  {"clause_ii", v.clause_ii},
            {"clause_iii", v.clause_iii}, {"clause_iv", v.clause_iv}, {"dD", int_to_json(v.dD)},
            {"dE", int_to_json(v.dE)},    {"findings", v.findings}};
}

json singularity_to_json(const Singularity& s) {
    json out;
    if (s.kind == Singularity::Kind::Cyclic) {
        out = {{"type", "cyclic"}, {"chain", s.chain.entries}};
    } else {
        json twigs = json::array();
        for (const auto& t : s.twigs) twigs.push_back(t.entries);
        json type = json::array();
        for (const auto& t : s.fork_type) type.push_back(int_to_json(t));
        out = {{"type", "fork"}, {"fork_type", type}, {"center", s.center}, {"twigs", twigs}};
    }
    out["dynkin"] = s.dynkin ? json(*s.dynkin) : json(nullptr);
    out["ids"] = s.ids;
    return out;
}

namespace {

json kod_json(const KodDim& k) { return k ? json(*k) : json("-inf"); }

}  // namespace

json report_to_json(const ClassificationReport& r) {
    json out;
    out["kind"] = kind_name(r.kind);
    out["criterion"] = criterion_to_json(r.criterion);
    out["dD"] = int_to_json(r.criterion.dD);
    out["dE"] = int_to_json(r.criterion.dE);
    out["sigma"] = {{"Sigma", r.sigma.Sigma}, {"h", r.sigma.h},     {"nu", r.sigma.nu},
                    {"b2X", r.sigma.b2X},     {"b2T", r.sigma.b2T}, {"rhs", r.sigma.rhs},
                    {"consistent", r.sigma.consistent}};
    out["p_minimality_violations"] = r.p_minimality;
    out["n_columnar"] = r.n_columnar;
    out["mu_columnar"] = r.mus;
    if (r.structural) {
        json s = {{"structural", r.structural->structural},
                  {"determinant", r.structural->determinant},
                  {"agree", r.structural->agree()}};
        s["separator"] = r.structural->separator ? json(*r.structural->separator) : json(nullptr);
        s["d_tilde"] = r.structural->d_tilde ? int_to_json(*r.structural->d_tilde) : json(nullptr);
        out["dD_structural"] = s;
    } else {
        out["dD_structural"] = nullptr;
    }
    out["h1_order"] = r.h1 ? int_to_json(r.h1->order) : json(nullptr);
    if (r.h1 && r.h1->decomposition) {
        json d = json::array();
        for (const auto& x : *r.h1->decomposition) d.push_back(int_to_json(x));
        out["h1_decomposition"] = d;
    } else {
        out["h1_decomposition"] = nullptr;
    }
    out["F0_case"] = r.f0 ? json(f0_case_name(r.f0->tag)) : json(nullptr);
    if (r.f0) {
        out["F0"] = {{"eta_nontrivial", r.f0->eta_nontrivial}, {"C", r.f0->C}, {"mu", r.f0->mu}};
        out["F0"]["C_tilde"] = r.f0->C_tilde ? json(*r.f0->C_tilde) : json(nullptr);
        out["F0"]["mu_tilde"] = r.f0->mu_tilde ? json(*r.f0->mu_tilde) : json(nullptr);
        out["F0"]["B"] = r.f0->B ? json(*r.f0->B) : json(nullptr);
    }
    if (r.kod) {
        out["lambda"] = rational_to_json(r.kod->lambda);
        out["kappa"] = rational_to_json(r.kod->kappa);
        out["kappa0"] = rational_to_json(r.kod->kappa0);
        out["kod_S0"] = kod_json(r.kod->kod_S0);
        out["kod_S"] = kod_json(r.kod->kod_S);
    } else {
        out["lambda"] = out["kappa"] = out["kappa0"] = nullptr;
        const bool affine = r.kind == RulingKind::Affine && r.criterion.passes();
        out["kod_S0"] = affine ? json("-inf") : json(nullptr);
        out["kod_S"] = affine ? json("-inf") : json(nullptr);
    }
    out["k0_zero_case"] = r.k0_zero_case ? json(*r.k0_zero_case) : json(nullptr);
    json sing = json::array();
    for (const auto& s : r.singularities) sing.push_back(singularity_to_json(s));
    out["singularities"] = sing;
    out["two_point_rule"] = r.two_point_rule ? json(*r.two_point_rule) : json(nullptr);
    if (r.flags)
        out["flags"] = {{"kod_S0", kod_json(r.flags->kod_S0)},
                        {"logarithmic", r.flags->logarithmic},
                        {"exceptional", r.flags->exceptional},
                        {"affine_ruled", r.flags->affine_ruled}};
    if (r.rulings && r.rulings->applicable) {
        out["r_rulings"] = r.rulings->r ? json(*r.rulings->r) : json("inf");
        json kinds = json::array();
        for (const auto& d : r.rulings->rulings) kinds.push_back(d.kind);
        out["rulings"] = kinds;
        out["boundary_pattern"] = pattern_name(r.rulings->pattern.pattern);
    } else {
        out["r_rulings"] = nullptr;
    }
    if (r.contractible && r.contractible->applicable) {
        out["contractible_count"] = r.contractible->value;
        out["contractible_upper_bound"] = r.contractible->upper_bound;
    } else {
        out["contractible_count"] = nullptr;
    }
    out["affine_ruling_unique"] = r.affine_unique ? json(*r.affine_unique) : json(nullptr);
    out["boundary_class"] = r.boundary_standard ? json(*r.boundary_standard) : json(nullptr);
    out["notes"] = r.notes;
    return out;
}

}  // namespace qhp
