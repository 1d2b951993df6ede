#include "qhp/fibration.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qhp {

const char* role_name(Role r) {
    switch (r) {
        case Role::D: return "D";
        case Role::E: return "E";
        case Role::S0: return "S0";
    }
    return "?";
}

Role parse_role(const std::string& s) {
    if (s == "D") return Role::D;
    if (s == "E") return Role::E;
    if (s == "S0") return Role::S0;
    throw MalformedInput("unknown role '" + s + "'");
}

// ---------------------------------------------------------------- FiberTree

std::vector<VertexId> FiberTree::with_role(Role r) const {
    std::vector<VertexId> out;
    for (const auto& [id, rr] : role)
        if (rr == r) out.push_back(id);
    return out;
}

std::vector<std::string> FiberTree::sections_at(const VertexId& v) const {
    std::vector<std::string> out;
    for (const auto& a : attach)
        if (a.vertex == v) out.push_back(a.section);
    return out;
}

std::vector<VertexId> FiberTree::vertices_meeting(const std::string& section) const {
    std::set<VertexId, NaturalLess> out;
    for (const auto& a : attach)
        if (a.section == section) out.insert(a.vertex);
    return {out.begin(), out.end()};
}

std::vector<VertexId> FiberTree::minus_one_vertices() const {
    std::vector<VertexId> out;
    for (const auto& id : forest.ids())
        if (forest.weight(id) == -1) out.push_back(id);
    return out;
}

VertexId FiberTree::fresh_id() const {
    for (std::size_t k = forest.size();; ++k) {
        VertexId id = "c" + std::to_string(k);
        if (!forest.contains(id)) return id;
    }
}

void FiberTree::set_role(const std::set<VertexId>& ids, Role r) {
    for (const auto& id : ids) {
        if (!forest.contains(id)) throw InvalidGraph("unknown vertex '" + id + "'");
        role[id] = r;
    }
}

namespace {

std::vector<std::pair<VertexId, std::string>> sorted_attach(const FiberTree& f) {
    std::vector<std::pair<VertexId, std::string>> out;
    for (const auto& a : f.attach) out.emplace_back(a.vertex, a.section);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool FiberTree::operator==(const FiberTree& o) const {
    return forest == o.forest && mult == o.mult && role == o.role && sorted_attach(*this) == sorted_attach(o);
}

std::string Step::encode() const {
    std::ostringstream os;
    if (kind == Kind::Sprout) {
        os << "{\"sprout\":\"" << a << "\"";
        if (!at.empty()) os << ",\"at\":\"" << at << "\"";
        os << "}";
    } else {
        os << "{\"subdivide\":[\"" << a << "\",\"" << b << "\"]}";
    }
    return os.str();
}

std::string BlowupProgram::encode() const {
    std::string s = "[";
    for (std::size_t i = 0; i < steps.size(); ++i) s += (i ? "," : "") + steps[i].encode();
    return s + "]";
}

// ---------------------------------------------------------------- blow-ups

FiberTree new_fiber() { return new_fiber({}); }

FiberTree new_fiber(const std::vector<std::string>& sections) {
    FiberTree f;
    f.forest.add_vertex("c0", 0);
    f.mult["c0"] = 1;
    f.role["c0"] = Role::S0;
    for (const auto& s : sections) f.attach.push_back({"c0", s});
    return f;
}

VertexId created_id(const FiberTree& fiber) { return fiber.fresh_id(); }

FiberTree apply_step(const FiberTree& fiber, const Step& step) {
    FiberTree out = fiber;
    const VertexId w = fiber.fresh_id();
    if (step.kind == Step::Kind::Sprout) {
        if (!fiber.forest.contains(step.a)) throw DomainError("sprout target '" + step.a + "' does not exist");
        auto rec = out.attach.end();
        if (!step.at.empty()) {
            rec = std::find(out.attach.begin(), out.attach.end(), Attach{step.a, step.at});
            if (rec == out.attach.end())
                throw DomainError("section '" + step.at + "' does not meet '" + step.a + "'");
        }
        out.forest.set_weight(step.a, fiber.forest.weight(step.a) - 1);
        out.forest.add_vertex(w, -1);
        out.forest.add_edge(step.a, w);
        out.mult[w] = fiber.mu(step.a);
        out.role[w] = Role::S0;
        if (rec != out.attach.end()) rec->vertex = w;
    } else {
        if (!fiber.forest.contains(step.a) || !fiber.forest.contains(step.b) ||
            !fiber.forest.has_edge(step.a, step.b))
            throw DomainError("subdivide target " + step.a + "-" + step.b + " is not an edge");
        out.forest.remove_edge(step.a, step.b);
        out.forest.set_weight(step.a, fiber.forest.weight(step.a) - 1);
        out.forest.set_weight(step.b, fiber.forest.weight(step.b) - 1);
        out.forest.add_vertex(w, -1);
        out.forest.add_edge(step.a, w);
        out.forest.add_edge(w, step.b);
        out.mult[w] = fiber.mu(step.a) + fiber.mu(step.b);
        out.role[w] = Role::S0;
    }
    return out;
}

FiberTree replay(const FiberTree& start, const BlowupProgram& program) {
    FiberTree f = start;
    for (const auto& s : program.steps) f = apply_step(f, s);
    return f;
}

FiberTree blow_down(const FiberTree& fiber, const VertexId& v) {
    if (!fiber.forest.contains(v)) throw DomainError("vertex '" + v + "' does not exist");
    if (fiber.forest.weight(v) != -1) throw DomainError("'" + v + "' is not a (-1)-vertex");
    const auto nbrs = fiber.forest.neighbors(v);
    if (nbrs.size() >= 3) throw DomainError("'" + v + "' meets three or more components");
    if (nbrs.empty()) throw DomainError("'" + v + "' is an isolated (-1)-vertex");
    FiberTree out = fiber;
    out.forest.remove_vertex(v);
    out.mult.erase(v);
    out.role.erase(v);
    for (const auto& n : nbrs) out.forest.set_weight(n, fiber.forest.weight(n) + 1);
    if (nbrs.size() == 2) out.forest.add_edge(nbrs[0], nbrs[1]);
    std::vector<Attach> attach;
    for (const auto& a : fiber.attach) {
        if (a.vertex != v) {
            attach.push_back(a);
            continue;
        }
        // a section through a node of the image meets both branches
        for (const auto& n : nbrs) attach.push_back({n, a.section});
    }
    out.attach = std::move(attach);
    return out;
}

// ---------------------------------------------------------------- kernel

bool kernel_law_holds(const FiberTree& fiber) {
    for (const auto& id : fiber.forest.ids()) {
        if (!fiber.mult.count(id)) return false;
        Int s = Int(fiber.mu(id)) * fiber.forest.weight(id);
        for (const auto& n : fiber.forest.neighbors(id)) s += fiber.mu(n);
        if (s != 0) return false;
    }
    return true;
}

std::optional<std::map<VertexId, long long, NaturalLess>> kernel_multiplicities(const WeightedForest& forest) {
    const auto ids = forest.ids();
    const std::size_t n = ids.size();
    if (n == 0) return std::nullopt;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = forest.weight(ids[i]);
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && forest.has_edge(ids[i], ids[j])) m[i][j] = 1;
    }
    // reduced row echelon form
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t p = row;
        while (p < n && m[p][col] == 0) ++p;
        if (p == n) continue;
        std::swap(m[p], m[row]);
        const Rational inv = Rational(1) / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = 0; c < n; ++c) m[r][c] -= f * m[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (pivot_col.size() != n - 1) return std::nullopt;
    std::size_t free_col = 0;
    for (std::size_t c = 0; c < n; ++c)
        if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) free_col = c;
    std::vector<Rational> x(n, 0);
    x[free_col] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -m[r][free_col];
    Int lcm = 1;
    for (const auto& v : x) {
        const Int d = denominator_of(v);
        lcm = lcm / gcd_int(lcm, d) * d;
    }
    std::vector<Int> z(n);
    Int g = 0;
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = numerator_of(x[i]) * (lcm / denominator_of(x[i]));
        g = gcd_int(g, abs_int(z[i]));
    }
    const int sign = z[0] < 0 ? -1 : 1;
    std::map<VertexId, long long, NaturalLess> out;
    for (std::size_t i = 0; i < n; ++i) {
        const Int v = z[i] / g * sign;
        if (v <= 0) return std::nullopt;
        out[ids[i]] = v.convert_to<long long>();
    }
    return out;
}

// ---------------------------------------------------------------- validation

namespace {

bool is_minus_two_fork_22n(const WeightedForest& f) {
    for (const auto& id : f.ids())
        if (f.weight(id) != -2) return false;
    const auto shape = fork_shape(f);
    return shape && shape->type.size() == 3 && shape->type[0] == 2 && shape->type[1] == 2;
}

bool is_chain_of(const WeightedForest& f, const Chain& c) {
    const auto order = f.path_order();
    if (!order || order->size() != c.size()) return false;
    const Chain got = Chain::from_path(f, *order);
    return got == c || got.reversed() == c;
}

}  // namespace

FiberValidation validate_fiber(const FiberTree& fiber) {
    FiberValidation r;
    const auto& f = fiber.forest;
    auto note = [&](const std::string& s) { r.findings.push_back(s); };

    r.tree = !f.empty() && f.is_connected();
    if (!r.tree) note("fiber is not a nonempty tree");

    r.roles_ok = true;
    for (const auto& id : f.ids()) {
        if (!fiber.mult.count(id) || !fiber.role.count(id)) {
            r.roles_ok = false;
            note("vertex '" + id + "' lacks a multiplicity or a role");
        } else if (fiber.mu(id) <= 0) {
            r.roles_ok = false;
            note("vertex '" + id + "' has non-positive multiplicity");
        }
    }
    for (const auto& a : fiber.attach) {
        if (!f.contains(a.vertex)) {
            r.roles_ok = false;
            note("attach record on unknown vertex '" + a.vertex + "'");
        } else if (fiber.role.count(a.vertex) && fiber.role_of(a.vertex) == Role::E) {
            r.roles_ok = false;
            note("E-vertex '" + a.vertex + "' meets section '" + a.section + "'");
        }
    }
    if (!r.roles_ok) return r;

    r.kernel_law = kernel_law_holds(fiber);
    if (!r.kernel_law) note("kernel law fails");
    const auto k = kernel_multiplicities(f);
    r.kernel_recomputed = k && *k == fiber.mult;
    if (!r.kernel_recomputed) note("multiplicities differ from the kernel generator");

    r.nonnegative_rule = true;
    for (const auto& id : f.ids())
        if (f.weight(id) >= 0 && !(f.size() == 1 && f.weight(id) == 0)) r.nonnegative_rule = false;
    if (!r.nonnegative_rule) note("non-negative weight in a singular fiber");

    r.minus_one_degree = true;
    const auto minus = fiber.minus_one_vertices();
    for (const auto& id : minus)
        if (f.degree(id) > 2) r.minus_one_degree = false;
    if (!r.minus_one_degree) note("a (-1)-vertex meets three or more components");

    if (minus.size() != 1 || !r.tree) return r;
    const VertexId c = minus.front();
    r.unique_minus_one = c;

    std::vector<VertexId> ones;
    for (const auto& id : f.ids())
        if (fiber.mu(id) == 1) ones.push_back(id);
    r.clause_c = fiber.mu(c) > 1 && ones.size() == 2 &&
                 std::all_of(ones.begin(), ones.end(), [&](const VertexId& v) { return f.degree(v) <= 1; });
    if (!r.clause_c) note("clause (c): expected mu(C) > 1 and exactly two multiplicity-one tips");

    if (fiber.mu(c) == 2) {
        const bool is_212 = f.size() == 3 && f.degree(c) == 2 && is_chain_of(f, Chain{2, 1, 2});
        const WeightedForest rest = f.without({c});
        const bool tip_case =
            f.degree(c) == 1 && (is_chain_of(rest, Chain{2, 2, 2}) || is_minus_two_fork_22n(rest));
        r.clause_d = is_212 || tip_case;
        if (!r.clause_d) note("clause (d): mu(C) = 2 but the fiber has neither allowed shape");
    }

    if (!f.path_order()) {
        const WeightedForest rest = f.without({c});
        int without_ones = 0;
        for (const auto& comp : rest.components()) {
            const bool has_one =
                std::any_of(comp.begin(), comp.end(), [&](const VertexId& v) { return fiber.mu(v) == 1; });
            if (has_one) continue;
            ++without_ones;
            if (!rest.induced({comp.begin(), comp.end()}).path_order()) r.clause_e = false;
        }
        if (without_ones > 1) r.clause_e = false;
        if (!r.clause_e) note("clause (e): the part of F - C without multiplicity-one curves is not a chain");
    }
    return r;
}

// ---------------------------------------------------------------- columnar fibers

std::optional<ColumnarSplit> columnar_split(const FiberTree& fiber) {
    const auto& f = fiber.forest;
    const auto order = f.path_order();
    if (!order || order->size() < 3) return std::nullopt;
    const auto minus = fiber.minus_one_vertices();
    if (minus.size() != 1) return std::nullopt;
    const VertexId c = minus.front();
    const auto pos = static_cast<std::size_t>(std::find(order->begin(), order->end(), c) - order->begin());
    if (pos == 0 || pos + 1 == order->size()) return std::nullopt;
    for (const auto& id : *order)
        if (id != c && fiber.role_of(id) != Role::D) return std::nullopt;
    if (fiber.attach.size() != 2) return std::nullopt;
    const VertexId& front = order->front();
    const VertexId& back = order->back();
    const bool ends = (fiber.attach[0].vertex == front && fiber.attach[1].vertex == back) ||
                      (fiber.attach[0].vertex == back && fiber.attach[1].vertex == front);
    if (!ends) return std::nullopt;

    ColumnarSplit s;
    s.c = c;
    s.mu_c = fiber.mu(c);
    for (std::size_t i = pos; i-- > 0;) s.a_ids.push_back((*order)[i]);
    for (std::size_t i = pos + 1; i < order->size(); ++i) s.b_ids.push_back((*order)[i]);
    s.A = Chain::from_path(f, s.a_ids);
    s.B = Chain::from_path(f, s.b_ids);
    return s;
}

long long mu_S(const FiberTree& fiber) {
    long long g = 0;
    for (const auto& id : fiber.with_role(Role::S0)) g = std::gcd(g, fiber.mu(id));
    if (g == 0) throw DomainError("fiber has no S0-vertex");
    return g;
}

long long mu_S_open(const FiberTree& fiber) {
    long long g = 0;
    for (const auto& [id, r] : fiber.role)
        if (r != Role::D) g = std::gcd(g, fiber.mu(id));
    if (g == 0) throw DomainError("fiber has no component outside D");
    return g;
}

// ---------------------------------------------------------------- contraction trace

ContractionTrace contraction_trace(const FiberTree& fiber, const std::set<VertexId>& marked,
                                   std::mt19937_64* rng) {
    ContractionTrace out;
    FiberTree cur = fiber;
    std::set<VertexId> live = marked;
    while (cur.forest.size() > 1) {
        std::vector<std::pair<VertexId, int>> candidates;
        for (const auto& v : cur.forest.ids()) {
            if (!live.count(v) || cur.forest.weight(v) != -1 || cur.forest.degree(v) > 2) continue;
            int count = static_cast<int>(cur.sections_at(v).size());
            for (const auto& n : cur.forest.neighbors(v))
                if (live.count(n)) ++count;
            if (count <= 2) candidates.emplace_back(v, count);
        }
        if (candidates.empty()) break;
        std::size_t pick = 0;
        if (rng) pick = std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(*rng);
        const auto [v, count] = candidates[pick];
        out.steps.push_back({v, count, count <= 1});
        cur = blow_down(cur, v);
        live.erase(v);
    }
    out.image = std::move(cur);
    return out;
}

// ---------------------------------------------------------------- canonical key

namespace {

std::string vertex_label(const FiberTree& f, const VertexId& v) {
    auto secs = f.sections_at(v);
    std::sort(secs.begin(), secs.end());
    std::string s = std::to_string(f.forest.weight(v)) + ":" + std::to_string(f.mu(v)) + ":" +
                    role_name(f.role_of(v));
    for (const auto& x : secs) s += "@" + x;
    return s;
}

std::string ahu(const FiberTree& f, const VertexId& v, const VertexId& parent) {
    std::vector<std::string> kids;
    for (const auto& c : f.forest.neighbors(v))
        if (c != parent) kids.push_back(ahu(f, c, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + vertex_label(f, v);
    for (const auto& k : kids) s += k;
    return s + ")";
}

}  // namespace

std::string canonical_key(const FiberTree& fiber) {
    std::string best;
    for (const auto& v : fiber.forest.ids()) {
        std::string k = ahu(fiber, v, "");
        if (best.empty() || k < best) best = std::move(k);
    }
    return best;
}

// ---------------------------------------------------------------- enumeration

std::vector<Step> possible_steps(const FiberTree& fiber, bool use_sections) {
    std::vector<Step> out;
    for (const auto& v : fiber.forest.ids()) out.push_back(Step::sprout(v));
    for (const auto& [a, b] : fiber.forest.edges()) out.push_back(Step::subdivide(a, b));
    if (use_sections) {
        std::set<std::pair<VertexId, std::string>> seen;
        for (const auto& a : fiber.attach)
            if (seen.insert({a.vertex, a.section}).second) out.push_back(Step::sprout(a.vertex, a.section));
    }
    return out;
}

namespace {

void extend(const FiberTree& f, int depth, bool use_sections, BlowupProgram& prefix,
            std::vector<BlowupProgram>& out) {
    if (depth == 0) {
        out.push_back(prefix);
        return;
    }
    for (const auto& s : possible_steps(f, use_sections)) {
        prefix.steps.push_back(s);
        extend(apply_step(f, s), depth - 1, use_sections, prefix, out);
        prefix.steps.pop_back();
    }
}

}  // namespace

std::vector<BlowupProgram> all_programs(const FiberTree& start, int depth, bool use_sections) {
    std::vector<BlowupProgram> out;
    BlowupProgram prefix;
    extend(start, depth, use_sections, prefix, out);
    return out;
}

}  // namespace qhp
