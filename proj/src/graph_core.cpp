#include "qhp/graph_core.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

namespace qhp {

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
            // strip leading zeros, then compare by length and digits
            std::size_t is = i, js = j;
            while (is + 1 < ie && a[is] == '0') ++is;
            while (js + 1 < je && b[js] == '0') ++js;
            if (ie - is != je - js) return ie - is < je - js;
            const int c = a.compare(is, ie - is, b, js, je - js);
            if (c != 0) return c < 0;
            if (ie - i != je - j) return ie - i < je - j;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

bool NaturalLess::operator()(const std::string& a, const std::string& b) const {
    return natural_less(a, b);
}

// ---------------------------------------------------------------- forest

const WeightedForest::Node& WeightedForest::node(const VertexId& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw InvalidGraph("unknown vertex '" + id + "'");
    return it->second;
}

WeightedForest::Node& WeightedForest::node(const VertexId& id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw InvalidGraph("unknown vertex '" + id + "'");
    return it->second;
}

void WeightedForest::add_vertex(const VertexId& id, long long weight) {
    if (id.empty()) throw InvalidGraph("empty vertex id");
    if (!nodes_.emplace(id, Node{weight, {}}).second)
        throw InvalidGraph("duplicate vertex id '" + id + "'");
}

bool WeightedForest::connected(const VertexId& a, const VertexId& b) const {
    std::set<VertexId> seen{a};
    std::deque<VertexId> queue{a};
    while (!queue.empty()) {
        VertexId cur = queue.front();
        queue.pop_front();
        if (cur == b) return true;
        for (const auto& n : node(cur).nbrs)
            if (seen.insert(n).second) queue.push_back(n);
    }
    return false;
}

void WeightedForest::add_edge(const VertexId& a, const VertexId& b) {
    if (a == b) throw InvalidGraph("loop at '" + a + "'");
    node(a);
    node(b);
    if (has_edge(a, b)) throw InvalidGraph("multi-edge " + a + "-" + b);
    if (connected(a, b)) throw InvalidGraph("edge " + a + "-" + b + " closes a cycle");
    node(a).nbrs.push_back(b);
    node(b).nbrs.push_back(a);
    ++edge_count_;
}

void WeightedForest::remove_edge(const VertexId& a, const VertexId& b) {
    if (!has_edge(a, b)) throw InvalidGraph("no edge " + a + "-" + b);
    auto& na = node(a).nbrs;
    na.erase(std::find(na.begin(), na.end(), b));
    auto& nb = node(b).nbrs;
    nb.erase(std::find(nb.begin(), nb.end(), a));
    --edge_count_;
}

void WeightedForest::remove_vertex(const VertexId& id) {
    const auto nbrs = node(id).nbrs;
    for (const auto& n : nbrs) remove_edge(id, n);
    nodes_.erase(id);
}

void WeightedForest::set_weight(const VertexId& id, long long weight) { node(id).weight = weight; }

long long WeightedForest::weight(const VertexId& id) const { return node(id).weight; }

const std::vector<VertexId>& WeightedForest::neighbors(const VertexId& id) const {
    return node(id).nbrs;
}

bool WeightedForest::has_edge(const VertexId& a, const VertexId& b) const {
    const auto& n = node(a).nbrs;
    return std::find(n.begin(), n.end(), b) != n.end();
}

std::vector<VertexId> WeightedForest::ids() const {
    std::vector<VertexId> out;
    out.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_) out.push_back(id);
    return out;
}

std::vector<std::pair<VertexId, VertexId>> WeightedForest::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& [id, n] : nodes_)
        for (const auto& m : n.nbrs)
            if (natural_less(id, m)) out.emplace_back(id, m);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return natural_less(x.first, y.first);
        return natural_less(x.second, y.second);
    });
    return out;
}

WeightedForest WeightedForest::induced(const std::set<VertexId>& keep) const {
    WeightedForest out;
    for (const auto& [id, n] : nodes_)
        if (keep.count(id)) out.add_vertex(id, n.weight);
    for (const auto& [a, b] : edges())
        if (keep.count(a) && keep.count(b)) out.add_edge(a, b);
    return out;
}

WeightedForest WeightedForest::without(const std::set<VertexId>& drop) const {
    std::set<VertexId> keep;
    for (const auto& [id, n] : nodes_)
        if (!drop.count(id)) keep.insert(id);
    return induced(keep);
}

std::vector<std::vector<VertexId>> WeightedForest::components() const {
    std::vector<std::vector<VertexId>> out;
    std::set<VertexId> seen;
    for (const auto& [id, n] : nodes_) {
        if (seen.count(id)) continue;
        std::vector<VertexId> comp;
        std::deque<VertexId> queue{id};
        seen.insert(id);
        while (!queue.empty()) {
            VertexId cur = queue.front();
            queue.pop_front();
            comp.push_back(cur);
            for (const auto& m : node(cur).nbrs)
                if (seen.insert(m).second) queue.push_back(m);
        }
        std::sort(comp.begin(), comp.end(), NaturalLess{});
        out.push_back(std::move(comp));
    }
    return out;
}

bool WeightedForest::is_connected() const { return components().size() <= 1; }

std::optional<std::vector<VertexId>> WeightedForest::path_order() const {
    if (nodes_.empty()) return std::vector<VertexId>{};
    if (!is_connected()) return std::nullopt;
    VertexId start;
    for (const auto& [id, n] : nodes_) {
        if (n.nbrs.size() > 2) return std::nullopt;
        if (n.nbrs.size() <= 1 && start.empty()) start = id;
    }
    std::vector<VertexId> order{start};
    VertexId prev;
    VertexId cur = start;
    while (true) {
        VertexId next;
        for (const auto& m : node(cur).nbrs)
            if (m != prev) next = m;
        if (next.empty()) break;
        order.push_back(next);
        prev = cur;
        cur = next;
    }
    return order;
}

bool WeightedForest::operator==(const WeightedForest& other) const {
    if (size() != other.size() || edge_count_ != other.edge_count_) return false;
    for (const auto& [id, n] : nodes_) {
        if (!other.contains(id) || other.weight(id) != n.weight) return false;
        for (const auto& m : n.nbrs)
            if (!other.has_edge(id, m)) return false;
    }
    return true;
}

std::set<VertexId> component_of(const WeightedForest& forest, const VertexId& id) {
    std::set<VertexId> seen{id};
    std::deque<VertexId> queue{id};
    while (!queue.empty()) {
        VertexId cur = queue.front();
        queue.pop_front();
        for (const auto& m : forest.neighbors(cur))
            if (seen.insert(m).second) queue.push_back(m);
    }
    return seen;
}

// ---------------------------------------------------------------- chains

Chain Chain::reversed() const { return Chain(std::vector<long long>(entries.rbegin(), entries.rend())); }

bool Chain::admissible() const {
    if (entries.empty()) return false;
    return std::all_of(entries.begin(), entries.end(), [](long long a) { return a >= 2; });
}

WeightedForest Chain::to_forest(const std::string& prefix) const {
    WeightedForest f;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        f.add_vertex(prefix + std::to_string(i + 1), -entries[i]);
        if (i > 0) f.add_edge(prefix + std::to_string(i), prefix + std::to_string(i + 1));
    }
    return f;
}

Chain Chain::from_path(const WeightedForest& f, const std::vector<VertexId>& order) {
    Chain c;
    for (const auto& id : order) c.entries.push_back(-f.weight(id));
    return c;
}

std::string to_string(const Chain& c) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c.entries.size(); ++i) os << (i ? "," : "") << c.entries[i];
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------- discriminant

namespace {

// Rooted tree recursion: full = d(subtree), cut = d(subtree minus its root).
struct SubtreeDet {
    Int full;
    Int cut;
};

SubtreeDet subtree_det(const WeightedForest& f, const VertexId& v, const VertexId& parent) {
    std::vector<SubtreeDet> kids;
    for (const auto& c : f.neighbors(v))
        if (c != parent) kids.push_back(subtree_det(f, c, v));
    Int prod = 1;
    for (const auto& k : kids) prod *= k.full;
    Int full = Int(-f.weight(v)) * prod;
    for (std::size_t i = 0; i < kids.size(); ++i) {
        Int term = kids[i].cut;
        for (std::size_t j = 0; j < kids.size(); ++j)
            if (j != i) term *= kids[j].full;
        full -= term;
    }
    return {full, prod};
}

}  // namespace

Int discriminant(const WeightedForest& forest) {
    Int d = 1;
    for (const auto& comp : forest.components()) d *= subtree_det(forest, comp.front(), "").full;
    return d;
}

Int discriminant(const Chain& chain) {
    // d([a1..an]) = a1 d([a2..]) - d([a3..]), evaluated from the right
    Int next = 1, next2 = 0;
    for (auto it = chain.entries.rbegin(); it != chain.entries.rend(); ++it) {
        Int cur = Int(*it) * next - next2;
        next2 = next;
        next = cur;
    }
    return next;
}

Rational inductance(const Chain& chain) {
    if (!chain.admissible())
        throw DomainError("inductance needs a nonempty admissible chain, got " + to_string(chain));
    Chain tail(std::vector<long long>(chain.entries.begin() + 1, chain.entries.end()));
    return make_rational(discriminant(tail), discriminant(chain));
}

Rational co_inductance(const Chain& chain) { return inductance(chain.reversed()); }

// ---------------------------------------------------------------- definiteness

std::vector<Int> leading_minors(const WeightedForest& forest, const std::vector<VertexId>& order) {
    const std::size_t n = order.size();
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = -forest.weight(order[i]);
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && forest.has_edge(order[i], order[j])) m[i][j] = -1;
    }
    // Bareiss without pivoting: m[k][k] after step k is the (k+1)-th leading minor.
    std::vector<Int> minors;
    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        minors.push_back(m[k][k]);
        if (m[k][k] == 0) {
            // later minors need pivoting; compute them directly by restarting on the prefix
            for (std::size_t r = k + 1; r < n; ++r) {
                std::vector<VertexId> prefix(order.begin(), order.begin() + static_cast<long>(r) + 1);
                minors.push_back(discriminant(forest.induced({prefix.begin(), prefix.end()})));
            }
            return minors;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return minors;
}

bool is_negative_definite(const WeightedForest& forest, const std::vector<VertexId>& order) {
    if (order.size() != forest.size()) throw InvalidGraph("order does not list every vertex");
    for (const auto& m : leading_minors(forest, order))
        if (m <= 0) return false;
    return true;
}

bool is_negative_definite(const WeightedForest& forest) {
    return is_negative_definite(forest, forest.ids());
}

// ---------------------------------------------------------------- branching data

BranchingData branching_data(const WeightedForest& forest) {
    BranchingData out;
    std::set<VertexId> branching;
    for (const auto& id : forest.ids()) {
        const int b = static_cast<int>(forest.degree(id));
        out.beta[id] = b;
        if (b <= 1) out.tips.push_back(id);
        if (b >= 3) {
            out.branching.push_back(id);
            branching.insert(id);
        }
    }
    const WeightedForest rest = forest.without(branching);
    for (const auto& comp : rest.components()) {
        auto order = rest.induced({comp.begin(), comp.end()}).path_order();
        out.segments.push_back(*order);
    }
    for (const auto& tip : out.tips) {
        if (forest.degree(tip) == 0) continue;
        if (branching.empty()) continue;
        // walk from the tip towards the first branching vertex
        Twig tw;
        VertexId prev, cur = tip;
        bool reached = false;
        while (true) {
            if (branching.count(cur)) {
                reached = true;
                break;
            }
            tw.ids.push_back(cur);
            VertexId next;
            for (const auto& m : forest.neighbors(cur))
                if (m != prev) next = m;
            if (next.empty()) break;
            prev = cur;
            cur = next;
        }
        if (!reached) continue;  // tip of a chain component
        tw.chain = Chain::from_path(forest, tw.ids);
        tw.admissible = tw.chain.admissible();
        out.twigs.push_back(std::move(tw));
    }
    return out;
}

std::optional<ForkShape> fork_shape(const WeightedForest& forest) {
    if (forest.empty() || !forest.is_connected()) return std::nullopt;
    const BranchingData bd = branching_data(forest);
    if (bd.branching.size() != 1 || forest.degree(bd.branching.front()) != 3) return std::nullopt;
    ForkShape out;
    out.center = bd.branching.front();
    out.twigs = bd.twigs;
    std::sort(out.twigs.begin(), out.twigs.end(), [](const Twig& a, const Twig& b) {
        const Int da = discriminant(a.chain), db = discriminant(b.chain);
        if (da != db) return da < db;
        return a.chain < b.chain;
    });
    for (const auto& t : out.twigs) out.type.push_back(discriminant(t.chain));
    return out;
}

std::pair<Int, Int> edge_expansion_check(const WeightedForest& forest, const VertexId& u,
                                         const VertexId& v) {
    if (!forest.contains(u) || !forest.contains(v) || !forest.has_edge(u, v))
        throw DomainError("edge " + u + "-" + v + " is not present");
    WeightedForest cut = forest;
    cut.remove_edge(u, v);
    const auto side_u = component_of(cut, u);
    const auto side_v = component_of(cut, v);
    const WeightedForest tu = cut.induced(side_u), tv = cut.induced(side_v);
    const Int lhs = discriminant(forest.induced([&] {
        std::set<VertexId> s = side_u;
        s.insert(side_v.begin(), side_v.end());
        return s;
    }()));
    const Int rhs = discriminant(tu) * discriminant(tv) -
                    discriminant(tu.without({u})) * discriminant(tv.without({v}));
    return {lhs, rhs};
}

}  // namespace qhp
