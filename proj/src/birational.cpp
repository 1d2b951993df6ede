#include "qhp/birational.hpp"

#include <algorithm>
#include <functional>

namespace qhp {

namespace {

long long entry(const WeightedForest& f, const VertexId& v) { return -f.weight(v); }

void add_entry(WeightedForest& f, const VertexId& v, long long delta) { f.set_weight(v, f.weight(v) - delta); }

}  // namespace

BoundaryForest elementary_transform(const BoundaryForest& b, const FlowMove& move) {
    if (!b.contains(move.zero)) throw DomainError("vertex '" + move.zero + "' does not exist");
    if (b.weight(move.zero) != 0) throw DomainError("'" + move.zero + "' is not a 0-vertex");
    const auto& nbrs = b.neighbors(move.zero);
    BoundaryForest out = b;
    if (nbrs.size() == 2) {
        if (move.toward != nbrs[0] && move.toward != nbrs[1])
            throw DomainError("'" + move.toward + "' is not a neighbour of '" + move.zero + "'");
        const VertexId other = move.toward == nbrs[0] ? nbrs[1] : nbrs[0];
        add_entry(out, move.toward, 1);
        add_entry(out, other, -1);
    } else if (nbrs.size() == 1) {
        if (!move.toward.empty() && move.toward != nbrs[0])
            throw DomainError("'" + move.toward + "' is not a neighbour of '" + move.zero + "'");
        add_entry(out, nbrs[0], move.toward.empty() ? -1 : 1);
    } else {
        throw DomainError("'" + move.zero + "' is an isolated or branching 0-vertex");
    }
    return out;
}

BoundaryForest flow(const BoundaryForest& b, const std::vector<FlowMove>& moves) {
    BoundaryForest out = b;
    for (const auto& m : moves) out = elementary_transform(out, m);
    return out;
}

std::set<VertexId> flow_support(const BoundaryForest& b, const std::vector<FlowMove>& moves) {
    const BoundaryForest end = flow(b, moves);
    std::set<VertexId> out;
    for (const auto& id : b.ids())
        if (b.weight(id) != end.weight(id)) out.insert(id);
    return out;
}

// ---------------------------------------------------------------- predicates

namespace {

struct Segment {
    std::vector<VertexId> ids;  ///< oriented: twigs tip-first, otherwise from the natural-least end
    VertexId left_ext, right_ext;
    bool twig() const { return left_ext.empty() != right_ext.empty(); }
    bool whole_component() const { return left_ext.empty() && right_ext.empty(); }
};

std::vector<Segment> segments_of(const WeightedForest& f) {
    const BranchingData bd = branching_data(f);
    std::vector<Segment> out;
    for (const auto& seg : bd.segments) {
        Segment s;
        s.ids = seg;
        const std::set<VertexId> in(seg.begin(), seg.end());
        std::vector<VertexId> front_ext, back_ext;
        for (const auto& n : f.neighbors(seg.front()))
            if (!in.count(n)) front_ext.push_back(n);
        for (const auto& n : f.neighbors(seg.back()))
            if (!in.count(n)) back_ext.push_back(n);
        if (seg.size() == 1) {
            std::sort(front_ext.begin(), front_ext.end(), NaturalLess{});
            if (front_ext.size() == 2) {
                s.left_ext = front_ext[0];
                s.right_ext = front_ext[1];
            } else if (front_ext.size() == 1) {
                s.right_ext = front_ext[0];
            }
        } else {
            if (!front_ext.empty()) s.left_ext = front_ext[0];
            if (!back_ext.empty()) s.right_ext = back_ext[0];
            if (!s.left_ext.empty() && s.right_ext.empty()) {
                std::reverse(s.ids.begin(), s.ids.end());
                std::swap(s.left_ext, s.right_ext);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<long long> entries_of(const WeightedForest& f, const std::vector<VertexId>& ids) {
    std::vector<long long> e;
    for (const auto& id : ids) e.push_back(entry(f, id));
    return e;
}

bool all_at_least_two(std::vector<long long>::const_iterator b, std::vector<long long>::const_iterator e) {
    return std::all_of(b, e, [](long long a) { return a >= 2; });
}

/// Segment pattern of a standard boundary read in one direction.
enum class SegKind { Admissible, Zero1, Zero3, DoubleZero, Other };

SegKind classify_reading(const std::vector<long long>& e) {
    if (e == std::vector<long long>{0}) return SegKind::Zero1;
    if (e == std::vector<long long>{0, 0, 0}) return SegKind::Zero3;
    if (e.size() >= 2 && e[0] == 0 && e[1] == 0 && all_at_least_two(e.begin() + 2, e.end()))
        return SegKind::DoubleZero;
    if (!e.empty() && all_at_least_two(e.begin(), e.end())) return SegKind::Admissible;
    return SegKind::Other;
}

SegKind classify_segment(const std::vector<long long>& e) {
    SegKind k = classify_reading(e);
    if (k != SegKind::Other) return k;
    return classify_reading(std::vector<long long>(e.rbegin(), e.rend()));
}

bool is_single_one(const WeightedForest& f, const std::vector<VertexId>& comp) {
    return comp.size() == 1 && f.weight(comp.front()) == -1;
}

}  // namespace

bool is_balanced(const BoundaryForest& b) {
    for (const auto& s : segments_of(b)) {
        const auto e = entries_of(b, s.ids);
        if (e == std::vector<long long>{1}) continue;
        for (long long a : e)
            if (a == 1 || a < 0) return false;
    }
    return true;
}

bool is_standard(const BoundaryForest& b) {
    for (const auto& comp : b.components()) {
        if (is_single_one(b, comp)) continue;
        const WeightedForest c = b.induced({comp.begin(), comp.end()});
        int double_zero = 0;
        for (const auto& s : segments_of(c)) {
            const SegKind k = classify_segment(entries_of(c, s.ids));
            if (k == SegKind::Other) return false;
            if (k == SegKind::DoubleZero) ++double_zero;
        }
        if (double_zero > 1) return false;
    }
    return true;
}

bool is_strongly_balanced(const BoundaryForest& b) {
    if (!is_standard(b)) return false;
    bool any_zero_segment = false;
    for (const auto& s : segments_of(b)) {
        const SegKind k = classify_segment(entries_of(b, s.ids));
        if (k != SegKind::Zero1 && k != SegKind::Zero3) continue;
        any_zero_segment = true;
        for (const auto& ext : {s.left_ext, s.right_ext})
            if (!ext.empty() && b.weight(ext) == 0) return true;
    }
    return !any_zero_segment;
}

// ---------------------------------------------------------------- normal forms

namespace {

/// Moves `amount` units of entry from `from` to `to` across the 0-vertex `zero`.
void transfer(WeightedForest& f, std::vector<FlowMove>& moves, const VertexId& zero, const VertexId& from,
              const VertexId& to, long long amount) {
    const FlowMove fwd{zero, amount > 0 ? to : from};
    for (long long k = 0; k < (amount > 0 ? amount : -amount); ++k) {
        f = elementary_transform(f, fwd);
        moves.push_back(fwd);
    }
}

/// Pushes entries rightwards through interior zeros until no zero has a nonzero left
/// neighbour inside the segment.
void push_segment(WeightedForest& f, std::vector<FlowMove>& moves, const Segment& s) {
    const std::size_t n = s.ids.size();
    while (true) {
        bool moved = false;
        for (std::size_t i = 1; i < n; ++i) {
            const VertexId& z = s.ids[i];
            if (f.weight(z) != 0 || f.degree(z) != 2) continue;
            const long long left = entry(f, s.ids[i - 1]);
            if (left == 0) continue;
            const VertexId right = i + 1 < n ? s.ids[i + 1] : s.right_ext;
            transfer(f, moves, z, s.ids[i - 1], right, left);
            moved = true;
            break;
        }
        if (!moved) return;
    }
}

/// Moves of a reversion on an oriented [0,0,a1..an] segment.
void reversion_moves(WeightedForest& f, std::vector<FlowMove>& moves, const std::vector<VertexId>& ids) {
    for (std::size_t k = 0; k + 2 < ids.size(); ++k) {
        // zero at ids[k+1]; carry the entry of ids[k+2] over to ids[k]
        transfer(f, moves, ids[k + 1], ids[k + 2], ids[k], entry(f, ids[k + 2]));
    }
}

Chain min_reading(const Chain& c) { return std::min(c, c.reversed()); }

}  // namespace

Chain push_right(const Chain& chain) {
    WeightedForest f = chain.to_forest();
    std::vector<FlowMove> moves;
    Segment s;
    for (std::size_t i = 0; i < chain.size(); ++i) s.ids.push_back("v" + std::to_string(i + 1));
    push_segment(f, moves, s);
    return Chain::from_path(f, s.ids);
}

NormalForm to_standard_form(const BoundaryForest& b, bool strong) {
    NormalForm out;
    out.forest = b;
    WeightedForest& f = out.forest;
    const bool input_standard = is_standard(b);
    auto segs = segments_of(b);
    for (const auto& s : segs) push_segment(f, out.moves, s);
    if (strong && !is_standard(f)) {
        // outer moves at a 0-tip bring its non-branching neighbour to 0, then push again
        for (const auto& s : segs) {
            if (s.ids.size() < 2 || !s.left_ext.empty()) continue;
            for (const auto& tip : {s.ids.front(), s.ids.back()}) {
                const VertexId& next = tip == s.ids.front() ? s.ids[1] : s.ids[s.ids.size() - 2];
                if (f.degree(tip) != 1 || f.weight(tip) != 0 || entry(f, next) == 0) continue;
                const long long a = entry(f, next);
                const FlowMove m{tip, a < 0 ? next : VertexId{}};
                for (long long i = 0; i < (a < 0 ? -a : a); ++i) {
                    f = elementary_transform(f, m);
                    out.moves.push_back(m);
                }
                break;
            }
        }
        segs = segments_of(f);
        for (const auto& s : segs) push_segment(f, out.moves, s);
    }

    for (const auto& comp : f.components()) {
        if (is_single_one(f, comp)) continue;
        int double_zero = 0;
        for (const auto& s : segs) {
            if (std::find(comp.begin(), comp.end(), s.ids.front()) == comp.end()) continue;
            const auto e = entries_of(f, s.ids);
            const SegKind k = classify_reading(e);
            if (k == SegKind::Other)
                throw DomainError("segment " + to_string(Chain(e)) +
                                  " does not reach a standard shape by inner flows");
            if (k == SegKind::DoubleZero) ++double_zero;
        }
        if (double_zero > 1) throw DomainError("component has more than one [0,0,...] segment");
    }

    // chain components: pick the orientation with the smaller reading, unless the input
    // was already standard (idempotence wins over the tie-break)
    for (const auto& s : segs) {
        if (input_standard || !s.whole_component()) continue;
        const auto e = entries_of(f, s.ids);
        if (classify_reading(e) != SegKind::DoubleZero || e.size() < 3) continue;
        const Chain r(std::vector<long long>(e.begin() + 2, e.end()));
        if (r.reversed() < r) reversion_moves(f, out.moves, s.ids);
    }

    if (strong && !is_strongly_balanced(f)) {
        for (const auto& s : segs) {
            const SegKind k = classify_reading(entries_of(f, s.ids));
            if ((k != SegKind::Zero1 && k != SegKind::Zero3) || s.whole_component()) continue;
            if (s.twig()) {
                // bring the neighbour to 0, then outer moves at the 0-tip absorb the rest
                const long long a = entry(f, s.right_ext);
                VertexId fed = s.right_ext;
                if (k == SegKind::Zero3) {
                    transfer(f, out.moves, s.ids[2], s.right_ext, s.ids[1], a);
                    fed = s.ids[1];
                }
                const FlowMove m{s.ids[0], a < 0 ? fed : VertexId{}};
                for (long long i = 0; i < (a < 0 ? -a : a); ++i) {
                    f = elementary_transform(f, m);
                    out.moves.push_back(m);
                }
            } else {
                // empty the left neighbour into the right one across the zeros
                const long long a = entry(f, s.left_ext);
                if (k == SegKind::Zero1) {
                    transfer(f, out.moves, s.ids[0], s.left_ext, s.right_ext, a);
                } else {
                    transfer(f, out.moves, s.ids[0], s.left_ext, s.ids[1], a);
                    transfer(f, out.moves, s.ids[2], s.ids[1], s.right_ext, a);
                }
            }
            break;
        }
    }

    out.strongly_balanced = is_strongly_balanced(f);
    if (f.is_connected()) {
        if (auto order = f.path_order()) {
            const Chain c = Chain::from_path(f, *order);
            out.chain = min_reading(c);
            const auto& e = out.chain->entries;
            if (classify_reading(e) == SegKind::DoubleZero && e.size() >= 3) {
                std::vector<long long> rev(e.begin() + 2, e.end());
                std::reverse(rev.begin(), rev.end());
                rev.insert(rev.begin(), {0, 0});
                out.reversed_candidate = Chain(rev);
            } else {
                out.reversed_candidate = out.chain;
            }
        }
    }
    return out;
}

Reversion reversion(const Chain& chain) {
    const auto& e = chain.entries;
    if (e.size() < 3 || e[0] != 0 || e[1] != 0)
        throw DomainError("reversion needs a chain [0,0,a1..an] with n >= 1, got " + to_string(chain));
    for (std::size_t i = 2; i < e.size(); ++i)
        if (e[i] == 0) throw DomainError("reversion needs nonzero a_i, got " + to_string(chain));
    Reversion r;
    WeightedForest f = chain.to_forest();
    std::vector<VertexId> ids;
    for (std::size_t i = 0; i < e.size(); ++i) ids.push_back("v" + std::to_string(i + 1));
    reversion_moves(f, r.moves, ids);
    r.result = Chain::from_path(f, ids);
    return r;
}

// ---------------------------------------------------------------- equivalence

std::string flow_class_key(const BoundaryForest& b) {
    const auto& f = b;
    std::vector<std::string> comp_keys;
    for (const auto& comp : f.components()) {
        const WeightedForest raw_c = f.induced({comp.begin(), comp.end()});
        if (auto order = raw_c.path_order()) {
            const WeightedForest& c = raw_c;
            const Chain raw = Chain::from_path(c, *order);
            comp_keys.push_back("C" + to_string(std::min(push_right(raw), push_right(raw.reversed()))));
            continue;
        }
        std::string prefix = "T";
        WeightedForest c;
        try {
            c = to_standard_form(raw_c).forest;
        } catch (const DomainError&) {
            prefix = "X";
            c = raw_c;
        }
        const auto segs = segments_of(c);
        // cluster branching vertices joined by [0] / [0,0,0] segments
        std::map<VertexId, VertexId, NaturalLess> parent;
        for (const auto& v : branching_data(c).branching) parent[v] = v;
        std::function<VertexId(const VertexId&)> find = [&](const VertexId& v) {
            return parent[v] == v ? v : parent[v] = find(parent[v]);
        };
        std::vector<SegKind> kinds;
        for (const auto& s : segs) {
            kinds.push_back(classify_segment(entries_of(c, s.ids)));
            if (!s.twig() && (kinds.back() == SegKind::Zero1 || kinds.back() == SegKind::Zero3))
                parent[find(s.left_ext)] = find(s.right_ext);
        }
        std::map<VertexId, long long, NaturalLess> cluster_sum;
        std::map<VertexId, int, NaturalLess> cluster_size;
        for (const auto& [v, p] : parent) {
            cluster_sum[find(v)] += c.weight(v);
            ++cluster_size[find(v)];
        }
        auto vertex_label = [&](const VertexId& v) {
            const VertexId r = find(v);
            if (cluster_size[r] > 1) return "*" + std::to_string(cluster_sum[r]);
            return std::to_string(c.weight(v));
        };
        // segment label read from the side of `from`
        auto seg_label = [&](std::size_t i, const VertexId& from) {
            const Segment& s = segs[i];
            std::vector<long long> e = entries_of(c, s.ids);
            if (!s.twig() && from == s.right_ext) std::reverse(e.begin(), e.end());
            switch (kinds[i]) {
                case SegKind::Zero1: return std::string("Z1");
                case SegKind::Zero3: return std::string("Z3");
                case SegKind::DoubleZero: {
                    std::vector<long long> r;
                    for (long long a : e)
                        if (a != 0) r.push_back(a);
                    return "R" + to_string(Chain(r));
                }
                default: return "S" + to_string(Chain(e));
            }
        };
        std::map<VertexId, std::vector<std::pair<std::size_t, VertexId>>, NaturalLess> incident;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            const Segment& s = segs[i];
            if (s.twig()) {
                incident[s.right_ext].push_back({i, ""});
            } else {
                incident[s.left_ext].push_back({i, s.right_ext});
                incident[s.right_ext].push_back({i, s.left_ext});
            }
        }
        // branching vertices adjacent without a segment in between
        std::map<VertexId, std::vector<VertexId>, NaturalLess> direct;
        for (const auto& [v, p] : parent)
            for (const auto& n : c.neighbors(v))
                if (parent.count(n)) direct[v].push_back(n);

        std::function<std::string(const VertexId&, const VertexId&)> ahu = [&](const VertexId& v,
                                                                                  const VertexId& from) {
            std::vector<std::string> kids;
            for (const auto& [i, other] : incident[v]) {
                if (!other.empty() && other == from) continue;
                const std::string lab = seg_label(i, v);
                kids.push_back(other.empty() ? "[" + lab + "]" : "[" + lab + ahu(other, v) + "]");
            }
            for (const auto& n : direct[v])
                if (n != from) kids.push_back("[-" + ahu(n, v) + "]");
            std::sort(kids.begin(), kids.end());
            std::string out = "(" + vertex_label(v);
            for (const auto& k : kids) out += k;
            return out + ")";
        };
        std::string best;
        for (const auto& [v, p] : parent) {
            std::string k = ahu(v, "");
            if (best.empty() || k < best) best = std::move(k);
        }
        comp_keys.push_back(prefix + best);
    }
    std::sort(comp_keys.begin(), comp_keys.end());
    std::string out;
    for (const auto& k : comp_keys) out += k + ";";
    return out;
}

bool flow_equivalent(const BoundaryForest& b1, const BoundaryForest& b2) {
    return flow_class_key(b1) == flow_class_key(b2);
}

}  // namespace qhp
