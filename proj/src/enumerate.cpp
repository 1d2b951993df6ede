#include "qhp/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace qhp {

RulingModel build_model(RulingKind kind, const json& params) {
    switch (kind) {
        case RulingKind::Affine: return construct_affine(affine_params_from_json(params));
        case RulingKind::Twisted: return construct_twisted(twisted_params_from_json(params));
        case RulingKind::UntwistedC1: return construct_untwisted_c1(c1_params_from_json(params));
        case RulingKind::UntwistedP1: return construct_untwisted_p1(p1_params_from_json(params));
    }
    throw MalformedInput("unknown kind");
}

int max_depth_from_env() {
    if (const char* s = std::getenv("QHP_MAX_DEPTH")) {
        try {
            return std::stoi(s);
        } catch (const std::exception&) {
            throw MalformedInput(std::string("QHP_MAX_DEPTH is not an integer: ") + s);
        }
    }
    return 6;
}

namespace {

/// Steps of a connected program after `prev` was created.
std::vector<Step> steps_at(const FiberTree& f, const VertexId& prev) {
    std::vector<Step> out;
    for (const auto& s : possible_steps(f, true)) {
        const bool on_prev = s.kind == Step::Kind::Sprout ? s.a == prev : (s.a == prev || s.b == prev);
        if (on_prev) out.push_back(s);
    }
    return out;
}

void grow_connected(const FiberTree& f, const VertexId& prev, int left, BlowupProgram& cur,
                    std::vector<BlowupProgram>& out) {
    if (left == 0) return;
    const auto steps = cur.steps.empty() ? possible_steps(f, true) : steps_at(f, prev);
    for (const auto& s : steps) {
        const VertexId made = created_id(f);
        cur.steps.push_back(s);
        out.push_back(cur);
        grow_connected(apply_step(f, s), made, left - 1, cur, out);
        cur.steps.pop_back();
    }
}

json programs_json(const std::vector<BlowupProgram>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(program_to_json(p));
    return a;
}

std::string key_of(const std::vector<BlowupProgram>& ps) {
    std::string k;
    for (const auto& p : ps) k += p.encode() + ";";
    return k;
}

/// Nondecreasing index sequences over `pool` with total length at most `budget`.
void multisets(const std::vector<BlowupProgram>& pool, std::size_t from, int budget,
               std::vector<BlowupProgram>& cur, const std::function<void(const std::vector<BlowupProgram>&, int)>& visit) {
    visit(cur, budget);
    for (std::size_t i = from; i < pool.size(); ++i) {
        const int len = static_cast<int>(pool[i].steps.size());
        if (len > budget) continue;
        cur.push_back(pool[i]);
        multisets(pool, i, budget - len, cur, visit);
        cur.pop_back();
    }
}

void try_add(std::vector<Instance>& out, RulingKind kind, std::string key, json params) {
    try {
        RulingModel m = build_model(kind, params);
        out.push_back({std::move(key), std::move(params), std::move(m)});
    } catch (const DomainError&) {
    }
}

std::vector<BlowupProgram> affine_fiber_programs(int max_len) {
    std::vector<BlowupProgram> out;
    const Step first = Step::sprout("c0", "H");
    const FiberTree start = apply_step(new_fiber({"H"}), first);
    for (int extra = 1; extra < max_len; ++extra)
        for (auto& p : all_programs(start, extra, true)) {
            p.steps.insert(p.steps.begin(), first);
            if (replay(new_fiber({"H"}), p).minus_one_vertices().size() == 1) out.push_back(std::move(p));
        }
    return out;
}

}  // namespace

std::vector<BlowupProgram> columnar_programs(const std::string& section, int max_len) {
    std::vector<BlowupProgram> out;
    std::function<void(const FiberTree&, const VertexId&, BlowupProgram&)> grow = [&](const FiberTree& f,
                                                                                        const VertexId& prev,
                                                                                        BlowupProgram& cur) {
        if (cur.steps.size() >= 2) out.push_back(cur);
        if (static_cast<int>(cur.steps.size()) >= max_len) return;
        for (const auto& n : f.forest.neighbors(prev)) {
            const VertexId made = created_id(f);
            cur.steps.push_back(Step::subdivide(prev, n));
            grow(apply_step(f, cur.steps.back()), made, cur);
            cur.steps.pop_back();
        }
    };
    if (max_len < 2) return out;
    const FiberTree start = new_fiber({section});
    BlowupProgram cur;
    cur.steps.push_back(Step::sprout("c0", section));
    grow(apply_step(start, cur.steps.front()), created_id(start), cur);
    std::sort(out.begin(), out.end(), [](const BlowupProgram& a, const BlowupProgram& b) {
        if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
        return a.encode() < b.encode();
    });
    return out;
}

std::vector<BlowupProgram> connected_programs(const FiberTree& start, int max_len) {
    std::vector<BlowupProgram> out;
    BlowupProgram cur;
    grow_connected(start, {}, max_len, cur, out);
    return out;
}

std::vector<Instance> enumerate_instances(RulingKind kind, int depth) {
    std::vector<Instance> out;
    if (depth < 0) return out;
    if (kind == RulingKind::Affine) {
        const auto pool = affine_fiber_programs(depth);
        std::vector<BlowupProgram> cur;
        multisets(pool, 0, depth, cur, [&](const std::vector<BlowupProgram>& fibers, int) {
            if (fibers.empty()) return;
            try_add(out, kind, key_of(fibers), {{"fibers", programs_json(fibers)}});
        });
    } else {
        const std::string first = kind == RulingKind::Twisted ? "H" : "D1";
        const auto pool = columnar_programs(first, depth);
        std::vector<BlowupProgram> cur;
        multisets(pool, 0, depth, cur, [&](const std::vector<BlowupProgram>& cols, int left) {
            if (kind == RulingKind::Twisted) {
                try_add(out, kind, key_of(cols) + "|", {{"columnar", programs_json(cols)}, {"f0", program_to_json({})}});
                for (const auto& p : connected_programs(twisted_template(), left))
                    try_add(out, kind, key_of(cols) + "|" + p.encode(),
                            {{"columnar", programs_json(cols)}, {"f0", program_to_json(p)}});
                return;
            }
            std::vector<BlowupProgram> tildes{BlowupProgram{}};
            for (const auto& t : pool)
                if (static_cast<int>(t.steps.size()) < left) tildes.push_back(t);
            const std::vector<long long> degrees = kind == RulingKind::UntwistedP1 ? std::vector<long long>{1, 2}
                                                                                   : std::vector<long long>{0};
            for (const auto& t : tildes) {
                const FiberTree start = replay(new_fiber({"D1", "D2"}), t);
                const int rest = left - static_cast<int>(t.steps.size());
                for (const auto& p : connected_programs(start, rest)) {
                    json params = {{"columnar", programs_json(cols)},
                                   {"f0_tilde", program_to_json(t)},
                                   {"f0", program_to_json(p)}};
                    const std::string key = key_of(cols) + "|" + t.encode() + "|" + p.encode();
                    if (kind == RulingKind::UntwistedC1) {
                        try_add(out, kind, key, params);
                        continue;
                    }
                    for (const auto N : degrees) {
                        params["N"] = N;
                        try_add(out, kind, key + "|N" + std::to_string(N), params);
                    }
                }
            }
        });
    }
    std::sort(out.begin(), out.end(), [](const Instance& a, const Instance& b) { return a.key < b.key; });
    return out;
}

Instance random_instance(RulingKind kind, std::mt19937_64& rng, int max_steps) {
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto random_columnar = [&](const std::string& section, int len) {
        BlowupProgram p;
        FiberTree f = new_fiber({section});
        p.steps.push_back(Step::sprout("c0", section));
        VertexId prev = created_id(f);
        f = apply_step(f, p.steps.back());
        while (static_cast<int>(p.steps.size()) < len) {
            const auto& nb = f.forest.neighbors(prev);
            const VertexId made = created_id(f);
            p.steps.push_back(Step::subdivide(prev, nb[uniform(0, static_cast<int>(nb.size()) - 1)]));
            f = apply_step(f, p.steps.back());
            prev = made;
        }
        return p;
    };
    auto random_connected = [&](FiberTree f, int len) {
        BlowupProgram p;
        VertexId prev;
        for (int i = 0; i < len; ++i) {
            const auto steps = i == 0 ? possible_steps(f, true) : steps_at(f, prev);
            if (steps.empty()) break;
            const Step s = steps[uniform(0, static_cast<int>(steps.size()) - 1)];
            prev = created_id(f);
            f = apply_step(f, s);
            p.steps.push_back(s);
        }
        return p;
    };
    for (int attempt = 0; attempt < 10000; ++attempt) {
        int budget = max_steps;
        std::vector<BlowupProgram> cols;
        const int n = uniform(0, 3);
        const std::string first = kind == RulingKind::Twisted ? "H" : kind == RulingKind::Affine ? "H" : "D1";
        json params;
        if (kind == RulingKind::Affine) {
            const int fibers = uniform(1, 4);
            for (int i = 0; i < fibers && budget >= 2; ++i) {
                const int len = uniform(2, std::min(budget, 6));
                FiberTree f = apply_step(new_fiber({"H"}), Step::sprout("c0", "H"));
                BlowupProgram p;
                p.steps.push_back(Step::sprout("c0", "H"));
                for (int k = 1; k < len; ++k) {
                    const auto steps = possible_steps(f, true);
                    p.steps.push_back(steps[uniform(0, static_cast<int>(steps.size()) - 1)]);
                    f = apply_step(f, p.steps.back());
                }
                budget -= len;
                cols.push_back(p);
            }
            params = {{"fibers", programs_json(cols)}};
        } else {
            for (int i = 0; i < n && budget >= 2; ++i) {
                const int len = uniform(2, std::min(budget, 5));
                cols.push_back(random_columnar(first, len));
                budget -= len;
            }
            params["columnar"] = programs_json(cols);
            if (kind == RulingKind::Twisted) {
                params["f0"] = program_to_json(random_connected(twisted_template(), uniform(0, std::max(0, budget))));
            } else {
                BlowupProgram t;
                if (budget >= 3 && uniform(0, 1) == 1) t = random_columnar("D1", uniform(2, std::min(budget - 1, 5)));
                budget -= static_cast<int>(t.steps.size());
                const FiberTree start = replay(new_fiber({"D1", "D2"}), t);
                params["f0_tilde"] = program_to_json(t);
                params["f0"] = program_to_json(random_connected(start, uniform(1, std::max(1, budget))));
                if (kind == RulingKind::UntwistedP1) params["N"] = uniform(1, 3);
            }
        }
        try {
            RulingModel m = build_model(kind, params);
            return {params.dump(), params, std::move(m)};
        } catch (const DomainError&) {
        }
    }
    throw DomainError("no random instance found");
}

}  // namespace qhp
