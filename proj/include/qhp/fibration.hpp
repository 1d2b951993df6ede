/// @file fibration.hpp
/// Degenerate fibers of P1-rulings as weighted trees with multiplicities.
#pragma once

#include "qhp/graph_core.hpp"

#include <random>

namespace qhp {

enum class Role { D, E, S0 };

const char* role_name(Role r);
Role parse_role(const std::string& s);

/// The fiber component `vertex` meets the horizontal section `section` once.
struct Attach {
    VertexId vertex;
    std::string section;
    bool operator==(const Attach& o) const { return vertex == o.vertex && section == o.section; }
};

struct FiberTree {
    WeightedForest forest;
    std::map<VertexId, long long, NaturalLess> mult;
    std::map<VertexId, Role, NaturalLess> role;
    std::vector<Attach> attach;

    long long mu(const VertexId& v) const { return mult.at(v); }
    Role role_of(const VertexId& v) const { return role.at(v); }
    std::vector<VertexId> with_role(Role r) const;
    /// Attach records on a vertex.
    std::vector<std::string> sections_at(const VertexId& v) const;
    /// Vertices carrying a record for the section, in natural order.
    std::vector<VertexId> vertices_meeting(const std::string& section) const;
    /// Ids of (-1)-vertices in natural order.
    std::vector<VertexId> minus_one_vertices() const;
    /// First unused id of the form c<k>.
    VertexId fresh_id() const;
    /// Reduced fiber as a weighted forest (alias of `forest`).
    const WeightedForest& reduced() const { return forest; }
    void set_role(const std::set<VertexId>& ids, Role r);

    bool operator==(const FiberTree& o) const;
};

struct Step {
    enum class Kind { Sprout, Subdivide };
    Kind kind = Kind::Sprout;
    VertexId a;
    VertexId b;       ///< second endpoint for Subdivide
    std::string at;   ///< Sprout only: center is where this section meets `a`

    static Step sprout(VertexId v, std::string section = {}) {
        return Step{Kind::Sprout, std::move(v), {}, std::move(section)};
    }
    static Step subdivide(VertexId u, VertexId v) { return Step{Kind::Subdivide, std::move(u), std::move(v), {}}; }
    std::string encode() const;
    bool operator==(const Step& o) const { return kind == o.kind && a == o.a && b == o.b && at == o.at; }
};

struct BlowupProgram {
    std::vector<Step> steps;
    std::string encode() const;
};

/// Smooth fiber: one vertex "c0", weight 0, multiplicity 1, role S0.
FiberTree new_fiber();
/// Smooth fiber met once by each listed section.
FiberTree new_fiber(const std::vector<std::string>& sections);

FiberTree apply_step(const FiberTree& fiber, const Step& step);
/// Id given to the vertex created by applying `step` to `fiber`.
VertexId created_id(const FiberTree& fiber);
FiberTree replay(const FiberTree& start, const BlowupProgram& program);

/// Contracts a (-1)-vertex with at most two neighbours.
FiberTree blow_down(const FiberTree& fiber, const VertexId& v);

/// mu(v) w(v) + sum of neighbour multiplicities, per vertex.
bool kernel_law_holds(const FiberTree& fiber);
/// Primitive positive generator of ker Q, if the kernel is a line spanned by such a vector.
std::optional<std::map<VertexId, long long, NaturalLess>> kernel_multiplicities(const WeightedForest& forest);

struct FiberValidation {
    bool tree = false;
    bool kernel_law = false;
    bool kernel_recomputed = false;  ///< stored mult equals the recomputed kernel generator
    bool nonnegative_rule = false;   ///< a weight >= 0 occurs only in the smooth fiber
    bool roles_ok = false;           ///< E-vertices carry no attach records
    bool minus_one_degree = false;   ///< every (-1)-vertex meets at most two others
    std::optional<VertexId> unique_minus_one;
    bool clause_c = true;
    bool clause_d = true;
    bool clause_e = true;
    std::vector<std::string> findings;
    bool ok() const {
        return tree && kernel_law && kernel_recomputed && nonnegative_rule && roles_ok &&
               minus_one_degree && clause_c && clause_d && clause_e;
    }
};

FiberValidation validate_fiber(const FiberTree& fiber);

struct ColumnarSplit {
    Chain A, B;                    ///< A_1..A_n and B_1..B_m, first entries adjacent to C
    std::vector<VertexId> a_ids, b_ids;
    VertexId c;
    long long mu_c = 0;
};

std::optional<ColumnarSplit> columnar_split(const FiberTree& fiber);

/// gcd of multiplicities of S0-vertices.
long long mu_S(const FiberTree& fiber);
/// gcd of multiplicities of all components outside D (S0 and E).
long long mu_S_open(const FiberTree& fiber);

struct TraceStep {
    VertexId vertex;
    int marked_at_center = 0;
    bool sprouting = false;
};

struct ContractionTrace {
    std::vector<TraceStep> steps;
    FiberTree image;
    bool eta_nontrivial() const {
        for (const auto& s : steps)
            if (s.sprouting) return true;
        return false;
    }
};

/// Greedy contraction of marked (-1)-vertices keeping the marked image snc.
/// Section records always count as marked components. Lowest id first unless
/// `rng` is given, in which case the choice among candidates is random.
ContractionTrace contraction_trace(const FiberTree& fiber, const std::set<VertexId>& marked,
                                   std::mt19937_64* rng = nullptr);

/// Isomorphism-invariant key over weights, multiplicities, roles and section records.
std::string canonical_key(const FiberTree& fiber);

/// All programs of exactly `depth` steps from `start`. With `use_sections`, a sprout may
/// be centered where a section meets a vertex.
std::vector<BlowupProgram> all_programs(const FiberTree& start, int depth, bool use_sections);

/// Every applicable step on the fiber.
std::vector<Step> possible_steps(const FiberTree& fiber, bool use_sections);

}  // namespace qhp
