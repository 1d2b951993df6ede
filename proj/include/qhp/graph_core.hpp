/// @file graph_core.hpp
/// Weighted forests, chains, discriminants and branching data.
#pragma once

#include "qhp/arith.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qhp {

using VertexId = std::string;

/// Orders ids so that embedded numbers compare numerically ("c2" < "c10").
struct NaturalLess {
    bool operator()(const std::string& a, const std::string& b) const;
};

bool natural_less(const std::string& a, const std::string& b);

/// Structural violation (duplicate id, loop, multi-edge, cycle, missing vertex).
struct InvalidGraph : MalformedInput {
    using MalformedInput::MalformedInput;
};

/// Simple acyclic graph with one self-intersection weight per vertex.
class WeightedForest {
public:
    void add_vertex(const VertexId& id, long long weight);
    void add_edge(const VertexId& a, const VertexId& b);
    void remove_edge(const VertexId& a, const VertexId& b);
    void remove_vertex(const VertexId& id);
    void set_weight(const VertexId& id, long long weight);

    bool contains(const VertexId& id) const { return nodes_.count(id) != 0; }
    long long weight(const VertexId& id) const;
    const std::vector<VertexId>& neighbors(const VertexId& id) const;
    std::size_t degree(const VertexId& id) const { return neighbors(id).size(); }
    bool has_edge(const VertexId& a, const VertexId& b) const;

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    std::size_t edge_count() const { return edge_count_; }

    /// Vertex ids in natural order.
    std::vector<VertexId> ids() const;
    /// Each edge once, endpoints and list in natural order.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    WeightedForest induced(const std::set<VertexId>& keep) const;
    WeightedForest without(const std::set<VertexId>& drop) const;

    /// Connected components, each in natural order; components sorted by first id.
    std::vector<std::vector<VertexId>> components() const;
    bool is_connected() const;
    /// Vertices of a connected path from its natural-least end; nullopt if not a path.
    std::optional<std::vector<VertexId>> path_order() const;

    bool operator==(const WeightedForest& other) const;

private:
    struct Node {
        long long weight = 0;
        std::vector<VertexId> nbrs;
    };
    const Node& node(const VertexId& id) const;
    Node& node(const VertexId& id);
    bool connected(const VertexId& a, const VertexId& b) const;

    std::map<VertexId, Node, NaturalLess> nodes_;
    std::size_t edge_count_ = 0;
};

/// Ordered path in bracket convention: entry a_i = -T_i^2.
struct Chain {
    std::vector<long long> entries;

    Chain() = default;
    Chain(std::initializer_list<long long> e) : entries(e) {}
    explicit Chain(std::vector<long long> e) : entries(std::move(e)) {}

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    Chain reversed() const;
    /// All entries >= 2 (and nonempty chains only).
    bool admissible() const;
    /// Path forest with ids prefix1..prefixN and weights -a_i.
    WeightedForest to_forest(const std::string& prefix = "v") const;
    /// Reads the weights of a path given in order.
    static Chain from_path(const WeightedForest& f, const std::vector<VertexId>& order);

    bool operator==(const Chain& o) const { return entries == o.entries; }
    bool operator<(const Chain& o) const { return entries < o.entries; }
};

std::string to_string(const Chain& c);

/// det(-Q); 1 for the empty forest, multiplicative over components.
Int discriminant(const WeightedForest& forest);
Int discriminant(const Chain& chain);

/// e(T) = d(T - T_1) / d(T) for an admissible nonempty chain.
Rational inductance(const Chain& chain);
/// e of the reversed chain.
Rational co_inductance(const Chain& chain);

/// -Q positive definite, decided by exact leading principal minors.
bool is_negative_definite(const WeightedForest& forest);
bool is_negative_definite(const WeightedForest& forest, const std::vector<VertexId>& order);

/// Leading principal minors of -Q in the given order (fraction-free elimination).
std::vector<Int> leading_minors(const WeightedForest& forest, const std::vector<VertexId>& order);

struct Twig {
    std::vector<VertexId> ids;  ///< tip first
    Chain chain;
    bool admissible = false;
};

struct BranchingData {
    std::map<VertexId, int, NaturalLess> beta;
    std::vector<VertexId> tips;
    std::vector<VertexId> branching;
    /// Maximal twigs of components that have a branching vertex.
    std::vector<Twig> twigs;
    /// Components after deleting branching vertices, each listed along its path.
    std::vector<std::vector<VertexId>> segments;
};

BranchingData branching_data(const WeightedForest& forest);

/// Both sides of d(T) = d(T_u)d(T_v) - d(T_u - u)d(T_v - v) for the edge {u,v}.
std::pair<Int, Int> edge_expansion_check(const WeightedForest& forest, const VertexId& u,
                                         const VertexId& v);

/// Fork shape: connected, one branching vertex of degree 3.
struct ForkShape {
    VertexId center;
    std::vector<Twig> twigs;  ///< three twigs, sorted by (discriminant, entries)
    std::vector<Int> type;    ///< twig discriminants, ascending
};
std::optional<ForkShape> fork_shape(const WeightedForest& forest);

/// Vertex set of the component containing id.
std::set<VertexId> component_of(const WeightedForest& forest, const VertexId& id);

}  // namespace qhp
