/// @file birational.hpp
/// Elementary transformations, flows and normal forms of boundary forests.
#pragma once

#include "qhp/graph_core.hpp"

namespace qhp {

/// Boundary divisor; flows act on its non-branching 0-vertices.
using BoundaryForest = WeightedForest;

/// One atomic elementary transformation at a non-branching 0-vertex.
/// Inner (two neighbours): the entry of `toward` grows by one, the other neighbour's
/// entry drops by one. Outer (0-tip): a nonempty `toward` raises the neighbour's entry,
/// an empty one lowers it.
struct FlowMove {
    VertexId zero;
    VertexId toward;
    bool operator==(const FlowMove& o) const { return zero == o.zero && toward == o.toward; }
};

BoundaryForest elementary_transform(const BoundaryForest& b, const FlowMove& move);
BoundaryForest flow(const BoundaryForest& b, const std::vector<FlowMove>& moves);
/// Vertices whose weight a move list changes.
std::set<VertexId> flow_support(const BoundaryForest& b, const std::vector<FlowMove>& moves);

bool is_balanced(const BoundaryForest& b);
bool is_standard(const BoundaryForest& b);
bool is_strongly_balanced(const BoundaryForest& b);

struct NormalForm {
    BoundaryForest forest;
    std::vector<FlowMove> moves;  ///< replaying these on the input gives `forest`
    /// Chains only: the standard reading and the reading of its reversion.
    std::optional<Chain> chain;
    std::optional<Chain> reversed_candidate;
    bool strongly_balanced = false;
};

/// Standard form reached by inner moves. With `strong`, inner and outer moves are
/// also used to put a 0-weight next to a [0] or [0,0,0] segment where possible.
NormalForm to_standard_form(const BoundaryForest& b, bool strong = false);

struct Reversion {
    Chain result;
    std::vector<FlowMove> moves;  ///< moves on chain.to_forest()
};

/// [0,0,a1..an] with every a_i != 0 and n >= 1 to [a1..an,0,0].
Reversion reversion(const Chain& chain);

/// Normal form of a chain under inner moves: weight is pushed towards the end
/// through every interior zero. Canonical on each flow class of chains.
Chain push_right(const Chain& chain);

/// Same flow classes up to isomorphism and reversion (compares flow_class_key).
bool flow_equivalent(const BoundaryForest& b1, const BoundaryForest& b2);

/// Isomorphism-invariant key of the flow class. Chain components use push_right in
/// both readings. Other components are keyed by their standard form up to reversion of
/// segments and redistribution of weight across [0] and [0,0,0] segments; a component
/// without a standard form is keyed up to isomorphism only.
std::string flow_class_key(const BoundaryForest& b);

}  // namespace qhp
