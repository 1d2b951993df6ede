/// @file enumerate.hpp
/// Construction parameters from JSON, exhaustive enumeration and random sampling of models.
#pragma once

#include "qhp/json_io.hpp"

#include <random>

namespace qhp {

struct Instance {
    std::string key;  ///< concatenated program encodings; enumeration is sorted by it
    json params;
    RulingModel model;
};

/// Runs the construction of `kind` on JSON parameters.
RulingModel build_model(RulingKind kind, const json& params);

/// Columnar programs at `section` with 2..max_len steps.
std::vector<BlowupProgram> columnar_programs(const std::string& section, int max_len);

/// Connected programs of 1..max_len steps from `start`; sprouts may use section points.
std::vector<BlowupProgram> connected_programs(const FiberTree& start, int max_len);

/// Every successful construction of `kind` whose programs have at most `depth` steps in
/// total, sorted by key. Parameter sets rejected by the construction are skipped.
std::vector<Instance> enumerate_instances(RulingKind kind, int depth);

/// A random successful construction with at most `max_steps` steps in total.
Instance random_instance(RulingKind kind, std::mt19937_64& rng, int max_steps);

/// QHP_MAX_DEPTH, default 6.
int max_depth_from_env();

}  // namespace qhp
