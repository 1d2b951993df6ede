/// @file json_io.hpp
/// JSON encodings of forests, fibers, programs, models and reports.
#pragma once

#include "qhp/classify.hpp"

#include <nlohmann/json.hpp>

namespace qhp {

using json = nlohmann::json;

/// Integer as a JSON number when it fits in 64 bits, else as a decimal string.
json int_to_json(const Int& v);
Int int_from_json(const json& j);
/// {"num": "...", "den": "..."}
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json forest_to_json(const WeightedForest& f);
/// Accepts the vertex/edge form and {"chain": [...]} with bracket entries.
WeightedForest forest_from_json(const json& j);

json fiber_to_json(const FiberTree& f);
FiberTree fiber_from_json(const json& j);

json step_to_json(const Step& s);
Step step_from_json(const json& j);
json program_to_json(const BlowupProgram& p);
/// Accepts {"steps": [...]} or a bare array.
BlowupProgram program_from_json(const json& j);

json move_to_json(const FlowMove& m);
FlowMove move_from_json(const json& j);

json model_to_json(const RulingModel& m);
RulingModel model_from_json(const json& j);

AffineParams affine_params_from_json(const json& j);
TwistedParams twisted_params_from_json(const json& j);
UntwistedC1Params c1_params_from_json(const json& j);
UntwistedP1Params p1_params_from_json(const json& j);

json validation_to_json(const FiberValidation& v);
json criterion_to_json(const CriterionVerdict& v);
json singularity_to_json(const Singularity& s);
json report_to_json(const ClassificationReport& r);

/// Parses text, turning parse and type errors into MalformedInput.
json parse_json(const std::string& text);

}  // namespace qhp
