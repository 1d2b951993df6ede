// Command-line front end: JSON in, JSON out.
// Exit codes: 0 success, 1 domain rejection, 2 malformed input.

#include "qhp/enumerate.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace qhp;

namespace {

std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw MalformedInput("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void emit(const json& j, bool pretty = true) { stream() << (pretty ? j.dump(2) : j.dump()) << '\n'; }

private:
    std::ofstream file_;
};

json det_command(const json& in) {
    const WeightedForest f = forest_from_json(in);
    const Int d = discriminant(f);
    json out = {{"d", int_to_json(d)}, {"negative_definite", is_negative_definite(f)}};
    if (in.contains("chain") && d != 0) {
        const Chain c(in.at("chain").get<std::vector<long long>>());
        out["e"] = rational_to_json(inductance(c));
        out["e_tilde"] = rational_to_json(co_inductance(c));
    }
    return out;
}

json normalize_command(const json& in, bool strong) {
    const BoundaryForest b = forest_from_json(in);
    const NormalForm nf = to_standard_form(b, strong);
    json moves = json::array();
    for (const auto& m : nf.moves) moves.push_back(move_to_json(m));
    json out = {{"forest", forest_to_json(nf.forest)},
                {"moves", moves},
                {"strongly_balanced", nf.strongly_balanced},
                {"class", flow_class_key(b)}};
    if (nf.chain) out["chain"] = nf.chain->entries;
    if (nf.reversed_candidate) out["reversed"] = nf.reversed_candidate->entries;
    return out;
}

json fiber_command(const json& in, bool validate) {
    const BlowupProgram p = program_from_json(in);
    FiberTree start;
    if (in.is_object() && in.contains("start")) {
        start = fiber_from_json(in.at("start"));
    } else {
        std::vector<std::string> sections;
        if (in.is_object() && in.contains("sections")) {
            sections = in.at("sections").get<std::vector<std::string>>();
        } else {
            for (const auto& s : p.steps)
                if (s.kind == Step::Kind::Sprout && !s.at.empty() &&
                    std::find(sections.begin(), sections.end(), s.at) == sections.end())
                    sections.push_back(s.at);
        }
        start = new_fiber(sections);
    }
    const FiberTree f = replay(start, p);
    json out = {{"fiber", fiber_to_json(f)}, {"canonical_key", canonical_key(f)}};
    if (validate) out["validation"] = validation_to_json(validate_fiber(f));
    return out;
}

json model_and_report(const RulingModel& m) {
    return {{"model", model_to_json(m)}, {"report", report_to_json(classify(m))}};
}

json instance_line(const Instance& inst) {
    json line = {{"key", inst.key}, {"params", inst.params}, {"model", model_to_json(inst.model)}};
    try {
        line["report"] = report_to_json(classify(inst.model));
    } catch (const ModelError& e) {
        line["error"] = {{"code", e.code}, {"message", e.what()}};
    } catch (const DomainError& e) {
        line["error"] = {{"code", "domain"}, {"message", e.what()}};
    }
    return line;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted dual graphs and ruled Q-homology planes"};
    app.require_subcommand(1);
    std::string in_path, out_path;
    app.add_option("--in", in_path, "input JSON (default stdin)");
    app.add_option("--out", out_path, "output JSON (default stdout)");

    auto* det = app.add_subcommand("det", "discriminant, inductances and definiteness of a forest");

    bool strong = false;
    auto* normalize = app.add_subcommand("normalize", "standard form of a boundary with witness moves");
    normalize->add_flag("--strong", strong, "also use outer moves towards the strongly balanced form");

    std::string program_path;
    bool validate = false;
    auto* fiber = app.add_subcommand("fiber", "replay a blow-up program");
    fiber->add_option("--program", program_path, "program JSON");
    fiber->add_flag("--validate", validate, "attach the fiber validation report");

    std::string kind_name_arg, params_path;
    auto* construct = app.add_subcommand("construct", "run a construction and classify the result");
    construct->add_option("--kind", kind_name_arg, "affine|twisted|untwisted-c1|untwisted-p1")->required();
    construct->add_option("--params", params_path, "construction parameters JSON");

    std::string model_path;
    auto* classify_cmd = app.add_subcommand("classify", "classify a ruling model");
    classify_cmd->add_option("--model", model_path, "model JSON");

    int depth = 0;
    std::optional<std::uint64_t> seed;
    std::size_t limit = 200;
    std::string enum_kind;
    auto* enumerate = app.add_subcommand("enumerate", "stream (model, report) pairs as NDJSON");
    enumerate->add_option("--depth", depth, "total blow-up steps")->required();
    enumerate->add_option("--kind", enum_kind, "construction kind")->required();
    enumerate->add_option("--seed", seed, "sample randomly with this seed instead of enumerating");
    enumerate->add_option("--limit", limit, "number of samples (with --seed) or cap on lines");

    for (auto* sub : {det, normalize, fiber, construct, classify_cmd, enumerate}) {
        sub->add_option("--in", in_path, "input JSON (default stdin)");
        sub->add_option("--out", out_path, "output JSON (default stdout)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto input = [&](const std::string& specific) {
        return parse_json(slurp(specific.empty() ? in_path : specific));
    };

    try {
        if (*det) {
            Output(out_path).emit(det_command(input("")));
        } else if (*normalize) {
            Output(out_path).emit(normalize_command(input(""), strong));
        } else if (*fiber) {
            Output(out_path).emit(fiber_command(input(program_path), validate));
        } else if (*construct) {
            const RulingKind kind = parse_kind(kind_name_arg);
            const json params = input(params_path);
            json out = model_and_report(build_model(kind, params));
            out["params"] = params;
            Output(out_path).emit(out);
        } else if (*classify_cmd) {
            Output(out_path).emit(report_to_json(classify(model_from_json(input(model_path)))));
        } else if (*enumerate) {
            const RulingKind kind = parse_kind(enum_kind);
            const int cap = max_depth_from_env();
            if (depth > cap)
                throw DomainError("depth " + std::to_string(depth) + " exceeds QHP_MAX_DEPTH=" + std::to_string(cap));
            Output out(out_path);
            if (seed) {
                std::mt19937_64 rng(*seed);
                for (std::size_t i = 0; i < limit; ++i) out.emit(instance_line(random_instance(kind, rng, depth)), false);
            } else {
                std::size_t n = 0;
                for (const auto& inst : enumerate_instances(kind, depth)) {
                    if (app.get_subcommand("enumerate")->count("--limit") && n++ >= limit) break;
                    out.emit(instance_line(inst), false);
                }
            }
        }
    } catch (const ModelError& e) {
        std::cerr << "rejected [" << e.code << "]: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "rejected: " << e.what() << '\n';
        return 1;
    } catch (const MalformedInput& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
