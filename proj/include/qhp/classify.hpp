/// @file classify.hpp
/// Ruling models of Q-homology planes: assembly, criteria, constructions and case tables.
#pragma once

#include "qhp/birational.hpp"
#include "qhp/fibration.hpp"

namespace qhp {

/// A model that breaks a structural rule. `code` names the rule.
struct ModelError : DomainError {
    std::string code;
    ModelError(std::string c, const std::string& msg) : DomainError(msg), code(std::move(c)) {}
};

enum class RulingKind { Affine, Twisted, UntwistedC1, UntwistedP1 };

const char* kind_name(RulingKind k);
RulingKind parse_kind(const std::string& s);

struct Section {
    std::string id;
    long long weight = 0;
};

struct NamedFiber {
    std::string name;
    FiberTree fiber;
};

/// Completed ruling with its boundary marked on every degenerate fiber.
struct RulingModel {
    int h = 1;
    int nu = 1;
    std::string base = "C1";
    bool twisted = false;
    bool affine = false;  ///< C1-ruling (F_inf is the fiber at infinity)
    std::vector<Section> sections;
    std::vector<NamedFiber> fibers;  ///< all degenerate fibers, F0 and F_inf included
    std::string F0;                  ///< empty for affine models
    std::string F_inf;               ///< empty when nu = 0

    RulingKind kind() const;
    const FiberTree& fiber(const std::string& name) const;
    bool has_fiber(const std::string& name) const;
    long long section_weight(const std::string& id) const;
    /// Sum over fibers of (components - 1).
    long long blowup_count() const;
    /// Fibers other than F0 and F_inf, in model order.
    std::vector<const NamedFiber*> other_fibers() const;
};

/// Structural checks on a model; throws ModelError on the first violation.
void validate_model(const RulingModel& m);

/// Section weights after contracting every fiber to a smooth one.
std::map<std::string, long long> contracted_section_weights(const RulingModel& m);

struct Boundary {
    WeightedForest D;
    WeightedForest E;
    long long b2_total = 0;
};

/// Global vertex id of a fiber vertex in the assembled boundary.
std::string global_id(const std::string& fiber, const VertexId& v);

Boundary assemble_boundary(const RulingModel& m);

struct SigmaFujita {
    long long Sigma = 0;
    int h = 0;
    int nu = 0;
    long long b2X = 0;
    long long b2T = 0;
    long long rhs = 0;  ///< h + nu + b2X - b2T - 2
    bool consistent = false;
};

SigmaFujita sigma_and_fujita(const RulingModel& m);

struct CriterionVerdict {
    bool clause_i = false;    ///< unique non-vertical component of T
    bool clause_ii = false;   ///< D a rational tree
    bool clause_iii = false;  ///< Sigma = h + nu - 2
    bool clause_iv = false;   ///< d(D) != 0
    Int dD = 0;
    Int dE = 1;
    std::vector<std::string> findings;
    bool passes() const { return clause_i && clause_ii && clause_iii && clause_iv; }
};

CriterionVerdict qhp_criterion(const RulingModel& m);

/// Components of D whose (-1)-vertices are vertical and non-branching.
std::vector<std::string> p_minimality_violations(const RulingModel& m);

struct StructuralVerdict {
    bool structural = false;
    bool determinant = false;
    std::optional<std::string> separator;  ///< B, for (h, nu) = (2, 0)
    std::optional<Int> d_tilde;             ///< d of the component of D - B containing D0
    bool agree() const { return structural == determinant; }
};

StructuralVerdict dD_structural(const RulingModel& m);

// ---------------------------------------------------------------- constructions

struct AffineParams {
    std::vector<BlowupProgram> fibers;
    long long section_weight = -1;
};

struct TwistedParams {
    std::vector<BlowupProgram> columnar;
    BlowupProgram f0;  ///< connected program on the [2,1,2] template, may be empty
};

struct UntwistedC1Params {
    std::vector<BlowupProgram> columnar;
    BlowupProgram f0_tilde;  ///< columnar program for the fiber through x0, may be empty
    BlowupProgram f0;        ///< nonempty connected program, first center z
};

struct UntwistedP1Params {
    long long N = 1;
    std::vector<BlowupProgram> columnar;
    BlowupProgram f0_tilde;
    BlowupProgram f0;  ///< nonempty connected program, first step sprouting on B
};

RulingModel construct_affine(const AffineParams& p);
RulingModel construct_twisted(const TwistedParams& p);
RulingModel construct_untwisted_c1(const UntwistedC1Params& p);
RulingModel construct_untwisted_p1(const UntwistedP1Params& p);

/// [2,1,2] whose middle meets the 2-section H; the start of F0 and F_inf when twisted.
FiberTree twisted_template();

/// Checks a columnar program: first a sprout at `section` on c0, then subdivisions at
/// the newest vertex. Throws DomainError otherwise.
void check_columnar_program(const BlowupProgram& p, const std::string& section);
/// Every step after the first is centered on the vertex created by the step before.
bool is_connected_program(const FiberTree& start, const BlowupProgram& p);

// ---------------------------------------------------------------- case tables

enum class F0Case { Ai, Aii, Aiii, Aiv, Av, Bi, Bii, Biii, C };

const char* f0_case_name(F0Case c);

struct F0Data {
    F0Case tag = F0Case::C;
    bool eta_nontrivial = false;
    VertexId C;                   ///< S0-component; for B.iii the one disjoint from E
    std::optional<VertexId> C_tilde;
    std::optional<VertexId> B;    ///< component meeting the 2-section (twisted)
    long long mu = 0;
    std::optional<long long> mu_tilde;
};

F0Data classify_F0(const RulingModel& m);

/// Kodaira dimension: nullopt stands for minus infinity.
using KodDim = std::optional<int>;
std::string kod_name(const KodDim& k);
KodDim kod_from_sign(const Rational& x);

struct KodairaData {
    Rational lambda;
    Rational kappa;
    Rational kappa0;
    KodDim kod_S0;
    KodDim kod_S;
};

/// Multiplicities of the (-1)-curves of the columnar fibers.
std::vector<long long> columnar_mus(const RulingModel& m);
KodairaData kodaira(const RulingModel& m);
KodairaData kodaira(const RulingModel& m, const F0Data& f0);

/// Tag "i".."v" of the matching configuration with smooth locus of Kodaira dimension zero.
std::optional<std::string> k0_zero_cases(const RulingModel& m);
std::optional<std::string> k0_zero_cases(const RulingModel& m, const F0Data& f0);

struct H1Data {
    Int order = 1;
    std::optional<std::vector<Int>> decomposition;  ///< affine models: cyclic factors > 1
};

H1Data h1(const RulingModel& m);

struct Singularity {
    enum class Kind { Cyclic, Fork } kind = Kind::Cyclic;
    Chain chain;                      ///< Cyclic: canonical reading
    std::vector<Int> fork_type;       ///< Fork: ascending twig discriminants
    std::vector<Chain> twigs;         ///< Fork: twigs read from the center outwards
    long long center = 0;             ///< Fork: bracket entry of the center
    std::optional<std::string> dynkin;
    std::vector<VertexId> ids;
};

/// One entry per connected component of E. Throws ModelError for non-admissible pieces.
std::vector<Singularity> singularities(const RulingModel& m);
/// At most two singular points unless both are A1 in a twisted A.i fiber.
bool two_point_rule_holds(const RulingModel& m, const std::vector<Singularity>& s);

// ---------------------------------------------------------------- counting

/// The dual graphs listed for smooth locus of Kodaira dimension zero.
enum class BoundaryPattern { None, I, II, III };
const char* pattern_name(BoundaryPattern p);

struct PatternMatch {
    BoundaryPattern pattern = BoundaryPattern::None;
    std::optional<long long> k;  ///< weight of the first branching vertex
    std::optional<long long> m;  ///< (iii): weight of the second branching vertex
};

PatternMatch match_boundary_pattern(const BoundaryForest& d);

struct RulingFlags {
    KodDim kod_S0;
    bool logarithmic = true;
    bool exceptional = false;
    bool affine_ruled = false;
};

struct RulingDescriptor {
    std::string kind;  ///< "twisted", "untwisted-C1", "untwisted-P1", "non-extendable"
};

struct RulingCount {
    bool applicable = true;
    std::optional<long long> r;  ///< nullopt with applicable = true means infinitely many
    std::vector<RulingDescriptor> rulings;
    PatternMatch pattern;
};

/// `forks` are the fork singularities of the plane (needed when kod_S0 is minus infinity).
RulingCount count_cstar_rulings(const RulingFlags& flags, const BoundaryForest& d_standard,
                                const std::vector<Singularity>& forks);

struct ContractibleCount {
    bool applicable = false;
    long long value = 0;
    bool upper_bound = false;  ///< value is only an upper bound
};

/// `candidates` is the number of vertical contractible curves seen by the given ruling.
ContractibleCount count_contractible(const RulingFlags& flags, const RulingCount& rc,
                                     int candidates = 2);

/// Unique affine ruling iff the strongly balanced boundary is not a chain.
/// nullopt for the boundary [1] of the plane itself.
std::optional<bool> affine_ruling_unique(const BoundaryForest& d_standard);

// ---------------------------------------------------------------- report

struct ClassificationReport {
    RulingKind kind = RulingKind::Affine;
    CriterionVerdict criterion;
    SigmaFujita sigma;
    std::vector<std::string> p_minimality;
    std::optional<StructuralVerdict> structural;
    std::optional<H1Data> h1;
    std::optional<F0Data> f0;
    std::optional<KodairaData> kod;
    std::optional<std::string> k0_zero_case;
    std::vector<Singularity> singularities;
    std::optional<bool> two_point_rule;
    long long n_columnar = 0;
    std::vector<long long> mus;
    std::optional<RulingFlags> flags;
    std::optional<RulingCount> rulings;
    std::optional<ContractibleCount> contractible;
    std::optional<bool> affine_unique;
    std::optional<std::string> boundary_standard;  ///< chain reading or flow-class key of D
    std::vector<std::string> notes;
};

/// Full pipeline. Rejections of the criterion are reported, not thrown; structural
/// violations of the model throw ModelError.
ClassificationReport classify(const RulingModel& m);

}  // namespace qhp
