#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include "pirep/identity.hpp"

namespace pirep {

struct Evidence {
    enum Kind : uint8_t { Exhaustive, Guarded, Structured, Sampled } kind = Exhaustive;
    int64_t samples = 0;  // sampled only
    uint64_t seed = 0;
    std::string str() const;  // "sampled(500, 7)" etc.
};

struct Verdict {
    bool holds = true;
    Evidence evidence;
    std::optional<Assignment> counterexample;
    uint64_t seed = 0;
    double timing_ms = 0;
    int64_t assignments = 0;  // input assignments decided
    std::vector<std::string> notes;
};

inline constexpr uint64_t kDefaultSeed = 20240601;

struct VerifyOptions {
    int64_t budget = 5'000'000;  // enumerated input assignments
    int orderings = 5;           // random guard orderings besides the canonical one
    int64_t samples = 500;
    uint64_t seed = kDefaultSeed;
    int jobs = 1;
    EvalOptions eval;
};

// Decides vanishing for a fixed assignment of the input variables, treating
// separators (top-level single-occurrence separator variables and the implicit
// separators of subset products) as existentially quantified.
class Decider {
public:
    Decider(const IdentityDoc& doc, RepPtr rep, EvalOptions opt = {});
    // non-separator variables, in expression order
    const std::vector<std::string>& inputs() const { return inputs_; }
    const std::vector<std::string>& separators() const { return seps_; }
    // true iff the expression vanishes for every separator choice
    bool vanishes(const std::vector<int>& values);
    // after vanishes() returned false: inputs plus separator values giving a nonzero value
    Assignment witness();

private:
    struct Part {
        const Node* node = nullptr;
        bool subset = false;  // subset product with implicit separators
    };
    struct Segment {
        std::vector<Part> parts;
        int64_t cost = 0;
    };
    struct Piece {  // evaluated segment, one per separator slot
        Mat M;
        bool exact = true;
    };
    bool segment_zero(const Segment& s);
    bool certified(const Node* item);
    std::optional<Mat> common_kernel_rep(const Node* sp);
    bool subset_vanishes(const Node* sp, bool* decided);
    std::vector<Piece> pieces(std::vector<std::string>* sep_names);
    Mat segment_matrix(const Segment& s);

    RepPtr rep_;
    Evaluator ev_;
    EvalOptions opt_;
    bool irreducible_ = false, unitary_ = false;
    std::vector<std::string> inputs_, seps_;
    std::vector<int> input_idx_;
    std::vector<Segment> segs_;              // in product order
    std::vector<std::string> seg_sep_;       // separator after segment i ("" at the end)
    std::vector<int> check_order_;
};

Verdict holds_exhaustive(const IdentityDoc& doc, const RepPtr& rep, const VerifyOptions& opt = {});
Verdict holds_guarded(const IdentityDoc& doc, const RepPtr& rep, const VerifyOptions& opt = {});
Verdict holds_sampled(const IdentityDoc& doc, const RepPtr& rep, const VerifyOptions& opt = {});
// class-representative family for structured identities
Verdict holds_structured(const IdentityDoc& doc, const RepPtr& rep, const VerifyOptions& opt = {});
// mode: exhaustive, guarded, structured, sampled, auto
Verdict check(const IdentityDoc& doc, const RepPtr& rep, const std::string& mode, const VerifyOptions& opt = {});

// independent re-evaluation of a counterexample
bool witness_nonzero(const IdentityDoc& doc, const RepPtr& rep, const Assignment& a);

std::optional<Cyc> scalar_check(const Expr& e, const RepPtr& rep, const Assignment& a);
Mat expectation(const Expr& u, const RepPtr& rep, int64_t budget = 5'000'000);
Rational relation_probability(const Expr& u, const RepPtr& rep, int64_t budget = 5'000'000);
// |R(uu* + vv*)| / |R(vv*)|
Rational relation_probability(const Expr& u, const Expr& v, const RepPtr& rep, int64_t budget = 5'000'000);

// 2x2 rational matrices of determinant one as shear products
std::vector<Mat> sl2_sample(int count, uint64_t seed);
struct SL2Verdict {
    bool holds = true;
    int trials = 0;
    uint64_t seed = 0;
    std::optional<std::map<std::string, Mat>> counterexample;
    double timing_ms = 0;
};
Mat evaluate_matrices(const Expr& e, const std::map<std::string, Mat>& a);
SL2Verdict sl2_sample_check(const Expr& e, int trials, uint64_t seed = kDefaultSeed);

json verdict_to_json(const Verdict& v, const GroupPtr& G = nullptr);

}  // namespace pirep
