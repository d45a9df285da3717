#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>
#include <nlohmann/json.hpp>
#include "pirep/cyc.hpp"
#include "pirep/rep.hpp"

namespace pirep {

using json = nlohmann::ordered_json;

enum class Kind : uint8_t { Const, Var, Inv, Star, Sum, Prod, SubsetProd };

struct Node;
using Expr = std::shared_ptr<const Node>;

// Immutable DAG node. Star keeps {child, pushed-down adjoint}; SubsetProd keeps
// its per-element items and multiplies, over every t-subset S of the items in
// lexicographic order, the sum of the items in S followed by the separator
// "<sep>{i,j,...}" when sep is non-empty.
struct Node {
    Kind kind;
    Cyc value;
    std::string name;
    std::vector<Expr> kids;
    int t = 0;
    std::string sep;
    size_t hash = 0;
};

Expr constant(const Cyc& c);
Expr variable(const std::string& name);
Expr inverse(const Expr& e);
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr scaled(const Cyc& c, const Expr& e);
Expr subset_product(std::vector<Expr> items, int t, std::string sep = "");
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Cyc& c);
Expr power(const Expr& e, int k);
Expr commutator(const Expr& a, const Expr& b);  // a b a^-1 b^-1

// pushed-down adjoint: Var v -> Inv(v), products reversed, constants conjugated
Expr star(const Expr& e);
// lazily held adjoint node
Expr star_node(const Expr& e);
// e * star(e)
Expr gram(const Expr& e);

bool is_word(const Expr& e);
std::vector<std::string> free_vars(const Expr& e);  // first-occurrence order
bool structurally_equal(const Expr& a, const Expr& b);
size_t dag_size(const Expr& e);
std::string subset_name(const std::string& sep, const std::vector<int>& subset);  // "v_S{1,4,7}", 1-based

// infix syntax: x*y^-1 - 2*[x,y] + 1/2, juxtaposition allowed inside products
Expr parse_expr(const std::string& text);
std::string expr_to_string(const Expr& e);

json cyc_to_json(const Cyc& c);
Cyc cyc_from_json(const json& j);
json expr_to_json(const Expr& e);
Expr expr_from_json(const json& j);

using Assignment = std::map<std::string, int>;

// Evaluated value: Zero, s*I, s*rho(g) or a dense matrix.
struct Value {
    enum Tag : uint8_t { Zero, Scalar, Elem, Dense } tag = Zero;
    Cyc s;
    int g = 0;
    Mat M;
    bool is_zero() const { return tag == Zero; }
};

struct EvalOptions {
    bool short_circuit = true;
    int64_t subset_limit = 200000;  // subsets streamed by direct evaluation
};

// Compiled evaluator with per-node caches; changing one variable invalidates
// only the nodes that depend on it.
class Evaluator {
public:
    Evaluator(Expr root, RepPtr rep, EvalOptions opt = {});
    const Expr& root() const { return root_; }
    const RepPtr& rep() const { return rep_; }
    const std::vector<std::string>& vars() const { return vars_; }
    int var_index(const std::string& name) const;  // -1 if absent
    void set(int var, int g);
    void set(const Assignment& a);
    int get(int var) const { return assign_[var]; }
    // values for implicit subset separators; identity when absent
    void set_extra(const std::string& name, int g);
    const Value& value(const Node* n);
    const Value& root_value() { return value(root_.get()); }
    Mat matrix(const Value& v) const;
    Mat root_matrix() { return matrix(root_value()); }
    int node_id(const Node* n) const;
    const std::vector<const Node*>& nodes() const { return nodes_; }
    int64_t evaluations() const { return evals_; }

private:
    void compute(int id);
    Value mul(const Value& a, const Value& b) const;
    void add_into(Value& acc, const Value& b) const;
    Value normalize(Value v) const;
    Value subset_value(int id);

    Expr root_;
    RepPtr rep_;
    EvalOptions opt_;
    int n_ = 0;
    std::vector<const Node*> nodes_;  // topological, children first
    std::unordered_map<const Node*, int> id_;
    std::vector<std::vector<int>> kids_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> dependents_;  // var -> var nodes
    std::vector<std::string> vars_;
    std::vector<int> assign_;
    std::vector<int> var_of_node_;
    std::vector<Value> cache_;
    std::vector<char> valid_;
    std::map<std::string, int> extra_;
    int64_t evals_ = 0;
};

// plain homomorphism evaluation
Mat evaluate(const Expr& e, const Assignment& a, const RepPtr& rep, EvalOptions opt = {});

}  // namespace pirep
