#include "pirep/expr.hpp"

#include <cctype>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace pirep {

namespace {

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

Expr make(Kind k, Cyc value, std::string name, std::vector<Expr> kids, int t = 0, std::string sep = "") {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->value = std::move(value);
    n->name = std::move(name);
    n->kids = std::move(kids);
    n->t = t;
    n->sep = std::move(sep);
    size_t h = mix(0, size_t(k));
    if (k == Kind::Const) h = mix(h, n->value.hash_in(n->value.conductor()) ^ size_t(n->value.conductor()));
    h = mix(h, std::hash<std::string>()(n->name));
    for (auto& c : n->kids) h = mix(h, c->hash);
    h = mix(h, size_t(n->t));
    h = mix(h, std::hash<std::string>()(n->sep));
    n->hash = h;
    return n;
}

bool is_gram(const Node* n) {
    return n->kind == Kind::Prod && n->kids.size() == 2 && n->kids[1]->kind == Kind::Star &&
           n->kids[1]->kids[0] == n->kids[0];
}

}  // namespace

Expr constant(const Cyc& c) { return make(Kind::Const, c, "", {}); }

Expr variable(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    return make(Kind::Var, Cyc(), name, {});
}

bool is_word(const Expr& e) {
    switch (e->kind) {
        case Kind::Var: return true;
        case Kind::Inv: return e->kids[0]->kind == Kind::Var;
        case Kind::Prod:
            return std::all_of(e->kids.begin(), e->kids.end(), [](const Expr& k) { return is_word(k); });
        default: return false;
    }
}

Expr inverse(const Expr& e) {
    switch (e->kind) {
        case Kind::Const:
            if (e->value.is_zero()) throw std::domain_error("inverse of zero constant");
            return constant(e->value.inverse());
        case Kind::Inv: return e->kids[0];
        case Kind::Var: return make(Kind::Inv, Cyc(), "", {e});
        case Kind::Prod:
            if (is_word(e)) {
                std::vector<Expr> f;
                for (auto it = e->kids.rbegin(); it != e->kids.rend(); ++it) f.push_back(inverse(*it));
                return product(std::move(f));
            }
            [[fallthrough]];
        default: return make(Kind::Inv, Cyc(), "", {e});
    }
}

Expr sum(std::vector<Expr> terms) {
    std::vector<Expr> out;
    Cyc c;
    bool has_c = false;
    std::function<void(const Expr&)> push = [&](const Expr& e) {
        if (e->kind == Kind::Sum) {
            for (auto& k : e->kids) push(k);
        } else if (e->kind == Kind::Const) {
            c += e->value;
            has_c = true;
        } else {
            out.push_back(e);
        }
    };
    for (auto& t : terms) push(t);
    if (has_c && !c.is_zero()) out.push_back(constant(c));
    if (out.empty()) return constant(Cyc());
    if (out.size() == 1) return out[0];
    return make(Kind::Sum, Cyc(), "", std::move(out));
}

Expr product(std::vector<Expr> factors) {
    std::vector<Expr> out;
    Cyc c(1);
    std::function<void(const Expr&)> push = [&](const Expr& e) {
        if (e->kind == Kind::Prod && !is_gram(e.get())) {
            for (auto& k : e->kids) push(k);
        } else if (e->kind == Kind::Const) {
            c *= e->value;
        } else {
            out.push_back(e);
        }
    };
    for (auto& f : factors) push(f);
    if (c.is_zero()) return constant(Cyc());
    if (!c.is_one()) out.insert(out.begin(), constant(c));
    if (out.empty()) return constant(Cyc(1));
    if (out.size() == 1) return out[0];
    return make(Kind::Prod, Cyc(), "", std::move(out));
}

Expr scaled(const Cyc& c, const Expr& e) { return product({constant(c), e}); }

Expr subset_product(std::vector<Expr> items, int t, std::string sep) {
    if (t < 0) throw std::invalid_argument("negative subset size");
    return make(Kind::SubsetProd, Cyc(), "", std::move(items), t, std::move(sep));
}

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return sum({a, scaled(Cyc(-1), b)}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
Expr operator-(const Expr& a, const Cyc& c) { return sum({a, constant(-c)}); }

Expr power(const Expr& e, int k) {
    if (k < 0) return power(inverse(e), -k);
    std::vector<Expr> f(size_t(k), e);
    return product(std::move(f));
}

Expr commutator(const Expr& a, const Expr& b) { return product({a, b, inverse(a), inverse(b)}); }

Expr star(const Expr& e) {
    std::unordered_map<const Node*, Expr> memo;
    std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
        auto it = memo.find(x.get());
        if (it != memo.end()) return it->second;
        Expr r;
        switch (x->kind) {
            case Kind::Const: r = constant(x->value.conj()); break;
            case Kind::Var: r = make(Kind::Inv, Cyc(), "", {x}); break;
            case Kind::Inv: r = inverse(go(x->kids[0])); break;
            case Kind::Star: r = x->kids[0]; break;
            case Kind::Sum: {
                std::vector<Expr> t;
                for (auto& k : x->kids) t.push_back(go(k));
                r = sum(std::move(t));
                break;
            }
            case Kind::Prod: {
                std::vector<Expr> f;
                for (auto it2 = x->kids.rbegin(); it2 != x->kids.rend(); ++it2) f.push_back(go(*it2));
                r = is_gram(x.get()) ? make(Kind::Prod, Cyc(), "", std::move(f)) : product(std::move(f));
                break;
            }
            case Kind::SubsetProd: throw std::invalid_argument("adjoint of a subset product is not supported");
        }
        memo.emplace(x.get(), r);
        return r;
    };
    return go(e);
}

Expr star_node(const Expr& e) {
    if (e->kind == Kind::Const || is_word(e)) return star(e);
    return make(Kind::Star, Cyc(), "", {e, star(e)});
}

Expr gram(const Expr& e) {
    if (e->kind == Kind::Const) return constant(e->value * e->value.conj());
    return make(Kind::Prod, Cyc(), "", {e, star_node(e)});
}

std::vector<std::string> free_vars(const Expr& e) {
    std::vector<std::string> out;
    std::unordered_set<const Node*> seen;
    std::unordered_set<std::string> names;
    std::vector<const Node*> stack{e.get()};
    // explicit stack, children pushed in reverse so traversal is left to right
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->kind == Kind::Var) {
            if (names.insert(n->name).second) out.push_back(n->name);
            continue;
        }
        size_t lim = n->kind == Kind::Star ? 1 : n->kids.size();
        for (size_t i = lim; i-- > 0;) stack.push_back(n->kids[i].get());
    }
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    std::unordered_set<uint64_t> ok;
    std::function<bool(const Node*, const Node*)> eq = [&](const Node* x, const Node* y) {
        if (x == y) return true;
        if (x->hash != y->hash || x->kind != y->kind || x->name != y->name || x->t != y->t || x->sep != y->sep ||
            x->kids.size() != y->kids.size())
            return false;
        if (x->kind == Kind::Const && !(x->value == y->value)) return false;
        uint64_t key = std::hash<const void*>()(x) * 31 + std::hash<const void*>()(y);
        if (ok.count(key)) return true;
        for (size_t i = 0; i < x->kids.size(); ++i)
            if (!eq(x->kids[i].get(), y->kids[i].get())) return false;
        ok.insert(key);
        return true;
    };
    return eq(a.get(), b.get());
}

size_t dag_size(const Expr& e) {
    std::unordered_set<const Node*> seen;
    std::vector<const Node*> stack{e.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        for (auto& k : n->kids) stack.push_back(k.get());
    }
    return seen.size();
}

std::string subset_name(const std::string& sep, const std::vector<int>& subset) {
    std::string s = sep + "{";
    for (size_t i = 0; i < subset.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(subset[i] + 1);
    }
    return s + "}";
}


// ---------------------------------------------------------------- text

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at position " + std::to_string(i) + ": " + what);
    }
    int64_t integer() {
        ws();
        size_t j = i;
        if (j < s.size() && s[j] == '-') ++j;
        size_t k = j;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == j) fail("integer expected");
        int64_t v = std::stoll(s.substr(i, k - i));
        i = k;
        return v;
    }
    bool atom_start() {
        ws();
        if (i >= s.size()) return false;
        char c = s[i];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == '[';
    }
    Expr expr() {
        std::vector<Expr> terms{term()};
        while (true) {
            if (eat('+')) terms.push_back(term());
            else if (eat('-')) terms.push_back(scaled(Cyc(-1), term()));
            else break;
        }
        return sum(std::move(terms));
    }
    Expr term() {
        bool neg = eat('-');
        std::vector<Expr> f{factor()};
        while (true) {
            if (eat('*')) f.push_back(factor());
            else if (eat('/')) {
                Expr d = factor();
                if (d->kind != Kind::Const) fail("division by a non-constant");
                f.push_back(constant(d->value.inverse()));
            } else if (atom_start()) f.push_back(factor());
            else break;
        }
        Expr e = product(std::move(f));
        return neg ? scaled(Cyc(-1), e) : e;
    }
    Expr factor() {
        Expr a = atom();
        while (eat('^')) a = power(a, int(integer()));
        return a;
    }
    Expr atom() {
        ws();
        if (i >= s.size()) fail("unexpected end of input");
        if (eat('(')) {
            Expr e = expr();
            if (!eat(')')) fail("')' expected");
            return e;
        }
        if (eat('[')) {
            Expr a = expr();
            if (!eat(',')) fail("',' expected");
            Expr b = expr();
            if (!eat(']')) fail("']' expected");
            return commutator(a, b);
        }
        if (std::isdigit(static_cast<unsigned char>(s[i]))) return constant(Cyc(integer()));
        size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
        if (j == i) fail("unexpected character");
        std::string name = s.substr(i, j - i);
        i = j;
        return variable(name);
    }
};

}  // namespace

Expr parse_expr(const std::string& text) {
    Parser p{text};
    Expr e = p.expr();
    p.ws();
    if (p.i != text.size()) p.fail("trailing input");
    return e;
}

std::string expr_to_string(const Expr& e) {
    switch (e->kind) {
        case Kind::Const: {
            std::string v = e->value.str();
            return e->value.is_rational() && v.find('/') == std::string::npos ? v : "(" + v + ")";
        }
        case Kind::Var: return e->name;
        case Kind::Inv: {
            const Expr& c = e->kids[0];
            return c->kind == Kind::Var ? c->name + "^-1" : "(" + expr_to_string(c) + ")^-1";
        }
        case Kind::Star: return "star(" + expr_to_string(e->kids[0]) + ")";
        case Kind::Sum: {
            std::string r;
            for (size_t k = 0; k < e->kids.size(); ++k) r += (k ? " + " : "") + expr_to_string(e->kids[k]);
            return r;
        }
        case Kind::Prod: {
            std::string r;
            for (size_t k = 0; k < e->kids.size(); ++k) {
                std::string f = expr_to_string(e->kids[k]);
                if (e->kids[k]->kind == Kind::Sum) f = "(" + f + ")";
                r += (k ? "*" : "") + f;
            }
            return r;
        }
        case Kind::SubsetProd:
            return "subsets(" + std::to_string(e->t) + (e->sep.empty() ? "" : ", " + e->sep) + ")[" +
                   std::to_string(e->kids.size()) + " items]";
    }
    return "";
}

json cyc_to_json(const Cyc& c) {
    json coeffs = json::array();
    for (auto& q : c.coeffs()) coeffs.push_back(json::array({q.num_str(), q.den_str()}));
    return json{{"conductor", c.conductor()}, {"coeffs", coeffs}};
}

Cyc cyc_from_json(const json& j) {
    int N = j.at("conductor").get<int>();
    std::vector<Rational> c;
    for (auto& q : j.at("coeffs")) c.emplace_back(q.at(0).get<std::string>(), q.at(1).get<std::string>());
    if (N < 1 || int(c.size()) != euler_phi(N)) throw std::invalid_argument("malformed cyclotomic value");
    return Cyc(N, std::move(c));
}

json expr_to_json(const Expr& e) {
    std::unordered_map<const Node*, int> refs;
    {
        std::unordered_set<const Node*> seen;
        std::vector<const Node*> stack{e.get()};
        while (!stack.empty()) {
            const Node* n = stack.back();
            stack.pop_back();
            if (++refs[n] > 1) continue;
            size_t lim = n->kind == Kind::Star ? 1 : n->kids.size();
            for (size_t i = 0; i < lim; ++i) stack.push_back(n->kids[i].get());
        }
    }
    std::unordered_map<const Node*, int> ids;
    std::function<json(const Node*)> go = [&](const Node* n) -> json {
        auto it = ids.find(n);
        if (it != ids.end()) return json{{"ref", it->second}};
        json j;
        switch (n->kind) {
            case Kind::Const: j["kind"] = "const"; j["value"] = cyc_to_json(n->value); break;
            case Kind::Var: j["kind"] = "var"; j["name"] = n->name; break;
            case Kind::Inv: j["kind"] = "inv"; break;
            case Kind::Star: j["kind"] = "star"; break;
            case Kind::Sum: j["kind"] = "sum"; break;
            case Kind::Prod: j["kind"] = "prod"; break;
            case Kind::SubsetProd:
                j["kind"] = "subset_prod";
                j["t"] = n->t;
                j["sep"] = n->sep;
                break;
        }
        if (refs[n] > 1) {
            int id = int(ids.size());
            ids[n] = id;
            j["id"] = id;
        }
        if (n->kind == Kind::Inv || n->kind == Kind::Star) {
            j["child"] = go(n->kids[0].get());
        } else if (!n->kids.empty() || n->kind == Kind::Sum || n->kind == Kind::Prod ||
                   n->kind == Kind::SubsetProd) {
            json ch = json::array();
            for (auto& k : n->kids) ch.push_back(go(k.get()));
            j[n->kind == Kind::SubsetProd ? "items" : "children"] = ch;
        }
        return j;
    };
    return go(e.get());
}

Expr expr_from_json(const json& j) {
    std::map<int, Expr> ids;
    std::function<Expr(const json&)> go = [&](const json& x) -> Expr {
        if (x.contains("ref")) {
            auto it = ids.find(x["ref"].get<int>());
            if (it == ids.end()) throw std::invalid_argument("dangling expression reference");
            return it->second;
        }
        std::string k = x.at("kind").get<std::string>();
        Expr r;
        auto list = [&](const char* key) {
            std::vector<Expr> v;
            for (auto& c : x.at(key)) v.push_back(go(c));
            return v;
        };
        if (k == "const") r = make(Kind::Const, cyc_from_json(x.at("value")), "", {});
        else if (k == "var") r = variable(x.at("name").get<std::string>());
        else if (k == "inv") r = make(Kind::Inv, Cyc(), "", {go(x.at("child"))});
        else if (k == "star") {
            Expr c = go(x.at("child"));
            r = make(Kind::Star, Cyc(), "", {c, star(c)});
        } else if (k == "sum") r = make(Kind::Sum, Cyc(), "", list("children"));
        else if (k == "prod") r = make(Kind::Prod, Cyc(), "", list("children"));
        else if (k == "subset_prod")
            r = make(Kind::SubsetProd, Cyc(), "", list("items"), x.at("t").get<int>(), x.value("sep", ""));
        else throw std::invalid_argument("unknown expression kind: " + k);
        if (x.contains("id")) ids[x["id"].get<int>()] = r;
        return r;
    };
    return go(j);
}

// ---------------------------------------------------------------- evaluator

Evaluator::Evaluator(Expr root, RepPtr rep, EvalOptions opt) : root_(std::move(root)), rep_(std::move(rep)), opt_(opt) {
    n_ = rep_->dim();
    std::vector<std::pair<const Node*, size_t>> stack{{root_.get(), 0}};
    std::unordered_set<const Node*> open;
    open.insert(root_.get());
    while (!stack.empty()) {
        auto& [n, i] = stack.back();
        if (i < n->kids.size()) {
            const Node* c = n->kids[i++].get();
            if (!id_.count(c) && open.insert(c).second) stack.push_back({c, 0});
            continue;
        }
        int id = int(nodes_.size());
        id_[n] = id;
        nodes_.push_back(n);
        stack.pop_back();
    }
    size_t N = nodes_.size();
    kids_.resize(N);
    std::vector<std::vector<int>> parents(N);
    var_of_node_.assign(N, -1);
    std::map<std::string, int> vidx;
    for (auto& name : free_vars(root_)) {
        vidx[name] = int(vars_.size());
        vars_.push_back(name);
    }
    dependents_.resize(vars_.size());
    for (size_t i = 0; i < N; ++i) {
        for (auto& k : nodes_[i]->kids) {
            int c = id_.at(k.get());
            kids_[i].push_back(c);
            parents[c].push_back(int(i));
        }
        if (nodes_[i]->kind == Kind::Var) {
            int v = vidx.at(nodes_[i]->name);
            var_of_node_[i] = v;
            dependents_[v].push_back(int(i));
        }
    }
    parents_ = std::move(parents);
    assign_.assign(vars_.size(), 0);
    cache_.resize(N);
    valid_.assign(N, 0);
}

int Evaluator::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : int(it - vars_.begin());
}

int Evaluator::node_id(const Node* n) const {
    auto it = id_.find(n);
    if (it == id_.end()) throw std::out_of_range("node not in expression");
    return it->second;
}

void Evaluator::set(int var, int g) {
    if (g < 0 || g >= rep_->group()->order()) throw std::out_of_range("group element out of range");
    if (assign_[var] == g) return;
    assign_[var] = g;
    std::vector<int> stack;
    for (int vn : dependents_[var]) {
        valid_[vn] = 0;
        for (int p : parents_[vn]) stack.push_back(p);
    }
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (!valid_[x]) continue;
        valid_[x] = 0;
        for (int p : parents_[x]) stack.push_back(p);
    }
}

void Evaluator::set(const Assignment& a) {
    for (auto& [name, g] : a) {
        int v = var_index(name);
        if (v >= 0) set(v, g);
        else set_extra(name, g);
    }
}

void Evaluator::set_extra(const std::string& name, int g) {
    extra_[name] = g;
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i]->kind == Kind::SubsetProd && !nodes_[i]->sep.empty()) {
            std::vector<int> stack{int(i)};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                if (!valid_[x]) continue;
                valid_[x] = 0;
                for (int p : parents_[x]) stack.push_back(p);
            }
        }
}

const Value& Evaluator::value(const Node* n) {
    int id = node_id(n);
    if (!valid_[id]) compute(id);
    return cache_[id];
}

Mat Evaluator::matrix(const Value& v) const {
    switch (v.tag) {
        case Value::Zero: return Mat(n_, n_);
        case Value::Scalar: return Mat::scalar(n_, v.s);
        case Value::Elem: return v.s.is_one() ? rep_->image(v.g) : v.s * rep_->image(v.g);
        case Value::Dense: return v.M;
    }
    return {};
}

Value Evaluator::normalize(Value v) const {
    if (v.tag == Value::Dense) {
        if (v.M.is_zero()) return Value{};
        if (auto s = v.M.scalar_value()) {
            Value r;
            r.tag = Value::Scalar;
            r.s = *s;
            return r;
        }
        return v;
    }
    if (v.tag == Value::Zero) return v;
    if (v.s.is_zero()) return Value{};
    if (v.tag == Value::Elem && v.g == 0) v.tag = Value::Scalar;
    return v;
}

Value Evaluator::mul(const Value& a, const Value& b) const {
    if (a.is_zero() || b.is_zero()) return Value{};
    Value r;
    if (a.tag == Value::Scalar) {
        r = b;
        if (r.tag == Value::Dense) r.M = a.s * r.M;
        else r.s = a.s * b.s;
        return a.s.is_one() ? b : normalize(std::move(r));
    }
    if (b.tag == Value::Scalar) {
        r = a;
        if (r.tag == Value::Dense) r.M = b.s * r.M;
        else r.s = a.s * b.s;
        return b.s.is_one() ? a : normalize(std::move(r));
    }
    if (a.tag == Value::Elem && b.tag == Value::Elem) {
        r.tag = Value::Elem;
        r.s = a.s * b.s;
        r.g = rep_->group()->mul(a.g, b.g);
        return normalize(std::move(r));
    }
    r.tag = Value::Dense;
    r.M = matrix(a) * matrix(b);
    return normalize(std::move(r));
}

void Evaluator::add_into(Value& acc, const Value& b) const {
    if (b.is_zero()) return;
    if (acc.is_zero()) {
        acc = b;
        return;
    }
    if (acc.tag == b.tag && acc.tag == Value::Scalar) {
        acc.s += b.s;
        return;
    }
    if (acc.tag == Value::Elem && b.tag == Value::Elem && acc.g == b.g) {
        acc.s += b.s;
        return;
    }
    if (acc.tag != Value::Dense) {
        acc.M = matrix(acc);
        acc.tag = Value::Dense;
    }
    switch (b.tag) {
        case Value::Scalar:
            acc.M = acc.M.plus_scalar(b.s);
            break;
        case Value::Elem: {
            const Mat& I = rep_->image(b.g);
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) {
                    const Cyc& x = I(i, j);
                    if (x.is_zero()) continue;
                    if (b.s.is_one()) acc.M(i, j) += x;
                    else acc.M(i, j).add_mul(b.s, x);
                }
            break;
        }
        case Value::Dense: acc.M += b.M; break;
        default: break;
    }
}

void Evaluator::compute(int id) {
    const Node* n = nodes_[id];
    ++evals_;
    Value r;
    switch (n->kind) {
        case Kind::Const:
            if (!n->value.is_zero()) {
                r.tag = Value::Scalar;
                r.s = n->value;
            }
            break;
        case Kind::Var:
            r.tag = Value::Elem;
            r.s = Cyc(1);
            r.g = assign_[var_of_node_[id]];
            r = normalize(std::move(r));
            break;
        case Kind::Inv: {
            const Value& c = value(nodes_[kids_[id][0]]);
            switch (c.tag) {
                case Value::Zero: throw std::domain_error("non-group subterm");
                case Value::Scalar:
                    r = c;
                    r.s = c.s.inverse();
                    break;
                case Value::Elem:
                    r = c;
                    r.s = c.s.inverse();
                    r.g = rep_->group()->inv(c.g);
                    break;
                case Value::Dense:
                    try {
                        r.tag = Value::Dense;
                        r.M = c.M.inverse();
                    } catch (const std::exception&) {
                        throw std::domain_error("non-group subterm");
                    }
                    r = normalize(std::move(r));
                    break;
            }
            break;
        }
        case Kind::Star: r = value(nodes_[kids_[id][1]]); break;
        case Kind::Sum:
            for (int k : kids_[id]) add_into(r, value(nodes_[k]));
            r = normalize(std::move(r));
            break;
        case Kind::Prod: {
            bool first = true;
            for (int k : kids_[id]) {
                const Value& v = value(nodes_[k]);
                if (first) {
                    r = v;
                    first = false;
                } else if (!(r.is_zero() && opt_.short_circuit)) {
                    r = mul(r, v);
                }
                if (r.is_zero() && opt_.short_circuit) break;
            }
            break;
        }
        case Kind::SubsetProd: r = subset_value(id); break;
    }
    cache_[id] = std::move(r);
    valid_[id] = 1;
}

Value Evaluator::subset_value(int id) {
    const Node* n = nodes_[id];
    int N = int(n->kids.size()), t = n->t;
    Value one;
    one.tag = Value::Scalar;
    one.s = Cyc(1);
    if (t > N) return one;
    std::vector<const Value*> items;
    int zeros = 0;
    for (int k : kids_[id]) {
        items.push_back(&value(nodes_[k]));
        zeros += items.back()->is_zero();
    }
    if (opt_.short_circuit && zeros >= t) return Value{};
    Rational count = binomial(N, t);
    if (count > Rational(opt_.subset_limit))
        throw std::length_error("subset product has " + count.str() + " factors, above the direct-evaluation limit");
    std::vector<int> S(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) S[i] = i;
    Value acc = one;
    while (true) {
        Value f;
        for (int i : S) add_into(f, *items[i]);
        f = normalize(std::move(f));
        acc = mul(acc, f);
        if (!n->sep.empty()) {
            auto it = extra_.find(subset_name(n->sep, S));
            if (it != extra_.end()) {
                Value e;
                e.tag = Value::Elem;
                e.s = Cyc(1);
                e.g = it->second;
                acc = mul(acc, normalize(e));
            }
        }
        if (acc.is_zero() && opt_.short_circuit) break;
        int i = t - 1;
        while (i >= 0 && S[i] == N - t + i) --i;
        if (i < 0) break;
        ++S[i];
        for (int j = i + 1; j < t; ++j) S[j] = S[j - 1] + 1;
    }
    return acc;
}

Mat evaluate(const Expr& e, const Assignment& a, const RepPtr& rep, EvalOptions opt) {
    Evaluator ev(e, rep, opt);
    for (auto& name : ev.vars())
        if (!a.count(name)) throw std::invalid_argument("assignment misses variable " + name);
    ev.set(a);
    return ev.root_matrix();
}

}  // namespace pirep
