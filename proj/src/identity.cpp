#include "pirep/identity.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pirep {

namespace {

Expr var(const std::string& n) { return variable(n); }
Expr one() { return constant(Cyc(1)); }

std::string idx(const std::string& p, int a) { return p + std::to_string(a); }
std::string idx(const std::string& p, int a, int b) { return p + std::to_string(a) + "_" + std::to_string(b); }
std::string idx(const std::string& p, int a, int b, int c) {
    return p + std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(c);
}

bool gram_node(const Expr& e) {
    return e->kind == Kind::Prod && e->kids.size() == 2 && e->kids[1]->kind == Kind::Star &&
           e->kids[1]->kids[0] == e->kids[0];
}

json cyc_list(const std::vector<Cyc>& v) {
    json a = json::array();
    for (auto& c : v) a.push_back(cyc_to_json(c));
    return a;
}

Rational ratio(int a, int b) { return Rational(a, b); }

void role(std::map<std::string, VarRole>& roles, const std::string& name, const std::string& r,
          const std::string& fam = "") {
    roles[name] = VarRole{r, fam};
}

// marks every variable of e not yet assigned a role
void default_roles(const Expr& e, std::map<std::string, VarRole>& roles, const std::string& r = "psi-argument") {
    for (auto& v : free_vars(e))
        if (!roles.count(v)) role(roles, v, r);
}

IdentityDoc finish(std::string family, std::string citation, Expr e, std::map<std::string, VarRole> roles,
                   json params = json::object(), std::vector<std::string> flags = {}) {
    IdentityDoc d;
    d.family = std::move(family);
    d.citation = std::move(citation);
    d.expr = std::move(e);
    if (d.expr->kind == Kind::Const && d.expr->value.is_zero()) {
        roles.clear();
        if (std::find(flags.begin(), flags.end(), "vacuous") == flags.end()) flags.push_back("vacuous");
    }
    default_roles(d.expr, roles);
    d.roles = std::move(roles);
    d.params = std::move(params);
    d.flags = std::move(flags);
    return d;
}

Cyc mn(int m, int n) { return Cyc(ratio(m, n)); }

void require_exact_irrep(const Rep& rep) {
    if (!is_irreducible(rep)) throw std::invalid_argument("representation is not irreducible");
    if (!is_faithful(rep)) throw std::invalid_argument("representation is not faithful");
}

struct Guards {
    std::map<std::string, VarRole> roles;
    std::vector<std::string> X, Y;
    Expr CX, CY;
};

Guards double_guard(int m) {
    Guards g;
    g.X = var_names("x", m);
    g.Y = var_names("y", m);
    g.CX = guard_expr(g.X, "ux", "X", g.roles);
    g.CY = guard_expr(g.Y, "u", "Y", g.roles);
    return g;
}

}  // namespace

bool IdentityDoc::has_flag(const std::string& f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }

std::vector<std::pair<std::string, std::vector<std::string>>> IdentityDoc::guard_families() const {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    for (auto& v : free_vars(expr)) {
        auto it = roles.find(v);
        if (it == roles.end() || it->second.role != "guard") continue;
        auto f = std::find_if(out.begin(), out.end(), [&](auto& p) { return p.first == it->second.family; });
        if (f == out.end()) out.push_back({it->second.family, {v}});
        else f->second.push_back(v);
    }
    return out;
}

json doc_to_json(const IdentityDoc& d) {
    json roles = json::object();
    for (auto& [k, r] : d.roles) {
        json x{{"role", r.role}};
        if (!r.family.empty()) x["family"] = r.family;
        roles[k] = x;
    }
    return json{{"family", d.family}, {"params", d.params},   {"citation", d.citation},
                {"flags", d.flags},   {"roles", roles},       {"expr", expr_to_json(d.expr)}};
}

IdentityDoc doc_from_json(const json& j) {
    IdentityDoc d;
    d.family = j.at("family").get<std::string>();
    d.params = j.value("params", json::object());
    d.citation = j.value("citation", "");
    d.flags = j.value("flags", std::vector<std::string>{});
    d.expr = expr_from_json(j.at("expr"));
    for (auto& [k, r] : j.at("roles").items()) d.roles[k] = VarRole{r.at("role").get<std::string>(), r.value("family", "")};
    validate_doc(d);
    return d;
}

void validate_doc(const IdentityDoc& d) {
    std::set<std::string> fv;
    for (auto& v : free_vars(d.expr)) fv.insert(v);
    std::set<std::string> keys;
    static const std::set<std::string> known{"guard", "psi-argument", "separator", "subset-tag"};
    for (auto& [k, r] : d.roles) {
        if (!known.count(r.role)) throw std::invalid_argument("unknown variable role " + r.role);
        if (r.role != "subset-tag") keys.insert(k);
    }
    if (fv != keys) throw std::invalid_argument("variable roles do not match the expression's free variables");
}

std::vector<std::string> var_names(const std::string& prefix, int count) {
    std::vector<std::string> v;
    for (int i = 1; i <= count; ++i) v.push_back(idx(prefix, i));
    return v;
}

Expr guard_expr(const std::vector<std::string>& vars, const std::string& tag, const std::string& family,
                std::map<std::string, VarRole>& roles) {
    std::vector<Expr> f{var(tag + "0")};
    role(roles, tag + "0", "separator");
    int m = int(vars.size());
    for (auto& v : vars) role(roles, v, "guard", family);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            f.push_back(var(vars[i]) - var(vars[j]));
            std::string s = idx(tag, i + 1, j + 1);
            f.push_back(var(s));
            role(roles, s, "separator");
        }
    return product(std::move(f));
}

Expr psi_expr(const Expr& arg, const std::vector<std::string>& ys) {
    std::vector<Expr> t;
    for (auto& y : ys) t.push_back(product({var(y), arg, inverse(var(y))}));
    return sum(std::move(t));
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& sub) {
    std::unordered_map<const Node*, Expr> memo;
    std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
        auto it = memo.find(x.get());
        if (it != memo.end()) return it->second;
        Expr r;
        std::vector<Expr> k;
        switch (x->kind) {
            case Kind::Const: r = x; break;
            case Kind::Var: {
                auto s = sub.find(x->name);
                r = s == sub.end() ? x : s->second;
                break;
            }
            case Kind::Inv: r = inverse(go(x->kids[0])); break;
            case Kind::Star: r = star_node(go(x->kids[0])); break;
            case Kind::Sum:
                for (auto& c : x->kids) k.push_back(go(c));
                r = sum(std::move(k));
                break;
            case Kind::Prod:
                if (gram_node(x)) {
                    r = gram(go(x->kids[0]));
                    break;
                }
                for (auto& c : x->kids) k.push_back(go(c));
                r = product(std::move(k));
                break;
            case Kind::SubsetProd:
                for (auto& c : x->kids) k.push_back(go(c));
                r = subset_product(std::move(k), x->t, x->sep);
                break;
        }
        memo.emplace(x.get(), r);
        return r;
    };
    return go(e);
}

IdentityDoc expand_subsets(const IdentityDoc& d, int64_t limit) {
    IdentityDoc out = d;
    std::unordered_map<const Node*, Expr> memo;
    std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
        auto it = memo.find(x.get());
        if (it != memo.end()) return it->second;
        Expr r = x;
        if (x->kind == Kind::SubsetProd) {
            int N = int(x->kids.size()), t = x->t;
            if (binomial(N, t) > Rational(limit)) throw std::length_error("subset product too large to expand");
            std::vector<Expr> items;
            for (auto& c : x->kids) items.push_back(go(c));
            std::vector<Expr> f;
            if (t <= N) {
                std::vector<int> S(static_cast<size_t>(t));
                std::iota(S.begin(), S.end(), 0);
                while (true) {
                    std::vector<Expr> terms;
                    for (int i : S) terms.push_back(items[i]);
                    f.push_back(sum(std::move(terms)));
                    if (!x->sep.empty()) {
                        std::string name = subset_name(x->sep, S);
                        f.push_back(var(name));
                        role(out.roles, name, "separator");
                    }
                    int i = t - 1;
                    while (i >= 0 && S[i] == N - t + i) --i;
                    if (i < 0) break;
                    ++S[i];
                    for (int j = i + 1; j < t; ++j) S[j] = S[j - 1] + 1;
                }
            }
            r = product(std::move(f));
        } else if (!x->kids.empty()) {
            std::vector<Expr> k;
            bool changed = false;
            for (auto& c : x->kids) {
                k.push_back(go(c));
                changed |= k.back() != c;
            }
            if (changed) {
                if (x->kind == Kind::Inv) r = inverse(k[0]);
                else if (x->kind == Kind::Star) r = star_node(k[0]);
                else if (x->kind == Kind::Sum) r = sum(std::move(k));
                else if (gram_node(x)) r = gram(k[0]);
                else r = product(std::move(k));
            }
        }
        memo.emplace(x.get(), r);
        return r;
    };
    out.expr = go(d.expr);
    for (auto it = out.roles.begin(); it != out.roles.end();)
        it = it->second.role == "subset-tag" ? out.roles.erase(it) : std::next(it);
    return out;
}

Expr sigma_hat(const Expr& x, int i, int n, const std::vector<std::string>& ys) {
    int m = int(ys.size());
    std::vector<Expr> p(size_t(i) + 1), e(size_t(i) + 1);
    for (int k = 1; k <= i; ++k) p[k] = scaled(mn(n, m), psi_expr(power(x, k), ys));
    e[0] = one();
    for (int j = 1; j <= i; ++j) {
        std::vector<Expr> t;
        for (int k = 1; k <= j; ++k) {
            Cyc c(ratio(k % 2 ? 1 : -1, j));
            t.push_back(scaled(c, product({e[j - k], p[k]})));
        }
        e[j] = sum(std::move(t));
    }
    return e[i];
}

Expr polynomial_in(const Expr& x, const std::vector<Cyc>& coeffs) {
    std::vector<Expr> t;
    for (size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_zero()) t.push_back(scaled(coeffs[k], power(x, int(k))));
    return sum(std::move(t));
}

std::vector<Cyc> poly_from_roots(const std::vector<Cyc>& roots) {
    std::vector<Cyc> c{Cyc(1)};
    for (auto& r : roots) {
        std::vector<Cyc> d(c.size() + 1);
        for (size_t k = 0; k < c.size(); ++k) {
            d[k + 1] += c[k];
            d[k] -= r * c[k];
        }
        c = std::move(d);
    }
    return c;
}

IdentityDoc guard_C(int m) {
    if (m < 2) throw std::invalid_argument("guard needs m >= 2");
    std::map<std::string, VarRole> roles;
    Expr e = guard_expr(var_names("y", m), "u", "Y", roles);
    return finish("guard", "guard term C_m", e, roles, json{{"m", m}});
}

IdentityDoc psi(int m) {
    if (m < 1) throw std::invalid_argument("psi needs m >= 1");
    std::map<std::string, VarRole> roles;
    auto ys = var_names("y", m);
    for (auto& y : ys) role(roles, y, "guard", "Y");
    return finish("psi", "conjugate sum Psi_m", psi_expr(var("x"), ys), roles, json{{"m", m}});
}

IdentityDoc theta(int m) {
    std::map<std::string, VarRole> roles;
    auto ys = var_names("y", m);
    Expr C = guard_expr(ys, "u", "Y", roles);
    Expr P = psi_expr(var("x"), ys);
    Expr e = product({C, P * var("y") - var("y") * P});
    return finish("theta", "commutation identity Theta_m", e, roles, json{{"m", m}});
}

IdentityDoc character_identity(const Rep& rep) {
    require_exact_irrep(rep);
    return character_identity_from(rep.group()->order(), rep.dim(), range_values(rep.character()));
}

IdentityDoc character_identity_from(int m, int n, const std::vector<Cyc>& range) {
    std::map<std::string, VarRole> roles;
    auto ys = var_names("y", m);
    std::vector<Expr> f{guard_expr(ys, "u", "Y", roles)};
    Expr P = psi_expr(var("x"), ys);
    std::vector<Cyc> consts;
    for (size_t i = 0; i < range.size(); ++i) {
        if (i) {
            f.push_back(var(idx("v", int(i))));
            role(roles, idx("v", int(i)), "separator");
        }
        consts.push_back(mn(m, n) * range[i]);
        f.push_back(P - consts.back());
    }
    json params{{"m", m}, {"n", n}, {"range", cyc_list(range)}, {"constants", cyc_list(consts)}};
    return finish("character", "character identity Psi_m(rho)", product(std::move(f)), roles, params);
}

IdentityDoc dimension_identity(int m, int n) {
    auto g = double_guard(m);
    std::vector<Expr> t;
    for (auto& x : g.X) t.push_back(product({psi_expr(var(x), g.Y), inverse(var(x))}));
    Cyc c = mn(m, n) * mn(m, n);
    Expr e = product({g.CX, g.CY, sum(std::move(t)) - c});
    return finish("dimension", "dimension identity D_n", e, g.roles, json{{"m", m}, {"n", n}});
}

IdentityDoc dimension_identity_alt(int m, int n) {
    auto g = double_guard(m);
    std::vector<Expr> t;
    for (auto& x : g.X) t.push_back(product({psi_expr(var(x), g.Y), psi_expr(inverse(var(x)), g.Y)}));
    Cyc c = Cyc(Rational(int64_t(m) * m * m, int64_t(n) * n));
    Expr e = product({g.CX, g.CY, sum(std::move(t)) - c});
    return finish("dimension-alt", "dimension identity, squared conjugate sum form", e, g.roles,
                  json{{"m", m}, {"n", n}});
}

IdentityDoc range_identity(const Rep& rep, const Cyc& xi) {
    auto range = range_values(rep.character());
    if (std::find(range.begin(), range.end(), xi) == range.end())
        throw std::invalid_argument("value is not in the character range");
    int m = rep.group()->order(), n = rep.dim();
    auto g = double_guard(m);
    std::vector<Expr> f{g.CX, g.CY};
    for (int i = 0; i < m; ++i) {
        f.push_back(psi_expr(var(g.X[i]), g.Y) - mn(m, n) * xi);
        f.push_back(var(idx("v", i + 1)));
        role(g.roles, idx("v", i + 1), "separator");
    }
    return finish("range", "range identity R_xi", product(std::move(f)), g.roles,
                  json{{"m", m}, {"n", n}, {"xi", cyc_to_json(xi)}});
}

IdentityDoc level_set_identity(const Rep& rep, int i) {
    auto range = range_values(rep.character());
    if (i < 1 || i > int(range.size())) throw std::invalid_argument("level index out of range");
    int m = rep.group()->order(), n = rep.dim();
    const Cyc& chi = range[i - 1];
    int t = int(std::count(rep.character().values.begin(), rep.character().values.end(), chi));
    auto g = double_guard(m);
    std::vector<Expr> items;
    for (auto& x : g.X) items.push_back(gram(psi_expr(var(x), g.Y) - mn(m, n) * chi));
    role(g.roles, "v_S", "subset-tag");
    Expr e = product({g.CX, g.CY, subset_product(std::move(items), t, "v_S")});
    json params{{"m", m}, {"n", n}, {"i", i}, {"chi", cyc_to_json(chi)}, {"t", t},
                {"subsets", binomial(m, t).str()}};
    return finish("level-set", "level-set identity R_i", e, g.roles, params);
}

IdentityDoc class_identity(const Rep& rep, bool adams) {
    require_exact_irrep(rep);
    const auto& G = *rep.group();
    const auto& cl = G.classes();
    int s = int(cl.classes.size()), n = rep.dim();
    const auto& chi = rep.character();
    std::map<std::string, VarRole> roles;
    std::vector<std::vector<std::string>> Y(s);
    std::vector<Expr> X;
    for (int r = 0; r < s; ++r) {
        X.push_back(var(idx("x", r + 1)));
        for (int k = 0; k < cl.sizes[r]; ++k) {
            Y[r].push_back(idx("y", r + 1, k + 1));
            role(roles, Y[r].back(), "guard", idx("Y", r + 1));
        }
    }
    std::vector<Expr> f;
    auto sep = [&](const std::string& name) {
        f.push_back(var(name));
        role(roles, name, "separator");
    };
    for (int r = 0; r + 1 < s; ++r)
        for (int i = 0; i < cl.sizes[r]; ++i)
            for (int j = i + 1; j < cl.sizes[r]; ++j) {
                Expr w = product({var(Y[r][i]), inverse(var(Y[r][j]))});
                f.push_back(one() - commutator(X[r], w));
                sep(idx("u", r + 1, i + 1, j + 1));
            }
    for (int a = 0; a < s; ++a)
        for (int b = a + 1; b < s; ++b)
            for (int k = 0; k < cl.sizes[a]; ++k) {
                Expr y = var(Y[a][k]);
                f.push_back(X[b] - product({inverse(y), X[a], y}));
                sep(idx("v", a + 1, b + 1, k + 1));
            }
    int P = adams ? n : 1;
    std::map<std::tuple<int, int, int>, Expr> E;
    auto term = [&](int a, int b, int p) -> Expr {
        auto key = std::make_tuple(a, b, p);
        auto it = E.find(key);
        if (it != E.end()) return it->second;
        std::vector<Expr> t;
        Expr xp = power(X[a], p);
        for (auto& y : Y[a]) t.push_back(product({inverse(var(y)), xp, var(y)}));
        Cyc c = Cyc(ratio(cl.sizes[b], n)) * chi(G.pow(cl.reps[b], p));
        Expr e = gram(sum(std::move(t)) - c);
        E[key] = e;
        return e;
    };
    std::vector<Expr> blocks;
    int64_t total = 0;
    for (int a0 = 0; a0 < s;) {
        int a1 = a0;
        while (a1 < s && cl.sizes[a1] == cl.sizes[a0]) ++a1;
        std::vector<int> perm(size_t(a1 - a0));
        std::iota(perm.begin(), perm.end(), a0);
        std::vector<Expr> factors;
        do {
            if (++total > 50000) throw std::length_error("class identity has too many permutation factors");
            std::vector<Expr> t;
            for (int a = a0; a < a1; ++a)
                for (int p = 1; p <= P; ++p) t.push_back(term(a, perm[a - a0], p));
            factors.push_back(sum(std::move(t)));
        } while (std::next_permutation(perm.begin(), perm.end()));
        blocks.push_back(product(std::move(factors)));
        a0 = a1;
    }
    f.push_back(sum(std::move(blocks)));
    json values = json::array();
    for (int r = 0; r < s; ++r) values.push_back(cyc_to_json(chi(cl.reps[r])));
    json params{{"m", G.order()}, {"n", n}, {"variant", adams ? "adams" : "character"},
                {"class_sizes", cl.sizes}, {"class_values", values}};
    return finish(adams ? "class-adams" : "class", "class identity L(rho)", product(std::move(f)), roles, params,
                  {"structured"});
}

IdentityDoc trace_disjunction_identity(int m, int n, const std::vector<Expr>& clauses,
                                       const std::vector<TracePoly>& polys) {
    std::map<std::string, VarRole> roles;
    auto ys = var_names("y", m);
    std::vector<Expr> f{guard_expr(ys, "u", "Y", roles)};
    int next = m + 1;
    std::vector<Expr> items = clauses;
    for (auto& P : polys) {
        std::vector<Expr> t;
        for (auto& term : P) {
            std::vector<Expr> fac{constant(term.coeff)};
            for (auto& w : term.traces) {
                if (!is_word(w)) throw std::invalid_argument("trace applied to a non-word");
                fac.push_back(scaled(mn(n, m), psi_expr(w, ys)));
            }
            t.push_back(product(std::move(fac)));
        }
        items.push_back(sum(std::move(t)));
    }
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) {
            std::string s = idx("y", next++);
            f.push_back(var(s));
            role(roles, s, "separator");
        }
        f.push_back(items[i]);
    }
    return finish("trace-disjunction", "disjunctive trace identity", product(std::move(f)), roles,
                  json{{"m", m}, {"n", n}, {"clauses", int(clauses.size())}, {"polys", int(polys.size())}});
}

IdentityDoc s4_separating_identity(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    Expr x = var("x");
    Cyc c = mn(24, 3);
    TracePoly P{{c, {x}}, {-c * Cyc(sign), {}}};
    auto d = trace_disjunction_identity(24, 3, {power(x, 6) - Cyc(1)}, {P});
    d.family = "s4-separating";
    d.params["sign"] = sign;
    return d;
}

IdentityDoc fixed_point_identity(const Rep& rep, int i) {
    const auto& G = *rep.group();
    auto D = G.order_statistics();
    if (i < 1 || i > int(D.size())) throw std::invalid_argument("order index out of range");
    int m = G.order(), n = rep.dim(), di = D[i - 1];
    std::set<int> dims;
    for (int g = 0; g < m; ++g)
        if (G.element_order(g) == di) {
            Cyc s;
            for (int j = 0; j < di; ++j) s += rep.character()(G.pow(g, j));
            dims.insert(int((s * Cyc(ratio(1, di))).rational().small_num()));
        }
    Expr x = var("x");
    std::vector<Expr> clauses;
    for (int d : D)
        if (d != di) clauses.push_back(power(x, d) - Cyc(1));
    std::vector<TracePoly> polys;
    for (int f : dims) {
        TracePoly Q;
        for (int j = 0; j < di; ++j) {
            if (j == 0) Q.push_back({Cyc(n), {}});
            else Q.push_back({Cyc(1), {power(x, j)}});
        }
        Q.push_back({Cyc(-int64_t(di) * f), {}});
        for (auto& t : Q) t.coeff *= mn(m, n);
        polys.push_back(Q);
    }
    auto d = trace_disjunction_identity(m, n, clauses, polys);
    d.family = "fixed-point";
    d.params["order"] = di;
    d.params["fixed_dims"] = std::vector<int>(dims.begin(), dims.end());
    return d;
}

IdentityDoc cayley_hamilton_identity(int m, int n) {
    std::map<std::string, VarRole> roles;
    auto ys = var_names("y", m);
    Expr C = guard_expr(ys, "u", "Y", roles);
    Expr x = var("x");
    std::vector<Expr> t{power(x, n)};
    for (int i = 1; i <= n; ++i)
        t.push_back(scaled(Cyc(i % 2 ? -1 : 1), product({sigma_hat(x, i, n, ys), power(x, n - i)})));
    return finish("cayley-hamilton", "Cayley-Hamilton trace identity", product({C, sum(std::move(t))}), roles,
                  json{{"m", m}, {"n", n}});
}

IdentityDoc sigma_identity(const Rep& rep, int i) {
    int m = rep.group()->order(), n = rep.dim();
    if (i < 1 || i > n) throw std::invalid_argument("sigma index out of range");
    std::vector<Cyc> delta;
    for (int g = 0; g < m; ++g) delta.push_back(sigma_value(rep, g, i));
    int L = int(lcm64(rep.group()->exponent(), rep.conductor()));
    std::sort(delta.begin(), delta.end(), [&](const Cyc& a, const Cyc& b) { return cyc_compare(a, b, L) < 0; });
    delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
    std::map<std::string, VarRole> roles;
    auto ys = var_names("y", m);
    std::vector<Expr> f{guard_expr(ys, "u", "Y", roles)};
    Expr sh = sigma_hat(var("x"), i, n, ys);
    for (size_t k = 0; k < delta.size(); ++k) {
        f.push_back(sh - delta[k]);
        f.push_back(var(idx("v", int(k) + 1)));
        role(roles, idx("v", int(k) + 1), "separator");
    }
    return finish("sigma", "sigma_i value identity", product(std::move(f)), roles,
                  json{{"m", m}, {"n", n}, {"i", i}, {"values", cyc_list(delta)}});
}

IdentityDoc su_identity(const Rep& rep) {
    int m = rep.group()->order(), n = rep.dim();
    std::map<std::string, VarRole> roles;
    auto ys = var_names("y", m);
    Expr e = product({guard_expr(ys, "u", "Y", roles), sigma_hat(var("x"), n, n, ys) - Cyc(1)});
    return finish("special-unitary", "determinant one identity", e, roles, json{{"m", m}, {"n", n}});
}

Expr adams_block(const Rep& rep, int i, const Expr& x, const std::vector<std::string>& ys) {
    auto blocks = adams_partition(rep);
    if (i < 1 || i > int(blocks.size())) throw std::invalid_argument("Adams block index out of range");
    int m = int(ys.size()), n = rep.dim();
    auto a = adams_vector(rep, blocks[i - 1][0]);
    std::vector<Expr> t;
    for (int k = 1; k <= n; ++k) t.push_back(gram(psi_expr(power(x, k), ys) - mn(m, n) * a[k - 1]));
    return sum(std::move(t));
}

IdentityDoc spectrum_identity(const Rep& rep) {
    int m = rep.group()->order(), n = rep.dim();
    int r = int(adams_partition(rep).size());
    std::map<std::string, VarRole> roles;
    auto ys = var_names("y", m);
    std::vector<Expr> f{guard_expr(ys, "u", "Y", roles)};
    for (int i = 1; i <= r; ++i) {
        if (i > 1) {
            f.push_back(var(idx("v", i - 1)));
            role(roles, idx("v", i - 1), "separator");
        }
        f.push_back(adams_block(rep, i, var("x"), ys));
    }
    return finish("spectrum", "spectrum identity A(rho)", product(std::move(f)), roles,
                  json{{"m", m}, {"n", n}, {"blocks", r}});
}

IdentityDoc spectrum_level_identity(const Rep& rep, int i) {
    int m = rep.group()->order(), n = rep.dim();
    auto g = double_guard(m);
    std::vector<Expr> f{g.CX, g.CY};
    for (int j = 0; j < m; ++j) {
        f.push_back(adams_block(rep, i, var(g.X[j]), g.Y));
        f.push_back(var(idx("w", j + 1)));
        role(g.roles, idx("w", j + 1), "separator");
    }
    return finish("spectrum-level", "spectral level identity S_i", product(std::move(f)), g.roles,
                  json{{"m", m}, {"n", n}, {"i", i}});
}

IdentityDoc gassmann_identity(const Rep& rep, int i) {
    int m = rep.group()->order(), n = rep.dim();
    auto blocks = adams_partition(rep);
    if (i < 1 || i > int(blocks.size())) throw std::invalid_argument("Adams block index out of range");
    int t = int(blocks[i - 1].size());
    auto g = double_guard(m);
    std::vector<Expr> items;
    for (auto& x : g.X) items.push_back(adams_block(rep, i, var(x), g.Y));
    role(g.roles, "v_S", "subset-tag");
    Expr e = product({g.CX, g.CY, subset_product(std::move(items), t, "v_S")});
    return finish("gassmann", "Gassmann identity G_i", e, g.roles,
                  json{{"m", m}, {"n", n}, {"i", i}, {"t", t}, {"blocks", int(blocks.size())}});
}

IdentityDoc central_series_gassmann_identity(const Rep& rep, int t, int i) {
    if (t < 1) throw std::invalid_argument("central series index must be >= 1");
    const auto& G = *rep.group();
    int m = G.order(), n = rep.dim();
    auto series = G.upper_central_series();
    const Subgroup& Z = series[std::min<size_t>(size_t(t), series.size() - 1)];
    std::vector<std::vector<int>> parts;
    for (auto& b : adams_partition(rep)) {
        std::vector<int> keep;
        for (int g : b)
            if (!Z.contains(g)) keep.push_back(g);
        if (!keep.empty()) parts.push_back(keep);
    }
    int s = m - Z.order();
    json params{{"m", m}, {"n", n}, {"t", t}, {"i", i}, {"s", s}, {"center_order", Z.order()}};
    if (s == 0) return finish("central-series", "central series Gassmann identity", constant(Cyc()), {}, params,
                              {"vacuous"});
    if (i < 1 || i > int(parts.size())) throw std::invalid_argument("block index out of range");
    std::map<std::string, VarRole> roles;
    auto X = var_names("x", s);
    auto ys = var_names("y", m);
    std::vector<Expr> f{guard_expr(X, "ux", "X", roles), guard_expr(ys, "u", "Y", roles)};
    // blocks of the restricted partition are addressed through a representative
    auto full = adams_partition(rep);
    int rep_elem = parts[i - 1][0];
    int bi = 0;
    for (size_t k = 0; k < full.size(); ++k)
        if (std::count(full[k].begin(), full[k].end(), rep_elem)) bi = int(k) + 1;
    std::vector<Expr> items;
    for (auto& x : X) items.push_back(adams_block(rep, bi, var(x), ys));
    role(roles, "v_S", "subset-tag");
    f.push_back(subset_product(std::move(items), int(parts[i - 1].size()), "v_S"));
    for (int j = 0; j < s; ++j) {
        Expr c = var(X[j]);
        for (int k = 1; k <= t; ++k) c = commutator(c, var(idx("c", j + 1, k)));
        f.push_back(c - Cyc(1));
        f.push_back(var(idx("w", j + 1)));
        role(roles, idx("w", j + 1), "separator");
    }
    params["block_size"] = int(parts[i - 1].size());
    params["blocks"] = int(parts.size());
    return finish("central-series", "central series Gassmann identity", product(std::move(f)), roles, params);
}

IdentityDoc minimal_poly_identity(const Rep& rep, bool maximal) {
    auto eig = eig_set(rep);
    std::vector<EigSet> sets = maximal ? eig.maximal : std::vector<EigSet>{eig.all};
    std::map<std::string, VarRole> roles;
    std::vector<Expr> f;
    json polys = json::array();
    for (size_t i = 0; i < sets.size(); ++i) {
        if (i) {
            f.push_back(var(idx("v", int(i))));
            role(roles, idx("v", int(i)), "separator");
        }
        std::vector<Cyc> roots;
        for (auto& a : sets[i]) roots.push_back(angle_to_cyc(a));
        auto c = poly_from_roots(roots);
        polys.push_back(cyc_list(c));
        f.push_back(polynomial_in(var("x"), c));
    }
    return finish(maximal ? "minimal-poly-maximal" : "minimal-poly", "eigenvalue identity", product(std::move(f)),
                  roles, json{{"polynomials", polys}});
}

IdentityDoc central_partition_identity(const Rep& rep, const std::vector<std::vector<int>>& partition) {
    const auto& G = *rep.group();
    int m = G.order(), n = rep.dim();
    std::vector<int> t;
    std::vector<Cyc> chi;
    int total = 0;
    for (auto& b : partition) {
        if (b.empty()) throw std::invalid_argument("empty partition block");
        Cyc s;
        for (int g : b) s += rep.character()(g);
        t.push_back(int(b.size()));
        chi.push_back(s * Cyc(ratio(1, int(b.size()))));
        total += int(b.size());
    }
    if (total != m) throw std::invalid_argument("blocks do not partition the group");
    Rational count = factorial(m);
    for (int x : t) count = count / factorial(x);
    if (count > Rational(20000)) throw std::length_error("too many partitions of this type: " + count.str());
    std::map<std::string, VarRole> roles;
    auto X = var_names("x", m);
    std::vector<Expr> f{guard_expr(X, "ux", "X", roles)};
    std::map<std::vector<int>, Expr> av;
    auto average = [&](const std::vector<int>& S) {
        auto it = av.find(S);
        if (it != av.end()) return it->second;
        std::vector<Expr> v;
        for (int j : S) v.push_back(var(X[j]));
        Expr e = scaled(Cyc(ratio(1, int(S.size()))), sum(std::move(v)));
        av[S] = e;
        return e;
    };
    int k = 0;
    std::vector<std::vector<int>> blocks(partition.size());
    std::vector<char> used(size_t(m), 0);
    std::function<void(size_t)> rec = [&](size_t b) {
        if (b == partition.size()) {
            std::vector<Expr> terms;
            for (size_t i = 0; i < blocks.size(); ++i)
                terms.push_back(gram(average(blocks[i]) - chi[i] * Cyc(ratio(1, n))));
            f.push_back(sum(std::move(terms)));
            std::string sname = idx("vP", ++k);
            f.push_back(var(sname));
            role(roles, sname, "separator");
            return;
        }
        std::vector<int> free;
        for (int j = 0; j < m; ++j)
            if (!used[j]) free.push_back(j);
        int need = t[b];
        std::vector<int> S(static_cast<size_t>(need));
        std::function<void(int, int)> choose = [&](int start, int depth) {
            if (depth == need) {
                blocks[b] = S;
                for (int j : S) used[j] = 1;
                rec(b + 1);
                for (int j : S) used[j] = 0;
                return;
            }
            for (int q = start; q < int(free.size()); ++q) {
                S[depth] = free[q];
                choose(q + 1, depth + 1);
            }
        };
        choose(0, 0);
    };
    rec(0);
    json P = json::array();
    for (auto& b : partition) P.push_back(b);
    return finish("central-partition", "central partition identity", product(std::move(f)), roles,
                  json{{"m", m}, {"n", n}, {"partition", P}, {"block_values", cyc_list(chi)},
                       {"factors", k}});
}

std::vector<std::vector<int>> find_central_partitions(const Rep& rep, int max_block) {
    if (max_block < 1 || max_block > 6) throw std::invalid_argument("max_block must be in [1, 6]");
    int m = rep.group()->order();
    std::vector<std::vector<int>> out;
    std::vector<int> S;
    std::function<void(int, const Mat&)> rec = [&](int start, const Mat& acc) {
        for (int g = start; g < m; ++g) {
            Mat next = acc + rep.image(g);
            S.push_back(g);
            if (int(S.size()) < m && next.scalar_value()) out.push_back(S);
            if (int(S.size()) < max_block) rec(g + 1, next);
            S.pop_back();
        }
    };
    rec(0, Mat(rep.dim(), rep.dim()));
    return out;
}

IdentityDoc probability_identity(const Expr& u, int t, int m) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    auto vars = free_vars(u);
    int p = int(vars.size());
    std::map<std::string, VarRole> roles;
    std::vector<Expr> f;
    std::vector<std::vector<std::string>> X(p);
    for (int i = 0; i < p; ++i) {
        for (int j = 1; j <= m; ++j) X[i].push_back(idx("x", i + 1, j));
        f.push_back(guard_expr(X[i], idx("u", i + 1) + "x", idx("X", i + 1), roles));
    }
    std::vector<Expr> items;
    std::vector<int> tup(size_t(p), 0);
    while (true) {
        std::map<std::string, Expr> sub;
        for (int i = 0; i < p; ++i) sub[vars[i]] = var(X[i][tup[i]]);
        items.push_back(gram(substitute(u, sub)));
        int i = p - 1;
        while (i >= 0 && ++tup[i] == m) tup[i--] = 0;
        if (i < 0) break;
    }
    f.push_back(subset_product(std::move(items), t, ""));
    json params{{"m", m}, {"p", p}, {"t", t}, {"u", expr_to_json(u)}};
    return finish("probability", "relation probability identity u'_t", product(std::move(f)), roles, params);
}

IdentityDoc central_laurent(int m) {
    if (m < 2) throw std::invalid_argument("central Laurent polynomial needs m >= 2");
    std::map<std::string, VarRole> roles;
    auto ys = var_names("y", m);
    Expr C = guard_expr(ys, "u", "Y", roles);
    return finish("central-laurent", "central Laurent polynomial c_m", psi_expr(C, ys), roles, json{{"m", m}},
                  {"central-polynomial"});
}

IdentityDoc gamma_d_separating_identity(const GammaGroup& gamma, int l, bool printed_range) {
    if (gamma.n1 % gamma.d != 0) throw std::invalid_argument("d must divide n'");
    if (gcd64(l, gamma.n) != 1) throw std::invalid_argument("l must be coprime to n");
    auto pi = pi_kl(gamma, 1, l);
    Cyc detB = pi->image(gamma.B).det();
    int M = gamma.group->order();
    std::map<std::string, VarRole> roles;
    auto ys = var_names("y", M);
    std::vector<Expr> f{guard_expr(ys, "u", "Y", roles)};
    Expr x = var("x"), y = var("y");
    Expr sd = sigma_hat(y, gamma.d, gamma.d, ys);
    std::vector<int> ts;
    for (int t = printed_range ? 2 : 0; t < gamma.n1; ++t)
        if (t != 1) ts.push_back(t);
    Cyc c(1);
    std::vector<Cyc> dets;
    for (int t = 0; t < gamma.n1; ++t) {
        if (std::count(ts.begin(), ts.end(), t)) {
            f.push_back(sd - c);
            dets.push_back(c);
        }
        c *= detB;
    }
    f.push_back(product({y, power(x, gamma.n), inverse(y)}) - power(x, gamma.r * gamma.n));
    json params{{"m", gamma.m}, {"n", gamma.n}, {"r", gamma.r}, {"d", gamma.d}, {"n1", gamma.n1},
                {"l", l},       {"t", ts},      {"determinants", cyc_list(dets)}};
    return finish("gamma-sep", "separating identity for Gamma_d", product(std::move(f)), roles, params);
}

IdentityDoc disjunctive_identity(const std::vector<Expr>& words) {
    if (words.empty()) throw std::invalid_argument("need at least one word");
    std::map<std::string, VarRole> roles;
    std::vector<Expr> f{var("u0")};
    role(roles, "u0", "separator");
    for (size_t i = 0; i < words.size(); ++i) {
        if (!is_word(words[i])) throw std::invalid_argument("disjunct is not a word");
        f.push_back(words[i] - Cyc(1));
        f.push_back(var(idx("u", int(i) + 1)));
        role(roles, idx("u", int(i) + 1), "separator");
    }
    return finish("disjunctive", "disjunctive identity", product(std::move(f)), roles,
                  json{{"k", int(words.size())}});
}

IdentityDoc standard_identity(int k) {
    if (k < 1 || k > 16) throw std::invalid_argument("standard identity degree out of range");
    auto ys = var_names("y", k);
    std::map<uint32_t, Expr> memo;
    std::function<Expr(uint32_t)> s = [&](uint32_t mask) -> Expr {
        if (!mask) return one();
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::vector<Expr> t;
        int pos = 0;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1) {
                Expr term = product({var(ys[i]), s(mask & ~(1u << i))});
                t.push_back(pos % 2 ? scaled(Cyc(-1), term) : term);
                ++pos;
            }
        Expr e = sum(std::move(t));
        memo[mask] = e;
        return e;
    };
    return finish("standard", "standard identity s_k", s((1u << k) - 1), {}, json{{"k", k}});
}

IdentityDoc s2_identity() {
    Expr x = var("x"), y = var("y");
    Expr c = y + inverse(y);
    return finish("s2", "SL2 identity s_2", c * x - x * c, {}, json::object());
}

IdentityDoc sl2_trace_identity() {
    Expr x = var("x");
    Expr e = sum({x * x, scaled(Cyc(-1), product({x + inverse(x), x})), one()});
    return finish("sl2-trace", "SL2 trace identity T_2", e, {}, json::object());
}

}  // namespace pirep
