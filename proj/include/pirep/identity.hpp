#pragma once
#include <map>
#include <string>
#include <vector>
#include "pirep/catalog.hpp"
#include "pirep/expr.hpp"

namespace pirep {

struct VarRole {
    std::string role;    // guard, psi-argument, separator, subset-tag
    std::string family;  // guard family name, empty otherwise
    friend bool operator==(const VarRole&, const VarRole&) = default;
};

struct IdentityDoc {
    std::string family;
    json params = json::object();
    std::string citation;
    Expr expr;
    std::map<std::string, VarRole> roles;
    std::vector<std::string> flags;  // vacuous, central-polynomial, structured
    bool has_flag(const std::string& f) const;
    // guard families in variable order
    std::vector<std::pair<std::string, std::vector<std::string>>> guard_families() const;
};

json doc_to_json(const IdentityDoc& d);
IdentityDoc doc_from_json(const json& j);
// free_vars(expr) must equal the non-subset-tag role keys
void validate_doc(const IdentityDoc& d);

std::vector<std::string> var_names(const std::string& prefix, int count);
// u-tag separated product of pairwise differences; roles recorded when given
Expr guard_expr(const std::vector<std::string>& vars, const std::string& tag, const std::string& family,
                std::map<std::string, VarRole>& roles);
Expr psi_expr(const Expr& arg, const std::vector<std::string>& ys);
Expr substitute(const Expr& e, const std::map<std::string, Expr>& sub);
// sigma_i with tr(x^k) replaced by (n/m) Psi_m(x^k)
Expr sigma_hat(const Expr& x, int i, int n, const std::vector<std::string>& ys);
Expr polynomial_in(const Expr& x, const std::vector<Cyc>& coeffs);  // sum c_k x^k
std::vector<Cyc> poly_from_roots(const std::vector<Cyc>& roots);    // monic, low degree first

// formal trace polynomial: sum of coeff * prod Tr(word)
struct TraceTerm {
    Cyc coeff;
    std::vector<Expr> traces;
};
using TracePoly = std::vector<TraceTerm>;

// unrolls subset products into explicit factors, implicit separators becoming variables
IdentityDoc expand_subsets(const IdentityDoc& d, int64_t limit = 5000);

IdentityDoc guard_C(int m);
IdentityDoc psi(int m);
IdentityDoc theta(int m);
IdentityDoc character_identity(const Rep& rep);
IdentityDoc character_identity_from(int m, int n, const std::vector<Cyc>& range);
IdentityDoc dimension_identity(int m, int n);
IdentityDoc dimension_identity_alt(int m, int n);
IdentityDoc range_identity(const Rep& rep, const Cyc& xi);
IdentityDoc level_set_identity(const Rep& rep, int i);
IdentityDoc class_identity(const Rep& rep, bool adams = false);
IdentityDoc trace_disjunction_identity(int m, int n, const std::vector<Expr>& clauses,
                                       const std::vector<TracePoly>& polys);
IdentityDoc s4_separating_identity(int sign);  // +1: rho4 version, -1: rho5 version
IdentityDoc fixed_point_identity(const Rep& rep, int i);
IdentityDoc cayley_hamilton_identity(int m, int n);
IdentityDoc sigma_identity(const Rep& rep, int i);
IdentityDoc su_identity(const Rep& rep);
Expr adams_block(const Rep& rep, int i, const Expr& x, const std::vector<std::string>& ys);
IdentityDoc spectrum_identity(const Rep& rep);
IdentityDoc spectrum_level_identity(const Rep& rep, int i);
IdentityDoc gassmann_identity(const Rep& rep, int i);
IdentityDoc central_series_gassmann_identity(const Rep& rep, int t, int i);
IdentityDoc minimal_poly_identity(const Rep& rep, bool maximal);
IdentityDoc central_partition_identity(const Rep& rep, const std::vector<std::vector<int>>& partition);
std::vector<std::vector<int>> find_central_partitions(const Rep& rep, int max_block);
IdentityDoc probability_identity(const Expr& u, int t, int m);
IdentityDoc central_laurent(int m);
IdentityDoc gamma_d_separating_identity(const GammaGroup& gamma, int l, bool printed_range = false);
IdentityDoc disjunctive_identity(const std::vector<Expr>& words);
IdentityDoc standard_identity(int k);
IdentityDoc s2_identity();
IdentityDoc sl2_trace_identity();

}  // namespace pirep
