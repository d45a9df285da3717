#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pirep/rep.hpp"

namespace pirep {

struct CatalogGroup {
    std::string name;
    GroupPtr group;
    std::vector<int> gens;
    std::map<std::string, RepPtr> reps;
    std::vector<std::string> rep_order;  // insertion order for listing
    std::function<RepPtr(const std::string&)> factory;  // parametrized reps built on demand
    RepPtr rep(const std::string& n) const;
    void add(const std::string& n, RepPtr r);
};

// groups with named representations
CatalogGroup cyclic(int n);
CatalogGroup symmetric(int n);    // n <= 5
CatalogGroup alternating(int n);  // 3 <= n <= 5
CatalogGroup quaternion();
CatalogGroup binary_tetrahedral();
CatalogGroup heisenberg(int p);

// metacyclic groups Gamma_d(m, n, r) with fixed point free irreps pi_{k,l}
struct GammaGroup {
    int m = 0, n = 0, r = 0, d = 0, n1 = 0;  // n1 = n'
    GroupPtr group;
    int A = -1, B = -1;  // generator indices
    int element(int i, int j) const;  // A^i B^j
};
std::vector<std::string> gamma_condition_violations(int m, int n, int r);
GammaGroup gamma_d(int m, int n, int r);
RepPtr pi_kl(const GammaGroup& g, int k, int l);
CatalogGroup gamma_catalog(int m, int n, int r);

// wreath product Z_p^p x| C_p
struct WreathForm {
    int p = 0;
    std::vector<int> w;
    std::vector<std::vector<int>> circulant;  // p x p over Z_p, rows w, w*sigma, ...
};
GroupPtr wreath(int p);
int wreath_element(int p, const std::vector<int>& a, int s);  // a * sigma^s
Subgroup wreath_base(const GroupPtr& G, int p);                // the abelian subgroup A
std::vector<std::vector<int>> circulant(const std::vector<int>& w, int p);
bool is_admissible(const std::vector<int>& w, int p);
bool circulant_invertible(const std::vector<std::vector<int>>& c, int p);
WreathForm find_unit_h(int p);
std::vector<int> apply_mod(const std::vector<std::vector<int>>& h, const std::vector<int>& w, int p);
RepPtr rho_w(const GroupPtr& G, int p, const std::vector<int>& w);
CatalogGroup wreath_catalog(int p);

// elementary abelian Z_p^m with diagonal reps exp(2 pi i V a / p)
GroupPtr elementary_abelian(int p, int m);
RepPtr abelian_rep(const GroupPtr& G, int p, int m, const std::vector<std::vector<int>>& V);

// rep carried by a matrix group: searches a surjective homomorphism G -> <gens>
RepPtr realize(const GroupPtr& G, const std::vector<Mat>& gens, const std::string& name);
// rep defined by generator images
RepPtr hom_rep(const GroupPtr& G, const std::vector<int>& gens, const std::vector<Mat>& images, const std::string& name);
// permutation action with the trivial summand removed (basis e_i - e_last)
RepPtr reduced_permutation_rep(const GroupPtr& G, const std::vector<std::vector<int>>& perms, const std::string& name);
RepPtr tensor_rep(const Rep& a, const Rep& b, const std::string& name);

// named lookup: Z<n>, S3..S5, A4, A5, Q8, 2T, H<p>, gamma:m,n,r, wreath:p, abelian:p,m
CatalogGroup catalog_group(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace pirep
