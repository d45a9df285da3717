#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pirep/group.hpp"
#include "pirep/matrix.hpp"

namespace pirep {

struct Character {
    GroupPtr group;
    std::vector<Cyc> values;  // indexed by element
    const Cyc& operator()(int g) const { return values[g]; }
    int conductor() const;
};

// eigenvalue multiset as (k/d in [0,1), multiplicity), sorted by angle
using Spectrum = std::vector<std::pair<Rational, int>>;
using EigSet = std::vector<Rational>;  // distinct eigenvalue angles, sorted

class Rep;
using RepPtr = std::shared_ptr<const Rep>;

class Rep {
public:
    static RepPtr make(GroupPtr G, std::vector<Mat> images, std::string name = "", bool verify = true);

    const GroupPtr& group() const { return G_; }
    int dim() const { return n_; }
    const Mat& image(int g) const { return images_[g]; }
    const std::vector<Mat>& images() const { return images_; }
    const std::string& name() const { return name_; }
    const Character& character() const { return chi_; }
    // lcm of the conductors of all matrix entries
    int conductor() const { return cond_; }
    // entrywise Galois conjugate
    RepPtr galois(int64_t t) const;

private:
    Rep() = default;
    GroupPtr G_;
    int n_ = 0;
    std::vector<Mat> images_;
    std::string name_;
    Character chi_;
    int cond_ = 1;
};

RepPtr trivial_rep(const GroupPtr& G);
RepPtr regular_rep(const GroupPtr& G);
// from a permutation action: perms[g][i] = image of point i under g
RepPtr permutation_rep(const GroupPtr& G, const std::vector<std::vector<int>>& perms, std::string name = "");

Cyc inner_product(const Character& a, const Character& b);
bool is_irreducible(const Rep& r);
bool is_faithful(const Rep& r);
bool is_unitary(const Rep& r);

std::vector<Cyc> adams_vector(const Rep& r, int g);
// blocks sorted by size descending, then minimal element
std::vector<std::vector<int>> adams_partition(const Rep& r);

Cyc sigma_value(const Rep& r, int g, int i);
Spectrum spectrum(const Rep& r, int g);
// eigenvalue angles of g from a character (power-trace DFT), n = character degree
Spectrum spectrum_from_character(const Character& chi, int g);

struct EigData {
    EigSet all;                   // Eig(phi)
    std::vector<EigSet> maximal;  // maximal per-element eigenvalue sets
};
EigData eig_set(const Rep& r);
Cyc angle_to_cyc(const Rational& angle);

RepPtr induced_rep(const GroupPtr& G, const Subgroup& H, const Rep& sigma);
RepPtr restrict_rep(const Rep& r, const Subgroup& H);
Character galois_conjugate_character(const Character& chi, int64_t t);
int fixed_point_dimension(const Rep& r, const Subgroup& H);
std::vector<Rational> molien_coefficients(const Rep& r, int D);

std::vector<Cyc> range_values(const Character& chi);  // distinct values, canonical order

}  // namespace pirep
