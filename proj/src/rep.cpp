#include "pirep/rep.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace pirep {

int Character::conductor() const {
    int64_t L = 1;
    for (const auto& v : values) L = lcm64(L, v.conductor());
    return int(L);
}

RepPtr Rep::make(GroupPtr G, std::vector<Mat> images, std::string name, bool verify) {
    int m = G->order();
    if (int(images.size()) != m) throw std::invalid_argument("rep: need one image per group element");
    int n = images[0].rows();
    for (const auto& M : images)
        if (M.rows() != n || M.cols() != n) throw std::invalid_argument("rep: images must be square of equal size");
    auto r = std::shared_ptr<Rep>(new Rep());
    r->G_ = std::move(G);
    r->n_ = n;
    r->images_ = std::move(images);
    r->name_ = std::move(name);
    int64_t L = 1;
    for (const auto& M : r->images_)
        for (const auto& x : M.data()) L = lcm64(L, x.conductor());
    r->cond_ = int(L);
    if (verify) {
        const auto& Gr = *r->G_;
        if (!r->images_[0].is_identity()) throw std::invalid_argument("rep: identity must map to I");
        auto check = [&](int a, int b) {
            if (!(r->images_[a] * r->images_[b] == r->images_[Gr.mul(a, b)]))
                throw std::invalid_argument("rep: not a homomorphism at (" + std::to_string(a) + "," +
                                            std::to_string(b) + ")");
        };
        if (m <= 256) {
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) check(a, b);
        } else {
            std::mt19937_64 rng(0x5eed);
            std::uniform_int_distribution<int> d(0, m - 1);
            for (int k = 0; k < 1000; ++k) check(d(rng), d(rng));
        }
    }
    r->chi_.group = r->G_;
    r->chi_.values.resize(m);
    for (int g = 0; g < m; ++g) r->chi_.values[g] = r->images_[g].trace();
    return r;
}

RepPtr Rep::galois(int64_t t) const {
    std::vector<Mat> im;
    im.reserve(images_.size());
    for (const auto& M : images_) im.push_back(M.galois(t));
    return make(G_, std::move(im), name_ + "^g" + std::to_string(t), false);
}

RepPtr trivial_rep(const GroupPtr& G) {
    return Rep::make(G, std::vector<Mat>(G->order(), Mat::identity(1)), "trivial", false);
}

RepPtr regular_rep(const GroupPtr& G) {
    int m = G->order();
    std::vector<std::vector<int>> perms(m, std::vector<int>(m));
    for (int g = 0; g < m; ++g)
        for (int x = 0; x < m; ++x) perms[g][x] = G->mul(g, x);
    return permutation_rep(G, perms, "regular");
}

RepPtr permutation_rep(const GroupPtr& G, const std::vector<std::vector<int>>& perms, std::string name) {
    int m = G->order();
    if (int(perms.size()) != m) throw std::invalid_argument("permutation_rep: need one permutation per element");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const auto &pa = perms[a], &pb = perms[b], &pab = perms[G->mul(a, b)];
            for (size_t i = 0; i < pb.size(); ++i)
                if (pab[i] != pa[pb[i]]) throw std::invalid_argument("permutation_rep: not an action");
        }
    std::vector<Mat> im;
    for (const auto& p : perms) {
        int k = int(p.size());
        Mat M(k, k);
        for (int i = 0; i < k; ++i) M(p[i], i) = Cyc(1);
        im.push_back(std::move(M));
    }
    return Rep::make(G, std::move(im), std::move(name), false);
}

Cyc inner_product(const Character& a, const Character& b) {
    if (a.group != b.group && a.group->order() != b.group->order())
        throw std::invalid_argument("inner_product: characters of different groups");
    Cyc s;
    for (size_t g = 0; g < a.values.size(); ++g) s += a.values[g] * b.values[g].conj();
    return s * Cyc(Rational(1, int64_t(a.values.size())));
}

bool is_irreducible(const Rep& r) { return inner_product(r.character(), r.character()).is_one(); }

bool is_faithful(const Rep& r) {
    for (int g = 1; g < r.group()->order(); ++g)
        if (r.image(g).is_identity()) return false;
    return true;
}

bool is_unitary(const Rep& r) {
    const auto& G = *r.group();
    for (int g = 0; g < G.order(); ++g)
        if (!(r.image(G.inv(g)) == r.image(g).conj_transpose())) return false;
    return true;
}

std::vector<Cyc> adams_vector(const Rep& r, int g) {
    std::vector<Cyc> v;
    for (int k = 1; k <= r.dim(); ++k) v.push_back(r.character()(r.group()->pow(g, k)));
    return v;
}

namespace {

int compare_vec(const std::vector<Cyc>& a, const std::vector<Cyc>& b, int L) {
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cyc_compare(a[i], b[i], L);
        if (c) return c;
    }
    return 0;
}

}  // namespace

std::vector<std::vector<int>> adams_partition(const Rep& r) {
    int m = r.group()->order();
    int L = r.character().conductor();
    std::vector<std::vector<Cyc>> rows(m);
    for (int g = 0; g < m; ++g) rows[g] = adams_vector(r, g);
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return compare_vec(rows[a], rows[b], L) < 0; });
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < m; ++i) {
        if (i == 0 || compare_vec(rows[idx[i - 1]], rows[idx[i]], L) != 0) blocks.emplace_back();
        blocks.back().push_back(idx[i]);
    }
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a[0] < b[0];
    });
    return blocks;
}

Cyc sigma_value(const Rep& r, int g, int i) {
    int n = r.dim();
    if (i < 1 || i > n) throw std::invalid_argument("sigma_value: index out of range");
    std::vector<Cyc> p(i + 1), e(i + 1);
    for (int k = 1; k <= i; ++k) p[k] = r.character()(r.group()->pow(g, k));
    e[0] = Cyc(1);
    for (int j = 1; j <= i; ++j) {
        Cyc s;
        for (int k = 1; k <= j; ++k) {
            Cyc term = e[j - k] * p[k];
            if (k % 2 == 1) s += term;
            else s -= term;
        }
        e[j] = s * Cyc(Rational(1, j));
    }
    return e[i];
}

Spectrum spectrum_from_character(const Character& chi, int g) {
    const auto& G = *chi.group;
    int d = G.element_order(g);
    Rational n = chi(0).rational();
    Spectrum out;
    int total = 0;
    for (int k = 0; k < d; ++k) {
        Cyc s;
        for (int t = 0; t < d; ++t) s += chi(G.pow(g, t)) * Cyc::root_of_unity(d, -int64_t(k) * t);
        s = s * Cyc(Rational(1, d));
        if (!s.is_rational() || !s.rational().is_integer() || s.rational().sign() < 0)
            throw std::domain_error("spectrum: non-integral multiplicity, input is not a representation");
        int64_t mult = s.rational().small_num();
        if (mult > 0) {
            out.emplace_back(Rational(k, d), int(mult));
            total += int(mult);
        }
    }
    if (!(Rational(total) == n)) throw std::domain_error("spectrum: multiplicities do not sum to the degree");
    std::sort(out.begin(), out.end());
    return out;
}

Spectrum spectrum(const Rep& r, int g) { return spectrum_from_character(r.character(), g); }

Cyc angle_to_cyc(const Rational& a) {
    int64_t num = std::stoll(a.num_str()), den = std::stoll(a.den_str());
    return Cyc::root_of_unity(int(den), num);
}

EigData eig_set(const Rep& r) {
    std::vector<EigSet> per;
    std::vector<Rational> all;
    for (int g = 0; g < r.group()->order(); ++g) {
        EigSet s;
        for (const auto& [a, m] : spectrum(r, g)) s.push_back(a);
        all.insert(all.end(), s.begin(), s.end());
        per.push_back(std::move(s));
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::sort(per.begin(), per.end());
    per.erase(std::unique(per.begin(), per.end()), per.end());
    std::vector<EigSet> maximal;
    for (size_t i = 0; i < per.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < per.size() && !dominated; ++j)
            if (i != j && per[j].size() > per[i].size() &&
                std::includes(per[j].begin(), per[j].end(), per[i].begin(), per[i].end()))
                dominated = true;
        if (!dominated) maximal.push_back(per[i]);
    }
    std::sort(maximal.begin(), maximal.end(), [](const EigSet& a, const EigSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return {all, maximal};
}

RepPtr induced_rep(const GroupPtr& G, const Subgroup& H, const Rep& sigma) {
    if (sigma.group()->order() != H.order()) throw std::invalid_argument("induced_rep: rep is not on the subgroup");
    auto reps = G->coset_reps(H);
    int k = int(reps.size()), d = sigma.dim();
    std::vector<int> pos(G->order(), -1);
    for (int i = 0; i < H.order(); ++i) pos[H.elements[i]] = i;
    std::vector<Mat> im;
    for (int g = 0; g < G->order(); ++g) {
        Mat M(k * d, k * d);
        for (int j = 0; j < k; ++j) {
            int gt = G->mul(g, reps[j]);
            for (int i = 0; i < k; ++i) {
                int h = G->mul(G->inv(reps[i]), gt);
                if (pos[h] < 0) continue;
                const Mat& B = sigma.image(pos[h]);
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) M(i * d + a, j * d + b) = B(a, b);
            }
        }
        im.push_back(std::move(M));
    }
    return Rep::make(G, std::move(im), "Ind(" + sigma.name() + ")");
}

RepPtr restrict_rep(const Rep& r, const Subgroup& H) {
    auto S = r.group()->subgroup_group(H);
    std::vector<Mat> im;
    for (int x : H.elements) im.push_back(r.image(x));
    return Rep::make(S, std::move(im), r.name() + "|H", false);
}

Character galois_conjugate_character(const Character& chi, int64_t t) {
    if (gcd64(t, chi.conductor()) != 1) throw std::invalid_argument("galois_conjugate_character: t not coprime to the conductor");
    Character out{chi.group, chi.values};
    for (auto& v : out.values) v = v.galois(t);
    return out;
}

int fixed_point_dimension(const Rep& r, const Subgroup& H) {
    Cyc s;
    for (int h : H.elements) s += r.character()(h);
    Cyc d = s * Cyc(Rational(1, H.order()));
    if (!d.is_rational() || !d.rational().is_integer()) throw std::domain_error("fixed_point_dimension: non-integral");
    return int(d.rational().small_num());
}

std::vector<Rational> molien_coefficients(const Rep& r, int D) {
    if (D < 0) throw std::invalid_argument("molien_coefficients: negative degree");
    std::vector<Cyc> total(D + 1);
    for (int g = 0; g < r.group()->order(); ++g) {
        std::vector<Cyc> series(D + 1);
        series[0] = Cyc(1);
        for (const auto& [a, mult] : spectrum(r, g)) {
            Cyc c = angle_to_cyc(a).conj();  // eigenvalue of g^-1
            for (int rep = 0; rep < mult; ++rep) {
                // multiply by 1/(1 - c*lambda): s[k] += c*s[k-1], ascending
                for (int k = 1; k <= D; ++k) series[k] += c * series[k - 1];
            }
        }
        for (int k = 0; k <= D; ++k) total[k] += series[k];
    }
    std::vector<Rational> out;
    for (auto& t : total) {
        Cyc v = t * Cyc(Rational(1, r.group()->order()));
        if (!v.is_rational()) throw std::domain_error("molien_coefficients: non-rational coefficient");
        out.push_back(v.rational());
    }
    return out;
}

std::vector<Cyc> range_values(const Character& chi) {
    int L = chi.group->exponent();
    L = int(lcm64(L, chi.conductor()));
    std::vector<Cyc> v = chi.values;
    std::sort(v.begin(), v.end(), [&](const Cyc& a, const Cyc& b) { return cyc_compare(a, b, L) < 0; });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace pirep
