#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "pirep/catalog.hpp"

using namespace pirep;

namespace {

std::vector<int> brute_class_sizes(const FiniteGroup& G) {
    std::vector<int> seen(static_cast<size_t>(G.order()), 0), sizes;
    for (int g = 0; g < G.order(); ++g) {
        if (seen[g]) continue;
        std::set<int> cls;
        for (int h = 0; h < G.order(); ++h) cls.insert(G.conj(h, g));
        for (int c : cls) seen[c] = 1;
        sizes.push_back(int(cls.size()));
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

std::set<int> brute_center(const FiniteGroup& G) {
    std::set<int> z;
    for (int g = 0; g < G.order(); ++g) {
        bool c = true;
        for (int h = 0; h < G.order() && c; ++h) c = G.mul(g, h) == G.mul(h, g);
        if (c) z.insert(g);
    }
    return z;
}

// every subset containing the identity and closed under multiplication
int brute_subgroup_count(const FiniteGroup& G) {
    int m = G.order(), count = 0;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (!(mask & 1u)) continue;
        bool closed = true;
        for (int a = 0; a < m && closed; ++a)
            for (int b = 0; b < m && closed; ++b)
                if ((mask >> a & 1u) && (mask >> b & 1u) && !(mask >> G.mul(a, b) & 1u)) closed = false;
        count += closed;
    }
    return count;
}

int brute_automorphism_count(const FiniteGroup& G) {
    std::vector<int> p(static_cast<size_t>(G.order()));
    std::iota(p.begin(), p.end(), 0);
    int count = 0;
    do {
        bool hom = true;
        for (int a = 0; a < G.order() && hom; ++a)
            for (int b = 0; b < G.order() && hom; ++b) hom = p[G.mul(a, b)] == G.mul(p[a], p[b]);
        count += hom;
    } while (std::next_permutation(p.begin() + 1, p.end()));
    return count;
}

Cyc brute_inner(const Character& a, const Character& b) {
    Cyc s;
    for (size_t g = 0; g < a.values.size(); ++g) s += a.values[g] * b.values[g].conj();
    return s * Cyc(Rational(1, int64_t(a.values.size())));
}

int find_element(const FiniteGroup& G, int order, int class_size) {
    for (int g = 0; g < G.order(); ++g)
        if (G.element_order(g) == order && G.classes().sizes[G.classes().class_of[g]] == class_size) return g;
    return -1;
}

GroupPtr cyclic_group(int n) {
    std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup::from_cayley_table(t);
}

}  // namespace

TEST_CASE("cayley tables") {
    CHECK(cyclic_group(3)->order() == 3);
    std::vector<std::vector<int>> bad{{0, 1, 2}, {1, 2, 0}, {2, 1, 0}};
    CHECK_THROWS(FiniteGroup::from_cayley_table(bad));
    auto S4 = catalog_group("S4").group;
    CHECK(S4->order() == 24);
    CHECK(S4->classes().classes.size() == 5);
}

TEST_CASE("conjugacy classes against brute force") {
    CHECK(catalog_group("S4").group->classes().sizes == std::vector<int>{8, 6, 6, 3, 1});
    for (auto name : {"Q8", "S3", "A4", "A5", "2T", "H3", "Z6"}) {
        auto G = catalog_group(name).group;
        CHECK_MESSAGE(G->classes().sizes == brute_class_sizes(*G), name);
    }
    CHECK(catalog_group("Q8").group->classes().sizes == std::vector<int>{2, 2, 2, 1, 1});
    auto Z6 = catalog_group("Z6").group;
    CHECK(Z6->classes().sizes == std::vector<int>(6, 1));
}

TEST_CASE("order statistics") {
    CHECK(catalog_group("A5").group->order_statistics() == std::vector<int>{1, 2, 3, 5});
    CHECK(catalog_group("Z6").group->order_statistics() == std::vector<int>{1, 2, 3, 6});
    CHECK(catalog_group("S3").group->element_order(0) == 1);
}

TEST_CASE("upper central series") {
    auto Z6 = catalog_group("Z6").group;
    auto s = Z6->upper_central_series();
    REQUIRE(s.size() == 2);
    CHECK(s[0].order() == 1);
    CHECK(s[1].order() == 6);

    auto H = catalog_group("H3").group;
    auto h = H->upper_central_series();
    REQUIRE(h.size() == 3);
    CHECK(h[1].order() == 3);
    auto z = brute_center(*H);
    CHECK(std::set<int>(h[1].elements.begin(), h[1].elements.end()) == z);
    CHECK(h[2].order() == 27);

    auto S3 = catalog_group("S3").group;
    auto t = S3->upper_central_series();
    CHECK(t.back().order() == 1);
}

TEST_CASE("subgroups and centralizers") {
    auto Z6 = catalog_group("Z6").group;
    std::set<int> orders;
    for (auto& h : Z6->all_subgroups()) orders.insert(h.order());
    CHECK(orders == std::set<int>{1, 2, 3, 6});
    CHECK(Z6->centralizer(0).order() == 6);
    auto Q8 = catalog_group("Q8").group;
    CHECK(Q8->all_subgroups().size() == 6);
    CHECK(brute_subgroup_count(*Q8) == 6);
}

TEST_CASE("automorphisms") {
    auto Z5 = cyclic_group(5);
    CHECK(Z5->automorphisms(Z5->generators()).size() == 4);
    auto Q8 = catalog_group("Q8").group;
    CHECK(Q8->automorphisms(Q8->generators()).size() == 24);
    CHECK(brute_automorphism_count(*Q8) == 24);
    auto V = elementary_abelian(2, 2);
    CHECK(V->automorphisms(V->generators()).size() == 6);
}

TEST_CASE("power maps") {
    auto Z6 = catalog_group("Z6").group;
    auto id = Z6->power_map(1);
    REQUIRE(id);
    for (int g = 0; g < 6; ++g) CHECK((*id)[g] == g);
    auto inv = Z6->power_map(5);
    REQUIRE(inv);
    for (int g = 0; g < 6; ++g) CHECK((*inv)[g] == Z6->inv(g));
    CHECK_FALSE(catalog_group("S4").group->power_map(2));
}

TEST_CASE("inner products") {
    auto S3 = catalog_group("S3");
    auto triv = S3.rep("triv"), d2 = S3.rep("dim2");
    CHECK(inner_product(triv->character(), triv->character()) == Cyc(1));
    CHECK(inner_product(d2->character(), d2->character()) == Cyc(1));
    CHECK(brute_inner(d2->character(), d2->character()) == Cyc(1));
    auto S4 = catalog_group("S4");
    CHECK(inner_product(S4.rep("rho4")->character(), S4.rep("rho5")->character()) == Cyc(0));
    CHECK(brute_inner(S4.rep("rho4")->character(), S4.rep("rho5")->character()) == Cyc(0));
}

TEST_CASE("irreducible, faithful, unitary") {
    CHECK_FALSE(is_irreducible(*catalog_group("Z2").rep("regular")));
    auto a4 = catalog_group("A5").rep("dim4");
    CHECK(is_irreducible(*a4));
    CHECK(is_faithful(*a4));
    CHECK(brute_inner(a4->character(), a4->character()) == Cyc(1));
    CHECK(is_unitary(*catalog_group("S4").rep("perm")));
}

TEST_CASE("adams partitions") {
    auto triv = catalog_group("S4").rep("rho1");
    CHECK(adams_partition(*triv).size() == 1);
    auto Z6 = catalog_group("Z6");
    auto chi = Z6.rep("chi1");
    CHECK(adams_partition(*chi).size() == range_values(chi->character()).size());
    auto rho3 = catalog_group("S4").rep("rho3");
    auto blocks = adams_partition(*rho3);
    CHECK(blocks.size() < 5);
    // brute-force Adams rows: (chi(g^k))_k over the exponent
    const auto& G = *rho3->group();
    std::set<std::vector<std::string>> rows;
    for (int g = 0; g < G.order(); ++g) {
        std::vector<std::string> row;
        for (int k = 1; k <= G.exponent(); ++k) row.push_back(rho3->character()(G.pow(g, k)).str());
        rows.insert(row);
    }
    CHECK(blocks.size() == rows.size());
}

TEST_CASE("elementary symmetric functions of eigenvalues") {
    auto d2 = catalog_group("S3").rep("dim2");
    for (int g = 0; g < 6; ++g) {
        CHECK(sigma_value(*d2, g, 1) == d2->character()(g));
        CHECK(sigma_value(*d2, g, 2) == d2->image(g).det());
    }
    auto perm = catalog_group("S4").rep("perm");
    for (int g = 0; g < 24; ++g) CHECK(sigma_value(*perm, g, perm->dim()) == perm->image(g).det());
}

TEST_CASE("spectra") {
    auto perm = catalog_group("S4").rep("perm");
    CHECK(spectrum(*perm, 0) == Spectrum{{Rational(0), perm->dim()}});
    int c4 = find_element(*perm->group(), 4, 6);
    REQUIRE(c4 >= 0);
    Spectrum want{{Rational(0), 1}, {Rational(1, 4), 1}, {Rational(1, 2), 1}, {Rational(3, 4), 1}};
    CHECK(spectrum(*perm, c4) == want);
    CHECK(spectrum_from_character(perm->character(), c4) == want);
    auto d2 = catalog_group("S3").rep("dim2");
    int t = find_element(*d2->group(), 2, 3);
    CHECK(spectrum(*d2, t) == Spectrum{{Rational(0), 1}, {Rational(1, 2), 1}});
}

TEST_CASE("eigenvalue sets") {
    auto triv = catalog_group("S3").rep("triv");
    auto e = eig_set(*triv);
    CHECK(e.maximal == std::vector<EigSet>{{Rational(0)}});
    auto tau = catalog_group("A4").rep("dim3");
    auto a = eig_set(*tau);
    std::set<EigSet> maxi(a.maximal.begin(), a.maximal.end());
    CHECK(maxi == std::set<EigSet>{{Rational(0), Rational(1, 2)}, {Rational(0), Rational(1, 3), Rational(2, 3)}});
    // the 4-cycle has eigenvalues 1, i, -i in rho4 and -1, i, -i in rho5
    auto has = [](const EigData& d, const EigSet& want) {
        return std::find(d.maximal.begin(), d.maximal.end(), want) != d.maximal.end();
    };
    auto r4 = eig_set(*catalog_group("S4").rep("rho4"));
    auto r5 = eig_set(*catalog_group("S4").rep("rho5"));
    CHECK(has(r4, {Rational(0), Rational(1, 4), Rational(3, 4)}));
    CHECK(has(r5, {Rational(1, 4), Rational(1, 2), Rational(3, 4)}));
}

TEST_CASE("induction and restriction") {
    auto S3 = catalog_group("S3");
    auto d2 = S3.rep("dim2");
    auto whole = induced_rep(S3.group, S3.group->whole(), *d2);
    CHECK(whole->character().values == d2->character().values);

    auto Z4 = catalog_group("Z4");
    Subgroup H = Z4.group->subgroup_generated({Z4.group->pow(Z4.gens[0], 2)});
    auto HG = Z4.group->subgroup_group(H);
    auto sign = Rep::make(HG, {Mat::identity(1), Mat::scalar(1, Cyc(-1))}, "sign");
    auto ind = induced_rep(Z4.group, H, *sign);
    REQUIRE(ind->dim() == 2);
    int g = Z4.gens[0];
    CHECK(ind->character()(0) == Cyc(2));
    CHECK(ind->character()(g) == Cyc(0));
    CHECK(ind->character()(Z4.group->pow(g, 2)) == Cyc(-2));
    CHECK(ind->character()(Z4.group->pow(g, 3)) == Cyc(0));

    auto gam = gamma_d(7, 9, 2);
    auto pi = pi_kl(gam, 1, 1);
    auto res = restrict_rep(*pi, gam.group->center());
    for (auto& M : res->images()) CHECK(M.scalar_value().has_value());
}

TEST_CASE("galois conjugate characters") {
    auto A5 = catalog_group("A5");
    auto a = A5.rep("dim3a"), b = A5.rep("dim3b");
    CHECK(galois_conjugate_character(a->character(), 1).values == a->character().values);
    CHECK(galois_conjugate_character(a->character(), 2).values == b->character().values);
    for (size_t g = 0; g < a->character().values.size(); ++g)
        CHECK(a->character().values[g].galois(2) == b->character().values[g]);
}

TEST_CASE("molien series and fixed points") {
    auto Z2 = catalog_group("Z2").group;
    auto triv1 = Rep::make(cyclic_group(1), {Mat::identity(2)}, "I2");
    auto c = molien_coefficients(*triv1, 4);
    for (int d = 0; d <= 4; ++d) CHECK(c[d] == Rational(d + 1));
    auto neg = Rep::make(Z2, {Mat::identity(2), Mat::scalar(2, Cyc(-1))}, "neg");
    auto mc = molien_coefficients(*neg, 5);
    CHECK(mc == std::vector<Rational>{Rational(1), Rational(0), Rational(3), Rational(0), Rational(5), Rational(0)});
    auto a4 = catalog_group("A5").rep("dim4");
    CHECK(fixed_point_dimension(*a4, a4->group()->whole()) == 0);
}

TEST_CASE("S4 character table") {
    auto S4 = catalog_group("S4");
    const auto& G = *S4.group;
    // class rep value columns by (order, class size): 1, (12), (12)(34), (123), (1234)
    std::vector<std::pair<int, int>> cols{{1, 1}, {2, 6}, {2, 3}, {3, 8}, {4, 6}};
    std::map<std::string, std::vector<int>> table{{"rho1", {1, 1, 1, 1, 1}},
                                                  {"rho2", {1, -1, 1, 1, -1}},
                                                  {"rho3", {2, 0, 2, -1, 0}},
                                                  {"rho4", {3, -1, -1, 0, 1}},
                                                  {"rho5", {3, 1, -1, 0, -1}}};
    for (auto& [name, row] : table) {
        auto r = S4.rep(name);
        for (size_t k = 0; k < cols.size(); ++k) {
            int g = find_element(G, cols[k].first, cols[k].second);
            REQUIRE(g >= 0);
            CHECK_MESSAGE(r->character()(g) == Cyc(row[k]), name);
        }
    }
}

TEST_CASE("catalog dimensions") {
    auto A5 = catalog_group("A5");
    std::multiset<int> dims;
    for (auto n : {"triv", "dim3a", "dim3b", "dim4", "dim5"}) {
        auto r = A5.rep(n);
        CHECK(is_irreducible(*r));
        dims.insert(r->dim());
    }
    CHECK(dims == std::multiset<int>{1, 3, 3, 4, 5});

    auto H = catalog_group("H3");
    auto z = H.group->center();
    for (auto n : {"theta1", "theta2"}) {
        auto r = H.rep(n);
        CHECK(r->dim() == 3);
        CHECK(is_irreducible(*r));
        for (int g = 0; g < H.group->order(); ++g)
            if (!z.contains(g)) CHECK(r->character()(g).is_zero());
    }
}

TEST_CASE("metacyclic groups") {
    auto g = gamma_d(7, 9, 2);
    CHECK(g.group->order() == 63);
    CHECK(g.d == 3);
    CHECK(g.n1 == 3);
    auto z7 = [](int k) { return Cyc::root_of_unity(7, k); };
    CHECK(pi_kl(g, 1, 1)->image(g.A) == Mat::diag({z7(1), z7(2), z7(4)}));
    CHECK(gamma_condition_violations(7, 9, 2).empty());

    // pi_{k,l} ~ pi_{k',l'} iff l = l' mod n' and k' in k<r>
    std::vector<std::pair<int, int>> kl;
    for (int k = 1; k < 7; ++k)
        for (int l = 1; l < 9; ++l)
            if (std::gcd(l, 3) == 1) kl.push_back({k, l});
    std::vector<RepPtr> reps;
    for (auto [k, l] : kl) reps.push_back(pi_kl(g, k, l));
    auto orbit = [](int k) {
        std::set<int> o;
        for (int c = 0; c < 3; ++c) o.insert(k * (c == 0 ? 1 : c == 1 ? 2 : 4) % 7);
        return o;
    };
    for (size_t a = 0; a < kl.size(); ++a)
        for (size_t b = a; b < kl.size(); ++b) {
            bool same = reps[a]->character().values == reps[b]->character().values;
            bool want = kl[a].second % 3 == kl[b].second % 3 && orbit(kl[a].first).count(kl[b].first);
            CHECK(same == want);
        }

    for (int x = 1; x < g.group->order(); ++x) {
        auto s = spectrum(*reps[0], x);
        CHECK(s.front().first != Rational(0));
    }

    // induced from sigma'_1 (x) sigma''_1 on <A, B^3>
    int B3 = g.group->pow(g.B, 3);
    Subgroup H = g.group->subgroup_generated({g.A, B3});
    auto HG = g.group->subgroup_group(H);
    auto pos = [&](int e) { return int(std::lower_bound(H.elements.begin(), H.elements.end(), e) - H.elements.begin()); };
    std::vector<Mat> imgs(static_cast<size_t>(HG->order()));
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 3; ++j) imgs[pos(g.element(i, 3 * j))] = Mat::scalar(1, z7(i) * Cyc::root_of_unity(3, j));
    auto lin = Rep::make(HG, imgs, "lin");
    auto ind = induced_rep(g.group, H, *lin);
    CHECK(ind->character().values == pi_kl(g, 1, 1)->character().values);
}

TEST_CASE("wreath product forms") {
    auto G = wreath(3);
    CHECK(G->order() == 81);
    int p = 3;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                std::vector<int> w{a, b, c};
                bool adm = is_admissible(w, p);
                CHECK(adm == ((a + b + c) % 3 != 0));
                CHECK(adm == circulant_invertible(circulant(w, p), p));
                // determinant oracle mod p
                auto C = circulant(w, p);
                int det = C[0][0] * (C[1][1] * C[2][2] - C[1][2] * C[2][1]) -
                          C[0][1] * (C[1][0] * C[2][2] - C[1][2] * C[2][0]) +
                          C[0][2] * (C[1][0] * C[2][1] - C[1][1] * C[2][0]);
                CHECK((((det % 3) + 3) % 3 != 0) == adm);
                if (adm) CHECK(rho_w(G, p, w)->dim() == 3);
            }
    auto h = find_unit_h(3);
    CHECK(h.circulant.size() == 3);
}

TEST_CASE("elementary abelian diagonal reps") {
    auto G = elementary_abelian(3, 2);
    auto r = abelian_rep(G, 3, 2, {{1, 0}, {0, 1}});
    CHECK(r->dim() == 2);
    CHECK(is_faithful(*r));
    for (int g = 0; g < G->order(); ++g) {
        const Mat& M = r->image(g);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (i != j) CHECK(M(i, j).is_zero());
    }
}

TEST_CASE("characters are class functions on random catalog reps") {
    std::mt19937_64 rng(7);
    for (auto name : catalog_names()) {
        if (name.rfind("gamma", 0) == 0 || name.rfind("wreath", 0) == 0) continue;
        auto cg = catalog_group(name);
        const auto& G = *cg.group;
        std::uniform_int_distribution<int> pick(0, G.order() - 1);
        for (auto& rn : cg.rep_order) {
            auto r = cg.rep(rn);
            for (int trial = 0; trial < 10; ++trial) {
                int g = pick(rng), h = pick(rng);
                CHECK(r->character()(G.conj(h, g)) == r->character()(g));
                CHECK(r->image(G.mul(g, h)) == r->image(g) * r->image(h));
            }
        }
    }
}
