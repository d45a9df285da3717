#include <random>
#include <set>

#include "doctest.h"
#include "pirep/catalog.hpp"
#include "pirep/equivalence.hpp"

using namespace pirep;

namespace {

// direct sum of one-dimensional reps given by catalog characters chi_k
RepPtr cyclic_sum(const CatalogGroup& c, const std::vector<int>& ks) {
    const auto& G = c.group;
    std::vector<Mat> images;
    for (int g = 0; g < G->order(); ++g) {
        std::vector<Cyc> d;
        for (int k : ks) d.push_back(c.rep("chi" + std::to_string(k))->image(g)(0, 0));
        images.push_back(Mat::diag(d));
    }
    return Rep::make(G, images, "sum");
}

bool alpha_is_similarity(const Rep& a, const Rep& b, const std::vector<int>& alpha) {
    const auto& G = *a.group();
    std::set<int> img(alpha.begin(), alpha.end());
    if (int(img.size()) != G.order()) return false;
    for (int x = 0; x < G.order(); ++x) {
        if (!(b.character()(alpha[x]) == a.character()(x))) return false;
        for (int y = 0; y < G.order(); ++y)
            if (alpha[G.mul(x, y)] != G.mul(alpha[x], alpha[y])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("range signatures") {
    auto S4 = catalog_group("S4");
    auto sig = range_signature(S4.rep("rho4")->character());
    std::set<std::pair<std::string, int>> got;
    for (auto& [v, c] : sig) got.insert({v.str(), c});
    std::set<std::pair<std::string, int>> want{{"3", 1}, {"-1", 9}, {"0", 8}, {"1", 6}};
    CHECK(got == want);
    int total = 0;
    for (auto& [v, c] : sig) total += c;
    CHECK(total == 24);
    CHECK(range_signature_equal(S4.rep("rho4")->character(), S4.rep("rho5")->character()));
    CHECK(range_equal(S4.rep("rho4")->character(), S4.rep("rho5")->character()));
    auto t = range_signature(S4.rep("rho1")->character());
    REQUIRE(t.size() == 1);
    CHECK(t[0].second == 24);
    CHECK_FALSE(range_equal(S4.rep("rho1")->character(), S4.rep("rho2")->character()));
}

TEST_CASE("gassmann equivalence") {
    auto S4 = catalog_group("S4");
    for (auto& n : S4.rep_order) CHECK(gassmann_equivalent(*S4.rep(n), *S4.rep(n)));
    CHECK_FALSE(gassmann_equivalent(*S4.rep("rho4"), *S4.rep("rho5")));
    CHECK_FALSE(spectral_signature(*S4.rep("rho4")) == spectral_signature(*S4.rep("rho5")));

    auto gam = gamma_catalog(7, 9, 2);
    auto p11 = gam.rep("pi_1_1"), p12 = gam.rep("pi_1_2");
    CHECK(gassmann_equivalent(*p11, *p12));
    CHECK(spectral_signature(*p11) == spectral_signature(*p12));
}

TEST_CASE("cyclic groups: gassmann reps are similar") {
    std::mt19937 rng(11);
    for (int n = 2; n <= 12; ++n) {
        auto c = cyclic(n);
        for (int trial = 0; trial < 12; ++trial) {
            int d = 1 + int(rng() % 3);
            std::vector<int> ka, kb;
            for (int i = 0; i < d; ++i) ka.push_back(int(rng() % n));
            // half the time b is a unit multiple of a
            if (trial % 2 == 0) {
                int u;
                do u = 1 + int(rng() % n);
                while (std::gcd(u, n) != 1);
                for (int k : ka) kb.push_back(k * u % n);
            } else {
                for (int i = 0; i < d; ++i) kb.push_back(int(rng() % n));
            }
            auto a = cyclic_sum(c, ka), b = cyclic_sum(c, kb);
            bool gm = gassmann_equivalent(*a, *b);
            auto alpha = similar_reps(*a, *b);
            if (gm) {
                CHECK(alpha.has_value());
            }
            if (alpha) {
                CHECK(alpha_is_similarity(*a, *b, *alpha));
            }
            if (trial % 2 == 0) {
                CHECK(gm);
            }
        }
    }
}

TEST_CASE("table equivalence") {
    auto S4 = catalog_group("S4");
    CHECK(table_equivalent(S4.rep("rho4")->character(), S4.rep("rho5")->character()));
    CHECK(strongly_table_equivalent(S4.rep("rho4")->character(), S4.rep("rho5")->character()));
    CHECK_FALSE(table_equivalent(S4.rep("rho3")->character(), S4.rep("rho4")->character()));
    CHECK_FALSE(strongly_table_equivalent(S4.rep("rho3")->character(), S4.rep("rho4")->character()));
}

TEST_CASE("galois conjugacy and similarity") {
    auto A5 = catalog_group("A5");
    auto a = A5.rep("dim3a"), b = A5.rep("dim3b");
    auto t = galois_conjugate_reps(*a, *b);
    REQUIRE(t.has_value());
    CHECK(std::gcd(*t, int64_t(60)) == 1);
    auto gb = galois_conjugate_character(a->character(), *t);
    CHECK(gb.values == b->character().values);

    auto same = galois_conjugate_reps(*a, *a);
    REQUIRE(same.has_value());
    CHECK(*same == 1);
    auto id = similar_reps(*a, *a);
    REQUIRE(id.has_value());
    for (int g = 0; g < A5.group->order(); ++g) CHECK((*id)[g] == g);

    auto alpha = similar_reps(*a, *b);
    REQUIRE(alpha.has_value());
    CHECK(alpha_is_similarity(*a, *b, *alpha));

    auto W = wreath_catalog(3);
    CHECK_FALSE(galois_conjugate_reps(*W.rep("rho_w"), *W.rep("rho_hw")).has_value());
}

TEST_CASE("uniform gassmann") {
    auto A5 = catalog_group("A5");
    CHECK(uniformly_gassmann(*A5.rep("dim3a"), *A5.rep("dim3b")).equivalent);

    auto H = catalog_group("H3");
    auto h = uniformly_gassmann(*H.rep("theta1"), *H.rep("theta2"));
    CHECK(h.equivalent);
    CHECK(h.failing.empty());
    CHECK(galois_conjugate_reps(*H.rep("theta1"), *H.rep("theta2")).has_value());

    auto W = wreath_catalog(3);
    auto w = uniformly_gassmann(*W.rep("rho_w"), *W.rep("rho_hw"));
    CHECK_FALSE(w.equivalent);
    REQUIRE_FALSE(w.failing.empty());
    for (size_t i = 1; i < w.failing.size(); ++i) CHECK(w.failing[i - 1].order() >= w.failing[i].order());
    CHECK(gassmann_equivalent(*W.rep("rho_w"), *W.rep("rho_hw")));

    auto j1 = uniformly_gassmann(*W.rep("rho_w"), *W.rep("rho_hw"), 1);
    auto j2 = uniformly_gassmann(*W.rep("rho_w"), *W.rep("rho_hw"), 2);
    CHECK(j1.failing == j2.failing);
}

TEST_CASE("compare records") {
    auto S4 = catalog_group("S4");
    auto r = compare_reps(*S4.rep("rho4"), *S4.rep("rho4"));
    const auto& p = r.contains("predicates") ? r["predicates"] : r;
    for (auto& [k, v] : p.items()) {
        INFO(k);
        if (v.is_boolean()) CHECK(v.get<bool>());
        else CHECK_FALSE(v.is_null());
    }
    auto q = compare_reps(*S4.rep("rho4"), *S4.rep("rho5"));
    const auto& pq = q.contains("predicates") ? q["predicates"] : q;
    CHECK(pq["range_equal"].get<bool>());
    CHECK_FALSE(pq["gassmann"].get<bool>());
}

TEST_CASE("experiments") {
    for (auto& name : experiment_names()) {
        INFO(name);
        auto r = run_experiment(name);
        CHECK(r["experiment"] == name);
        REQUIRE(r.contains("result"));
    }
    CHECK_THROWS(run_experiment("nonsense"));
}

TEST_CASE("parametrized abelian reps") {
    for (int p : {3, 5}) {
        auto G = elementary_abelian(p, 2);
        auto v1 = abelian_rep(G, p, 2, {{1, 0}, {0, 1}, {1, 1}});
        auto v2 = abelian_rep(G, p, 2, {{1, 0}, {0, 1}, {1, p - 1}});
        CHECK(range_signature_equal(v1->character(), v2->character()));
        auto alpha = similar_reps(*v1, *v2);
        REQUIRE(alpha.has_value());
        CHECK(alpha_is_similarity(*v1, *v2, *alpha));
    }
    auto G = elementary_abelian(3, 2);
    std::vector<std::vector<std::vector<int>>> inv{{{1, 0}, {0, 1}}, {{1, 1}, {0, 1}}, {{2, 1}, {1, 1}}, {{0, 1}, {1, 0}}};
    for (auto& U : inv)
        for (auto& V : inv) CHECK(similar_reps(*abelian_rep(G, 3, 2, U), *abelian_rep(G, 3, 2, V)).has_value());
}

TEST_CASE("cyclic vs klein four signatures") {
    auto z4 = cyclic(4).rep("regular");
    auto v4 = regular_rep(elementary_abelian(2, 2));
    CHECK_FALSE(spectral_signature(*z4) == spectral_signature(*v4));
    auto a = range_signature(cyclic(4).rep("chi1")->character());
    auto b = range_signature(abelian_rep(elementary_abelian(2, 2), 2, 2, {{1, 0}})->character());
    CHECK_FALSE(a == b);
}
