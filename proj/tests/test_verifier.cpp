#include <random>

#include "doctest.h"
#include "pirep/catalog.hpp"
#include "pirep/identity.hpp"
#include "pirep/verifier.hpp"

using namespace pirep;

namespace {

IdentityDoc plain(const Expr& e) {
    IdentityDoc d;
    d.family = "plain";
    d.expr = e;
    for (auto& v : free_vars(e)) d.roles[v] = VarRole{"psi-argument", ""};
    return d;
}

// fraction of assignments on which u vanishes, by direct enumeration
Rational brute_probability(const Expr& u, const RepPtr& r) {
    auto vars = free_vars(u);
    int m = r->group()->order();
    int64_t total = 1, zero = 0;
    for (size_t i = 0; i < vars.size(); ++i) total *= m;
    for (int64_t k = 0; k < total; ++k) {
        Assignment a;
        int64_t c = k;
        for (auto& v : vars) {
            a[v] = int(c % m);
            c /= m;
        }
        zero += evaluate(u, a, r).is_zero();
    }
    return Rational(zero, total);
}

Expr random_word(std::mt19937_64& rng, int len) {
    static const char* names[] = {"x", "y"};
    std::vector<Expr> f;
    for (int i = 0; i < len; ++i) {
        Expr v = variable(names[rng() % 2]);
        f.push_back(rng() % 2 ? v : inverse(v));
    }
    return product(std::move(f));
}

}  // namespace

TEST_CASE("exhaustive verification") {
    auto v = holds_exhaustive(guard_C(3), catalog_group("Z2").rep("regular"));
    CHECK(v.holds);
    CHECK(v.evidence.kind == Evidence::Exhaustive);
    CHECK(v.evidence.str() == "exhaustive");

    auto chi = catalog_group("Z3").rep("chi1");
    auto f = holds_exhaustive(plain(power(variable("x"), 2) - Cyc(1)), chi);
    CHECK_FALSE(f.holds);
    REQUIRE(f.counterexample);
    CHECK(f.counterexample->at("x") != 0);

    IdentityDoc z;
    z.family = "zero";
    z.expr = constant(Cyc(0));
    CHECK(holds_exhaustive(z, chi).holds);

    VerifyOptions tight;
    tight.budget = 10;
    CHECK_THROWS_AS(holds_exhaustive(plain(variable("x") * variable("y") * variable("z")),
                                     catalog_group("S3").rep("dim2"), tight),
                    std::length_error);
}

TEST_CASE("guarded verification") {
    auto A5 = catalog_group("A5");
    auto d = character_identity(*A5.rep("dim4"));
    auto v = holds_guarded(d, A5.rep("dim4"));
    CHECK(v.holds);
    CHECK(v.evidence.kind == Evidence::Guarded);

    auto S4 = catalog_group("S4");
    auto w = holds_guarded(s4_separating_identity(1), S4.rep("rho5"));
    CHECK_FALSE(w.holds);
    REQUIRE(w.counterexample);
    int x = w.counterexample->at("x");
    CHECK(S4.group->element_order(x) == 4);
    CHECK(witness_nonzero(s4_separating_identity(1), S4.rep("rho5"), *w.counterexample));

    CHECK(holds_guarded(dimension_identity(6, 2), catalog_group("S3").rep("dim2")).holds);
    CHECK_THROWS(holds_guarded(plain(variable("x")), catalog_group("S3").rep("dim2")));
}

TEST_CASE("sampled verification") {
    auto S3 = catalog_group("S3");
    auto r = S3.rep("dim2");
    for (auto d : {character_identity(*r), dimension_identity(6, 2), range_identity(*r, Cyc(-1)), spectrum_identity(*r)}) {
        auto v = holds_sampled(d, r);
        CHECK_MESSAGE(v.holds, d.family);
        CHECK(v.evidence.kind == Evidence::Sampled);
        CHECK(v.evidence.samples == 500);
    }
    VerifyOptions o;
    o.samples = 50;
    o.seed = 99;
    auto reg = catalog_group("Z2").rep("regular");
    auto d = plain(power(variable("x"), 3) - Cyc(1));
    auto f = holds_sampled(d, reg, o);
    CHECK_FALSE(f.holds);
    CHECK(f.evidence.str() == "sampled(50, 99)");
    auto g = holds_sampled(d, reg, o);
    REQUIRE(f.counterexample);
    REQUIRE(g.counterexample);
    CHECK(*f.counterexample == *g.counterexample);
    CHECK(f.assignments == g.assignments);
}

TEST_CASE("verdicts are seed stable and independent of jobs") {
    auto S4 = catalog_group("S4");
    VerifyOptions one, two;
    two.jobs = 2;
    auto a = holds_guarded(s4_separating_identity(-1), S4.rep("rho4"), one);
    auto b = holds_guarded(s4_separating_identity(-1), S4.rep("rho4"), two);
    CHECK(a.holds == b.holds);
    REQUIRE(a.counterexample);
    REQUIRE(b.counterexample);
    CHECK(*a.counterexample == *b.counterexample);
    auto c = holds_guarded(s4_separating_identity(-1), S4.rep("rho4"), one);
    CHECK(*a.counterexample == *c.counterexample);
}

TEST_CASE("auto mode and vacuous documents") {
    auto r = catalog_group("S3").rep("dim2");
    CHECK(check(dimension_identity(6, 2), r, "auto").evidence.kind == Evidence::Guarded);
    CHECK(check(plain(variable("x") * inverse(variable("x")) - Cyc(1)), r, "auto").evidence.kind == Evidence::Exhaustive);
    auto vac = central_series_gassmann_identity(*catalog_group("Z6").rep("chi1"), 1, 1);
    CHECK(check(vac, catalog_group("Z6").rep("chi1"), "guarded").holds);
    CHECK_THROWS(check(vac, r, "bogus"));
}

TEST_CASE("scalar checks") {
    auto r = catalog_group("S3").rep("dim2");
    auto P = psi(6);
    Assignment a{{"x", 1}};
    for (int j = 0; j < 6; ++j) a["y" + std::to_string(j + 1)] = 5 - j;
    auto s = scalar_check(P.expr, r, a);
    REQUIRE(s);
    CHECK(*s == Cyc(3) * r->character()(1));
    int nonscalar = -1;
    for (int g = 0; g < 6 && nonscalar < 0; ++g)
        if (!r->image(g).scalar_value()) nonscalar = g;
    CHECK_FALSE(scalar_check(variable("x"), r, {{"x", nonscalar}}));
}

TEST_CASE("expectations") {
    auto r = catalog_group("S3").rep("dim2");
    Expr x = variable("x"), y = variable("y");
    CHECK(expectation(commutator(x, y), r) == Mat::scalar(2, Cyc(Rational(1, 4))));
    CHECK(expectation(x, r).is_zero());
    // E(uu*) = 0 iff u is an identity
    std::mt19937_64 rng(4);
    for (auto ref : {std::pair{"S3", "dim2"}, std::pair{"Z4", "chi1"}, std::pair{"Q8", "dim2"}}) {
        auto rep = catalog_group(ref.first).rep(ref.second);
        for (int trial = 0; trial < 15; ++trial) {
            Expr u = random_word(rng, 2 + int(rng() % 5)) - Cyc(1);
            bool zero = expectation(gram(u), rep).is_zero();
            CHECK(zero == holds_exhaustive(plain(u), rep).holds);
        }
    }
}

TEST_CASE("relation probabilities") {
    Expr u = parse_expr("[x,y] - 1");
    CHECK(relation_probability(u, catalog_group("S3").rep("dim2")) == Rational(1, 2));
    CHECK(relation_probability(u, catalog_group("S3").rep("regular")) == Rational(1, 2));
    CHECK(relation_probability(u, catalog_group("Z6").rep("chi1")) == Rational(1));
    std::mt19937_64 rng(8);
    for (auto ref : {std::pair{"S3", "regular"}, std::pair{"Q8", "dim2"}, std::pair{"A4", "dim3"}}) {
        auto rep = catalog_group(ref.first).rep(ref.second);
        for (int trial = 0; trial < 10; ++trial) {
            Expr w = random_word(rng, 2 + int(rng() % 5)) - Cyc(1);
            Rational p = relation_probability(w, rep);
            CHECK(p == brute_probability(w, rep));
            CHECK((p == Rational(1)) == holds_exhaustive(plain(w), rep).holds);
        }
    }
}

TEST_CASE("SL2 sampling") {
    auto mats = sl2_sample(50, 3);
    for (auto& M : mats) CHECK(M.det() == Cyc(1));
    CHECK(sl2_sample_check(s2_identity().expr, 1000).holds);
    CHECK(sl2_sample_check(sl2_trace_identity().expr, 1000).holds);
    Expr x = variable("x"), y = variable("y");
    Expr bad = (y + inverse(y)) * x - scaled(Cyc(2), x);
    auto v = sl2_sample_check(bad, 50);
    CHECK_FALSE(v.holds);
    REQUIRE(v.counterexample);
    CHECK_FALSE(evaluate_matrices(bad, *v.counterexample).is_zero());
    CHECK(v.counterexample->at("y").trace() != Cyc(2));
}

TEST_CASE("verdict json") {
    auto S4 = catalog_group("S4");
    auto v = holds_guarded(s4_separating_identity(1), S4.rep("rho5"));
    json j = verdict_to_json(v, S4.group);
    CHECK(j["status"] == "fails");
    CHECK(j["evidence"] == "guarded");
    CHECK(j["seed"] == kDefaultSeed);
    CHECK(j.contains("witness"));
    CHECK(j["witness"]["x"]["label"].get<std::string>().size() > 2);
}
