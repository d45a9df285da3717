#include <random>

#include "doctest.h"
#include "pirep/cyc.hpp"
#include "pirep/matrix.hpp"

using namespace pirep;

namespace {

// naive polynomial remainder mod Phi_N over the integers, used as an oracle
std::vector<long long> naive_phi(int N) {
    // Phi_N via the product over primitive roots is awkward; use division of x^N-1
    std::vector<std::vector<long long>> phis(N + 1);
    for (int n = 1; n <= N; ++n) {
        std::vector<long long> p(n + 1, 0);
        p[0] = -1;
        p[n] = 1;
        for (int d = 1; d < n; ++d) {
            if (n % d) continue;
            const auto& q = phis[d];
            int dq = int(q.size()) - 1;
            std::vector<long long> quo(p.size() - dq, 0);
            for (int i = int(p.size()) - 1; i >= dq; --i) {
                long long c = p[i];
                quo[i - dq] = c;
                for (int j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
            }
            p = quo;
        }
        phis[n] = p;
    }
    return phis[N];
}

std::vector<long long> naive_reduce(std::vector<long long> a, int N) {
    auto phi = naive_phi(N);
    int d = int(phi.size()) - 1;
    for (int i = int(a.size()) - 1; i >= d; --i) {
        long long c = a[i];
        if (!c) continue;
        for (int j = 0; j <= d; ++j) a[i - d + j] -= c * phi[j];
    }
    a.resize(d);
    return a;
}

Cyc from_ints(int N, const std::vector<long long>& v) {
    std::vector<Rational> c;
    for (long long x : v) c.emplace_back(x);
    return Cyc(N, c);
}

Cyc z(int N, int k) { return Cyc::root_of_unity(N, k); }

Cyc sqrt5() { return z(5, 1) - z(5, 2) - z(5, 3) + z(5, 4); }

Cyc random_cyc(std::mt19937_64& rng, int N) {
    std::uniform_int_distribution<int> coef(-4, 4), den(1, 3);
    int phi = euler_phi(N);
    std::vector<Rational> c;
    for (int i = 0; i < phi; ++i) c.emplace_back(coef(rng), den(rng));
    return Cyc(N, c);
}

}  // namespace

TEST_CASE("rational basics and overflow promotion") {
    Rational a(6, -4);
    CHECK(a.str() == "-3/2");
    Rational big(int64_t(1) << 62);
    Rational sq = big * big;
    CHECK(!sq.is_small());
    CHECK(sq.str() == "21267647932558653966460912964485513216");
    CHECK((sq / big) == big);
    CHECK((sq / big).is_small());
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK(Rational(2, 3) < Rational(3, 4));
    CHECK(Rational("12345678901234567890123", "3").str() == "4115226300411522630041");
}

TEST_CASE("root of unity constructor") {
    CHECK(z(1, 0) == Cyc(1));
    CHECK(z(4, 2) == Cyc(-1));
    CHECK((z(3, 1) + z(3, 2)) == Cyc(-1));
    CHECK(z(6, 3) == Cyc(-1));
    CHECK(z(7, 7) == Cyc(1));
    CHECK(z(7, -1) == z(7, 6));
}

TEST_CASE("cyc_arith examples") {
    Cyc s = z(5, 1) + z(5, 4);
    CHECK((s * s + s - Cyc(1)).is_zero());
    // oracle: (x + x^4) mod Phi_5 computed naively
    CHECK(s == from_ints(5, naive_reduce({0, 1, 0, 0, 1}, 5)));
    CHECK((Cyc(0) * z(7, 3)).is_zero());
    CHECK(sqrt5() * sqrt5() == Cyc(5));
    // oracle: square of x - x^2 - x^3 + x^4 expanded then reduced
    std::vector<long long> p = {0, 1, -1, -1, 1}, sq(9, 0);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) sq[i + j] += p[i] * p[j];
    auto red = naive_reduce(sq, 5);
    CHECK(from_ints(5, red) == Cyc(5));
    CHECK(cyc_arith(z(3, 1), z(3, 2), "add") == Cyc(-1));
}

TEST_CASE("cyc_inverse examples") {
    CHECK(z(8, 1).inverse() == z(8, 7));
    CHECK(Cyc(2).inverse() == Cyc(Rational(1, 2)));
    Cyc a = Cyc(1) + z(3, 1);
    // 1 + zeta_3 equals -zeta_3^2, so its inverse is -zeta_3
    CHECK(a == -z(3, 2));
    CHECK(a.inverse() == -z(3, 1));
    // oracle: (1+x)(-x) = -x - x^2 reduces to 1 mod Phi_3, while (1+x)(-x^2) reduces to x
    CHECK(from_ints(3, naive_reduce({0, -1, -1}, 3)) == Cyc(1));
    CHECK(from_ints(3, naive_reduce({0, 0, -1, -1}, 3)) == z(3, 1));
    CHECK_THROWS(Cyc(0).inverse());
}

TEST_CASE("cyc_galois and conjugate examples") {
    CHECK(z(5, 1).galois(2) == z(5, 2));
    CHECK(Cyc(Rational(3, 7)).galois(4) == Cyc(Rational(3, 7)));
    CHECK(sqrt5().galois(2) == -sqrt5());
    CHECK_THROWS(z(6, 1).galois(2));
    CHECK(z(4, 1).conj() == -z(4, 1));
    CHECK(Cyc(Rational(3, 7)).conj() == Cyc(Rational(3, 7)));
    Cyc s = z(5, 1) + z(5, 4);
    CHECK(s.conj() == s);
}

TEST_CASE("cyc_to_float examples") {
    CHECK(std::abs(Cyc(1).to_complex() - std::complex<double>(1, 0)) < 1e-12);
    CHECK(std::abs(z(4, 1).to_complex() - std::complex<double>(0, 1)) < 1e-12);
    CHECK(std::abs(sqrt5().to_complex() - std::complex<double>(std::sqrt(5.0), 0)) < 1e-12);
}

TEST_CASE("mixed conductors promote to the lcm") {
    Cyc a = z(3, 1), b = z(4, 1);
    Cyc p = a * b;
    CHECK(p.conductor() == 12);
    CHECK(p == z(12, 7));
    CHECK(z(6, 2) == z(3, 1));
    CHECK(z(12, 4) == z(3, 1));
    CHECK((z(6, 2) - z(3, 1)).is_zero());
}

TEST_CASE("field axioms on random elements, conductors up to 24") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> cond(1, 24);
    for (int it = 0; it < 150; ++it) {
        Cyc a = random_cyc(rng, cond(rng)), b = random_cyc(rng, cond(rng)), c = random_cyc(rng, cond(rng));
        CHECK(((a + b) + c) == (a + (b + c)));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * b) == (b * a));
        CHECK((a + b) == (b + a));
        CHECK((a * (b + c)) == (a * b + a * c));
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("galois action is a ring homomorphism and composes") {
    std::mt19937_64 rng(777);
    for (int N : {5, 7, 8, 9, 12, 15, 21, 24}) {
        for (int t = 1; t < N; ++t) {
            if (gcd64(t, N) != 1) continue;
            Cyc a = random_cyc(rng, N), b = random_cyc(rng, N);
            CHECK((a * b).galois(t) == a.galois(t) * b.galois(t));
            CHECK((a + b).galois(t) == a.galois(t) + b.galois(t));
            for (int s = 1; s < N; ++s) {
                if (gcd64(s, N) != 1) continue;
                CHECK(a.galois(t).galois(s) == a.galois((int64_t(t) * s) % N));
            }
        }
    }
}

TEST_CASE("conjugation is an involution and a*conj(a) is real") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> cond(1, 24);
    for (int it = 0; it < 200; ++it) {
        Cyc a = random_cyc(rng, cond(rng));
        CHECK(a.conj().conj() == a);
        CHECK(std::abs((a * a.conj()).to_complex().imag()) < 1e-9);
    }
}

TEST_CASE("canonical equality agrees with the numerical embedding") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> cond(1, 24);
    int agree = 0;
    for (int it = 0; it < 1000; ++it) {
        Cyc a = random_cyc(rng, cond(rng));
        Cyc b = (it % 3 == 0) ? a * Cyc(1) + Cyc(0) : random_cyc(rng, cond(rng));
        bool exact = a == b;
        bool num = std::abs(a.to_complex() - b.to_complex()) < 1e-9;
        agree += exact == num;
    }
    CHECK(agree == 1000);
}

TEST_CASE("matrix inverse, det, rank, kernel") {
    Mat m = Mat::from_rows({{Cyc(1), z(3, 1)}, {z(4, 1), Cyc(2)}});
    Mat inv = m.inverse();
    CHECK((m * inv).is_identity());
    CHECK(m.det() == Cyc(2) - z(3, 1) * z(4, 1));
    Mat s = Mat::from_rows({{Cyc(1), Cyc(2)}, {Cyc(2), Cyc(4)}});
    CHECK(s.rank() == 1);
    Mat k = s.kernel();
    CHECK(k.cols() == 1);
    CHECK((s * k).is_zero());
    CHECK(Mat::scalar(3, z(5, 2)).scalar_value() == z(5, 2));
    CHECK(!m.scalar_value());
}
