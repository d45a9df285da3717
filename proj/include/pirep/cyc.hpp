#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "pirep/rational.hpp"

namespace pirep {

// Per-conductor data: Phi_N and the power-basis expansion of every zeta^k.
struct CycField {
    int N = 1;
    int phi = 1;
    std::vector<int64_t> cyclo;                               // Phi_N, low degree first
    std::vector<std::vector<std::pair<int, Rational>>> pow;  // zeta^k, k in [0, N)
};

const CycField* cyc_field(int N);

int euler_phi(int n);
int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);

// Element of Q(zeta_N), stored as its remainder modulo Phi_N in the basis
// 1, zeta, ..., zeta^(phi-1). Zero is held as an empty vector and rationals
// sit at conductor 1.
class Cyc {
public:
    Cyc();
    Cyc(int64_t v);
    Cyc(const Rational& q);
    Cyc(int N, std::vector<Rational> coeffs);

    static Cyc root_of_unity(int N, int64_t k);

    int conductor() const { return F_->N; }
    const CycField* field() const { return F_; }
    std::vector<Rational> coeffs() const;  // length phi(conductor)
    const Rational& coeff(int i) const;

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return F_->N == 1 && c_.size() == 1 && c_[0].is_one(); }
    bool is_rational() const { return F_->N == 1; }
    Rational rational() const;  // requires is_rational()
    // nonzero single basis term c*zeta^k, k < phi
    bool is_monomial(int* k = nullptr) const;

    Cyc promoted(int L) const;  // L must be a multiple of the conductor

    Cyc operator-() const;
    Cyc inverse() const;
    Cyc galois(int64_t t) const;
    Cyc conj() const;
    std::complex<double> to_complex() const;
    std::string str() const;

    friend Cyc operator+(const Cyc& a, const Cyc& b);
    friend Cyc operator-(const Cyc& a, const Cyc& b);
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    friend Cyc operator/(const Cyc& a, const Cyc& b);
    Cyc& operator+=(const Cyc& b);
    Cyc& operator-=(const Cyc& b);
    Cyc& operator*=(const Cyc& b);
    void add_mul(const Cyc& a, const Cyc& b);  // *this += a*b

    friend bool operator==(const Cyc& a, const Cyc& b);

    size_t hash_in(int L) const;  // hash after promotion to conductor L

private:
    void canonicalize();
    static Cyc mul_same(const Cyc& a, const Cyc& b);

    const CycField* F_;
    boost::container::small_vector<Rational, 1> c_;
};

// lexicographic order on canonical coefficients after promotion to lcm(N, conductors)
int cyc_compare(const Cyc& a, const Cyc& b, int N = 1);
inline bool cyc_less(const Cyc& a, const Cyc& b, int N = 1) { return cyc_compare(a, b, N) < 0; }

Cyc cyc_arith(const Cyc& a, const Cyc& b, const std::string& op);

}  // namespace pirep
