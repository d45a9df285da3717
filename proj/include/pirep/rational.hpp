#pragma once

#include <cstdint>
#include <compare>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace pirep {

// Exact rational number. Values that fit in int64 numerator/denominator stay
// inline; anything larger lives in a GMP mpq_class. The representation is
// canonical: big_ is set iff the reduced value does not fit the small form.
class Rational {
public:
    Rational() = default;
    Rational(int64_t n) : n_(n) {}
    Rational(int64_t n, int64_t d);
    explicit Rational(const mpq_class& q);
    explicit Rational(const std::string& s);  // "a", "-a/b"
    Rational(const std::string& num, const std::string& den);

    Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            n_ = o.n_;
            d_ = o.d_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const;
    bool is_small() const { return !big_; }
    int sign() const;

    mpq_class to_mpq() const;
    std::string num_str() const;
    std::string den_str() const;
    std::string str() const;
    double to_double() const;
    // small-form accessors; valid only when is_small()
    int64_t small_num() const { return n_; }
    int64_t small_den() const { return d_; }

    Rational operator-() const;
    Rational inverse() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& b);
    Rational& operator-=(const Rational& b);
    Rational& operator*=(const Rational& b);

    // this += a*b
    void add_mul(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    size_t hash() const;

private:
    static Rational from_i128(__int128 n, __int128 d);
    void normalize_big();

    int64_t n_ = 0;
    int64_t d_ = 1;
    std::unique_ptr<mpq_class> big_;
};

Rational binomial(int64_t n, int64_t k);
Rational factorial(int64_t n);

}  // namespace pirep
