#include "pirep/rational.hpp"

#include <limits>
#include <stdexcept>

namespace pirep {

namespace {

constexpr int64_t kMax = std::numeric_limits<int64_t>::max();

inline bool fits(__int128 v) { return v <= kMax && v >= -kMax; }

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
    while (b) {
        if ((a >> 64) == 0 && (b >> 64) == 0) return gcd_u64(uint64_t(a), uint64_t(b));
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline uint64_t uabs(int64_t v) { return v < 0 ? uint64_t(0) - uint64_t(v) : uint64_t(v); }

mpz_class mpz_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
    mpz_class hi = mpz_class(static_cast<unsigned long>(uint64_t(u >> 64)));
    mpz_class lo = mpz_class(static_cast<unsigned long>(uint64_t(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(int64_t n, int64_t d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    *this = from_i128(n, d);
}

Rational::Rational(const mpq_class& q) {
    big_ = std::make_unique<mpq_class>(q);
    big_->canonicalize();
    normalize_big();
}

Rational::Rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("rational: cannot parse '" + s + "'");
    if (q.get_den() == 0) throw std::domain_error("rational: zero denominator");
    q.canonicalize();
    big_ = std::make_unique<mpq_class>(q);
    normalize_big();
}

Rational::Rational(const std::string& num, const std::string& den) {
    mpz_class a, b;
    if (a.set_str(num, 10) != 0 || b.set_str(den, 10) != 0)
        throw std::invalid_argument("rational: cannot parse '" + num + "/" + den + "'");
    if (b == 0) throw std::domain_error("rational: zero denominator");
    mpq_class q(a, b);
    q.canonicalize();
    big_ = std::make_unique<mpq_class>(q);
    normalize_big();
}

void Rational::normalize_big() {
    if (!big_) return;
    const mpz_class& a = big_->get_num();
    const mpz_class& b = big_->get_den();
    if (a.fits_slong_p() && b.fits_slong_p()) {
        long na = a.get_si(), nb = b.get_si();
        if (na != std::numeric_limits<long>::min()) {
            n_ = na;
            d_ = nb;
            big_.reset();
        }
    }
}

Rational Rational::from_i128(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    unsigned __int128 un = n < 0 ? (unsigned __int128)(-n) : (unsigned __int128)n;
    unsigned __int128 g = gcd_u128(un, (unsigned __int128)d);
    if (g > 1) {
        n /= (__int128)g;
        d /= (__int128)g;
    }
    Rational r;
    if (fits(n) && fits(d)) {
        r.n_ = int64_t(n);
        r.d_ = int64_t(d);
        if (r.n_ == 0) r.d_ = 1;
        return r;
    }
    r.big_ = std::make_unique<mpq_class>(mpz_from_i128(n), mpz_from_i128(d));
    return r;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

std::string Rational::num_str() const { return big_ ? big_->get_num().get_str() : std::to_string(n_); }
std::string Rational::den_str() const { return big_ ? big_->get_den().get_str() : std::to_string(d_); }

std::string Rational::str() const {
    if (is_integer()) return num_str();
    return num_str() + "/" + den_str();
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return double(n_) / double(d_);
}

Rational Rational::operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("rational: division by zero");
    if (big_) return Rational(mpq_class(1 / *big_));
    Rational r;
    r.n_ = n_ < 0 ? -d_ : d_;
    r.d_ = uabs(n_);
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    if (a.n_ == 0) return b;
    if (b.n_ == 0) return a;
    if (a.d_ == 1 && b.d_ == 1) {
        int64_t s;
        if (!__builtin_add_overflow(a.n_, b.n_, &s) && s != std::numeric_limits<int64_t>::min()) {
            Rational r;
            r.n_ = s;
            return r;
        }
        return Rational::from_i128(__int128(a.n_) + b.n_, 1);
    }
    if (a.d_ == b.d_) return Rational::from_i128(__int128(a.n_) + b.n_, a.d_);
    __int128 n = __int128(a.n_) * b.d_ + __int128(b.n_) * a.d_;
    __int128 d = __int128(a.d_) * b.d_;
    return Rational::from_i128(n, d);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    if (a.n_ == 0 || b.n_ == 0) return Rational();
    if (a.d_ == 1 && b.d_ == 1) {
        int64_t p;
        if (!__builtin_mul_overflow(a.n_, b.n_, &p) && p != std::numeric_limits<int64_t>::min()) {
            Rational r;
            r.n_ = p;
            return r;
        }
        return Rational::from_i128(__int128(a.n_) * b.n_, 1);
    }
    uint64_t g1 = gcd_u64(uabs(a.n_), uint64_t(b.d_));
    uint64_t g2 = gcd_u64(uabs(b.n_), uint64_t(a.d_));
    int64_t an = a.n_ / int64_t(g1), bd = b.d_ / int64_t(g1);
    int64_t bn = b.n_ / int64_t(g2), ad = a.d_ / int64_t(g2);
    int64_t n, d;
    if (!__builtin_mul_overflow(an, bn, &n) && !__builtin_mul_overflow(ad, bd, &d) &&
        n != std::numeric_limits<int64_t>::min()) {
        Rational r;
        r.n_ = n;
        r.d_ = d;
        return r;
    }
    return Rational::from_i128(__int128(an) * bn, __int128(ad) * bd);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

Rational& Rational::operator+=(const Rational& b) { return *this = *this + b; }
Rational& Rational::operator-=(const Rational& b) { return *this = *this - b; }
Rational& Rational::operator*=(const Rational& b) { return *this = *this * b; }

void Rational::add_mul(const Rational& a, const Rational& b) {
    if (!big_ && !a.big_ && !b.big_ && d_ == 1 && a.d_ == 1 && b.d_ == 1) {
        int64_t p, s;
        if (!__builtin_mul_overflow(a.n_, b.n_, &p) && !__builtin_add_overflow(n_, p, &s) &&
            s != std::numeric_limits<int64_t>::min()) {
            n_ = s;
            return;
        }
    }
    *this = *this + a * b;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: one small, one big never equal
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        __int128 l = __int128(a.n_) * b.d_, r = __int128(b.n_) * a.d_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

size_t Rational::hash() const {
    if (!big_) return std::hash<int64_t>()(n_) * 1000003u ^ std::hash<int64_t>()(d_);
    return std::hash<std::string>()(big_->get_str());
}

Rational binomial(int64_t n, int64_t k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(mpq_class(r));
}

Rational factorial(int64_t n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(mpq_class(r));
}

}  // namespace pirep
