#include "pirep/cyc.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pirep {

int64_t gcd64(int64_t a, int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int64_t lcm64(int64_t a, int64_t b) { return a / gcd64(a, b) * b; }

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

namespace {

using Poly = std::vector<int64_t>;

Poly poly_divexact(Poly a, const Poly& b) {
    // b monic
    int db = int(b.size()) - 1;
    int da = int(a.size()) - 1;
    Poly q(da - db + 1, 0);
    for (int i = da; i >= db; --i) {
        int64_t c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

Poly cyclotomic_poly(int N) {
    static std::mutex mu;
    static std::map<int, Poly> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(N);
        if (it != cache.end()) return it->second;
    }
    Poly p(N + 1, 0);
    p[0] = -1;
    p[N] = 1;
    for (int d = 1; d < N; ++d)
        if (N % d == 0) p = poly_divexact(p, cyclotomic_poly(d));
    std::lock_guard<std::mutex> lk(mu);
    cache[N] = p;
    return p;
}

CycField* build_field(int N) {
    auto* F = new CycField;
    F->N = N;
    F->phi = euler_phi(N);
    F->cyclo = cyclotomic_poly(N);
    int phi = F->phi;
    F->pow.resize(N);
    std::vector<Rational> cur(phi);
    cur[0] = Rational(1);
    for (int k = 0; k < N; ++k) {
        for (int i = 0; i < phi; ++i)
            if (!cur[i].is_zero()) F->pow[k].emplace_back(i, cur[i]);
        // multiply by x, reduce the x^phi term with the monic Phi_N
        Rational top = cur[phi - 1];
        for (int i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = Rational(0);
        if (!top.is_zero())
            for (int i = 0; i < phi; ++i)
                if (F->cyclo[i] != 0) cur[i] -= top * Rational(F->cyclo[i]);
    }
    return F;
}

constexpr int kDirect = 1 << 14;
std::array<std::atomic<const CycField*>, kDirect> g_direct{};
std::mutex g_mu;
std::map<int, const CycField*> g_far;

}  // namespace

const CycField* cyc_field(int N) {
    if (N < 1) throw std::invalid_argument("cyc: conductor must be positive");
    if (N < kDirect) {
        const CycField* f = g_direct[N].load(std::memory_order_acquire);
        if (f) return f;
        std::lock_guard<std::mutex> lk(g_mu);
        f = g_direct[N].load(std::memory_order_relaxed);
        if (!f) {
            f = build_field(N);
            g_direct[N].store(f, std::memory_order_release);
        }
        return f;
    }
    std::lock_guard<std::mutex> lk(g_mu);
    auto it = g_far.find(N);
    if (it != g_far.end()) return it->second;
    const CycField* f = build_field(N);
    g_far[N] = f;
    return f;
}

namespace {
const CycField* Q() {
    static const CycField* q = cyc_field(1);
    return q;
}
const Rational& zero_rational() {
    static const Rational z;
    return z;
}
}  // namespace

Cyc::Cyc() : F_(Q()) {}

Cyc::Cyc(int64_t v) : F_(Q()) {
    if (v != 0) c_.emplace_back(v);
}

Cyc::Cyc(const Rational& q) : F_(Q()) {
    if (!q.is_zero()) c_.push_back(q);
}

Cyc::Cyc(int N, std::vector<Rational> coeffs) : F_(cyc_field(N)) {
    if (int(coeffs.size()) != F_->phi) throw std::invalid_argument("cyc: coefficient count must equal phi(N)");
    c_.assign(std::make_move_iterator(coeffs.begin()), std::make_move_iterator(coeffs.end()));
    canonicalize();
}

void Cyc::canonicalize() {
    bool all_zero = true, rational = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) {
            all_zero = false;
            if (i > 0) rational = false;
        }
    }
    if (all_zero) {
        c_.clear();
        F_ = Q();
        return;
    }
    if (rational && F_->N != 1) {
        Rational q = std::move(c_[0]);
        c_.clear();
        c_.push_back(std::move(q));
        F_ = Q();
    }
}

Cyc Cyc::root_of_unity(int N, int64_t k) {
    if (N < 1) throw std::invalid_argument("cyc: conductor must be positive");
    k %= N;
    if (k < 0) k += N;
    if (N <= 2) return Cyc(k == 0 ? 1 : -1);
    Cyc r;
    r.F_ = cyc_field(N);
    r.c_.resize(r.F_->phi);
    for (const auto& [i, v] : r.F_->pow[k]) r.c_[i] = v;
    r.canonicalize();
    return r;
}

std::vector<Rational> Cyc::coeffs() const {
    std::vector<Rational> out(F_->phi);
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
    return out;
}

const Rational& Cyc::coeff(int i) const {
    if (i < int(c_.size())) return c_[i];
    return zero_rational();
}

Rational Cyc::rational() const {
    if (!is_rational()) throw std::logic_error("cyc: value is not rational");
    return c_.empty() ? Rational(0) : c_[0];
}

bool Cyc::is_monomial(int* k) const {
    int found = -1;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) {
            if (found >= 0) return false;
            found = int(i);
        }
    }
    if (found < 0) return false;
    if (k) *k = found;
    return true;
}

Cyc Cyc::promoted(int L) const {
    int N = F_->N;
    if (L == N || c_.empty()) {
        return *this;
    }
    if (L % N != 0) throw std::invalid_argument("cyc: promotion target must be a multiple of the conductor");
    if (N == 1) return *this;  // rationals stay at conductor 1
    const CycField* G = cyc_field(L);
    int step = L / N;
    Cyc r;
    r.F_ = G;
    r.c_.resize(G->phi);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (const auto& [j, v] : G->pow[(i * step) % L]) r.c_[j].add_mul(c_[i], v);
    }
    // the embedding is injective and keeps non-rationals non-rational
    return r;
}

Cyc Cyc::operator-() const {
    Cyc r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

namespace {

// bring both to the same field; returns the common conductor
int unify(const Cyc& a, const Cyc& b, Cyc& pa, Cyc& pb) {
    int L = int(lcm64(a.conductor(), b.conductor()));
    pa = a.is_rational() ? a : a.promoted(L);
    pb = b.is_rational() ? b : b.promoted(L);
    return L;
}

}  // namespace

Cyc operator+(const Cyc& a, const Cyc& b) {
    if (a.c_.empty()) return b;
    if (b.c_.empty()) return a;
    if (a.F_ == b.F_) {
        Cyc r = a;
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        r.canonicalize();
        return r;
    }
    if (a.is_rational()) {
        Cyc r = b;
        r.c_[0] += a.c_[0];
        r.canonicalize();
        return r;
    }
    if (b.is_rational()) {
        Cyc r = a;
        r.c_[0] += b.c_[0];
        r.canonicalize();
        return r;
    }
    Cyc pa, pb;
    unify(a, b, pa, pb);
    return pa + pb;
}

Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }

Cyc Cyc::mul_same(const Cyc& a, const Cyc& b) {
    const CycField* F = a.F_;
    int N = F->N, phi = F->phi;
    thread_local std::vector<Rational> acc;
    acc.assign(N, Rational());
    std::vector<int> an, bn;
    for (int i = 0; i < phi; ++i)
        if (!a.c_[i].is_zero()) an.push_back(i);
    for (int j = 0; j < phi; ++j)
        if (!b.c_[j].is_zero()) bn.push_back(j);
    for (int i : an)
        for (int j : bn) {
            int k = i + j;
            if (k >= N) k -= N;
            acc[k].add_mul(a.c_[i], b.c_[j]);
        }
    Cyc r;
    r.F_ = F;
    r.c_.resize(phi);
    for (int k = 0; k < N; ++k) {
        if (acc[k].is_zero()) continue;
        if (k < phi) {
            r.c_[k] += acc[k];
        } else {
            for (const auto& [j, v] : F->pow[k]) r.c_[j].add_mul(acc[k], v);
        }
    }
    r.canonicalize();
    return r;
}

Cyc operator*(const Cyc& a, const Cyc& b) {
    if (a.c_.empty() || b.c_.empty()) return Cyc();
    if (a.is_rational()) {
        if (a.c_[0].is_one()) return b;
        Cyc r = b;
        for (auto& q : r.c_) q *= a.c_[0];
        return r;
    }
    if (b.is_rational()) {
        if (b.c_[0].is_one()) return a;
        Cyc r = a;
        for (auto& q : r.c_) q *= b.c_[0];
        return r;
    }
    if (a.F_ == b.F_) return Cyc::mul_same(a, b);
    Cyc pa, pb;
    unify(a, b, pa, pb);
    return Cyc::mul_same(pa, pb);
}

Cyc& Cyc::operator+=(const Cyc& b) { return *this = *this + b; }
Cyc& Cyc::operator-=(const Cyc& b) { return *this = *this - b; }
Cyc& Cyc::operator*=(const Cyc& b) { return *this = *this * b; }

void Cyc::add_mul(const Cyc& a, const Cyc& b) {
    if (a.c_.empty() || b.c_.empty()) return;
    if (is_rational() && a.is_rational() && b.is_rational()) {
        if (c_.empty()) c_.emplace_back();
        c_[0].add_mul(a.c_[0], b.c_[0]);
        canonicalize();
        return;
    }
    *this = *this + a * b;
}

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// returns (q, r) with a = q*b + r
std::pair<QPoly, QPoly> poly_divmod(QPoly a, const QPoly& b) {
    trim(a);
    int db = int(b.size()) - 1;
    if (int(a.size()) - 1 < db) return {QPoly{}, a};
    QPoly q(a.size() - db);
    Rational lead_inv = b.back().inverse();
    for (int i = int(a.size()) - 1; i >= db; --i) {
        if (a[i].is_zero()) continue;
        Rational c = a[i] * lead_inv;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    a.resize(db);
    trim(a);
    trim(q);
    return {q, a};
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero())
            for (size_t j = 0; j < b.size(); ++j) r[i + j].add_mul(a[i], b[j]);
    trim(r);
    return r;
}

QPoly poly_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

}  // namespace

Cyc Cyc::inverse() const {
    if (c_.empty()) throw std::domain_error("cyc: division by zero");
    if (is_rational()) return Cyc(c_[0].inverse());
    int N = F_->N, phi = F_->phi;
    int k;
    if (is_monomial(&k)) {
        Cyc r;
        r.F_ = F_;
        r.c_.resize(phi);
        Rational inv = c_[k].inverse();
        for (const auto& [j, v] : F_->pow[(N - k) % N]) r.c_[j] = inv * v;
        r.canonicalize();
        return r;
    }
    // extended Euclid: s*a + t*Phi = g, g a nonzero constant
    QPoly phi_poly(F_->cyclo.size());
    for (size_t i = 0; i < phi_poly.size(); ++i) phi_poly[i] = Rational(F_->cyclo[i]);
    QPoly r0 = phi_poly, r1(c_.begin(), c_.end());
    trim(r1);
    QPoly s0, s1{Rational(1)};
    while (r1.size() > 1) {
        auto [q, r] = poly_divmod(r0, r1);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::domain_error("cyc: element not invertible");
    Rational g = r1[0].inverse();
    auto [q, rem] = poly_divmod(s1, phi_poly);
    (void)q;
    Cyc res;
    res.F_ = F_;
    res.c_.resize(phi);
    for (size_t i = 0; i < rem.size(); ++i) res.c_[i] = rem[i] * g;
    res.canonicalize();
    return res;
}

Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

Cyc Cyc::galois(int64_t t) const {
    if (is_rational()) return *this;
    int N = F_->N;
    if (gcd64(t, N) != 1) throw std::invalid_argument("cyc: Galois exponent must be coprime to the conductor");
    int64_t tt = ((t % N) + N) % N;
    Cyc r;
    r.F_ = F_;
    r.c_.resize(F_->phi);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (const auto& [j, v] : F_->pow[(int64_t(i) * tt) % N]) r.c_[j].add_mul(c_[i], v);
    }
    r.canonicalize();
    return r;
}

Cyc Cyc::conj() const { return galois(conductor() - 1); }

std::complex<double> Cyc::to_complex() const {
    std::complex<double> s = 0;
    int N = F_->N;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        double ang = 2.0 * std::numbers::pi * double(i) / double(N);
        s += c_[i].to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

std::string Cyc::str() const {
    if (c_.empty()) return "0";
    if (is_rational()) return c_[0].str();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        std::string v = c_[i].str();
        bool neg = c_[i].sign() < 0;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        std::string mag = neg ? v.substr(1) : v;
        if (i == 0) {
            os << mag;
        } else {
            if (mag != "1") os << mag << "*";
            os << "z" << F_->N;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

bool operator==(const Cyc& a, const Cyc& b) {
    if (a.F_ == b.F_) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    if (a.is_rational() || b.is_rational()) return false;  // non-rationals never equal rationals
    Cyc pa, pb;
    unify(a, b, pa, pb);
    return pa == pb;
}

size_t Cyc::hash_in(int L) const {
    Cyc p = is_rational() ? *this : promoted(int(lcm64(L, conductor())));
    size_t h = std::hash<int>()(p.conductor());
    for (const auto& q : p.c_) h = h * 1000003u ^ q.hash();
    return h;
}

int cyc_compare(const Cyc& a, const Cyc& b, int N) {
    int L = int(lcm64(lcm64(N, a.conductor()), b.conductor()));
    Cyc pa = a.promoted(a.is_rational() ? a.conductor() : L);
    Cyc pb = b.promoted(b.is_rational() ? b.conductor() : L);
    std::vector<Rational> ca = pa.is_rational() ? Cyc(pa.rational()).coeffs() : pa.coeffs();
    std::vector<Rational> cb = pb.is_rational() ? Cyc(pb.rational()).coeffs() : pb.coeffs();
    // rationals expand to the L-field vector (value at index 0)
    int phi = cyc_field(L)->phi;
    ca.resize(phi);
    cb.resize(phi);
    for (int i = 0; i < phi; ++i) {
        auto c = ca[i] <=> cb[i];
        if (c < 0) return -1;
        if (c > 0) return 1;
    }
    return 0;
}

Cyc cyc_arith(const Cyc& a, const Cyc& b, const std::string& op) {
    if (op == "add") return a + b;
    if (op == "sub") return a - b;
    if (op == "mul") return a * b;
    throw std::invalid_argument("cyc_arith: unknown op '" + op + "'");
}

}  // namespace pirep
