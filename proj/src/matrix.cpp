#include "pirep/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace pirep {

Mat Mat::identity(int n) { return scalar(n, Cyc(1)); }

Mat Mat::scalar(int n, const Cyc& v) {
    Mat m(n, n);
    if (!v.is_zero())
        for (int i = 0; i < n; ++i) m(i, i) = v;
    return m;
}

Mat Mat::diag(const std::vector<Cyc>& d) {
    int n = int(d.size());
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[i];
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Cyc>>& rows) {
    if (rows.empty()) return Mat();
    Mat m(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < m.r_; ++i) {
        if (int(rows[i].size()) != m.c_) throw std::invalid_argument("mat: ragged rows");
        for (int j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Mat::is_identity() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) {
            const Cyc& x = (*this)(i, j);
            if (i == j ? !x.is_one() : !x.is_zero()) return false;
        }
    return true;
}

std::optional<Cyc> Mat::scalar_value() const {
    if (r_ != c_) return std::nullopt;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if (i != j && !(*this)(i, j).is_zero()) return std::nullopt;
    if (r_ == 0) return Cyc(0);
    for (int i = 1; i < r_; ++i)
        if (!((*this)(i, i) == (*this)(0, 0))) return std::nullopt;
    return (*this)(0, 0);
}

Cyc Mat::trace() const {
    Cyc s;
    for (int i = 0; i < std::min(r_, c_); ++i) s += (*this)(i, i);
    return s;
}

Mat Mat::transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::conj_transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j).conj();
    return t;
}

Mat Mat::galois(int64_t t) const {
    Mat g(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) g.a_[i] = a_[i].galois(t);
    return g;
}

int pick_pivot(const std::vector<const Cyc*>& cands) {
    int best = -1, best_score = -1;
    for (int i = 0; i < int(cands.size()); ++i) {
        const Cyc& c = *cands[i];
        if (c.is_zero()) continue;
        int score = c.is_rational() ? 3 : (c.is_monomial() ? 2 : 1);
        if (score > best_score) {
            best = i;
            best_score = score;
            if (score == 3) break;
        }
    }
    return best;
}

namespace {

// in-place Gauss-Jordan on m; returns pivot columns
std::vector<int> gauss_jordan(Mat& m, int limit_cols) {
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < limit_cols && row < m.rows(); ++col) {
        std::vector<const Cyc*> cands;
        for (int i = row; i < m.rows(); ++i) cands.push_back(&m(i, col));
        int p = pick_pivot(cands);
        if (p < 0) continue;
        p += row;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Cyc inv = m(row, col).inverse();
        for (int j = 0; j < m.cols(); ++j)
            if (!m(row, j).is_zero()) m(row, j) = m(row, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Cyc f = m(i, col);
            for (int j = 0; j < m.cols(); ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

}  // namespace

Mat Mat::inverse() const {
    if (r_ != c_) throw std::invalid_argument("mat: inverse of non-square matrix");
    int n = r_;
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n + i) = Cyc(1);
    }
    auto piv = gauss_jordan(aug, n);
    if (int(piv.size()) != n) throw std::domain_error("mat: singular matrix");
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

Cyc Mat::det() const {
    if (r_ != c_) throw std::invalid_argument("mat: det of non-square matrix");
    Mat m = *this;
    int n = r_;
    Cyc d(1);
    for (int col = 0; col < n; ++col) {
        std::vector<const Cyc*> cands;
        for (int i = col; i < n; ++i) cands.push_back(&m(i, col));
        int p = pick_pivot(cands);
        if (p < 0) return Cyc(0);
        p += col;
        if (p != col) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
            d = -d;
        }
        d = d * m(col, col);
        Cyc inv = m(col, col).inverse();
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            Cyc f = m(i, col) * inv;
            for (int j = col; j < n; ++j)
                if (!m(col, j).is_zero()) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

Mat Mat::rref() const {
    Mat m = *this;
    auto piv = gauss_jordan(m, c_);
    Mat out(int(piv.size()), c_);
    for (int i = 0; i < out.r_; ++i)
        for (int j = 0; j < c_; ++j) out(i, j) = m(i, j);
    return out;
}

int Mat::rank() const { return rref().rows(); }

Mat Mat::kernel() const {
    Mat m = *this;
    auto piv = gauss_jordan(m, c_);
    std::vector<bool> is_piv(c_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> free;
    for (int j = 0; j < c_; ++j)
        if (!is_piv[j]) free.push_back(j);
    Mat k(c_, int(free.size()));
    for (int f = 0; f < int(free.size()); ++f) {
        k(free[f], f) = Cyc(1);
        for (int i = 0; i < int(piv.size()); ++i) k(piv[i], f) = -m(i, free[f]);
    }
    return k;
}

Mat Mat::operator-() const {
    Mat r(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("mat: shape mismatch in +");
    Mat r = a;
    for (size_t i = 0; i < r.a_.size(); ++i)
        if (!b.a_[i].is_zero()) r.a_[i] += b.a_[i];
    return r;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("mat: shape mismatch in -");
    Mat r = a;
    for (size_t i = 0; i < r.a_.size(); ++i)
        if (!b.a_[i].is_zero()) r.a_[i] -= b.a_[i];
    return r;
}

Mat& Mat::operator+=(const Mat& b) { return *this = *this + b; }

Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("mat: shape mismatch in *");
    Mat r(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Cyc& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j) {
                const Cyc& y = b(k, j);
                if (y.is_zero()) continue;
                r(i, j).add_mul(x, y);
            }
        }
    return r;
}

Mat operator*(const Cyc& s, const Mat& a) {
    Mat r(a.r_, a.c_);
    if (s.is_zero()) return r;
    for (size_t i = 0; i < a.a_.size(); ++i)
        if (!a.a_[i].is_zero()) r.a_[i] = s * a.a_[i];
    return r;
}

bool operator==(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (size_t i = 0; i < a.a_.size(); ++i)
        if (!(a.a_[i] == b.a_[i])) return false;
    return true;
}

Mat Mat::plus_scalar(const Cyc& s) const {
    if (r_ != c_) throw std::invalid_argument("mat: plus_scalar on non-square matrix");
    Mat r = *this;
    if (!s.is_zero())
        for (int i = 0; i < r_; ++i) r(i, i) += s;
    return r;
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    }
    os << "]";
    return os.str();
}

}  // namespace pirep
