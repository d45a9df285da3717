#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pirep/cyc.hpp"

namespace pirep {

class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}

    static Mat identity(int n);
    static Mat scalar(int n, const Cyc& v);
    static Mat diag(const std::vector<Cyc>& d);
    static Mat from_rows(const std::vector<std::vector<Cyc>>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Cyc& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const Cyc& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }
    const std::vector<Cyc>& data() const { return a_; }

    bool is_zero() const;
    bool is_identity() const;
    std::optional<Cyc> scalar_value() const;  // Some(l) iff *this == l*I
    Cyc trace() const;

    Mat transpose() const;
    Mat conj_transpose() const;
    Mat galois(int64_t t) const;
    Mat inverse() const;  // throws if singular
    Cyc det() const;
    int rank() const;
    // reduced row echelon form with zero rows dropped
    Mat rref() const;
    // basis of {v : M v = 0} as columns of the result
    Mat kernel() const;

    Mat operator-() const;
    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator*(const Cyc& s, const Mat& a);
    Mat& operator+=(const Mat& b);
    friend bool operator==(const Mat& a, const Mat& b);

    // self + s*I, for square matrices
    Mat plus_scalar(const Cyc& s) const;

    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Cyc> a_;
};

// index of a pivot-friendly entry: prefers rational, then monomial entries
int pick_pivot(const std::vector<const Cyc*>& cands);

}  // namespace pirep
