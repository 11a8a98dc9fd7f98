#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "colorpoincare/scalar.hpp"

namespace colorpoincare {

// Dense matrix of exact scalars; everything here is 2x2, 4x4 or 5x5.
class MatS {
  public:
    MatS() = default;
    MatS(int rows, int cols, const FieldPtr& f)
        : rows_(rows), cols_(cols), f_(f), a_(static_cast<size_t>(rows * cols), Scalar::zero(f)) {}

    static MatS identity(int n, const FieldPtr& f) {
        MatS m(n, n, f);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return f_; }

    Scalar& at(int i, int j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
    const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }

    bool is_zero() const {
        for (const auto& s : a_)
            if (!s.is_zero()) return false;
        return true;
    }

    MatS operator-() const {
        MatS out = *this;
        for (auto& s : out.a_) s = -s;
        return out;
    }
    MatS& operator+=(const MatS& o) {
        check_same_shape(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    MatS& operator-=(const MatS& o) {
        check_same_shape(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    friend MatS operator+(MatS a, const MatS& b) { return a += b; }
    friend MatS operator-(MatS a, const MatS& b) { return a -= b; }
    friend MatS operator*(const Scalar& s, MatS m) {
        for (auto& x : m.a_) x *= s;
        return m;
    }
    friend MatS operator*(const MatS& a, const MatS& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        MatS out(a.rows_, b.cols_, a.f_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    out.at(i, j) += a.at(i, k) * b.at(k, j);
                }
            }
        return out;
    }
    bool operator==(const MatS& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (size_t k = 0; k < a_.size(); ++k)
            if (a_[k] != o.a_[k]) return false;
        return true;
    }
    bool operator!=(const MatS& o) const { return !(*this == o); }

    MatS transpose() const {
        MatS out(cols_, rows_, f_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }
    MatS conjugate() const {
        MatS out = *this;
        for (auto& s : out.a_) s = s.conjugate();
        return out;
    }
    MatS dagger() const { return transpose().conjugate(); }

    // Exact inverse by Gauss elimination; requires invertible scalar pivots,
    // which holds for every nonsingular matrix when the scalars form a field
    // (n > 0) and for the matrices this library inverts when n = 0.
    MatS inverse() const;

    std::string str() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            s += i ? "; " : "[";
            for (int j = 0; j < cols_; ++j) s += (j ? ", " : "") + at(i, j).str();
        }
        return s + "]";
    }

  private:
    void check_same_shape(const MatS& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }
    int rows_ = 0, cols_ = 0;
    FieldPtr f_;
    std::vector<Scalar> a_;
};

inline MatS kron(const MatS& a, const MatS& b) {
    MatS out(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return out;
}

// Pauli matrices; pauli(0) is the 2x2 identity.
inline MatS pauli(const FieldPtr& f, int k) {
    MatS m(2, 2, f);
    Scalar one = Scalar::one(f), i = Scalar::i(f);
    switch (k) {
        case 0: m.at(0, 0) = one; m.at(1, 1) = one; break;
        case 1: m.at(0, 1) = one; m.at(1, 0) = one; break;
        case 2: m.at(0, 1) = -i; m.at(1, 0) = i; break;
        case 3: m.at(0, 0) = one; m.at(1, 1) = -one; break;
        default: throw std::invalid_argument("pauli index must be 0..3");
    }
    return m;
}

inline MatS MatS::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    MatS a = *this, inv = MatS::identity(rows_, f_);
    for (int col = 0; col < cols_; ++col) {
        int piv = -1;
        for (int r = col; r < rows_; ++r)
            if (!a.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::domain_error("matrix is singular");
        if (piv != col)
            for (int j = 0; j < cols_; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        Scalar s = a.at(col, col).inverse();
        for (int j = 0; j < cols_; ++j) {
            a.at(col, j) *= s;
            inv.at(col, j) *= s;
        }
        for (int r = 0; r < rows_; ++r) {
            if (r == col || a.at(r, col).is_zero()) continue;
            Scalar factor = a.at(r, col);
            for (int j = 0; j < cols_; ++j) {
                a.at(r, j) -= factor * a.at(col, j);
                inv.at(r, j) -= factor * inv.at(col, j);
            }
        }
    }
    return inv;
}

}  // namespace colorpoincare
