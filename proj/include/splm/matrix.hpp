// Rectangular matrices of polynomials, the constant structure matrices
// (H_m, J_n, S, M_t), and exact rank of evaluated matrices.
#pragma once

#include <string>
#include <vector>

#include "splm/poly.hpp"

namespace splm {

template <class K>
class PolyMatrix {
  public:
    PolyMatrix() = default;
    PolyMatrix(Ring<K> ring, int rows, int cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols),
          entries_(static_cast<size_t>(rows) * cols, Poly<K>::zero(ring_)) {}

    static PolyMatrix identity(Ring<K> ring, int n) {
        PolyMatrix m(ring, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Poly<K>::from_int(ring, 1);
        return m;
    }

    const Ring<K>& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Poly<K>& at(int r, int c) { return entries_.at(static_cast<size_t>(r) * cols_ + c); }
    const Poly<K>& at(int r, int c) const {
        return entries_.at(static_cast<size_t>(r) * cols_ + c);
    }
    const std::vector<Poly<K>>& entries() const { return entries_; }

    PolyMatrix operator+(const PolyMatrix& o) const {
        check_same_shape(o);
        PolyMatrix r(ring_, rows_, cols_);
        for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + o.entries_[i];
        return r;
    }

    PolyMatrix operator-(const PolyMatrix& o) const {
        check_same_shape(o);
        PolyMatrix r(ring_, rows_, cols_);
        for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] - o.entries_[i];
        return r;
    }

    PolyMatrix operator*(const PolyMatrix& o) const {
        require_same_ring(ring_, o.ring_);
        if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch");
        PolyMatrix r(ring_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Poly<K>& a = at(i, k);
                if (a.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const Poly<K>& b = o.at(k, j);
                    if (!b.is_zero()) r.at(i, j) = r.at(i, j) + a * b;
                }
            }
        return r;
    }

    PolyMatrix scaled(const Poly<K>& f) const {
        PolyMatrix r(ring_, rows_, cols_);
        for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] * f;
        return r;
    }

    PolyMatrix transpose() const {
        PolyMatrix r(ring_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    PolyMatrix operator-() const {
        PolyMatrix r(ring_, rows_, cols_);
        for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = -entries_[i];
        return r;
    }

    bool operator==(const PolyMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    std::vector<typename K::Elt> eval(const std::vector<typename K::Elt>& point) const {
        std::vector<typename K::Elt> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(e.eval(point));
        return out;
    }

  private:
    void check_same_shape(const PolyMatrix& o) const {
        require_same_ring(ring_, o.ring_);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    Ring<K> ring_;
    int rows_ = 0, cols_ = 0;
    std::vector<Poly<K>> entries_;
};

/// Rank of a scalar matrix (row-major) by exact Gaussian elimination.
template <class K>
int scalar_rank(const K& field, std::vector<typename K::Elt> a, int rows, int cols) {
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!field.is_zero(a[static_cast<size_t>(r) * cols + c])) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < cols; ++j)
            std::swap(a[static_cast<size_t>(pivot) * cols + j],
                      a[static_cast<size_t>(rank) * cols + j]);
        auto inv = field.inv(a[static_cast<size_t>(rank) * cols + c]);
        for (int r = rank + 1; r < rows; ++r) {
            auto factor = field.mul(a[static_cast<size_t>(r) * cols + c], inv);
            if (field.is_zero(factor)) continue;
            for (int j = c; j < cols; ++j)
                a[static_cast<size_t>(r) * cols + j] =
                    field.sub(a[static_cast<size_t>(r) * cols + j],
                              field.mul(factor, a[static_cast<size_t>(rank) * cols + j]));
        }
        ++rank;
    }
    return rank;
}

template <class K>
int mat_eval_rank(const PolyMatrix<K>& m, const std::vector<typename K::Elt>& point) {
    return scalar_rank(m.ring()->field, m.eval(point), m.rows(), m.cols());
}

// ---------------------------------------------------------------------------
// Structure matrices (constants in any ring over the given field)
// ---------------------------------------------------------------------------

/// H_m: the m x m unit antidiagonal.
template <class K>
PolyMatrix<K> mat_H(const Ring<K>& ring, int m) {
    PolyMatrix<K> h(ring, m, m);
    for (int i = 0; i < m; ++i) h.at(i, m - 1 - i) = Poly<K>::from_int(ring, 1);
    return h;
}

/// J_n = [[0, -H_m], [H_m, 0]] with n = 2m.
template <class K>
PolyMatrix<K> mat_J(const Ring<K>& ring, int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("J_n requires even n >= 2");
    int m = n / 2;
    PolyMatrix<K> j(ring, n, n);
    for (int i = 0; i < m; ++i) {
        j.at(i, n - 1 - i) = Poly<K>::from_int(ring, -1);  // -H_m block, top right
        j.at(m + i, m - 1 - i) = Poly<K>::from_int(ring, 1);  // H_m block, bottom left
    }
    return j;
}

/// S = blockdiag(J_2^t, J_{n-2}).
template <class K>
PolyMatrix<K> mat_S(const Ring<K>& ring, int n) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("S requires even n >= 4");
    PolyMatrix<K> s(ring, n, n);
    s.at(0, 1) = Poly<K>::from_int(ring, 1);   // J_2^t = [[0,1],[-1,0]]
    s.at(1, 0) = Poly<K>::from_int(ring, -1);
    PolyMatrix<K> jn2 = mat_J(ring, n - 2);
    for (int i = 0; i < n - 2; ++i)
        for (int j = 0; j < n - 2; ++j) s.at(2 + i, 2 + j) = jn2.at(i, j);
    return s;
}

/// Multiplication-by-t matrix on the chart-1 basis: [[0, p I_n], [I_n, 0]].
template <class K>
PolyMatrix<K> mat_Mt_chart1(const Ring<K>& ring, int n, long p) {
    PolyMatrix<K> m(ring, 2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m.at(i, n + i) = Poly<K>::from_int(ring, p);
        m.at(n + i, i) = Poly<K>::from_int(ring, 1);
    }
    return m;
}

/// Multiplication-by-t matrix on the chart-2 basis: blockdiag(t_0, ..., t_0)
/// with t_0 = [[0, p], [1, 0]], so that M_t^2 = p I.
template <class K>
PolyMatrix<K> mat_Mt_chart2(const Ring<K>& ring, int n, long p) {
    PolyMatrix<K> m(ring, 2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m.at(2 * i, 2 * i + 1) = Poly<K>::from_int(ring, p);
        m.at(2 * i + 1, 2 * i) = Poly<K>::from_int(ring, 1);
    }
    return m;
}

}  // namespace splm
