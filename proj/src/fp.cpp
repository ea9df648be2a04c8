#include "folim/fp.hpp"

#include <cassert>
#include <stdexcept>

#include "folim/kernels.hpp"

namespace folim {

uint8_t fp_inv(uint8_t x, uint8_t p) {
    // p <= 13, scan is fine
    for (uint8_t y = 1; y < p; ++y)
        if (uint8_t((x * y) % p) == 1) return y;
    throw std::domain_error("fp_inv: not invertible");
}

uint8_t fp_neg(uint8_t x, uint8_t p) { return x == 0 ? 0 : uint8_t(p - x); }

FpMatrix FpMatrix::identity(uint8_t p, uint32_t n) {
    FpMatrix m(p, n, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::from_rows(uint8_t p, uint32_t cols,
                             const std::vector<std::vector<uint8_t>>& rows) {
    FpMatrix m(p, uint32_t(rows.size()), cols);
    for (uint32_t i = 0; i < m.rows; ++i) {
        assert(rows[i].size() == cols);
        for (uint32_t j = 0; j < cols; ++j) m.at(i, j) = uint8_t(rows[i][j] % p);
    }
    return m;
}

bool FpMatrix::is_zero() const {
    for (uint8_t x : a)
        if (x) return false;
    return true;
}

FpMatrix fp_mul(const FpMatrix& A, const FpMatrix& B) {
    assert(A.p == B.p && A.cols == B.rows);
    FpMatrix C(A.p, A.rows, B.cols);
    if (A.rows == 0 || B.cols == 0 || A.cols == 0) return C;
    for (uint32_t i = 0; i < A.rows; ++i) {
        uint8_t* ci = C.row(i);
        for (uint32_t k = 0; k < A.cols; ++k) {
            uint8_t aik = A.at(i, k);
            if (aik) kern::active().axpy(ci, B.row(k), B.cols, aik, A.p);
        }
    }
    return C;
}

FpMatrix fp_add(const FpMatrix& A, const FpMatrix& B) {
    assert(A.p == B.p && A.rows == B.rows && A.cols == B.cols);
    FpMatrix C = A;
    kern::active().axpy(C.a.data(), B.a.data(), C.a.size(), 1, C.p);
    return C;
}

FpMatrix fp_sub(const FpMatrix& A, const FpMatrix& B) {
    assert(A.p == B.p && A.rows == B.rows && A.cols == B.cols);
    FpMatrix C = A;
    kern::active().axpy(C.a.data(), B.a.data(), C.a.size(), uint8_t(C.p - 1), C.p);
    return C;
}

FpMatrix fp_transpose(const FpMatrix& A) {
    FpMatrix T(A.p, A.cols, A.rows);
    for (uint32_t i = 0; i < A.rows; ++i)
        for (uint32_t j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

FpMatrix fp_vstack(const FpMatrix& A, const FpMatrix& B) {
    assert(A.p == B.p && (A.rows == 0 || B.rows == 0 || A.cols == B.cols));
    uint32_t cols = A.rows ? A.cols : B.cols;
    FpMatrix C(A.p, A.rows + B.rows, cols);
    std::copy(A.a.begin(), A.a.end(), C.a.begin());
    std::copy(B.a.begin(), B.a.end(), C.a.begin() + A.a.size());
    return C;
}

std::vector<uint8_t> fp_vec_mat(const std::vector<uint8_t>& v, const FpMatrix& A) {
    assert(v.size() == A.rows);
    std::vector<uint8_t> out(A.cols, 0);
    for (uint32_t i = 0; i < A.rows; ++i)
        if (v[i]) kern::active().axpy(out.data(), A.row(i), A.cols, v[i], A.p);
    return out;
}

RrefResult rref(const FpMatrix& A) {
    RrefResult res;
    res.r = A;
    FpMatrix& m = res.r;
    const auto& k = kern::active();
    uint32_t r = 0;
    for (uint32_t col = 0; col < m.cols && r < m.rows; ++col) {
        uint32_t piv = r;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (uint32_t j = 0; j < m.cols; ++j)
                std::swap(m.at(piv, j), m.at(r, j));
        uint8_t inv = fp_inv(m.at(r, col), m.p);
        k.scale(m.row(r), m.cols, inv, m.p);
        for (uint32_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            uint8_t c = m.at(i, col);
            if (c) k.axpy(m.row(i), m.row(r), m.cols, fp_neg(c, m.p), m.p);
        }
        res.pivots.push_back(col);
        ++r;
    }
    res.rank = r;
    return res;
}

uint32_t fp_rank(const FpMatrix& A) { return rref(A).rank; }

FpMatrix right_kernel(const FpMatrix& A) {
    RrefResult rr = rref(A);
    std::vector<bool> is_pivot(A.cols, false);
    for (uint32_t c : rr.pivots) is_pivot[c] = true;
    uint32_t nfree = A.cols - rr.rank;
    FpMatrix K(A.p, nfree, A.cols);
    uint32_t kr = 0;
    for (uint32_t j = 0; j < A.cols; ++j) {
        if (is_pivot[j]) continue;
        K.at(kr, j) = 1;
        for (uint32_t i = 0; i < rr.rank; ++i)
            K.at(kr, rr.pivots[i]) = fp_neg(rr.r.at(i, j), A.p);
        ++kr;
    }
    return K;
}

FpMatrix left_kernel(const FpMatrix& A) { return right_kernel(fp_transpose(A)); }

std::optional<std::vector<uint8_t>> solve_left(const FpMatrix& A,
                                               const std::vector<uint8_t>& b) {
    // x A = b  <=>  A^T x^T = b^T; eliminate on [A^T | b^T]
    assert(b.size() == A.cols);
    FpMatrix aug(A.p, A.cols, A.rows + 1);
    for (uint32_t i = 0; i < A.rows; ++i)
        for (uint32_t j = 0; j < A.cols; ++j) aug.at(j, i) = A.at(i, j);
    for (uint32_t j = 0; j < A.cols; ++j) aug.at(j, A.rows) = uint8_t(b[j] % A.p);
    RrefResult rr = rref(aug);
    std::vector<uint8_t> x(A.rows, 0);
    for (uint32_t i = 0; i < rr.rank; ++i) {
        if (rr.pivots[i] == A.rows) return std::nullopt;  // inconsistent
        x[rr.pivots[i]] = rr.r.at(i, A.rows);
    }
    return x;
}

std::optional<FpMatrix> express_in_basis(const FpMatrix& B, const FpMatrix& V) {
    assert(B.p == V.p && (V.rows == 0 || B.cols == V.cols));
    // One elimination of [B^T | V^T], then read off all coordinate columns.
    FpMatrix aug(B.p, B.cols, B.rows + V.rows);
    for (uint32_t i = 0; i < B.rows; ++i)
        for (uint32_t j = 0; j < B.cols; ++j) aug.at(j, i) = B.at(i, j);
    for (uint32_t i = 0; i < V.rows; ++i)
        for (uint32_t j = 0; j < V.cols; ++j) aug.at(j, B.rows + i) = V.at(i, j);
    RrefResult rr = rref(aug);
    FpMatrix X(B.p, V.rows, B.rows);
    for (uint32_t i = 0; i < rr.rank; ++i) {
        if (rr.pivots[i] >= B.rows) return std::nullopt;  // row outside span
        for (uint32_t v = 0; v < V.rows; ++v)
            X.at(v, rr.pivots[i]) = rr.r.at(i, B.rows + v);
    }
    return X;
}

std::optional<FpMatrix> fp_inverse(const FpMatrix& A) {
    assert(A.rows == A.cols);
    FpMatrix aug(A.p, A.rows, 2 * A.cols);
    for (uint32_t i = 0; i < A.rows; ++i) {
        for (uint32_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols + i) = 1;
    }
    RrefResult rr = rref(aug);
    if (rr.rank < A.rows) return std::nullopt;
    for (uint32_t i = 0; i < rr.rank; ++i)
        if (rr.pivots[i] >= A.cols) return std::nullopt;
    FpMatrix inv(A.p, A.rows, A.cols);
    for (uint32_t i = 0; i < A.rows; ++i)
        for (uint32_t j = 0; j < A.cols; ++j) inv.at(i, j) = rr.r.at(i, A.cols + j);
    return inv;
}

FpMatrix row_space_basis(const FpMatrix& A) {
    RrefResult rr = rref(A);
    FpMatrix B(A.p, rr.rank, A.cols);
    for (uint32_t i = 0; i < rr.rank; ++i)
        std::copy(rr.r.row(i), rr.r.row(i) + A.cols, B.row(i));
    return B;
}

std::string ChainComplexFp::validate() const {
    if (dims.size() != d.size() + 1 && !(dims.empty() && d.empty()))
        return "dims/differential count mismatch";
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (d[k].rows != dims[k] || d[k].cols != dims[k + 1])
            return "differential " + std::to_string(int(lo) + int(k)) +
                   " has wrong shape";
        if (d[k].p != p) return "prime mismatch";
    }
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
        if (!fp_mul(d[k], d[k + 1]).is_zero())
            return "d o d != 0 at degree " + std::to_string(int(lo) + int(k));
    return "";
}

CohomologyAt cochain_cohomology(const ChainComplexFp& c, int n) {
    CohomologyAt out;
    int k = n - c.lo;
    if (k < 0 || k >= int(c.dims.size())) return out;  // zero outside range
    uint32_t dim_n = c.dims[std::size_t(k)];
    // cocycles
    FpMatrix Z = (std::size_t(k) < c.d.size())
                     ? left_kernel(c.d[std::size_t(k)])
                     : FpMatrix::identity(c.p, dim_n);
    // coboundaries
    FpMatrix B = (k > 0) ? row_space_basis(c.d[std::size_t(k) - 1])
                         : FpMatrix(c.p, 0, dim_n);
    uint32_t zrank = fp_rank(Z);
    out.dim = zrank - B.rows;
    // complete coboundaries to the cocycle space along Z's basis, in order
    FpMatrix chosen = B;
    FpMatrix reps(c.p, 0, dim_n);
    for (uint32_t i = 0; i < Z.rows && chosen.rows < zrank; ++i) {
        FpMatrix cand(c.p, 1, dim_n);
        std::copy(Z.row(i), Z.row(i) + dim_n, cand.row(0));
        FpMatrix test = fp_vstack(chosen, cand);
        if (fp_rank(test) > chosen.rows) {
            chosen = test;
            reps = fp_vstack(reps, cand);
        }
    }
    out.representatives = reps;
    return out;
}

}  // namespace folim
