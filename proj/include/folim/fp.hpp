/* Exact dense linear algebra over F_p (p prime, p <= 13).
 *
 * Row-vector convention throughout the project: a matrix A with shape
 * r x c maps row vectors v (length r) to v*A (length c). All pivot and
 * basis choices are deterministic (leftmost pivot, RREF completions).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace folim {

struct FpMatrix {
    uint8_t p = 2;
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<uint8_t> a;  // row-major, entries in [0, p)

    FpMatrix() = default;
    FpMatrix(uint8_t p_, uint32_t r, uint32_t c)
        : p(p_), rows(r), cols(c), a(std::size_t(r) * c, 0) {}

    uint8_t& at(uint32_t i, uint32_t j) { return a[std::size_t(i) * cols + j]; }
    uint8_t at(uint32_t i, uint32_t j) const { return a[std::size_t(i) * cols + j]; }
    uint8_t* row(uint32_t i) { return a.data() + std::size_t(i) * cols; }
    const uint8_t* row(uint32_t i) const { return a.data() + std::size_t(i) * cols; }

    static FpMatrix identity(uint8_t p, uint32_t n);
    static FpMatrix from_rows(uint8_t p, uint32_t cols,
                              const std::vector<std::vector<uint8_t>>& rows);

    bool operator==(const FpMatrix& o) const {
        return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
    }
    bool is_zero() const;
};

uint8_t fp_inv(uint8_t x, uint8_t p);
uint8_t fp_neg(uint8_t x, uint8_t p);

FpMatrix fp_mul(const FpMatrix& A, const FpMatrix& B);
FpMatrix fp_add(const FpMatrix& A, const FpMatrix& B);
FpMatrix fp_sub(const FpMatrix& A, const FpMatrix& B);
FpMatrix fp_transpose(const FpMatrix& A);
// Stack the rows of B under the rows of A (same column count).
FpMatrix fp_vstack(const FpMatrix& A, const FpMatrix& B);
std::vector<uint8_t> fp_vec_mat(const std::vector<uint8_t>& v, const FpMatrix& A);

struct RrefResult {
    FpMatrix r;
    uint32_t rank = 0;
    std::vector<uint32_t> pivots;  // pivot column per nonzero row
};

// Reduced row echelon form; leftmost pivots, unit pivot entries.
RrefResult rref(const FpMatrix& A);
uint32_t fp_rank(const FpMatrix& A);

// Rows span { v : A v^T = 0 }, i.e. the right kernel; basis from RREF
// free columns, one row per free column, in column order.
FpMatrix right_kernel(const FpMatrix& A);
// Rows span { v : v A = 0 }.
FpMatrix left_kernel(const FpMatrix& A);

// One solution x of x A = b (free coordinates zero), or nullopt.
std::optional<std::vector<uint8_t>> solve_left(const FpMatrix& A,
                                               const std::vector<uint8_t>& b);

// Coordinates X with X * B = V, for B with independent rows. Fails (nullopt)
// if some row of V is outside the row space of B.
std::optional<FpMatrix> express_in_basis(const FpMatrix& B, const FpMatrix& V);

// Inverse of a square matrix, or nullopt if singular.
std::optional<FpMatrix> fp_inverse(const FpMatrix& A);

// Canonical basis of the row space (RREF nonzero rows).
FpMatrix row_space_basis(const FpMatrix& A);

// Cochain complex: spaces C^lo .. C^hi, differentials d[k] : C^(lo+k) ->
// C^(lo+k+1) acting on row vectors, with d[k] * d[k+1] = 0.
struct ChainComplexFp {
    uint8_t p = 2;
    int lo = 0;
    std::vector<uint32_t> dims;
    std::vector<FpMatrix> d;  // d[k] has shape dims[k] x dims[k+1]

    int hi() const { return lo + int(dims.size()) - 1; }
    // Empty string when the complex is well-formed, else a description.
    std::string validate() const;
};

struct CohomologyAt {
    uint32_t dim = 0;
    FpMatrix representatives;  // rows: cocycles completing the coboundaries
};

// H^n of the cochain complex: ker(d^n) / im(d^(n-1)).
CohomologyAt cochain_cohomology(const ChainComplexFp& c, int n);

}  // namespace folim
