#ifndef GID_MATRIX_HPP
#define GID_MATRIX_HPP

#include <gid/field.hpp>
#include <gid/rng.hpp>

#include <optional>
#include <vector>

namespace gid {

/// Dense row-major matrix over F_q. Rows use the same packing scheme as
/// FieldVector (64-bit words for GF(2), bytes otherwise).
class Matrix {
public:
    Matrix(PrimeField f, size_t rows, size_t cols);
    static Matrix identity(PrimeField f, size_t n);
    static Matrix from_rows(PrimeField f,
                            std::initializer_list<std::initializer_list<uint32_t>> rows);
    static Matrix from_rows(PrimeField f, const std::vector<std::vector<uint32_t>>& rows);
    static Matrix random(PrimeField f, size_t rows, size_t cols, Rng& rng);

    const PrimeField& field() const { return f_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint32_t get(size_t i, size_t j) const;
    void set(size_t i, size_t j, uint32_t v);

    Matrix mul(const Matrix& o) const;
    FieldVector mul(const FieldVector& v) const;
    Matrix operator*(const Matrix& o) const { return mul(o); }
    FieldVector operator*(const FieldVector& v) const { return mul(v); }
    Matrix add(const Matrix& o) const;
    Matrix sub(const Matrix& o) const;

    Matrix transpose() const;
    size_t rank() const;
    std::optional<Matrix> inverse() const;
    bool is_zero() const;

    Matrix submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const;
    /// Stack on top of `bottom` (same column count).
    Matrix stack(const Matrix& bottom) const;
    FieldVector row_vec(size_t i) const;
    FieldVector col_vec(size_t j) const;
    void set_row(size_t i, const FieldVector& v);

    // in-place row operations
    void row_addmul(size_t dst, size_t src, uint32_t c); // row dst += c * row src
    void row_scale(size_t i, uint32_t c);
    void swap_rows(size_t i, size_t j);

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool operator<(const Matrix& o) const; // entry-lexicographic

    std::string to_string() const;

private:
    void check_mul(const Matrix& o) const;
    void check_same_shape(const Matrix& o) const;

    PrimeField f_;
    size_t rows_ = 0, cols_ = 0;
    size_t stride_ = 0; // words (q=2) or entries per row
    std::vector<uint64_t> w_;
    std::vector<uint8_t> b8_;
    std::vector<uint16_t> b16_;
};

/// Permutation on {0,..,n-1}, viewed as the n x n matrix Q with
/// Q e_j = e_{pi(j)} (column j has its 1 in row pi(j)).
class PermutationMatrix {
public:
    explicit PermutationMatrix(size_t n); // identity
    static PermutationMatrix random(size_t n, Rng& rng);
    static PermutationMatrix from(std::vector<size_t> pi);

    size_t size() const { return pi_.size(); }
    size_t map(size_t j) const { return pi_[j]; }

    PermutationMatrix inverse() const;
    /// Q * v  (moves entry j to position pi(j))
    FieldVector apply(const FieldVector& v) const;
    /// A * Q  (column j of the result is column pi(j) of A)
    Matrix apply_columns(const Matrix& a) const;
    /// Q * M  (row j of M moves to row pi(j))
    Matrix apply_rows(const Matrix& m) const;
    Matrix to_matrix(PrimeField f) const;
    /// Images pi([lo,hi)) of a 0-based index interval, sorted.
    std::vector<size_t> image_of_range(size_t lo, size_t hi) const;

    bool operator==(const PermutationMatrix& o) const { return pi_ == o.pi_; }

private:
    std::vector<size_t> pi_;
};

/// Canonical shapes achievable by row operations plus a column permutation.
/// Letting r be the identity-block rank and k = n - r:
///
///   right_id_full       [ V | I_r ]                      (full row rank)
///   left_id_full        [ I_r | A2 ]                     (full row rank)
///   right_id_deficient  [ A1 I_r ; 0 0 ]                 (rank r < min(m,n))
///   left_id_deficient   [ I_r A2 ; 0 0 ]                 (rank r < min(m,n))
///   partial             [ V1 0 ; V3 I_{r-ell} ]          (full row rank)
///   multi               [ V | I_r ] with V rows split into tracked blocks
enum class Form {
    right_id_full,
    left_id_full,
    right_id_deficient,
    left_id_deficient,
    partial,
    multi,
};

/// A decomposition record: invertible P, permutation Q and the canonical
/// matrix canon = P * A * Q, together with block bookkeeping.
struct Transformation {
    Form form;
    Matrix P;
    PermutationMatrix Q;
    Matrix canon;
    size_t r = 0;                    // identity rank achieved
    size_t ell = 0;                  // partial only
    std::vector<size_t> block_sizes; // multi only; sums to r

    size_t m() const { return canon.rows(); }
    size_t n() const { return canon.cols(); }
    size_t k() const { return n() - r; }
    bool degenerate() const { return form == Form::partial && ell == r; }

    // Block accessors (copies). Which ones are meaningful depends on `form`.
    Matrix V() const;  // right_id_full / multi: r x k left block
    Matrix A2() const; // left forms: r x (n-r) right block
    Matrix A1() const; // right_id_deficient: r x (n-r) left block
    Matrix V1() const; // partial: ell x (k+ell)
    Matrix V3() const; // partial: (r-ell) x (k+ell)
    /// The canonical shape rebuilt from P*A*Q (identity check helper).
    bool canon_shape_ok() const;
};

/// Random-permutation Gaussian elimination into the requested form.
/// Q is always a pure permutation; P accumulates the row operations.
/// A fresh permutation is retried (up to max_retries) whenever the pivot
/// block under the current one is singular.
Transformation decompose(const Matrix& a, Form form, Rng& rng, size_t max_retries = 100);
Transformation decompose_partial(const Matrix& a, size_t ell, Rng& rng, size_t max_retries = 100);
Transformation decompose_multi(const Matrix& a, const std::vector<size_t>& ells, Rng& rng,
                               size_t max_retries = 100);

} // namespace gid

#endif
