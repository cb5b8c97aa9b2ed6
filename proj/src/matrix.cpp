#include <gid/matrix.hpp>

#include <bit>
#include <numeric>
#include <sstream>

namespace gid {

Matrix::Matrix(PrimeField f, size_t rows, size_t cols) : f_(f), rows_(rows), cols_(cols) {
    if (f_.is_binary()) {
        stride_ = (cols + 63) / 64;
        w_.assign(rows * stride_, 0);
    } else {
        stride_ = cols;
        if (f_.q() < 256)
            b8_.assign(rows * cols, 0);
        else
            b16_.assign(rows * cols, 0);
    }
}

Matrix Matrix::identity(PrimeField f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(PrimeField f,
                         std::initializer_list<std::initializer_list<uint32_t>> rows) {
    std::vector<std::vector<uint32_t>> rr;
    for (auto& r : rows) rr.emplace_back(r);
    return from_rows(f, rr);
}

Matrix Matrix::from_rows(PrimeField f, const std::vector<std::vector<uint32_t>>& rows) {
    size_t nr = rows.size();
    size_t nc = nr ? rows[0].size() : 0;
    Matrix m(f, nr, nc);
    for (size_t i = 0; i < nr; ++i) {
        if (rows[i].size() != nc)
            throw DimensionMismatch("ragged row list");
        for (size_t j = 0; j < nc; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::random(PrimeField f, size_t rows, size_t cols, Rng& rng) {
    Matrix m(f, rows, cols);
    if (f.is_binary()) {
        uint64_t tail = (cols % 64) ? ((1ULL << (cols % 64)) - 1) : ~0ULL;
        for (size_t i = 0; i < rows; ++i) {
            for (size_t wi = 0; wi < m.stride_; ++wi)
                m.w_[i * m.stride_ + wi] = rng.next_u64();
            if (m.stride_) m.w_[i * m.stride_ + m.stride_ - 1] &= tail;
        }
    } else {
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) m.set(i, j, rng.residue(f.q()));
    }
    return m;
}

uint32_t Matrix::get(size_t i, size_t j) const {
    if (f_.is_binary())
        return (uint32_t)((w_[i * stride_ + (j >> 6)] >> (j & 63)) & 1u);
    if (f_.q() < 256) return b8_[i * stride_ + j];
    return b16_[i * stride_ + j];
}

void Matrix::set(size_t i, size_t j, uint32_t v) {
    if (v >= f_.q()) v %= f_.q(); // keep entries canonical
    if (f_.is_binary()) {
        uint64_t mask = 1ULL << (j & 63);
        uint64_t& word = w_[i * stride_ + (j >> 6)];
        if (v)
            word |= mask;
        else
            word &= ~mask;
    } else if (f_.q() < 256) {
        b8_[i * stride_ + j] = (uint8_t)v;
    } else {
        b16_[i * stride_ + j] = (uint16_t)v;
    }
}

void Matrix::check_mul(const Matrix& o) const {
    if (f_ != o.f_) throw FieldMismatch("matrix product across fields");
    if (cols_ != o.rows_)
        throw DimensionMismatch("product shape " + std::to_string(rows_) + "x" +
                                std::to_string(cols_) + " * " + std::to_string(o.rows_) +
                                "x" + std::to_string(o.cols_));
}

void Matrix::check_same_shape(const Matrix& o) const {
    if (f_ != o.f_) throw FieldMismatch("matrix sum across fields");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatch("matrix shapes differ");
}

Matrix Matrix::mul(const Matrix& o) const {
    check_mul(o);
    Matrix r(f_, rows_, o.cols_);
    if (f_.is_binary()) {
        for (size_t i = 0; i < rows_; ++i) {
            uint64_t* dst = r.w_.data() + i * r.stride_;
            for (size_t wi = 0; wi < stride_; ++wi) {
                uint64_t bits = w_[i * stride_ + wi];
                while (bits) {
                    size_t j = wi * 64 + (size_t)std::countr_zero(bits);
                    bits &= bits - 1;
                    const uint64_t* src = o.w_.data() + j * o.stride_;
                    for (size_t wj = 0; wj < o.stride_; ++wj) dst[wj] ^= src[wj];
                }
            }
        }
    } else {
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) {
                uint32_t c = get(i, j);
                if (!c) continue;
                for (size_t jj = 0; jj < o.cols_; ++jj) {
                    uint32_t v = f_.add(r.get(i, jj), f_.mul(c, o.get(j, jj)));
                    r.set(i, jj, v);
                }
            }
        }
    }
    return r;
}

FieldVector Matrix::mul(const FieldVector& v) const {
    if (f_ != v.field()) throw FieldMismatch("matrix-vector product across fields");
    if (cols_ != v.size())
        throw DimensionMismatch("matrix-vector product shape mismatch");
    FieldVector r(f_, rows_);
    if (f_.is_binary()) {
        const auto& vw = v.words();
        for (size_t i = 0; i < rows_; ++i) {
            uint64_t acc = 0;
            const uint64_t* row = w_.data() + i * stride_;
            for (size_t wi = 0; wi < stride_; ++wi) acc ^= row[wi] & vw[wi];
            if (std::popcount(acc) & 1) r.set(i, 1);
        }
    } else {
        for (size_t i = 0; i < rows_; ++i) {
            uint64_t acc = 0;
            for (size_t j = 0; j < cols_; ++j)
                acc += (uint64_t)get(i, j) * v.get(j);
            r.set(i, (uint32_t)(acc % f_.q()));
        }
    }
    return r;
}

Matrix Matrix::add(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    if (f_.is_binary()) {
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] ^= o.w_[i];
    } else {
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                r.set(i, j, f_.add(get(i, j), o.get(i, j)));
    }
    return r;
}

Matrix Matrix::sub(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    if (f_.is_binary()) {
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] ^= o.w_[i];
    } else {
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                r.set(i, j, f_.sub(get(i, j), o.get(i, j)));
    }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(f_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            uint32_t v = get(i, j);
            if (v) r.set(j, i, v);
        }
    return r;
}

size_t Matrix::rank() const {
    Matrix b = *this;
    size_t piv_row = 0;
    for (size_t col = 0; col < cols_ && piv_row < rows_; ++col) {
        size_t sel = rows_;
        for (size_t i = piv_row; i < rows_; ++i)
            if (b.get(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel == rows_) continue;
        b.swap_rows(piv_row, sel);
        uint32_t p = b.get(piv_row, col);
        if (p != 1) b.row_scale(piv_row, f_.inv(p));
        for (size_t i = piv_row + 1; i < rows_; ++i) {
            uint32_t c = b.get(i, col);
            if (c) b.row_addmul(i, piv_row, f_.neg(c));
        }
        ++piv_row;
    }
    return piv_row;
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
    Matrix b = *this;
    Matrix e = identity(f_, rows_);
    for (size_t col = 0; col < cols_; ++col) {
        size_t sel = rows_;
        for (size_t i = col; i < rows_; ++i)
            if (b.get(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel == rows_) return std::nullopt;
        b.swap_rows(col, sel);
        e.swap_rows(col, sel);
        uint32_t p = b.get(col, col);
        if (p != 1) {
            uint32_t ip = f_.inv(p);
            b.row_scale(col, ip);
            e.row_scale(col, ip);
        }
        for (size_t i = 0; i < rows_; ++i) {
            if (i == col) continue;
            uint32_t c = b.get(i, col);
            if (c) {
                uint32_t nc = f_.neg(c);
                b.row_addmul(i, col, nc);
                e.row_addmul(i, col, nc);
            }
        }
    }
    return e;
}

bool Matrix::is_zero() const {
    for (uint64_t x : w_)
        if (x) return false;
    for (uint8_t x : b8_)
        if (x) return false;
    for (uint16_t x : b16_)
        if (x) return false;
    return true;
}

Matrix Matrix::submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw DimensionMismatch("submatrix out of range");
    Matrix r(f_, nr, nc);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) {
            uint32_t v = get(r0 + i, c0 + j);
            if (v) r.set(i, j, v);
        }
    return r;
}

Matrix Matrix::stack(const Matrix& bottom) const {
    if (f_ != bottom.f_) throw FieldMismatch("stack across fields");
    if (cols_ != bottom.cols_) throw DimensionMismatch("stack with different widths");
    Matrix r(f_, rows_ + bottom.rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            uint32_t v = get(i, j);
            if (v) r.set(i, j, v);
        }
    for (size_t i = 0; i < bottom.rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            uint32_t v = bottom.get(i, j);
            if (v) r.set(rows_ + i, j, v);
        }
    return r;
}

FieldVector Matrix::row_vec(size_t i) const {
    FieldVector v(f_, cols_);
    if (f_.is_binary()) {
        for (size_t wi = 0; wi < stride_; ++wi) v.words()[wi] = w_[i * stride_ + wi];
    } else {
        for (size_t j = 0; j < cols_; ++j) v.set(j, get(i, j));
    }
    return v;
}

FieldVector Matrix::col_vec(size_t j) const {
    FieldVector v(f_, rows_);
    for (size_t i = 0; i < rows_; ++i) {
        uint32_t x = get(i, j);
        if (x) v.set(i, x);
    }
    return v;
}

void Matrix::set_row(size_t i, const FieldVector& v) {
    if (v.size() != cols_ || v.field() != f_)
        throw DimensionMismatch("set_row shape mismatch");
    if (f_.is_binary()) {
        for (size_t wi = 0; wi < stride_; ++wi) w_[i * stride_ + wi] = v.words()[wi];
    } else {
        for (size_t j = 0; j < cols_; ++j) set(i, j, v.get(j));
    }
}

void Matrix::row_addmul(size_t dst, size_t src, uint32_t c) {
    if (c == 0) return;
    if (f_.is_binary()) {
        uint64_t* d = w_.data() + dst * stride_;
        const uint64_t* s = w_.data() + src * stride_;
        for (size_t wi = 0; wi < stride_; ++wi) d[wi] ^= s[wi];
    } else if (f_.q() < 256) {
        uint8_t* d = b8_.data() + dst * stride_;
        const uint8_t* s = b8_.data() + src * stride_;
        for (size_t j = 0; j < cols_; ++j) d[j] = (uint8_t)f_.add(d[j], f_.mul(c, s[j]));
    } else {
        uint16_t* d = b16_.data() + dst * stride_;
        const uint16_t* s = b16_.data() + src * stride_;
        for (size_t j = 0; j < cols_; ++j) d[j] = (uint16_t)f_.add(d[j], f_.mul(c, s[j]));
    }
}

void Matrix::row_scale(size_t i, uint32_t c) {
    if (f_.is_binary()) return; // only c == 1 possible for valid pivots
    if (f_.q() < 256) {
        uint8_t* d = b8_.data() + i * stride_;
        for (size_t j = 0; j < cols_; ++j) d[j] = (uint8_t)f_.mul(c, d[j]);
    } else {
        uint16_t* d = b16_.data() + i * stride_;
        for (size_t j = 0; j < cols_; ++j) d[j] = (uint16_t)f_.mul(c, d[j]);
    }
}

void Matrix::swap_rows(size_t i, size_t j) {
    if (i == j) return;
    if (f_.is_binary()) {
        for (size_t wi = 0; wi < stride_; ++wi)
            std::swap(w_[i * stride_ + wi], w_[j * stride_ + wi]);
    } else if (f_.q() < 256) {
        for (size_t jj = 0; jj < cols_; ++jj)
            std::swap(b8_[i * stride_ + jj], b8_[j * stride_ + jj]);
    } else {
        for (size_t jj = 0; jj < cols_; ++jj)
            std::swap(b16_[i * stride_ + jj], b16_[j * stride_ + jj]);
    }
}

bool Matrix::operator==(const Matrix& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_ &&
           b8_ == o.b8_ && b16_ == o.b16_;
}

bool Matrix::operator<(const Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            uint32_t a = get(i, j), b = o.get(i, j);
            if (a != b) return a < b;
        }
    return false;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << get(i, j);
        }
        os << '\n';
    }
    return os.str();
}

PermutationMatrix::PermutationMatrix(size_t n) : pi_(n) {
    std::iota(pi_.begin(), pi_.end(), size_t{0});
}

PermutationMatrix PermutationMatrix::random(size_t n, Rng& rng) {
    PermutationMatrix p(n);
    rng.shuffle(p.pi_);
    return p;
}

PermutationMatrix PermutationMatrix::from(std::vector<size_t> pi) {
    std::vector<bool> seen(pi.size(), false);
    for (size_t v : pi) {
        if (v >= pi.size() || seen[v])
            throw DimensionMismatch("permutation map is not a bijection");
        seen[v] = true;
    }
    PermutationMatrix p(pi.size());
    p.pi_ = std::move(pi);
    return p;
}

PermutationMatrix PermutationMatrix::inverse() const {
    std::vector<size_t> inv(pi_.size());
    for (size_t j = 0; j < pi_.size(); ++j) inv[pi_[j]] = j;
    return from(std::move(inv));
}

FieldVector PermutationMatrix::apply(const FieldVector& v) const {
    if (v.size() != pi_.size()) throw DimensionMismatch("permutation size mismatch");
    FieldVector r(v.field(), v.size());
    for (size_t j = 0; j < pi_.size(); ++j) {
        uint32_t x = v.get(j);
        if (x) r.set(pi_[j], x);
    }
    return r;
}

Matrix PermutationMatrix::apply_columns(const Matrix& a) const {
    if (a.cols() != pi_.size()) throw DimensionMismatch("permutation size mismatch");
    Matrix r(a.field(), a.rows(), a.cols());
    for (size_t j = 0; j < pi_.size(); ++j) {
        size_t srcj = pi_[j];
        for (size_t i = 0; i < a.rows(); ++i) {
            uint32_t v = a.get(i, srcj);
            if (v) r.set(i, j, v);
        }
    }
    return r;
}

Matrix PermutationMatrix::apply_rows(const Matrix& m) const {
    if (m.rows() != pi_.size()) throw DimensionMismatch("permutation size mismatch");
    Matrix r(m.field(), m.rows(), m.cols());
    for (size_t j = 0; j < pi_.size(); ++j) r.set_row(pi_[j], m.row_vec(j));
    return r;
}

Matrix PermutationMatrix::to_matrix(PrimeField f) const {
    Matrix m(f, pi_.size(), pi_.size());
    for (size_t j = 0; j < pi_.size(); ++j) m.set(pi_[j], j, 1);
    return m;
}

std::vector<size_t> PermutationMatrix::image_of_range(size_t lo, size_t hi) const {
    std::vector<size_t> out;
    out.reserve(hi - lo);
    for (size_t j = lo; j < hi; ++j) out.push_back(pi_[j]);
    std::sort(out.begin(), out.end());
    return out;
}

Matrix Transformation::V() const {
    return canon.submatrix(0, 0, r, k());
}

Matrix Transformation::A2() const {
    return canon.submatrix(0, r, r, n() - r);
}

Matrix Transformation::A1() const {
    return canon.submatrix(0, 0, r, n() - r);
}

Matrix Transformation::V1() const {
    return canon.submatrix(0, 0, ell, k() + ell);
}

Matrix Transformation::V3() const {
    return canon.submatrix(ell, 0, r - ell, k() + ell);
}

bool Transformation::canon_shape_ok() const {
    size_t mm = m(), nn = n(), kk = k();
    auto is_id_block = [&](size_t r0, size_t c0, size_t sz) {
        for (size_t i = 0; i < sz; ++i)
            for (size_t j = 0; j < sz; ++j)
                if (canon.get(r0 + i, c0 + j) != (i == j ? 1u : 0u)) return false;
        return true;
    };
    auto is_zero_block = [&](size_t r0, size_t c0, size_t nr, size_t nc) {
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j)
                if (canon.get(r0 + i, c0 + j) != 0) return false;
        return true;
    };
    switch (form) {
    case Form::right_id_full:
        return mm == r && is_id_block(0, kk, r);
    case Form::left_id_full:
        return mm == r && is_id_block(0, 0, r);
    case Form::right_id_deficient:
        return is_id_block(0, nn - r, r) && is_zero_block(r, 0, mm - r, nn);
    case Form::left_id_deficient:
        return is_id_block(0, 0, r) && is_zero_block(r, 0, mm - r, nn);
    case Form::partial:
        return mm == r && is_zero_block(0, kk + ell, ell, r - ell) &&
               is_id_block(ell, kk + ell, r - ell);
    case Form::multi: {
        if (mm != r || !is_id_block(0, kk, r)) return false;
        size_t acc = 0;
        for (size_t b : block_sizes) acc += b;
        return acc == r;
    }
    }
    return false;
}

namespace {

// One Gauss-Jordan attempt under a fixed column permutation. Pivots are
// produced left-to-right over pivot_cols, choosing the first available row
// with a nonzero entry; rows are finally rearranged so that the pivot of
// pivot_cols[i] lands on target_rows[i] and unused rows fill the remaining
// positions in their original order.
bool eliminate_attempt(Matrix& b, Matrix& e, const std::vector<size_t>& pivot_cols,
                       const std::vector<size_t>& target_rows) {
    const PrimeField& f = b.field();
    size_t m = b.rows();
    std::vector<bool> used(m, false);
    std::vector<size_t> assigned;
    assigned.reserve(pivot_cols.size());
    for (size_t pc : pivot_cols) {
        size_t sel = m;
        for (size_t i = 0; i < m; ++i)
            if (!used[i] && b.get(i, pc) != 0) {
                sel = i;
                break;
            }
        if (sel == m) return false; // singular pivot block under this permutation
        uint32_t p = b.get(sel, pc);
        if (p != 1) {
            uint32_t ip = f.inv(p);
            b.row_scale(sel, ip);
            e.row_scale(sel, ip);
        }
        for (size_t i = 0; i < m; ++i) {
            if (i == sel) continue;
            uint32_t c = b.get(i, pc);
            if (c) {
                uint32_t nc = f.neg(c);
                b.row_addmul(i, sel, nc);
                e.row_addmul(i, sel, nc);
            }
        }
        used[sel] = true;
        assigned.push_back(sel);
    }
    // Row placement: assigned pivot rows to their targets, the rest in order.
    std::vector<size_t> dest(m, m);
    std::vector<bool> taken(m, false);
    for (size_t idx = 0; idx < assigned.size(); ++idx) {
        dest[assigned[idx]] = target_rows[idx];
        taken[target_rows[idx]] = true;
    }
    size_t next_free = 0;
    for (size_t i = 0; i < m; ++i) {
        if (dest[i] != m) continue;
        while (taken[next_free]) ++next_free;
        dest[i] = next_free;
        taken[next_free] = true;
    }
    PermutationMatrix rowperm = PermutationMatrix::from(dest);
    b = rowperm.apply_rows(b);
    e = rowperm.apply_rows(e);
    return true;
}

Transformation decompose_common(const Matrix& a, Form form, size_t r, size_t ell,
                                std::vector<size_t> block_sizes, Rng& rng,
                                size_t max_retries) {
    size_t m = a.rows(), n = a.cols();
    size_t k = n - r;
    std::vector<size_t> pivot_cols, target_rows;
    switch (form) {
    case Form::right_id_full:
    case Form::multi:
    case Form::right_id_deficient:
        for (size_t i = 0; i < r; ++i) pivot_cols.push_back(n - r + i);
        for (size_t i = 0; i < r; ++i) target_rows.push_back(i);
        break;
    case Form::left_id_full:
    case Form::left_id_deficient:
        for (size_t i = 0; i < r; ++i) pivot_cols.push_back(i);
        for (size_t i = 0; i < r; ++i) target_rows.push_back(i);
        break;
    case Form::partial:
        for (size_t i = 0; i < r - ell; ++i) pivot_cols.push_back(k + ell + i);
        for (size_t i = 0; i < r - ell; ++i) target_rows.push_back(ell + i);
        break;
    }

    for (size_t attempt = 0; attempt < max_retries; ++attempt) {
        PermutationMatrix q = PermutationMatrix::random(n, rng);
        Matrix b = q.apply_columns(a);
        Matrix e = Matrix::identity(a.field(), m);
        if (!eliminate_attempt(b, e, pivot_cols, target_rows))
            continue;
        if (form == Form::right_id_deficient || form == Form::left_id_deficient) {
            // rank(A) = r forces the non-pivot rows to vanish entirely
            for (size_t i = r; i < m; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (b.get(i, j) != 0)
                        throw Error("internal: nonzero residual row in rank-deficient form");
        }
        Transformation t{form, std::move(e), std::move(q), std::move(b),
                         r,    ell,          std::move(block_sizes)};
        return t;
    }

    // Distinguish a hopeless request from an unlucky permutation streak.
    size_t rk = a.rank();
    if ((form == Form::right_id_full || form == Form::left_id_full ||
         form == Form::partial || form == Form::multi) &&
        rk < m)
        throw NotFullRank("matrix rank " + std::to_string(rk) + " < row count " +
                          std::to_string(m) + "; full-row-rank form unavailable");
    throw RetryExhausted("no invertible pivot block found in " +
                         std::to_string(max_retries) + " random column permutations");
}

} // namespace

Transformation decompose(const Matrix& a, Form form, Rng& rng, size_t max_retries) {
    size_t m = a.rows(), n = a.cols();
    switch (form) {
    case Form::right_id_full:
    case Form::left_id_full:
        if (m > n)
            throw NotFullRank("more rows than columns; full-row-rank form unavailable");
        return decompose_common(a, form, m, 0, {}, rng, max_retries);
    case Form::right_id_deficient:
    case Form::left_id_deficient: {
        size_t r = a.rank();
        return decompose_common(a, form, r, 0, {}, rng, max_retries);
    }
    case Form::partial:
        throw ConfigError("use decompose_partial for the partial form");
    case Form::multi:
        throw ConfigError("use decompose_multi for the multi form");
    }
    throw ConfigError("unknown form");
}

Transformation decompose_partial(const Matrix& a, size_t ell, Rng& rng, size_t max_retries) {
    size_t m = a.rows(), n = a.cols();
    if (m > n)
        throw NotFullRank("more rows than columns; full-row-rank form unavailable");
    if (ell > m)
        throw ConfigError("partial elimination window " + std::to_string(ell) +
                          " exceeds row count " + std::to_string(m));
    return decompose_common(a, Form::partial, m, ell, {}, rng, max_retries);
}

Transformation decompose_multi(const Matrix& a, const std::vector<size_t>& ells, Rng& rng,
                               size_t max_retries) {
    size_t m = a.rows(), n = a.cols();
    if (m > n)
        throw NotFullRank("more rows than columns; full-row-rank form unavailable");
    if (ells.empty())
        throw ConfigError("empty block list");
    size_t total = 0;
    for (size_t l : ells) {
        if (l == 0) throw ConfigError("zero-sized identity block");
        total += l;
    }
    if (total > m)
        throw ConfigError("identity blocks sum to " + std::to_string(total) +
                          " > rank " + std::to_string(m));
    std::vector<size_t> blocks = ells;
    if (total < m) blocks.push_back(m - total);
    return decompose_common(a, Form::multi, m, 0, std::move(blocks), rng, max_retries);
}

} // namespace gid
