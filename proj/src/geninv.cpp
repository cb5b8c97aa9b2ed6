#include <gid/geninv.hpp>

namespace gid {

bool is_gi(const Matrix& a, const Matrix& x) {
    if (a.field() != x.field()) throw FieldMismatch("generalized inverse across fields");
    if (x.rows() != a.cols() || x.cols() != a.rows())
        throw DimensionMismatch("generalized inverse of an " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()) + " matrix must be " +
                                std::to_string(a.cols()) + "x" + std::to_string(a.rows()));
    return a.mul(x).mul(a) == a;
}

static void check_right_id(const Transformation& t, const char* who) {
    if (t.form != Form::right_id_full && t.form != Form::multi)
        throw ConfigError(std::string(who) + " needs a right-identity transformation");
}

GenInverse gi_from_x1(const std::shared_ptr<const Transformation>& t, const Matrix& x1) {
    check_right_id(*t, "gi_from_x1");
    size_t r = t->r, k = t->k();
    if (x1.rows() != k || x1.cols() != r)
        throw DimensionMismatch("free block must be " + std::to_string(k) + "x" +
                                std::to_string(r));
    Matrix v = t->V();
    Matrix x2 = Matrix::identity(x1.field(), r).sub(v.mul(x1));
    Matrix stacked = x1.stack(x2);                       // n x r
    Matrix x = t->Q.apply_rows(stacked).mul(t->P);       // Q [X1 ; I - V X1] P
    return GenInverse{std::move(x), t, x1};
}

GenInverse gi_from_x1(const Transformation& t, const Matrix& x1) {
    return gi_from_x1(std::make_shared<const Transformation>(t), x1);
}

GiEnumerator::GiEnumerator(std::shared_ptr<const Transformation> t, uint64_t cap)
    : t_(std::move(t)), x1_(t_->canon.field(), t_->k(), t_->r) {
    check_right_id(*t_, "enumerate_gi");
    size_t cells = t_->k() * t_->r;
    uint64_t q = t_->canon.field().q();
    uint64_t total = 1;
    for (size_t i = 0; i < cells; ++i) {
        if (total > cap / q)
            throw CapExceeded("inverse family has q^" + std::to_string(cells) +
                              " elements, beyond the enumeration cap");
        total *= q;
    }
    total_ = total;
}

std::optional<GenInverse> GiEnumerator::next() {
    if (yielded_ >= total_) return std::nullopt;
    GenInverse g = gi_from_x1(t_, x1_);
    ++yielded_;
    // advance the row-major base-q odometer
    uint32_t q = t_->canon.field().q();
    size_t k = t_->k(), r = t_->r;
    for (size_t idx = k * r; idx-- > 0;) {
        size_t i = idx / r, j = idx % r;
        uint32_t v = x1_.get(i, j);
        if (v + 1 < q) {
            x1_.set(i, j, v + 1);
            break;
        }
        x1_.set(i, j, 0);
    }
    return g;
}

void GiEnumerator::reset() {
    yielded_ = 0;
    x1_ = Matrix(t_->canon.field(), t_->k(), t_->r);
}

GiEnumerator enumerate_gi(const std::shared_ptr<const Transformation>& t, uint64_t cap) {
    return GiEnumerator(t, cap);
}

Matrix steer_x1(const Transformation& t, const FieldVector& sbar, const FieldVector& w) {
    if (sbar.field() != t.canon.field() || w.field() != t.canon.field())
        throw FieldMismatch("steering vectors over a different field than the transformation");
    if (sbar.size() > t.n() || w.size() > t.n())
        throw DimensionMismatch("steering vectors longer than the transformed matrix");
    if (sbar.is_zero())
        throw ZeroSyndrome("cannot steer against a zero vector");
    const PrimeField& f = sbar.field();
    size_t j = 0;
    while (sbar.get(j) == 0) ++j;
    uint32_t scale = f.inv(sbar.get(j));
    Matrix x1(f, w.size(), sbar.size());
    for (size_t i = 0; i < w.size(); ++i) {
        uint32_t v = w.get(i);
        if (v) x1.set(i, j, f.mul(v, scale));
    }
    return x1;
}

FieldVector null_from_w(const Transformation& t, const FieldVector& bbar,
                        const FieldVector& w) {
    check_right_id(t, "null_from_w");
    if (bbar.is_zero())
        throw ZeroVector("null-space parameterization requires a nonzero image vector");
    if (w.size() != t.k())
        throw DimensionMismatch("free vector must have length " + std::to_string(t.k()));
    const PrimeField& f = w.field();
    FieldVector vw = t.V().mul(w);
    FieldVector z(f, t.n());
    for (size_t i = 0; i < t.k(); ++i) {
        uint32_t x = w.get(i);
        if (x) z.set(i, x);
    }
    for (size_t i = 0; i < t.r; ++i) {
        uint32_t x = vw.get(i);
        if (x) z.set(t.k() + i, f.neg(x));
    }
    return t.Q.apply(z);
}

std::pair<Matrix, Matrix> gi_to_prange_pair(const Matrix& a, const Matrix& x) {
    if (!is_gi(a, x))
        throw NotAGI("matrix is not a generalized inverse");
    size_t m = a.rows(), n = a.cols(), r = m, k = n - m;
    const PrimeField& f = a.field();

    // Fixed decomposition seed: the factorization is a deterministic function
    // of (A, X). The retry cap is raised since callers may pass matrices with
    // few viable pivot sets.
    Rng rng(0x6A1D5EEDULL);
    Transformation t = decompose(a, Form::right_id_full, rng, 10000);

    // Blocks of X relative to (P, Q): S = Q^{-1} X P^{-1} = [X1 ; X2] with
    // V X1 + X2 = I_r, and S has full column rank r.
    Matrix pinv = *t.P.inverse();
    Matrix s = t.Q.inverse().apply_rows(x).mul(pinv);

    // Column-rank-r reduction: row operations bring S to [I_r ; 0]; the same
    // operations applied to I_n give L with L S = [I_r ; 0], so S = L^{-1} ...
    Matrix b = s;
    Matrix l = Matrix::identity(f, n);
    for (size_t col = 0; col < r; ++col) {
        size_t sel = n;
        for (size_t i = col; i < n; ++i)
            if (b.get(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel == n)
            throw Error("internal: generalized inverse block lost column rank");
        b.swap_rows(col, sel);
        l.swap_rows(col, sel);
        uint32_t p = b.get(col, col);
        if (p != 1) {
            uint32_t ip = f.inv(p);
            b.row_scale(col, ip);
            l.row_scale(col, ip);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            uint32_t c = b.get(i, col);
            if (c) {
                uint32_t nc = f.neg(c);
                b.row_addmul(i, col, nc);
                l.row_addmul(i, col, nc);
            }
        }
    }
    Matrix linv = *l.inverse();

    // [I_r ; 0] = Pi [0 ; I_r] with Pi mapping row k+i -> i, row j -> r+j.
    std::vector<size_t> pimap(n);
    for (size_t i = 0; i < r; ++i) pimap[k + i] = i;
    for (size_t j = 0; j < k; ++j) pimap[j] = r + j;
    Matrix pi = PermutationMatrix::from(pimap).to_matrix(f);

    Matrix qbar = t.Q.to_matrix(f).mul(linv).mul(pi);
    Matrix pbar = t.P;

    // Both identities of the factorization are re-checked by multiplication.
    Matrix zero_id = Matrix(f, k, r).stack(Matrix::identity(f, r));
    if (qbar.mul(zero_id).mul(pbar) != x)
        throw Error("internal: factorization does not reproduce the inverse");
    Matrix phq = pbar.mul(a).mul(qbar);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            if (phq.get(i, k + j) != (i == j ? 1u : 0u))
                throw Error("internal: factored transformation lacks the identity block");
    return {pbar, qbar};
}

} // namespace gid
