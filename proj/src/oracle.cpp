#include <gid/oracle.hpp>

#include <boost/multiprecision/cpp_int.hpp>

namespace gid {

namespace {

struct SolvedSystem {
    FieldVector particular;
    std::vector<FieldVector> null_basis;
};

// RREF-based solve of A x = b; nullopt when inconsistent.
std::optional<SolvedSystem> solve_affine(const Matrix& a, const FieldVector& b) {
    const PrimeField& f = a.field();
    size_t m = a.rows(), n = a.cols();
    Matrix r = a;
    FieldVector rhs = b;
    std::vector<size_t> pivot_col_of_row;
    std::vector<ptrdiff_t> row_of_col(n, -1);
    size_t piv = 0;
    for (size_t col = 0; col < n && piv < m; ++col) {
        size_t sel = m;
        for (size_t i = piv; i < m; ++i)
            if (r.get(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel == m) continue;
        r.swap_rows(piv, sel);
        {
            uint32_t tmp = rhs.get(piv);
            rhs.set(piv, rhs.get(sel));
            rhs.set(sel, tmp);
        }
        uint32_t p = r.get(piv, col);
        if (p != 1) {
            uint32_t ip = f.inv(p);
            r.row_scale(piv, ip);
            rhs.set(piv, f.mul(ip, rhs.get(piv)));
        }
        for (size_t i = 0; i < m; ++i) {
            if (i == piv) continue;
            uint32_t c = r.get(i, col);
            if (c) {
                r.row_addmul(i, piv, f.neg(c));
                rhs.set(i, f.sub(rhs.get(i), f.mul(c, rhs.get(piv))));
            }
        }
        row_of_col[col] = (ptrdiff_t)piv;
        pivot_col_of_row.push_back(col);
        ++piv;
    }
    for (size_t i = piv; i < m; ++i)
        if (rhs.get(i) != 0) return std::nullopt;

    FieldVector particular(f, n);
    for (size_t i = 0; i < piv; ++i)
        particular.set(pivot_col_of_row[i], rhs.get(i));

    std::vector<FieldVector> basis;
    for (size_t col = 0; col < n; ++col) {
        if (row_of_col[col] >= 0) continue;
        FieldVector v(f, n);
        v.set(col, 1);
        for (size_t pc = 0; pc < n; ++pc) {
            if (row_of_col[pc] < 0) continue;
            uint32_t c = r.get((size_t)row_of_col[pc], col);
            if (c) v.set(pc, f.neg(c));
        }
        basis.push_back(std::move(v));
    }
    return SolvedSystem{std::move(particular), std::move(basis)};
}

} // namespace

OracleReport enum_coset(const Matrix& a, const FieldVector& b, uint64_t cap) {
    if (a.field() != b.field()) throw FieldMismatch("coset enumeration across fields");
    if (a.rows() != b.size()) throw DimensionMismatch("coset right-hand side length");
    auto sys = solve_affine(a, b);
    if (!sys) throw Inconsistent("right-hand side not in the range of the matrix");

    uint64_t q = a.field().q();
    uint64_t total = 1;
    for (size_t i = 0; i < sys->null_basis.size(); ++i) {
        if (total > cap / q)
            throw TooLarge("solution set exceeds the enumeration cap");
        total *= q;
    }

    OracleReport rep;
    rep.count = total;
    rep.solutions.reserve(total);
    size_t d = sys->null_basis.size();
    std::vector<uint32_t> coeff(d, 0);
    size_t best = SIZE_MAX;
    while (true) {
        FieldVector x = sys->particular;
        for (size_t i = 0; i < d; ++i)
            if (coeff[i]) x.addmul_in_place(sys->null_basis[i], coeff[i]);
        best = std::min(best, x.weight());
        rep.solutions.push_back(std::move(x));
        size_t idx = d;
        while (idx-- > 0) {
            if (coeff[idx] + 1 < q) {
                coeff[idx]++;
                break;
            }
            coeff[idx] = 0;
        }
        if (idx == SIZE_MAX) break; // odometer wrapped
    }
    rep.min_weight = best == SIZE_MAX ? 0 : best;
    return rep;
}

size_t min_coset_weight(const Matrix& a, const FieldVector& b, uint64_t cap) {
    return enum_coset(a, b, cap).min_weight;
}

size_t min_codeword_weight(const Matrix& h, uint64_t cap) {
    FieldVector zero(h.field(), h.rows());
    OracleReport rep = enum_coset(h, zero, cap);
    size_t best = SIZE_MAX;
    for (const auto& v : rep.solutions) {
        size_t w = v.weight();
        if (w > 0 && w < best) best = w;
    }
    if (best == SIZE_MAX)
        throw Inconsistent("kernel is trivial; no nonzero codeword exists");
    return best;
}

namespace {

using bigint = boost::multiprecision::cpp_int;

// largest t with sum_{i=0}^{t} C(n,i) <= (q-1) q^(n-k)
int gv_support_threshold(size_t n, size_t k, uint32_t q) {
    bigint bound = q - 1;
    bigint qk = 1;
    for (size_t i = 0; i < n - k; ++i) qk *= q;
    bound *= qk;
    bigint sum = 0;
    bigint binom = 1; // C(n,0)
    int t = -1;
    for (size_t i = 0; i <= n; ++i) {
        sum += binom;
        if (sum <= bound)
            t = (int)i;
        else
            break;
        binom *= (unsigned long)(n - i);
        binom /= (unsigned long)(i + 1);
    }
    return t < 0 ? 0 : t;
}

} // namespace

int gv_threshold(size_t n, size_t k, uint32_t q) {
    if (k > n) throw ConfigError("dimension exceeds length");
    if (n > 10000) throw ConfigError("length beyond supported range");
    PrimeField f(q); // validates primality
    (void)f;
    return gv_support_threshold(n, k, q);
}

int gv_threshold_adjacent(size_t n, size_t k, uint32_t q) {
    return gv_threshold(n, k, q) + 1;
}

} // namespace gid
