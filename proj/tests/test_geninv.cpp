#include <doctest.h>

#include <gid/geninv.hpp>
#include <gid/oracle.hpp>

#include <algorithm>
#include <set>

using namespace gid;

TEST_SUITE_BEGIN("geninv");

namespace {

Matrix running_example(PrimeField f2) {
    return Matrix::from_rows(f2, {{1, 0, 1}, {0, 1, 1}});
}

// brute-force route: all n x m matrices X with A X A = A
std::set<Matrix> brute_gi_set(const Matrix& a) {
    const PrimeField& f = a.field();
    size_t cells = a.rows() * a.cols();
    std::set<Matrix> out;
    std::vector<uint32_t> digits(cells, 0);
    while (true) {
        Matrix x(f, a.cols(), a.rows());
        for (size_t idx = 0; idx < cells; ++idx)
            x.set(idx / a.rows(), idx % a.rows(), digits[idx]);
        if (is_gi(a, x)) out.insert(x);
        size_t i = cells;
        while (i-- > 0) {
            if (digits[i] + 1 < f.q()) {
                digits[i]++;
                break;
            }
            digits[i] = 0;
        }
        if (i == SIZE_MAX) break;
    }
    return out;
}

std::set<Matrix> enumerated_gi_set(const std::shared_ptr<const Transformation>& t) {
    std::set<Matrix> out;
    GiEnumerator en(t);
    while (auto g = en.next()) out.insert(g->X);
    return out;
}

Matrix random_full_row_rank(PrimeField f, size_t m, size_t n, Rng& rng) {
    while (true) {
        Matrix a = Matrix::random(f, m, n, rng);
        if (a.rank() == m) return a;
    }
}

} // namespace

TEST_CASE("generalized inverse predicate") {
    PrimeField f2(2);
    Rng rng(2);
    Matrix a(f2, 0, 0);
    do {
        a = Matrix::random(f2, 3, 3, rng);
    } while (a.rank() != 3);
    CHECK(is_gi(a, *a.inverse()));

    Matrix h = running_example(f2);
    Matrix x = Matrix::from_rows(f2, {{1, 0}, {0, 1}, {0, 0}});
    CHECK(is_gi(h, x));
    CHECK(!is_gi(h, Matrix(f2, 3, 2)));
    CHECK_THROWS_AS((void)is_gi(h, Matrix(f2, 2, 3)), DimensionMismatch);
}

TEST_CASE("construction from the free block") {
    PrimeField f2(2);
    Rng rng(7);
    Matrix h = running_example(f2);
    auto t = std::make_shared<const Transformation>(decompose(h, Form::right_id_full, rng));

    // X1 = 0 gives the information-set inverse: X s = Q [0 ; P s]
    GenInverse g0 = gi_from_x1(t, Matrix(f2, 1, 2));
    CHECK(is_gi(h, g0.X));
    FieldVector s = FieldVector::from(f2, {1, 1});
    FieldVector sbar = t->P.mul(s);
    FieldVector expect(f2, 3);
    expect.set(1, sbar.get(0));
    expect.set(2, sbar.get(1));
    CHECK(g0.X.mul(s) == t->Q.apply(expect));

    CHECK_THROWS_AS(gi_from_x1(t, Matrix(f2, 2, 2)), DimensionMismatch);
}

TEST_CASE("free-block inverses satisfy the axiom") {
    for (uint32_t q : {2u, 3u, 5u, 7u}) {
        PrimeField f(q);
        Rng rng(q * 13);
        for (int i = 0; i < 1000; ++i) {
            size_t m = 1 + rng.below(4);
            size_t n = m + 1 + rng.below(5);
            Matrix a = random_full_row_rank(f, m, n, rng);
            auto t = std::make_shared<const Transformation>(
                decompose(a, Form::right_id_full, rng));
            Matrix x1 = Matrix::random(f, t->k(), t->r, rng);
            CHECK(is_gi(a, gi_from_x1(t, x1).X));
        }
    }
}

TEST_CASE("same steered image, same solution, different inverses") {
    PrimeField f3(3);
    Rng rng(19);
    Matrix a = random_full_row_rank(f3, 2, 5, rng);
    auto t = std::make_shared<const Transformation>(decompose(a, Form::right_id_full, rng));
    FieldVector s = FieldVector::from(f3, {1, 2});
    FieldVector sbar = t->P.mul(s);
    FieldVector w = FieldVector::from(f3, {2, 0, 1});
    Matrix x1a = steer_x1(*t, sbar, w);
    // a second block with the same image: perturb two columns against sbar
    Matrix x1b = x1a;
    REQUIRE(sbar.weight() >= 1);
    if (sbar.weight() >= 2) {
        auto sup = sbar.support();
        size_t j0 = sup[0] - 1, j1 = sup[1] - 1;
        x1b.set(0, j0, f3.add(x1b.get(0, j0), sbar.get(j1)));
        x1b.set(0, j1, f3.sub(x1b.get(0, j1), sbar.get(j0)));
    }
    GenInverse ga = gi_from_x1(t, x1a), gb = gi_from_x1(t, x1b);
    CHECK(ga.X.mul(s) == gb.X.mul(s));
    if (sbar.weight() >= 2) CHECK(ga.X != gb.X);
}

TEST_CASE("enumeration of the full inverse set") {
    PrimeField f2(2);
    Rng rng(29);

    // square invertible: a single inverse
    Matrix sq(f2, 0, 0);
    do {
        sq = Matrix::random(f2, 3, 3, rng);
    } while (sq.rank() != 3);
    auto tsq = std::make_shared<const Transformation>(decompose(sq, Form::right_id_full, rng));
    GiEnumerator esq(tsq);
    CHECK(esq.count() == 1);
    auto only = esq.next();
    REQUIRE(only);
    CHECK(only->X == *sq.inverse());
    CHECK(!esq.next());

    // the running example has q^(k r) = 4 inverses; cross-check by brute force
    Matrix h = running_example(f2);
    auto t = std::make_shared<const Transformation>(decompose(h, Form::right_id_full, rng));
    auto enumerated = enumerated_gi_set(t);
    CHECK(enumerated.size() == 4);
    CHECK(enumerated == brute_gi_set(h));

    // streams restart from the top
    GiEnumerator en(t);
    Matrix first = en.next()->X;
    while (en.next()) {
    }
    en.reset();
    CHECK(en.next()->X == first);

    CHECK_THROWS_AS(GiEnumerator(t, 3), CapExceeded);
}

TEST_CASE("the enumerated set does not depend on the transformation") {
    for (uint32_t q : {2u, 3u}) {
        PrimeField f(q);
        Rng rng(q * 37);
        Matrix a = random_full_row_rank(f, 2, 4, rng);
        auto t1 = std::make_shared<const Transformation>(decompose(a, Form::right_id_full, rng));
        auto t2 = std::make_shared<const Transformation>(decompose(a, Form::right_id_full, rng));
        CHECK(enumerated_gi_set(t1) == enumerated_gi_set(t2));
    }
}

TEST_CASE("conjugation bijects inverse sets") {
    // f(X) = Q^-1 X P^-1 maps the inverses of A onto those of P A Q,
    // exhaustively over every full-row-rank 2x3 binary matrix
    PrimeField f2(2);
    Rng rng(41);
    Matrix a(f2, 2, 3);
    size_t tested = 0;
    for (uint32_t bits = 0; bits < 64; ++bits) {
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 3; ++j) a.set(i, j, (bits >> (3 * i + j)) & 1u);
        if (a.rank() != 2) continue;
        ++tested;
        auto t = std::make_shared<const Transformation>(decompose(a, Form::right_id_full, rng));
        Matrix qmat = t->Q.to_matrix(f2);
        Matrix qinv = t->Q.inverse().to_matrix(f2);
        Matrix pinv = *t->P.inverse();

        std::set<Matrix> mapped;
        auto gis = brute_gi_set(a);
        for (const Matrix& x : gis) mapped.insert(qinv.mul(x).mul(pinv));
        CHECK(mapped.size() == gis.size()); // injective
        CHECK(mapped == brute_gi_set(t->P.mul(a).mul(qmat)));
    }
    CHECK(tested > 20);
}

TEST_CASE("block equations characterize inverses") {
    // all three partition shapes of the block criterion
    for (uint32_t q : {2u, 3u}) {
        PrimeField f(q);
        Rng rng(q * 43);
        for (int i = 0; i < 60; ++i) {
            size_t m = 2 + rng.below(3), n = 2 + rng.below(3);
            Matrix a = Matrix::random(f, m, n, rng);
            Matrix x = Matrix::random(f, n, m, rng);
            bool gi = is_gi(a, x);

            // columns [A1 A2], rows [X1 ; X2]
            size_t c = 1 + rng.below(n - 1);
            Matrix a1 = a.submatrix(0, 0, m, c), a2 = a.submatrix(0, c, m, n - c);
            Matrix x1 = x.submatrix(0, 0, c, m), x2 = x.submatrix(c, 0, n - c, m);
            Matrix mix = a1.mul(x1).add(a2.mul(x2));
            bool eq2 = mix.mul(a1) == a1 && mix.mul(a2) == a2;
            CHECK(eq2 == gi);

            // rows [A1 ; A2], columns [X1 X2]
            size_t rr = 1 + rng.below(m - 1);
            Matrix b1 = a.submatrix(0, 0, rr, n), b2 = a.submatrix(rr, 0, m - rr, n);
            Matrix y1 = x.submatrix(0, 0, n, rr), y2 = x.submatrix(0, rr, n, m - rr);
            Matrix mix3 = y1.mul(b1).add(y2.mul(b2));
            bool eq3 = b1.mul(mix3) == b1 && b2.mul(mix3) == b2;
            CHECK(eq3 == gi);

            // full 2x2 block criterion
            Matrix a11 = a.submatrix(0, 0, rr, c), a12 = a.submatrix(0, c, rr, n - c);
            Matrix a21 = a.submatrix(rr, 0, m - rr, c), a22 = a.submatrix(rr, c, m - rr, n - c);
            Matrix x11 = x.submatrix(0, 0, c, rr), x12 = x.submatrix(0, rr, c, m - rr);
            Matrix x21 = x.submatrix(c, 0, n - c, rr), x22 = x.submatrix(c, rr, n - c, m - rr);
            Matrix u = a11.mul(x11).add(a12.mul(x21));
            Matrix v = a11.mul(x12).add(a12.mul(x22));
            Matrix w = a21.mul(x11).add(a22.mul(x21));
            Matrix z = a21.mul(x12).add(a22.mul(x22));
            bool eq1 = u.mul(a11).add(v.mul(a21)) == a11 && u.mul(a12).add(v.mul(a22)) == a12 &&
                       w.mul(a11).add(z.mul(a21)) == a21 && w.mul(a12).add(z.mul(a22)) == a22;
            CHECK(eq1 == gi);
        }
    }
}

TEST_CASE("steering the free block") {
    PrimeField f2(2), f7(7);
    Rng rng(47);
    Matrix a = random_full_row_rank(f2, 2, 3, rng);
    Transformation t = decompose(a, Form::right_id_full, rng);

    FieldVector sbar = FieldVector::from(f2, {1, 1});
    Matrix zero = steer_x1(t, sbar, FieldVector(f2, 1));
    CHECK(zero.is_zero());

    FieldVector w = FieldVector::from(f2, {1});
    Matrix x1 = steer_x1(t, sbar, w);
    CHECK(x1.mul(sbar) == w);

    // nonbinary: the column lands at the first nonzero coordinate, scaled
    Matrix a7 = random_full_row_rank(f7, 2, 4, rng);
    Transformation t7 = decompose(a7, Form::right_id_full, rng);
    FieldVector sbar7 = FieldVector::from(f7, {0, 3});
    FieldVector w7 = FieldVector::from(f7, {2, 4});
    Matrix x17 = steer_x1(t7, sbar7, w7);
    CHECK(x17.get(0, 1) == 3); // 2 * 3^-1 = 2 * 5 = 3 (mod 7)
    CHECK(x17.get(1, 1) == 6); // 4 * 5 = 6 (mod 7)
    CHECK(x17.get(0, 0) == 0);
    CHECK(x17.mul(sbar7) == w7);

    CHECK_THROWS_AS(steer_x1(t7, FieldVector(f7, 2), w7), ZeroSyndrome);
    CHECK_THROWS_AS(steer_x1(t, sbar7, w7), FieldMismatch);
}

TEST_CASE("null-space parameterization") {
    PrimeField f2(2);
    Rng rng(53);
    Matrix a = running_example(f2);
    Transformation t = decompose(a, Form::right_id_full, rng);
    FieldVector bbar = FieldVector::from(f2, {1, 0});

    CHECK(null_from_w(t, bbar, FieldVector(f2, 1)).is_zero());

    FieldVector v = null_from_w(t, bbar, FieldVector::from(f2, {1}));
    CHECK(a.mul(v).is_zero());
    CHECK(v == FieldVector::from(f2, {1, 1, 1}));

    // all w values reproduce exactly the brute-force null space
    std::set<FieldVector> nullspace;
    for (uint32_t wv : {0u, 1u}) {
        FieldVector w(f2, 1);
        w.set(0, wv);
        nullspace.insert(null_from_w(t, bbar, w));
    }
    auto oracle = enum_coset(a, FieldVector(f2, 2));
    std::set<FieldVector> expect(oracle.solutions.begin(), oracle.solutions.end());
    CHECK(nullspace == expect);

    CHECK_THROWS_AS(null_from_w(t, FieldVector(f2, 2), FieldVector(f2, 1)), ZeroVector);
}

TEST_CASE("null-space completeness on random instances") {
    for (uint32_t q : {2u, 3u}) {
        PrimeField f(q);
        Rng rng(q * 59);
        for (int i = 0; i < 20; ++i) {
            size_t m = 1 + rng.below(3);
            size_t n = m + 1 + rng.below(3);
            Matrix a = random_full_row_rank(f, m, n, rng);
            Transformation t = decompose(a, Form::right_id_full, rng);
            FieldVector b(f, m);
            do {
                for (size_t j = 0; j < m; ++j) b.set(j, rng.residue(q));
            } while (b.is_zero());
            FieldVector bbar = t.P.mul(b);

            std::set<FieldVector> got;
            std::vector<uint32_t> digits(n - m, 0);
            while (true) {
                got.insert(null_from_w(t, bbar, FieldVector::from(f, digits)));
                size_t idx = digits.size();
                while (idx-- > 0) {
                    if (digits[idx] + 1 < q) {
                        digits[idx]++;
                        break;
                    }
                    digits[idx] = 0;
                }
                if (idx == SIZE_MAX) break;
            }
            auto oracle = enum_coset(a, FieldVector(f, m));
            std::set<FieldVector> expect(oracle.solutions.begin(), oracle.solutions.end());
            CHECK(got == expect);
        }
    }
}

TEST_CASE("solution-space completeness on random instances") {
    for (uint32_t q : {2u, 3u}) {
        PrimeField f(q);
        Rng rng(q * 61);
        for (int i = 0; i < 8; ++i) {
            size_t m = 1 + rng.below(2);
            size_t n = m + 1 + rng.below(3);
            Matrix a = random_full_row_rank(f, m, n, rng);
            auto t = std::make_shared<const Transformation>(
                decompose(a, Form::right_id_full, rng));
            FieldVector b(f, m);
            do {
                for (size_t j = 0; j < m; ++j) b.set(j, rng.residue(q));
            } while (b.is_zero());

            std::set<FieldVector> got;
            GiEnumerator en(t);
            while (auto g = en.next()) got.insert(g->X.mul(b));
            auto oracle = enum_coset(a, b);
            std::set<FieldVector> expect(oracle.solutions.begin(), oracle.solutions.end());
            CHECK(got == expect);
            CHECK(got.size() == oracle.count);
        }
    }
}

TEST_CASE("factoring an inverse into a transformation pair") {
    PrimeField f2(2);
    Rng rng(67);
    Matrix a = random_full_row_rank(f2, 2, 4, rng);
    auto t = std::make_shared<const Transformation>(decompose(a, Form::right_id_full, rng));

    // the information-set inverse factors trivially
    GenInverse g0 = gi_from_x1(t, Matrix(f2, 2, 2));
    auto [p0, q0] = gi_to_prange_pair(a, g0.X);
    Matrix zero_id = Matrix(f2, 2, 2).stack(Matrix::identity(f2, 2));
    CHECK(q0.mul(zero_id).mul(p0) == g0.X);

    // random inverses factor as well
    for (int i = 0; i < 10; ++i) {
        Matrix x1 = Matrix::random(f2, 2, 2, rng);
        GenInverse g = gi_from_x1(t, x1);
        auto [pb, qb] = gi_to_prange_pair(a, g.X);
        CHECK(qb.mul(zero_id).mul(pb) == g.X);
        Matrix phq = pb.mul(a).mul(qb);
        CHECK(phq.submatrix(0, 2, 2, 2) == Matrix::identity(f2, 2));
        CHECK(qb.rank() == 4);
        CHECK(pb.rank() == 2);
    }

    CHECK_THROWS_AS(gi_to_prange_pair(a, Matrix(f2, 4, 2)), NotAGI);
}

TEST_CASE("support steering on rank-deficient matrices") {
    // any target support on the free positions is reachable exactly
    for (uint32_t q : {2u, 5u}) {
        PrimeField f(q);
        Rng rng(q * 71);
        for (int rep = 0; rep < 12; ++rep) {
            size_t m = 4, n = 6, r = 2;
            Matrix left = Matrix::random(f, m, r, rng);
            Matrix right = Matrix::random(f, r, n, rng);
            Matrix a = left.mul(right);
            if (a.rank() != r) continue;
            Transformation t = decompose(a, Form::left_id_deficient, rng);

            FieldVector x0(f, n);
            for (size_t j = 0; j < n; ++j) x0.set(j, rng.residue(q));
            FieldVector b = a.mul(x0);
            if (b.is_zero()) continue;
            FieldVector pb = t.P.mul(b);
            FieldVector bprime(f, r);
            for (size_t i = 0; i < r; ++i) bprime.set(i, pb.get(i));
            REQUIRE(!bprime.is_zero());

            // free positions are pi_Q([r+1, n]); pick a random target subset
            auto free_pos = t.Q.image_of_range(r, n);
            std::set<size_t> target;
            for (size_t pos : free_pos)
                if (rng.coin()) target.insert(pos);

            // steer the lower block so its image hits exactly the target
            FieldVector w(f, n - r);
            for (size_t slot = r; slot < n; ++slot)
                if (target.count(t.Q.map(slot))) w.set(slot - r, 1);
            Matrix x3 = steer_x1(t, bprime, w);
            Matrix x1 = Matrix::identity(f, r).sub(t.A2().mul(x3));
            FieldVector top = x1.mul(bprime), bot = x3.mul(bprime);
            FieldVector z(f, n);
            for (size_t i = 0; i < r; ++i) z.set(i, top.get(i));
            for (size_t i = 0; i < n - r; ++i) z.set(r + i, bot.get(i));
            FieldVector x = t.Q.apply(z);

            CHECK(a.mul(x) == b);
            std::set<size_t> got;
            for (size_t pos : x.support())
                if (std::find(free_pos.begin(), free_pos.end(), pos - 1) != free_pos.end())
                    got.insert(pos - 1);
            CHECK(got == target);
        }
    }
}

TEST_SUITE_END();
