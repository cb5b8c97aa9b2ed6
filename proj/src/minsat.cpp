#include <gid/minsat.hpp>

#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

namespace gid {

namespace {

// shared construction: decompose, unit block, matrix block
std::pair<MinSatInstance, LiftContext> reduce_common(const Matrix& a,
                                                     const FieldVector* b, uint64_t seed) {
    if (a.field().q() != 2)
        throw WrongField("the affine-constraint reduction is defined over F_2");
    size_t m = a.rows(), n = a.cols();
    if (m >= n) throw DimensionMismatch("reduction needs m < n");
    if (a.rank() != m) throw NotFullRank("reduction needs a full-row-rank matrix");
    if (b && b->is_zero())
        throw ZeroVector("zero right-hand side: use the null-space reduction");

    Rng rng(seed);
    Transformation t = decompose(a, Form::right_id_full, rng); // P A Q = [A1 | I_m]
    Matrix a1 = t.V(); // m x (n-m)

    MinSatInstance inst;
    inst.n_vars = (uint32_t)(n - m);
    inst.constraints.reserve(n);
    for (uint32_t i = 1; i <= inst.n_vars; ++i)
        inst.constraints.push_back(AffineConstraint{{i}, 1});

    std::optional<FieldVector> pb;
    if (b) pb = t.P.mul(*b);
    for (size_t row = 0; row < m; ++row) {
        AffineConstraint c;
        for (uint32_t j = 0; j < inst.n_vars; ++j)
            if (a1.get(row, j)) c.vars.push_back(j + 1);
        // over F_2:  pb - A1 z = 1  <=>  XOR(vars) = 1 + pb_row
        uint32_t pbrow = pb ? pb->get(row) : 0;
        c.rhs = 1u ^ pbrow;
        inst.constraints.push_back(std::move(c));
    }

    LiftContext ctx{t.P, t.Q, std::move(a1), std::move(pb), m, n, seed};
    return {std::move(inst), std::move(ctx)};
}

} // namespace

std::pair<MinSatInstance, LiftContext> reduce_cwp(const Matrix& a, const FieldVector& b,
                                                  uint64_t seed) {
    if (a.rows() != b.size()) throw DimensionMismatch("right-hand side length");
    return reduce_common(a, &b, seed);
}

std::pair<MinSatInstance, LiftContext> reduce_swp(const Matrix& a, uint64_t seed) {
    return reduce_common(a, nullptr, seed);
}

FieldVector lift(const LiftContext& ctx, const Assignment& gamma) {
    if (gamma.bits.size() != ctx.n - ctx.m)
        throw DimensionMismatch("assignment length != number of variables");
    PrimeField f2(2);
    FieldVector xg(f2, ctx.n);
    FieldVector z(f2, ctx.n - ctx.m);
    for (size_t i = 0; i < z.size(); ++i) {
        uint32_t bit = gamma.bits[i] & 1u;
        z.set(i, bit);
        xg.set(i, bit);
    }
    FieldVector bottom = ctx.A1.mul(z); // -A1 z == A1 z over F_2
    if (ctx.Pb) bottom.add_in_place(*ctx.Pb);
    for (size_t i = 0; i < ctx.m; ++i) xg.set(ctx.n - ctx.m + i, bottom.get(i));
    return ctx.Q.apply(xg);
}

size_t count_satisfied(const MinSatInstance& inst, const Assignment& gamma) {
    if (gamma.bits.size() != inst.n_vars)
        throw DimensionMismatch("assignment length != number of variables");
    size_t sat = 0;
    for (const auto& c : inst.constraints) {
        uint32_t x = 0;
        for (uint32_t v : c.vars) x ^= gamma.bits[v - 1] & 1u;
        sat += (x == c.rhs);
    }
    return sat;
}

std::pair<Assignment, size_t> brute_minsat(const MinSatInstance& inst) {
    if (inst.n_vars > 24) throw TooManyVars("exhaustive search capped at 24 variables");
    uint32_t n = inst.n_vars;
    // Bit n-1 of the integer counter is variable 1, so that integer order is
    // the lexicographic order on assignment strings.
    std::vector<uint32_t> masks(inst.constraints.size());
    std::vector<uint32_t> rhs(inst.constraints.size());
    for (size_t ci = 0; ci < inst.constraints.size(); ++ci) {
        uint32_t m = 0;
        for (uint32_t v : inst.constraints[ci].vars) m |= 1u << (n - v);
        masks[ci] = m;
        rhs[ci] = inst.constraints[ci].rhs;
    }
    uint64_t total = uint64_t{1} << n;
    size_t best = SIZE_MAX;
    uint64_t best_g = 0;
    for (uint64_t g = 0; g < total; ++g) {
        size_t sat = 0;
        for (size_t ci = 0; ci < masks.size(); ++ci)
            sat += ((std::popcount((uint32_t)g & masks[ci]) & 1u) == rhs[ci]);
        if (sat < best) {
            best = sat;
            best_g = g;
        }
    }
    Assignment gamma;
    gamma.bits.resize(n);
    for (uint32_t v = 1; v <= n; ++v)
        gamma.bits[v - 1] = (uint8_t)((best_g >> (n - v)) & 1u);
    return {std::move(gamma), best == SIZE_MAX ? 0 : best};
}

SwpMinsatOutcome solve_swp_via_minsat(const Matrix& a, uint64_t seed) {
    auto [inst, ctx] = reduce_swp(a, seed);
    auto [gamma_star, mu_star] = brute_minsat(inst);
    SwpMinsatOutcome out;
    out.gamma_star = gamma_star;
    out.mu_star = mu_star;
    FieldVector lifted = lift(ctx, gamma_star);
    if (!lifted.is_zero()) {
        out.best_nonzero = std::move(lifted);
        out.best_nonzero_weight = out.best_nonzero.weight();
        return out;
    }
    // the optimum is the excluded zero codeword; rescan for the best nonzero
    out.zero_optimum_excluded = true;
    uint32_t n = inst.n_vars;
    uint64_t total = uint64_t{1} << n;
    size_t best = SIZE_MAX;
    std::optional<FieldVector> best_x;
    for (uint64_t g = 0; g < total; ++g) {
        Assignment gamma;
        gamma.bits.resize(n);
        for (uint32_t v = 1; v <= n; ++v)
            gamma.bits[v - 1] = (uint8_t)((g >> (n - v)) & 1u);
        FieldVector x = lift(ctx, gamma);
        if (x.is_zero()) continue;
        size_t w = x.weight();
        if (w < best) {
            best = w;
            best_x = std::move(x);
        }
    }
    if (best_x) {
        out.best_nonzero = *best_x;
        out.best_nonzero_weight = best;
    } else {
        out.best_nonzero = FieldVector(PrimeField(2), ctx.n);
        out.best_nonzero_weight = 0;
    }
    return out;
}

void write_affsat(std::ostream& os, const MinSatInstance& inst) {
    os << "p affsat " << inst.n_vars << ' ' << inst.constraints.size() << '\n';
    for (const auto& c : inst.constraints) {
        os << c.rhs << ' ' << c.vars.size();
        for (uint32_t v : c.vars) os << ' ' << v;
        os << '\n';
    }
}

MinSatInstance read_affsat(std::istream& is) {
    std::string p, tag;
    MinSatInstance inst;
    size_t n_constraints = 0;
    if (!(is >> p >> tag >> inst.n_vars >> n_constraints) || p != "p" || tag != "affsat")
        throw ParseError("bad affsat header");
    inst.constraints.resize(n_constraints);
    for (auto& c : inst.constraints) {
        size_t nv = 0;
        if (!(is >> c.rhs >> nv) || c.rhs > 1) throw ParseError("bad affsat constraint");
        c.vars.resize(nv);
        uint32_t prev = 0;
        for (auto& v : c.vars) {
            if (!(is >> v) || v == 0 || v > inst.n_vars || v <= prev)
                throw ParseError("bad affsat variable index");
            prev = v;
        }
    }
    return inst;
}

void write_assignment(std::ostream& os, const Assignment& gamma) {
    for (uint8_t b : gamma.bits) os << (b ? '1' : '0');
    os << '\n';
}

Assignment read_assignment(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty assignment file");
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    Assignment g;
    g.bits.reserve(line.size());
    for (char ch : line) {
        if (ch != '0' && ch != '1') throw ParseError("assignment must be 0/1 characters");
        g.bits.push_back(ch == '1');
    }
    return g;
}

} // namespace gid
