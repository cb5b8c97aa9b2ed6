#ifndef GID_MINSAT_HPP
#define GID_MINSAT_HPP

#include <gid/matrix.hpp>

#include <iosfwd>
#include <optional>

namespace gid {

/// XOR-equality constraint: the XOR of the listed variables equals rhs.
/// vars holds 1-based sorted indices; an empty scope is satisfied iff rhs=0.
struct AffineConstraint {
    std::vector<uint32_t> vars;
    uint32_t rhs = 0;

    bool operator==(const AffineConstraint&) const = default;
};

struct MinSatInstance {
    uint32_t n_vars = 0;
    std::vector<AffineConstraint> constraints;

    bool operator==(const MinSatInstance&) const = default;
};

struct Assignment {
    std::vector<uint8_t> bits;

    bool operator==(const Assignment&) const = default;
};

/// Everything needed to map an assignment back to a coset solution.
struct LiftContext {
    Matrix P;
    PermutationMatrix Q;
    Matrix A1;                     // m x (n-m) left block of P A Q = [A1 | I_m]
    std::optional<FieldVector> Pb; // absent for the null-space reduction
    size_t m = 0, n = 0;
    uint64_t seed = 0;             // decomposition seed, for reproducibility
};

/// Constraint system of a binary coset instance per the tight reduction:
/// n-m unit constraints z_i = 1 followed by the m rows of P b - A1 z = 1.
/// The constraint order is normative so exports are byte-reproducible.
std::pair<MinSatInstance, LiftContext> reduce_cwp(const Matrix& a, const FieldVector& b,
                                                  uint64_t seed = 0x6A1DC5EEULL);
/// Null-space variant: z_i = 1 rows followed by -A1 z = 1.
std::pair<MinSatInstance, LiftContext> reduce_swp(const Matrix& a,
                                                  uint64_t seed = 0x6A1DC5EEULL);

/// Map an assignment to the coset solution Q x_gamma. The weight of the
/// result equals the number of satisfied constraints of the reduced
/// instance evaluated at the same assignment.
FieldVector lift(const LiftContext& ctx, const Assignment& gamma);

size_t count_satisfied(const MinSatInstance& inst, const Assignment& gamma);

/// Exhaustive minimizer: least satisfied-count over all assignments, with
/// the lexicographically smallest optimal assignment. n_vars <= 24.
std::pair<Assignment, size_t> brute_minsat(const MinSatInstance& inst);

/// Null-space reductions lift the global optimum to the zero vector, which a
/// codeword search must exclude; this closes the loop by also reporting the
/// best assignment whose lift is nonzero.
struct SwpMinsatOutcome {
    Assignment gamma_star;
    size_t mu_star = 0;
    FieldVector best_nonzero{PrimeField(2), 0};
    size_t best_nonzero_weight = 0;
    bool zero_optimum_excluded = false;
};
SwpMinsatOutcome solve_swp_via_minsat(const Matrix& a, uint64_t seed = 0x6A1DC5EEULL);

// .affsat text format: "p affsat <n_vars> <n_constraints>" header, then one
// "<rhs> <k> <v1> ... <vk>" line per constraint. LF endings, ASCII.
void write_affsat(std::ostream& os, const MinSatInstance& inst);
MinSatInstance read_affsat(std::istream& is);
void write_assignment(std::ostream& os, const Assignment& gamma);
Assignment read_assignment(std::istream& is);

} // namespace gid

#endif
