#ifndef GID_ORACLE_HPP
#define GID_ORACLE_HPP

#include <gid/matrix.hpp>

namespace gid {

/// Exhaustive description of the solution set of A x = b for small instances.
struct OracleReport {
    std::vector<FieldVector> solutions; // deterministic enumeration order
    size_t min_weight = 0;              // over all listed solutions
    uint64_t count = 0;                 // = q^(n - rank(A))
};

/// Enumerate the full solution set of A x = b by elimination: one particular
/// solution plus every null-space combination. Throws Inconsistent when b is
/// not in the range of A, TooLarge when the set exceeds `cap`.
OracleReport enum_coset(const Matrix& a, const FieldVector& b, uint64_t cap = uint64_t{1} << 22);

/// Minimum weight over the solution set (smallest coset leader weight).
size_t min_coset_weight(const Matrix& a, const FieldVector& b, uint64_t cap = uint64_t{1} << 22);

/// Minimum weight over the nonzero kernel vectors of H.
size_t min_codeword_weight(const Matrix& h, uint64_t cap = uint64_t{1} << 22);

/// Threshold weight at which the coset solution count crosses from about one
/// to many, computed with exact integer arithmetic: the largest t with
///   sum_{i=0}^{t} C(n,i)  <=  (q-1) * q^(n-k).
/// The adjacent convention shifts the cumulative sum by one index; both are
/// surfaced because published values straddle the two.
int gv_threshold(size_t n, size_t k, uint32_t q);
int gv_threshold_adjacent(size_t n, size_t k, uint32_t q);

} // namespace gid

#endif
