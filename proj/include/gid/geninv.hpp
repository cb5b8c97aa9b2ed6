#ifndef GID_GENINV_HPP
#define GID_GENINV_HPP

#include <gid/matrix.hpp>

#include <memory>
#include <optional>
#include <utility>

namespace gid {

/// A generalized inverse X of some matrix A, i.e. any X with A X A = A.
/// When built from a block parameterization the originating transformation
/// and free block X1 are retained, so products X*b can be evaluated as two
/// small block products instead of a full n x m multiplication.
struct GenInverse {
    Matrix X;
    std::shared_ptr<const Transformation> origin; // may be null
    std::optional<Matrix> X1;
};

/// Does X satisfy A X A = A?
bool is_gi(const Matrix& a, const Matrix& x);

/// Build the generalized inverse Q [X1 ; I_r - V X1] P from a right-identity
/// transformation and a free block X1 (k x r). X1 = 0 yields the inverse
/// whose product with a syndrome is the classic information-set solution.
GenInverse gi_from_x1(const std::shared_ptr<const Transformation>& t, const Matrix& x1);
GenInverse gi_from_x1(const Transformation& t, const Matrix& x1);

/// Enumerates all q^(k*r) generalized inverses of the transformed matrix,
/// with X1 ranging lexicographically (row-major) over M_{k,r}(F_q). The
/// yielded set is the full inverse set of A and does not depend on the
/// particular transformation.
class GiEnumerator {
public:
    explicit GiEnumerator(std::shared_ptr<const Transformation> t,
                          uint64_t cap = uint64_t{1} << 24);

    /// Total number of inverses that will be yielded.
    uint64_t count() const { return total_; }
    std::optional<GenInverse> next();
    void reset();

private:
    std::shared_ptr<const Transformation> t_;
    Matrix x1_;
    uint64_t total_ = 0, yielded_ = 0;
};

GiEnumerator enumerate_gi(const std::shared_ptr<const Transformation>& t,
                          uint64_t cap = uint64_t{1} << 24);

/// Smallest free block steering the image of a nonzero vector: returns the
/// matrix M (rows = |w|, cols = |sbar|) with a single nonzero column at the
/// first position j where sbar(j) != 0, such that M sbar = w exactly.
Matrix steer_x1(const Transformation& t, const FieldVector& sbar, const FieldVector& w);

/// Null-space element Q [w ; -V w] of the matrix behind a right-identity
/// transformation. bbar = P*b must be nonzero for the parameterization to
/// span the whole null space; it is only used for that check.
FieldVector null_from_w(const Transformation& t, const FieldVector& bbar,
                        const FieldVector& w);

/// Factor an arbitrary generalized inverse X of a full-row-rank A as
/// X = Qbar [0 ; I_r] Pbar with Pbar A Qbar = [Vbar | I_r]. Qbar is
/// invertible but in general not a permutation.
std::pair<Matrix, Matrix> gi_to_prange_pair(const Matrix& a, const Matrix& x);

} // namespace gid

#endif
