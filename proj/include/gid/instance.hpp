#ifndef GID_INSTANCE_HPP
#define GID_INSTANCE_HPP

#include <gid/solvers.hpp>

#include <iosfwd>

namespace gid {

enum class ProblemKind { sdp, lwp };
enum class GenMode { random, planted };

/// On-disk instance: what the `.gid` file carries.
struct GidInstance {
    ProblemKind problem = ProblemKind::sdp;
    uint32_t q = 2;
    size_t n = 0, k = 0, t = 0;
    Matrix H{PrimeField(2), 0, 0};
    std::optional<FieldVector> s;

    SdpInstance to_sdp() const;
    LwpInstance to_lwp() const;
};

struct GeneratedInstance {
    GidInstance inst;
    std::optional<FieldVector> planted_error;
};

/// Uniform full-row-rank H (resampled until the rank is n-k); planted mode
/// draws an error of weight exactly t and sets s = H e, random mode draws a
/// uniform nonzero syndrome. Deterministic in the seed.
GeneratedInstance gen_instance(size_t n, size_t k, uint32_t q, size_t t, GenMode mode,
                               uint64_t seed, ProblemKind problem = ProblemKind::sdp);

// Line-oriented ASCII formats, LF endings.
void write_gid(std::ostream& os, const GidInstance& inst);
GidInstance read_gid(std::istream& is);
void write_solution(std::ostream& os, const FieldVector& x);
/// Reads a solution file. A mismatch between the declared and actual weight
/// throws ParseError, unless `weight_consistent` is given, in which case the
/// flag records it (tamper evidence for `verify`, not a format error).
FieldVector read_solution(std::istream& is, PrimeField f, size_t n,
                          bool* weight_consistent = nullptr);

} // namespace gid

#endif
