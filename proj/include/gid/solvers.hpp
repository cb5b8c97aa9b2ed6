#ifndef GID_SOLVERS_HPP
#define GID_SOLVERS_HPP

#include <gid/geninv.hpp>
#include <gid/matrix.hpp>

#include <memory>
#include <optional>

namespace gid {

/// Syndrome decoding / coset weight instance: full-row-rank H ((n-k) x n),
/// nonzero syndrome s, target weight t.
struct SdpInstance {
    Matrix H;
    FieldVector s;
    size_t t;

    SdpInstance(Matrix h, FieldVector s_, size_t t_);
    size_t n() const { return H.cols(); }
    size_t r() const { return H.rows(); }
    size_t k() const { return H.cols() - H.rows(); }
};

/// Low-weight codeword / subspace weight instance.
struct LwpInstance {
    Matrix H;
    size_t t;

    LwpInstance(Matrix h, size_t t_);
    size_t n() const { return H.cols(); }
    size_t r() const { return H.rows(); }
    size_t k() const { return H.cols() - H.rows(); }
};

enum class StrategyKind {
    prange,
    lee_brickell,
    leon,
    stern,
    finiasz_sendrier,
    multi_decomp,
    gi_random,
};

const char* strategy_name(StrategyKind k);
std::optional<StrategyKind> strategy_from_name(const std::string& name);

struct StrategyConfig {
    StrategyKind kind = StrategyKind::prange;
    size_t p = 0;                            // enumeration weight
    size_t ell = 0;                          // window length (leon/stern/fs)
    std::vector<size_t> ell_list;            // multi_decomp identity blocks
    uint64_t samples_per_decomposition = 0;  // 0: defer to budget
    uint64_t seed = 0;
};

struct Budget {
    uint64_t max_decompositions = 100;
    uint64_t max_samples_per_decomposition = 0; // 0: 10 * k
    std::optional<double> wall_clock_seconds;
};

struct DecodeResult {
    bool found = false;
    std::optional<FieldVector> x;
    size_t weight = 0;
    uint64_t decompositions_used = 0;
    uint64_t samples_used = 0;
    double elapsed_seconds = 0.0;
    uint64_t seed = 0;
};

/// One candidate in permuted coordinates; the solution is x = Q z.
/// weight is exact unless it exceeded the cap passed to next(), in which
/// case it is SIZE_MAX.
struct Candidate {
    FieldVector z;
    size_t weight = 0;
    std::vector<bool> zero_syndrome_blocks; // multi_decomp bookkeeping
};

class CandidateStream {
public:
    virtual ~CandidateStream() = default;
    /// Next candidate, or nullopt once a finite enumeration is exhausted.
    virtual std::optional<Candidate> next(Rng& rng, size_t weight_cap) = 0;
};

/// Build the sampling stream of `cfg` over a prepared transformation.
/// For coset instances pass sbar = P*s; for null-space search pass
/// std::nullopt (the target is the zero vector and zero candidates are
/// suppressed).
std::unique_ptr<CandidateStream> make_candidate_stream(
    const StrategyConfig& cfg, const std::shared_ptr<const Transformation>& t,
    std::optional<FieldVector> sbar);

/// Drain at most max_count candidates with exact weights (testing helper).
std::vector<Candidate> collect_candidates(const StrategyConfig& cfg,
                                          const std::shared_ptr<const Transformation>& t,
                                          std::optional<FieldVector> sbar, Rng& rng,
                                          size_t max_count);

/// The information-set solution x = Q [0 ; P s] of a right-identity
/// transformation; satisfies H x = s with weight |P s|.
FieldVector prange_solution(const Transformation& t, const FieldVector& s);

/// Candidate assembled from explicit per-block steering targets (multi form);
/// blocks whose syndrome slice is zero are skipped and flagged.
Candidate multi_candidate(const Transformation& t, const FieldVector& sbar,
                          const std::vector<FieldVector>& block_targets);

bool verify_solution(const SdpInstance& inst, const FieldVector& x);
bool verify_solution(const LwpInstance& inst, const FieldVector& x);

DecodeResult solve_cwp(const SdpInstance& inst, const StrategyConfig& strat,
                       const Budget& budget, unsigned threads = 1);
DecodeResult solve_swp(const LwpInstance& inst, const StrategyConfig& strat,
                       const Budget& budget, unsigned threads = 1);

} // namespace gid

#endif
