#ifndef GID_EXPERIMENT_HPP
#define GID_EXPERIMENT_HPP

#include <gid/instance.hpp>

#include <iosfwd>
#include <map>

namespace gid {

struct ExperimentConfig {
    size_t n = 500, k = 250;
    uint32_t q = 2;
    uint32_t iterations = 10;
    uint32_t decompositions = 1;
    uint64_t seed = 0;
    std::string output_path; // used by the CLI only
};

/// Provenance of one reached weight: enough to regenerate the witnessing
/// solution from the experiment seed alone.
struct EasyWeightsWitness {
    uint32_t decomposition = 0; // 1-based
    uint32_t iteration = 0;     // 1-based
    uint32_t target_weight = 0; // the information-side weight i
    std::vector<uint32_t> cols;   // support of the steered block (0-based)
    std::vector<uint32_t> coeffs; // matching nonzero coefficients
};

/// Weight-coverage data of one run. reached[d][it] marks, cumulatively over
/// the first it iterations of decomposition d+1, which weights in [1, n]
/// were produced. Witness bookkeeping is auxiliary and not serialized.
struct WeightCoverageReport {
    uint32_t decompositions = 0;
    uint32_t iterations = 0;
    uint32_t n = 0;
    std::vector<std::vector<std::vector<bool>>> reached;
    uint64_t elapsed_us = 0;
    std::map<uint32_t, EasyWeightsWitness> witnesses;

    bool reached_any(uint32_t w) const;
    /// Weights never reached by any decomposition within `it` iterations.
    std::vector<uint32_t> missing_after(uint32_t it) const;
    /// [min reached, max reached] over the whole run.
    std::pair<uint32_t, uint32_t> summary() const;

    /// Equality of the serialized content (witnesses excluded).
    bool operator==(const WeightCoverageReport& o) const {
        return decompositions == o.decompositions && iterations == o.iterations &&
               n == o.n && reached == o.reached && elapsed_us == o.elapsed_us;
    }
};

/// The instance a given experiment configuration runs on (deterministic).
GeneratedInstance experiment_instance(const ExperimentConfig& cfg);

/// Weight-coverage sweep: one right-identity decomposition per substream,
/// then per iteration one steered solution for every information-side weight
/// i in [1, k]. Decompositions run independently, so the thread count never
/// changes the report.
WeightCoverageReport run_easy_weights(const ExperimentConfig& cfg, unsigned threads = 1);

/// Rebuild the witnessed solution and check its weight (and H x = s).
bool replay_witness(const ExperimentConfig& cfg, const EasyWeightsWitness& wit,
                    uint32_t weight);

// CSV long form: header `decomp,iteration,weight,reached`, one row per
// (decomposition, iteration, weight), then `summary,<elapsed_us>,<min>,<max>`.
void write_csv(std::ostream& os, const WeightCoverageReport& rep);
WeightCoverageReport read_csv(std::istream& is);
void write_json(std::ostream& os, const ExperimentConfig& cfg,
                const WeightCoverageReport& rep);

} // namespace gid

#endif
