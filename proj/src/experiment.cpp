#include <gid/experiment.hpp>

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace gid {

bool WeightCoverageReport::reached_any(uint32_t w) const {
    for (const auto& per_d : reached)
        if (!per_d.empty() && per_d.back()[w]) return true;
    return false;
}

std::vector<uint32_t> WeightCoverageReport::missing_after(uint32_t it) const {
    std::vector<uint32_t> out;
    for (uint32_t w = 1; w <= n; ++w) {
        bool hit = false;
        for (const auto& per_d : reached)
            if (it >= 1 && it <= per_d.size() && per_d[it - 1][w]) {
                hit = true;
                break;
            }
        if (!hit) out.push_back(w);
    }
    return out;
}

std::pair<uint32_t, uint32_t> WeightCoverageReport::summary() const {
    uint32_t lo = 0, hi = 0;
    for (uint32_t w = 1; w <= n; ++w)
        if (reached_any(w)) {
            if (!lo) lo = w;
            hi = w;
        }
    return {lo, hi};
}

GeneratedInstance experiment_instance(const ExperimentConfig& cfg) {
    return gen_instance(cfg.n, cfg.k, cfg.q, /*t=*/cfg.n, GenMode::random, cfg.seed,
                        ProblemKind::sdp);
}

namespace {

struct DecompResult {
    std::vector<std::vector<bool>> reached_per_iter; // cumulative
    std::map<uint32_t, EasyWeightsWitness> witnesses;
};

/// One decomposition of the sweep: the steered support is drawn from the
/// syndrome support while the requested weight i fits inside it, and from
/// all k information columns beyond that point.
DecompResult run_one_decomposition(const ExperimentConfig& cfg, const Matrix& h,
                                   const FieldVector& s, uint32_t d) {
    const PrimeField f(cfg.q);
    size_t k = cfg.k, r = cfg.n - cfg.k;
    Rng rng = Rng::substream(cfg.seed, d);
    Transformation t = decompose(h, Form::right_id_full, rng);
    FieldVector sbar = t.P.mul(s);

    // columns of V, by transposing once
    Matrix vt = t.V().transpose(); // k x r
    std::vector<FieldVector> vcols;
    vcols.reserve(k);
    for (size_t j = 0; j < k; ++j) vcols.push_back(vt.row_vec(j));

    std::vector<size_t> supp_cols;
    for (size_t j = 0; j < std::min(r, k); ++j)
        if (sbar.get(j) != 0) supp_cols.push_back(j);

    DecompResult out;
    out.reached_per_iter.assign(cfg.iterations, {});
    std::vector<bool> cur(cfg.n + 1, false);
    std::vector<uint32_t> cols, coeffs;
    for (uint32_t it = 1; it <= cfg.iterations; ++it) {
        for (size_t i = 1; i <= k; ++i) {
            cols.clear();
            coeffs.clear();
            if (i <= supp_cols.size()) {
                auto pick = rng.subset(supp_cols.size(), i);
                for (size_t idx : pick) cols.push_back((uint32_t)supp_cols[idx]);
            } else {
                for (size_t j : rng.subset(k, i)) cols.push_back((uint32_t)j);
            }
            for (size_t idx = 0; idx < i; ++idx)
                coeffs.push_back(cfg.q == 2 ? 1u : rng.nonzero_residue(cfg.q));

            FieldVector x2 = sbar;
            for (size_t idx = 0; idx < i; ++idx)
                x2.addmul_in_place(vcols[cols[idx]], f.neg(coeffs[idx]));
            size_t w = i + x2.weight();
            if (w <= cfg.n && !cur[w]) {
                cur[w] = true;
                if (!out.witnesses.count((uint32_t)w))
                    out.witnesses[(uint32_t)w] =
                        EasyWeightsWitness{d, it, (uint32_t)i, cols, coeffs};
            }
        }
        out.reached_per_iter[it - 1] = cur;
    }
    return out;
}

} // namespace

WeightCoverageReport run_easy_weights(const ExperimentConfig& cfg, unsigned threads) {
    if (cfg.k >= cfg.n || cfg.iterations == 0 || cfg.decompositions == 0)
        throw ConfigError("invalid experiment configuration");
    auto start = std::chrono::steady_clock::now();
    GeneratedInstance gen = experiment_instance(cfg);
    const Matrix& h = gen.inst.H;
    const FieldVector& s = *gen.inst.s;

    std::vector<DecompResult> per_d(cfg.decompositions);
    if (threads <= 1) {
        for (uint32_t d = 1; d <= cfg.decompositions; ++d)
            per_d[d - 1] = run_one_decomposition(cfg, h, s, d);
    } else {
        std::atomic<uint32_t> next{1};
        std::mutex err_mutex;
        std::exception_ptr first_error;
        auto worker = [&]() {
            try {
                while (true) {
                    uint32_t d = next.fetch_add(1);
                    if (d > cfg.decompositions) return;
                    per_d[d - 1] = run_one_decomposition(cfg, h, s, d);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(cfg.decompositions + 1); // stop the other workers
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    WeightCoverageReport rep;
    rep.decompositions = cfg.decompositions;
    rep.iterations = cfg.iterations;
    rep.n = (uint32_t)cfg.n;
    rep.reached.reserve(cfg.decompositions);
    for (auto& dr : per_d) rep.reached.push_back(std::move(dr.reached_per_iter));
    // first witness per weight, in decomposition order
    for (auto& dr : per_d)
        for (auto& [w, wit] : dr.witnesses)
            if (!rep.witnesses.count(w)) rep.witnesses[w] = wit;
    auto elapsed = std::chrono::steady_clock::now() - start;
    rep.elapsed_us =
        (uint64_t)std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count();
    return rep;
}

bool replay_witness(const ExperimentConfig& cfg, const EasyWeightsWitness& wit,
                    uint32_t weight) {
    GeneratedInstance gen = experiment_instance(cfg);
    const Matrix& h = gen.inst.H;
    const FieldVector& s = *gen.inst.s;
    PrimeField f(cfg.q);
    Rng rng = Rng::substream(cfg.seed, wit.decomposition);
    Transformation t = decompose(h, Form::right_id_full, rng);
    FieldVector sbar = t.P.mul(s);

    FieldVector z(f, cfg.n);
    for (size_t idx = 0; idx < wit.cols.size(); ++idx)
        z.set(wit.cols[idx], wit.coeffs[idx]);
    FieldVector x2 = sbar;
    Matrix v = t.V();
    for (size_t idx = 0; idx < wit.cols.size(); ++idx)
        x2.addmul_in_place(v.col_vec(wit.cols[idx]), f.neg(wit.coeffs[idx]));
    for (size_t i = 0; i < sbar.size(); ++i) {
        uint32_t val = x2.get(i);
        if (val) z.set(cfg.k + i, val);
    }
    FieldVector x = t.Q.apply(z);
    return x.weight() == weight && h.mul(x) == s;
}

void write_csv(std::ostream& os, const WeightCoverageReport& rep) {
    os << "decomp,iteration,weight,reached\n";
    for (uint32_t d = 1; d <= rep.decompositions; ++d)
        for (uint32_t it = 1; it <= rep.iterations; ++it)
            for (uint32_t w = 1; w <= rep.n; ++w)
                os << d << ',' << it << ',' << w << ','
                   << (rep.reached[d - 1][it - 1][w] ? 1 : 0) << '\n';
    auto [lo, hi] = rep.summary();
    os << "summary," << rep.elapsed_us << ',' << lo << ',' << hi << '\n';
}

WeightCoverageReport read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("decomp,iteration,weight,reached", 0) != 0)
        throw ParseError("bad coverage CSV header");
    WeightCoverageReport rep;
    struct Row {
        uint32_t d, it, w, hit;
    };
    std::vector<Row> rows;
    bool saw_summary = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("summary,", 0) == 0) {
            std::istringstream ls(line.substr(8));
            char comma;
            uint32_t lo, hi;
            if (!(ls >> rep.elapsed_us >> comma >> lo >> comma >> hi))
                throw ParseError("bad summary row");
            saw_summary = true;
            continue;
        }
        Row r{};
        char c1, c2, c3;
        std::istringstream ls(line);
        if (!(ls >> r.d >> c1 >> r.it >> c2 >> r.w >> c3 >> r.hit))
            throw ParseError("bad coverage CSV row: " + line);
        rows.push_back(r);
        rep.decompositions = std::max(rep.decompositions, r.d);
        rep.iterations = std::max(rep.iterations, r.it);
        rep.n = std::max(rep.n, r.w);
    }
    if (!saw_summary) throw ParseError("missing summary row");
    rep.reached.assign(rep.decompositions,
                       std::vector<std::vector<bool>>(
                           rep.iterations, std::vector<bool>(rep.n + 1, false)));
    for (const auto& r : rows)
        if (r.hit) rep.reached[r.d - 1][r.it - 1][r.w] = true;
    return rep;
}

void write_json(std::ostream& os, const ExperimentConfig& cfg,
                const WeightCoverageReport& rep) {
    nlohmann::json j;
    j["config"] = {{"n", cfg.n},
                   {"k", cfg.k},
                   {"q", cfg.q},
                   {"iterations", cfg.iterations},
                   {"decompositions", cfg.decompositions},
                   {"seed", cfg.seed}};
    auto [lo, hi] = rep.summary();
    j["summary"] = {{"min_reached", lo}, {"max_reached", hi}};
    j["elapsed_us"] = rep.elapsed_us;
    nlohmann::json data = nlohmann::json::array();
    for (uint32_t d = 1; d <= rep.decompositions; ++d)
        for (uint32_t it = 1; it <= rep.iterations; ++it) {
            nlohmann::json row;
            row["decomp"] = d;
            row["iteration"] = it;
            std::vector<uint32_t> ws;
            for (uint32_t w = 1; w <= rep.n; ++w)
                if (rep.reached[d - 1][it - 1][w]) ws.push_back(w);
            row["reached"] = ws;
            data.push_back(std::move(row));
        }
    j["coverage"] = std::move(data);
    os << j.dump(2) << '\n';
}

} // namespace gid
