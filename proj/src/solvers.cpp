#include <gid/solvers.hpp>

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace gid {

SdpInstance::SdpInstance(Matrix h, FieldVector s_, size_t t_)
    : H(std::move(h)), s(std::move(s_)), t(t_) {
    if (H.field() != s.field()) throw FieldMismatch("syndrome field differs from matrix");
    if (s.size() != H.rows()) throw DimensionMismatch("syndrome length != row count");
    if (H.rows() >= H.cols())
        throw ConfigError("parity-check matrix must have fewer rows than columns");
    if (H.rank() != H.rows()) throw NotFullRank("parity-check matrix is rank deficient");
    if (s.is_zero()) throw ZeroSyndrome("syndrome must be nonzero (zero target is a null-space search)");
    if (t > H.cols()) throw ConfigError("target weight exceeds length");
}

LwpInstance::LwpInstance(Matrix h, size_t t_) : H(std::move(h)), t(t_) {
    if (H.rows() >= H.cols())
        throw ConfigError("parity-check matrix must have fewer rows than columns");
    if (H.rank() != H.rows()) throw NotFullRank("parity-check matrix is rank deficient");
    if (t == 0 || t > H.cols()) throw ConfigError("target weight out of range");
}

const char* strategy_name(StrategyKind k) {
    switch (k) {
    case StrategyKind::prange: return "prange";
    case StrategyKind::lee_brickell: return "lee_brickell";
    case StrategyKind::leon: return "leon";
    case StrategyKind::stern: return "stern";
    case StrategyKind::finiasz_sendrier: return "finiasz_sendrier";
    case StrategyKind::multi_decomp: return "multi_decomp";
    case StrategyKind::gi_random: return "gi_random";
    }
    return "?";
}

std::optional<StrategyKind> strategy_from_name(const std::string& name) {
    for (StrategyKind k :
         {StrategyKind::prange, StrategyKind::lee_brickell, StrategyKind::leon,
          StrategyKind::stern, StrategyKind::finiasz_sendrier, StrategyKind::multi_decomp,
          StrategyKind::gi_random})
        if (name == strategy_name(k)) return k;
    return std::nullopt;
}

namespace {

std::vector<FieldVector> columns_of(const Matrix& m) {
    std::vector<FieldVector> cols;
    cols.reserve(m.cols());
    Matrix mt = m.transpose();
    for (size_t j = 0; j < m.cols(); ++j) cols.push_back(mt.row_vec(j));
    return cols;
}

/// Lexicographic enumeration of (support, nonzero coefficients) patterns of
/// fixed size p over columns [0, n_cols). Supports advance in combination
/// order, coefficients as a base-(q-1) odometer (last position fastest).
class PatternEnum {
public:
    PatternEnum(size_t n_cols, size_t p, uint32_t q) : n_(n_cols), p_(p), q_(q) {}

    bool next(std::vector<size_t>& support, std::vector<uint32_t>& coeffs) {
        if (done_) return false;
        if (!started_) {
            if (p_ > n_) {
                done_ = true;
                return false;
            }
            sup_.resize(p_);
            for (size_t i = 0; i < p_; ++i) sup_[i] = i;
            cf_.assign(p_, 1);
            started_ = true;
            support = sup_;
            coeffs = cf_;
            return true;
        }
        // coefficient odometer over [1, q)
        size_t i = p_;
        while (i-- > 0) {
            if (cf_[i] + 1 < q_) {
                cf_[i]++;
                std::fill(cf_.begin() + (ptrdiff_t)i + 1, cf_.end(), 1u);
                support = sup_;
                coeffs = cf_;
                return true;
            }
        }
        // next combination
        std::fill(cf_.begin(), cf_.end(), 1u);
        size_t j = p_;
        while (j-- > 0) {
            if (sup_[j] + (p_ - j) < n_) {
                sup_[j]++;
                for (size_t l = j + 1; l < p_; ++l) sup_[l] = sup_[l - 1] + 1;
                support = sup_;
                coeffs = cf_;
                return true;
            }
        }
        done_ = true;
        return false;
    }

private:
    size_t n_, p_;
    uint32_t q_;
    std::vector<size_t> sup_;
    std::vector<uint32_t> cf_;
    bool started_ = false, done_ = false;
};

uint64_t pow_checked(uint64_t q, size_t e, uint64_t limit) {
    uint64_t v = 1;
    for (size_t i = 0; i < e; ++i) {
        if (v > limit / q) return limit + 1;
        v *= q;
    }
    return v;
}

/// Open-addressed multimap from packed window keys to pattern indices;
/// per-key lists preserve insertion order.
class CollisionTable {
public:
    void build(const std::vector<uint64_t>& keys) {
        size_t cap = 16;
        while (cap < keys.size() * 2) cap <<= 1;
        mask_ = cap - 1;
        slot_key_.assign(cap, 0);
        slot_list_.assign(cap, SIZE_MAX);
        occupied_.assign(cap, false);
        for (size_t i = 0; i < keys.size(); ++i) {
            size_t h = probe(keys[i], true);
            if (slot_list_[h] == SIZE_MAX) {
                slot_list_[h] = lists_.size();
                lists_.emplace_back();
            }
            lists_[slot_list_[h]].push_back((uint32_t)i);
        }
    }

    const std::vector<uint32_t>* find(uint64_t key) const {
        size_t h = hash(key) & mask_;
        while (occupied_[h]) {
            if (slot_key_[h] == key) return &lists_[slot_list_[h]];
            h = (h + 1) & mask_;
        }
        return nullptr;
    }

private:
    static uint64_t hash(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    size_t probe(uint64_t key, bool inserting) {
        size_t h = hash(key) & mask_;
        while (occupied_[h]) {
            if (slot_key_[h] == key) return h;
            h = (h + 1) & mask_;
        }
        if (inserting) {
            occupied_[h] = true;
            slot_key_[h] = key;
        }
        return h;
    }

    size_t mask_ = 0;
    std::vector<uint64_t> slot_key_;
    std::vector<size_t> slot_list_;
    std::vector<bool> occupied_;
    std::vector<std::vector<uint32_t>> lists_;
};

/// Shared plumbing for streams over a right-identity transformation.
class RightIdStream : public CandidateStream {
public:
    RightIdStream(std::shared_ptr<const Transformation> t, std::optional<FieldVector> sbar)
        : t_(std::move(t)),
          f_(t_->canon.field()),
          k_(t_->k()),
          r_(t_->r),
          swp_(!sbar.has_value()),
          sbar_(sbar ? std::move(*sbar) : FieldVector(t_->canon.field(), t_->r)),
          vcols_(columns_of(t_->V())) {}

protected:
    /// z2 = sbar - sum c_j * V(:,j); assembles the full candidate.
    Candidate emit(const std::vector<size_t>& support, const std::vector<uint32_t>& coeffs,
                   size_t weight_cap) const {
        FieldVector z2 = sbar_;
        for (size_t idx = 0; idx < support.size(); ++idx)
            z2.addmul_in_place(vcols_[support[idx]], f_.neg(coeffs[idx]));
        Candidate c{FieldVector(f_, k_ + r_), 0, {}};
        for (size_t idx = 0; idx < support.size(); ++idx)
            c.z.set(support[idx], coeffs[idx]);
        for (size_t i = 0; i < r_; ++i) {
            uint32_t v = z2.get(i);
            if (v) c.z.set(k_ + i, v);
        }
        size_t w1 = support.size();
        size_t w2 = z2.weight_capped(weight_cap >= w1 ? weight_cap - w1 : 0);
        c.weight = (w1 + w2 > weight_cap) ? SIZE_MAX : w1 + w2;
        return c;
    }

    std::shared_ptr<const Transformation> t_;
    PrimeField f_;
    size_t k_, r_;
    bool swp_;
    FieldVector sbar_;
    std::vector<FieldVector> vcols_;
};

class PrangeStream final : public RightIdStream {
public:
    using RightIdStream::RightIdStream;
    std::optional<Candidate> next(Rng&, size_t weight_cap) override {
        if (done_) return std::nullopt;
        done_ = true;
        return emit({}, {}, weight_cap);
    }

private:
    bool done_ = false;
};

class LeeBrickellStream final : public RightIdStream {
public:
    LeeBrickellStream(std::shared_ptr<const Transformation> t, std::optional<FieldVector> sbar,
                      size_t p)
        : RightIdStream(std::move(t), std::move(sbar)), en_(k_, p, f_.q()) {}

    std::optional<Candidate> next(Rng&, size_t weight_cap) override {
        std::vector<size_t> sup;
        std::vector<uint32_t> cf;
        while (en_.next(sup, cf)) {
            if (swp_ && sup.empty()) continue; // zero candidate is not a codeword
            return emit(sup, cf, weight_cap);
        }
        return std::nullopt;
    }

private:
    PatternEnum en_;
};

class LeonStream final : public RightIdStream {
public:
    LeonStream(std::shared_ptr<const Transformation> t, std::optional<FieldVector> sbar,
               size_t p, size_t ell)
        : RightIdStream(std::move(t), std::move(sbar)), en_(k_, p, f_.q()), ell_(ell) {}

    std::optional<Candidate> next(Rng&, size_t weight_cap) override {
        std::vector<size_t> sup;
        std::vector<uint32_t> cf;
        while (en_.next(sup, cf)) {
            if (swp_ && sup.empty()) continue;
            // survivors match the syndrome exactly on the first ell rows,
            // i.e. the candidate has zeros on that redundancy window
            Candidate c = emit(sup, cf, weight_cap);
            bool flat = true;
            for (size_t i = 0; i < ell_ && flat; ++i)
                if (c.z.get(k_ + i) != 0) flat = false;
            if (!flat) continue;
            return c;
        }
        return std::nullopt;
    }

private:
    PatternEnum en_;
    size_t ell_;
};

class GiRandomStream final : public RightIdStream {
public:
    using RightIdStream::RightIdStream;

    std::optional<Candidate> next(Rng& rng, size_t weight_cap) override {
        std::vector<size_t> sup;
        std::vector<uint32_t> cf;
        for (int tries = 0; tries < 4096; ++tries) {
            sup.clear();
            cf.clear();
            for (size_t j = 0; j < k_; ++j) {
                uint32_t v = rng.residue(f_.q());
                if (v) {
                    sup.push_back(j);
                    cf.push_back(v);
                }
            }
            if (sup.empty()) continue; // enforce X1 sbar != 0
            return emit(sup, cf, weight_cap);
        }
        return std::nullopt;
    }
};

class SternStream final : public RightIdStream {
public:
    SternStream(std::shared_ptr<const Transformation> t, std::optional<FieldVector> sbar,
                size_t p, size_t ell)
        : RightIdStream(std::move(t), std::move(sbar)),
          p_(p),
          ell_(ell),
          half_((k_ + 1) / 2),
          right_(k_ - half_, p, f_.q()) {
        // table over the left half, keyed by the ell-row window
        PatternEnum left(half_, p_, f_.q());
        std::vector<size_t> sup;
        std::vector<uint32_t> cf;
        std::vector<uint64_t> keys;
        while (left.next(sup, cf)) {
            left_sup_.insert(left_sup_.end(), sup.begin(), sup.end());
            left_cf_.insert(left_cf_.end(), cf.begin(), cf.end());
            keys.push_back(left_key(sup, cf));
        }
        table_.build(keys);
    }

    std::optional<Candidate> next(Rng&, size_t weight_cap) override {
        std::vector<size_t> sup;
        std::vector<uint32_t> cf;
        while (true) {
            if (matches_ && match_pos_ < matches_->size()) {
                size_t li = (*matches_)[match_pos_++];
                std::vector<size_t> fullsup(left_sup_.begin() + (ptrdiff_t)(li * p_),
                                            left_sup_.begin() + (ptrdiff_t)((li + 1) * p_));
                std::vector<uint32_t> fullcf(left_cf_.begin() + (ptrdiff_t)(li * p_),
                                             left_cf_.begin() + (ptrdiff_t)((li + 1) * p_));
                for (size_t i = 0; i < cur_sup_.size(); ++i) {
                    fullsup.push_back(half_ + cur_sup_[i]);
                    fullcf.push_back(cur_cf_[i]);
                }
                if (swp_ && fullsup.empty()) continue;
                return emit(fullsup, fullcf, weight_cap);
            }
            if (!right_.next(sup, cf)) return std::nullopt;
            cur_sup_ = sup;
            cur_cf_ = cf;
            matches_ = table_.find(right_key(sup, cf));
            match_pos_ = 0;
        }
    }

private:
    // window value of (sbar - V z1')_L for a left pattern
    uint64_t left_key(const std::vector<size_t>& sup, const std::vector<uint32_t>& cf) const {
        uint64_t key = 0;
        for (size_t i = ell_; i-- > 0;) {
            uint32_t acc = sbar_.get(i);
            for (size_t idx = 0; idx < sup.size(); ++idx)
                acc = f_.sub(acc, f_.mul(cf[idx], vcols_[sup[idx]].get(i)));
            key = key * f_.q() + acc;
        }
        return key;
    }
    // window value of (V z1'')_L for a right pattern (columns offset by half_)
    uint64_t right_key(const std::vector<size_t>& sup, const std::vector<uint32_t>& cf) const {
        uint64_t key = 0;
        for (size_t i = ell_; i-- > 0;) {
            uint32_t acc = 0;
            for (size_t idx = 0; idx < sup.size(); ++idx)
                acc = f_.add(acc, f_.mul(cf[idx], vcols_[half_ + sup[idx]].get(i)));
            key = key * f_.q() + acc;
        }
        return key;
    }

    size_t p_, ell_, half_;
    PatternEnum right_;
    std::vector<size_t> left_sup_;
    std::vector<uint32_t> left_cf_;
    CollisionTable table_;
    std::vector<size_t> cur_sup_;
    std::vector<uint32_t> cur_cf_;
    const std::vector<uint32_t>* matches_ = nullptr;
    size_t match_pos_ = 0;
};

/// Meet-in-the-middle enumeration of all weight-p solutions of V1 z1 = sbar1
/// over the k+ell left columns of a partial decomposition, split by weight
/// between the two column halves so the whole pattern space is covered.
class FsStream final : public CandidateStream {
public:
    FsStream(std::shared_ptr<const Transformation> t, std::optional<FieldVector> sbar,
             size_t p)
        : t_(std::move(t)),
          f_(t_->canon.field()),
          k_(t_->k()),
          r_(t_->r),
          ell_(t_->ell),
          swp_(!sbar.has_value()),
          sbar_(sbar ? std::move(*sbar) : FieldVector(t_->canon.field(), t_->r)),
          p_(p),
          wide_(k_ + ell_),
          half_((k_ + ell_ + 1) / 2),
          v1cols_(columns_of(t_->V1())),
          v3cols_(columns_of(t_->V3())) {
        sbar1_ = FieldVector(f_, ell_);
        for (size_t i = 0; i < ell_; ++i) sbar1_.set(i, sbar_.get(i));
        sbar2_ = FieldVector(f_, r_ - ell_);
        for (size_t i = 0; i < r_ - ell_; ++i) sbar2_.set(i, sbar_.get(ell_ + i));
        split_ = 0;
        begin_split();
    }

    std::optional<Candidate> next(Rng&, size_t weight_cap) override {
        std::vector<size_t> sup;
        std::vector<uint32_t> cf;
        while (true) {
            if (matches_ && match_pos_ < matches_->size()) {
                size_t li = (*matches_)[match_pos_++];
                size_t p1 = split_;
                std::vector<size_t> fullsup(left_sup_.begin() + (ptrdiff_t)(li * p1),
                                            left_sup_.begin() + (ptrdiff_t)((li + 1) * p1));
                std::vector<uint32_t> fullcf(left_cf_.begin() + (ptrdiff_t)(li * p1),
                                             left_cf_.begin() + (ptrdiff_t)((li + 1) * p1));
                for (size_t i = 0; i < cur_sup_.size(); ++i) {
                    fullsup.push_back(half_ + cur_sup_[i]);
                    fullcf.push_back(cur_cf_[i]);
                }
                if (swp_ && fullsup.empty()) continue;
                return emit(fullsup, fullcf, weight_cap);
            }
            if (right_ && right_->next(sup, cf)) {
                cur_sup_ = sup;
                cur_cf_ = cf;
                matches_ = table_.find(right_key(sup, cf));
                match_pos_ = 0;
                continue;
            }
            if (split_ >= p_) return std::nullopt;
            ++split_;
            begin_split();
        }
    }

private:
    void begin_split() {
        size_t p1 = split_, p2 = p_ - split_;
        left_sup_.clear();
        left_cf_.clear();
        std::vector<uint64_t> keys;
        PatternEnum left(half_, p1, f_.q());
        std::vector<size_t> sup;
        std::vector<uint32_t> cf;
        while (left.next(sup, cf)) {
            left_sup_.insert(left_sup_.end(), sup.begin(), sup.end());
            left_cf_.insert(left_cf_.end(), cf.begin(), cf.end());
            keys.push_back(left_key(sup, cf));
        }
        table_.build(keys);
        right_ = std::make_unique<PatternEnum>(wide_ - half_, p2, f_.q());
        matches_ = nullptr;
        match_pos_ = 0;
    }

    uint64_t left_key(const std::vector<size_t>& sup, const std::vector<uint32_t>& cf) const {
        uint64_t key = 0;
        for (size_t i = ell_; i-- > 0;) {
            uint32_t acc = sbar1_.get(i);
            for (size_t idx = 0; idx < sup.size(); ++idx)
                acc = f_.sub(acc, f_.mul(cf[idx], v1cols_[sup[idx]].get(i)));
            key = key * f_.q() + acc;
        }
        return key;
    }
    uint64_t right_key(const std::vector<size_t>& sup, const std::vector<uint32_t>& cf) const {
        uint64_t key = 0;
        for (size_t i = ell_; i-- > 0;) {
            uint32_t acc = 0;
            for (size_t idx = 0; idx < sup.size(); ++idx)
                acc = f_.add(acc, f_.mul(cf[idx], v1cols_[half_ + sup[idx]].get(i)));
            key = key * f_.q() + acc;
        }
        return key;
    }

    Candidate emit(const std::vector<size_t>& support, const std::vector<uint32_t>& coeffs,
                   size_t weight_cap) const {
        FieldVector z2 = sbar2_;
        for (size_t idx = 0; idx < support.size(); ++idx)
            z2.addmul_in_place(v3cols_[support[idx]], f_.neg(coeffs[idx]));
        Candidate c{FieldVector(f_, k_ + r_), 0, {}};
        for (size_t idx = 0; idx < support.size(); ++idx)
            c.z.set(support[idx], coeffs[idx]);
        for (size_t i = 0; i < r_ - ell_; ++i) {
            uint32_t v = z2.get(i);
            if (v) c.z.set(wide_ + i, v);
        }
        size_t w1 = support.size();
        size_t w2 = z2.weight_capped(weight_cap >= w1 ? weight_cap - w1 : 0);
        c.weight = (w1 + w2 > weight_cap) ? SIZE_MAX : w1 + w2;
        return c;
    }

    std::shared_ptr<const Transformation> t_;
    PrimeField f_;
    size_t k_, r_, ell_;
    bool swp_;
    FieldVector sbar_;
    size_t p_, wide_, half_;
    std::vector<FieldVector> v1cols_, v3cols_;
    FieldVector sbar1_{PrimeField(2), 0}, sbar2_{PrimeField(2), 0};
    size_t split_ = 0;
    std::vector<size_t> left_sup_;
    std::vector<uint32_t> left_cf_;
    CollisionTable table_;
    std::unique_ptr<PatternEnum> right_;
    std::vector<size_t> cur_sup_;
    std::vector<uint32_t> cur_cf_;
    const std::vector<uint32_t>* matches_ = nullptr;
    size_t match_pos_ = 0;
};

/// Independent per-block steering: each nonzero syndrome block contributes a
/// random weight-p target on the information columns; zero blocks contribute
/// nothing and are flagged.
class MultiStream final : public RightIdStream {
public:
    MultiStream(std::shared_ptr<const Transformation> t, std::optional<FieldVector> sbar,
                size_t p)
        : RightIdStream(std::move(t), std::move(sbar)), p_(p) {}

    std::optional<Candidate> next(Rng& rng, size_t weight_cap) override {
        const auto& blocks = t_->block_sizes;
        for (int tries = 0; tries < 4096; ++tries) {
            FieldVector u(f_, k_);
            std::vector<bool> flags(blocks.size(), false);
            size_t off = 0;
            for (size_t bi = 0; bi < blocks.size(); ++bi) {
                size_t sz = blocks[bi];
                bool zero_block = true;
                for (size_t i = 0; i < sz && !swp_; ++i)
                    if (sbar_.get(off + i) != 0) {
                        zero_block = false;
                        break;
                    }
                if (!swp_ && zero_block) {
                    flags[bi] = true; // no steering possible against a zero slice
                } else if (p_ > 0) {
                    auto sup = rng.subset(k_, std::min(p_, k_));
                    for (size_t j : sup)
                        u.set(j, f_.add(u.get(j), rng.nonzero_residue(f_.q())));
                }
                off += sz;
            }
            std::vector<size_t> sup;
            std::vector<uint32_t> cf;
            for (size_t j = 0; j < k_; ++j) {
                uint32_t v = u.get(j);
                if (v) {
                    sup.push_back(j);
                    cf.push_back(v);
                }
            }
            if (swp_ && sup.empty()) continue;
            Candidate c = emit(sup, cf, weight_cap);
            c.zero_syndrome_blocks = std::move(flags);
            return c;
        }
        return std::nullopt;
    }

private:
    size_t p_;
};

void validate_config(const StrategyConfig& cfg, size_t k, size_t r, uint32_t q, bool swp) {
    auto window_fits = [&](size_t ell) {
        return ell <= 30 && pow_checked(q, ell, uint64_t{1} << 62) <= (uint64_t{1} << 62);
    };
    switch (cfg.kind) {
    case StrategyKind::prange:
        if (swp)
            throw ConfigError("the plain information-set strategy only yields the zero "
                              "vector on a null-space search");
        break;
    case StrategyKind::lee_brickell:
        if (cfg.p > k) throw ConfigError("enumeration weight p exceeds k");
        break;
    case StrategyKind::leon:
        if (cfg.p > k) throw ConfigError("enumeration weight p exceeds k");
        if (cfg.ell > r) throw ConfigError("window ell exceeds rank");
        break;
    case StrategyKind::stern:
        if (cfg.p > (k + 1) / 2) throw ConfigError("enumeration weight p exceeds half split");
        if (cfg.ell > r) throw ConfigError("window ell exceeds rank");
        if (!window_fits(cfg.ell))
            throw ConfigError("window ell too large for packed collision keys");
        break;
    case StrategyKind::finiasz_sendrier:
        if (cfg.ell > r) throw ConfigError("window ell exceeds rank");
        if (cfg.p > k + cfg.ell) throw ConfigError("enumeration weight p exceeds k + ell");
        if (!window_fits(cfg.ell))
            throw ConfigError("window ell too large for packed collision keys");
        break;
    case StrategyKind::multi_decomp: {
        if (cfg.ell_list.empty()) throw ConfigError("multi_decomp needs identity blocks");
        size_t sum = 0;
        for (size_t l : cfg.ell_list) {
            if (l == 0) throw ConfigError("zero-sized identity block");
            sum += l;
        }
        if (sum > r) throw ConfigError("identity blocks exceed rank");
        if (cfg.p > k) throw ConfigError("enumeration weight p exceeds k");
        if (swp && cfg.p == 0)
            throw ConfigError("null-space search needs p >= 1 steering weight");
        break;
    }
    case StrategyKind::gi_random:
        break;
    }
}

} // namespace

std::unique_ptr<CandidateStream> make_candidate_stream(
    const StrategyConfig& cfg, const std::shared_ptr<const Transformation>& t,
    std::optional<FieldVector> sbar) {
    switch (cfg.kind) {
    case StrategyKind::prange:
        return std::make_unique<PrangeStream>(t, std::move(sbar));
    case StrategyKind::lee_brickell:
        return std::make_unique<LeeBrickellStream>(t, std::move(sbar), cfg.p);
    case StrategyKind::leon:
        return std::make_unique<LeonStream>(t, std::move(sbar), cfg.p, cfg.ell);
    case StrategyKind::stern:
        return std::make_unique<SternStream>(t, std::move(sbar), cfg.p, cfg.ell);
    case StrategyKind::finiasz_sendrier:
        return std::make_unique<FsStream>(t, std::move(sbar), cfg.p);
    case StrategyKind::multi_decomp:
        return std::make_unique<MultiStream>(t, std::move(sbar), cfg.p);
    case StrategyKind::gi_random:
        return std::make_unique<GiRandomStream>(t, std::move(sbar));
    }
    throw ConfigError("unknown strategy");
}

std::vector<Candidate> collect_candidates(const StrategyConfig& cfg,
                                          const std::shared_ptr<const Transformation>& t,
                                          std::optional<FieldVector> sbar, Rng& rng,
                                          size_t max_count) {
    auto stream = make_candidate_stream(cfg, t, std::move(sbar));
    std::vector<Candidate> out;
    while (out.size() < max_count) {
        auto c = stream->next(rng, t->n());
        if (!c) break;
        out.push_back(std::move(*c));
    }
    return out;
}

FieldVector prange_solution(const Transformation& t, const FieldVector& s) {
    if (t.form != Form::right_id_full && t.form != Form::multi)
        throw ConfigError("prange_solution needs a right-identity transformation");
    FieldVector sbar = t.P.mul(s);
    FieldVector z(s.field(), t.n());
    for (size_t i = 0; i < t.r; ++i) {
        uint32_t v = sbar.get(i);
        if (v) z.set(t.k() + i, v);
    }
    return t.Q.apply(z);
}

Candidate multi_candidate(const Transformation& t, const FieldVector& sbar,
                          const std::vector<FieldVector>& block_targets) {
    if (t.form != Form::multi) throw ConfigError("multi_candidate needs a multi transformation");
    if (block_targets.size() != t.block_sizes.size())
        throw DimensionMismatch("one steering target per identity block expected");
    const PrimeField& f = sbar.field();
    size_t k = t.k(), r = t.r;
    FieldVector u(f, k);
    std::vector<bool> flags(t.block_sizes.size(), false);
    size_t off = 0;
    for (size_t bi = 0; bi < t.block_sizes.size(); ++bi) {
        size_t sz = t.block_sizes[bi];
        bool zero_block = true;
        for (size_t i = 0; i < sz; ++i)
            if (sbar.get(off + i) != 0) {
                zero_block = false;
                break;
            }
        if (zero_block) {
            flags[bi] = true;
        } else {
            if (block_targets[bi].size() != k)
                throw DimensionMismatch("steering target must have length k");
            u.add_in_place(block_targets[bi]);
        }
        off += sz;
    }
    FieldVector z2 = sbar;
    Matrix v = t.V();
    for (size_t j = 0; j < k; ++j) {
        uint32_t c = u.get(j);
        if (c) z2.addmul_in_place(v.col_vec(j), f.neg(c));
    }
    Candidate c{FieldVector(f, k + r), 0, std::move(flags)};
    for (size_t j = 0; j < k; ++j) {
        uint32_t v0 = u.get(j);
        if (v0) c.z.set(j, v0);
    }
    for (size_t i = 0; i < r; ++i) {
        uint32_t v0 = z2.get(i);
        if (v0) c.z.set(k + i, v0);
    }
    c.weight = c.z.weight();
    return c;
}

bool verify_solution(const SdpInstance& inst, const FieldVector& x) {
    if (x.size() != inst.n() || x.field() != inst.H.field()) return false;
    return inst.H.mul(x) == inst.s && x.weight() <= inst.t;
}

bool verify_solution(const LwpInstance& inst, const FieldVector& x) {
    if (x.size() != inst.n() || x.field() != inst.H.field()) return false;
    return !x.is_zero() && inst.H.mul(x).is_zero() && x.weight() <= inst.t;
}

namespace {

struct SolveShared {
    std::atomic<bool> found{false};
    std::atomic<uint64_t> next_decomposition{0};
    std::atomic<uint64_t> samples{0};
    std::atomic<uint64_t> decompositions{0};
    std::mutex result_mutex;
    std::optional<FieldVector> x;
    size_t weight = 0;
};

/// One worker of the generic decoder. `s` empty means null-space search.
void solve_worker(const Matrix& H, const std::optional<FieldVector>& s, size_t t,
                  const StrategyConfig& strat, const Budget& budget, unsigned worker,
                  std::chrono::steady_clock::time_point start, SolveShared& shared) {
    const PrimeField& f = H.field();
    size_t n = H.cols();
    size_t k = n - H.rows();
    bool swp = !s.has_value();
    Rng rng = Rng::substream(strat.seed, worker);
    uint64_t sample_cap = budget.max_samples_per_decomposition
                              ? budget.max_samples_per_decomposition
                              : 10 * (uint64_t)k;
    if (strat.samples_per_decomposition)
        sample_cap = std::min(sample_cap, strat.samples_per_decomposition);

    auto over_wall_clock = [&]() {
        if (!budget.wall_clock_seconds) return false;
        std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
        return el.count() > *budget.wall_clock_seconds;
    };

    while (!shared.found.load(std::memory_order_relaxed)) {
        uint64_t d = shared.next_decomposition.fetch_add(1);
        if (d >= budget.max_decompositions) return;
        if (over_wall_clock()) return;
        shared.decompositions.fetch_add(1, std::memory_order_relaxed);

        std::shared_ptr<const Transformation> trans;
        bool partial = strat.kind == StrategyKind::finiasz_sendrier;
        if (partial)
            trans = std::make_shared<const Transformation>(decompose_partial(H, strat.ell, rng));
        else if (strat.kind == StrategyKind::multi_decomp)
            trans = std::make_shared<const Transformation>(decompose_multi(H, strat.ell_list, rng));
        else
            trans = std::make_shared<const Transformation>(decompose(H, Form::right_id_full, rng));

        std::optional<FieldVector> sbar;
        if (!swp) {
            sbar = trans->P.mul(*s);
        } else {
            // choose a nonzero b in the range of H, low weight to keep the
            // product cheap; the null-space parameterization needs P b != 0.
            // Tiny codes can have every weight-3 vector in the kernel, so
            // escalate to uniform draws if the low-weight ones keep landing
            // there.
            FieldVector b(f, H.rows());
            for (int attempt = 0; b.is_zero(); ++attempt) {
                FieldVector x0(f, n);
                if (attempt < 16) {
                    for (size_t j : rng.subset(n, std::min<size_t>(3, n)))
                        x0.set(j, rng.nonzero_residue(f.q()));
                } else {
                    for (size_t j = 0; j < n; ++j) x0.set(j, rng.residue(f.q()));
                }
                b = H.mul(x0);
            }
            FieldVector bbar = trans->P.mul(b);
            if (bbar.is_zero())
                throw Error("internal: P b vanished for nonzero b");
        }

        auto stream = make_candidate_stream(strat, trans, std::move(sbar));
        for (uint64_t i = 0; i < sample_cap; ++i) {
            if (shared.found.load(std::memory_order_relaxed)) return;
            if ((i & 1023) == 1023 && over_wall_clock()) return;
            auto cand = stream->next(rng, t);
            if (!cand) break;
            shared.samples.fetch_add(1, std::memory_order_relaxed);
            if (cand->weight == SIZE_MAX || cand->weight > t) continue;
            FieldVector x = trans->Q.apply(cand->z);
            // final gate: never report an unverified solution
            bool ok = swp ? (!x.is_zero() && H.mul(x).is_zero() && x.weight() <= t)
                          : (H.mul(x) == *s && x.weight() <= t);
            if (!ok)
                throw Error("internal: candidate failed verification");
            std::lock_guard<std::mutex> lock(shared.result_mutex);
            if (!shared.found.load()) {
                shared.x = std::move(x);
                shared.weight = cand->weight;
                shared.found.store(true);
            }
            return;
        }
    }
}

DecodeResult solve_generic(const Matrix& H, const std::optional<FieldVector>& s, size_t t,
                           const StrategyConfig& strat, const Budget& budget,
                           unsigned threads) {
    validate_config(strat, H.cols() - H.rows(), H.rows(), H.field().q(), !s.has_value());
    auto start = std::chrono::steady_clock::now();
    SolveShared shared;
    if (threads <= 1) {
        solve_worker(H, s, t, strat, budget, 0, start, shared);
    } else {
        std::vector<std::thread> pool;
        std::mutex err_mutex;
        std::exception_ptr first_error;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&, w]() {
                try {
                    solve_worker(H, s, t, strat, budget, w, start, shared);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    shared.found.store(true); // unblock the other workers
                }
            });
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    DecodeResult res;
    res.found = shared.found.load();
    if (res.found) {
        res.x = shared.x;
        res.weight = shared.weight;
    }
    res.decompositions_used = shared.decompositions.load();
    res.samples_used = shared.samples.load();
    res.elapsed_seconds = elapsed.count();
    res.seed = strat.seed;
    return res;
}

} // namespace

DecodeResult solve_cwp(const SdpInstance& inst, const StrategyConfig& strat,
                       const Budget& budget, unsigned threads) {
    if (inst.t == 0) {
        // a nonzero syndrome admits no zero-weight solution
        DecodeResult res;
        res.seed = strat.seed;
        return res;
    }
    return solve_generic(inst.H, inst.s, inst.t, strat, budget, threads);
}

DecodeResult solve_swp(const LwpInstance& inst, const StrategyConfig& strat,
                       const Budget& budget, unsigned threads) {
    return solve_generic(inst.H, std::nullopt, inst.t, strat, budget, threads);
}

} // namespace gid
