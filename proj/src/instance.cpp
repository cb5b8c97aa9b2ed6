#include <gid/instance.hpp>

#include <istream>
#include <ostream>
#include <sstream>

namespace gid {

SdpInstance GidInstance::to_sdp() const {
    if (problem != ProblemKind::sdp || !s)
        throw ConfigError("instance is not a syndrome decoding problem");
    return SdpInstance(H, *s, t);
}

LwpInstance GidInstance::to_lwp() const {
    if (problem != ProblemKind::lwp)
        throw ConfigError("instance is not a low-weight codeword problem");
    return LwpInstance(H, t);
}

GeneratedInstance gen_instance(size_t n, size_t k, uint32_t q, size_t t, GenMode mode,
                               uint64_t seed, ProblemKind problem) {
    if (k >= n) throw ConfigError("dimension k must be smaller than length n");
    if (t > n) throw ConfigError("target weight exceeds length");
    if (problem == ProblemKind::lwp && mode == GenMode::planted)
        throw ConfigError("planted generation is defined for syndrome instances only");
    PrimeField f(q);
    Rng rng(seed);
    size_t r = n - k;

    Matrix h(f, 0, 0);
    do {
        h = Matrix::random(f, r, n, rng);
    } while (h.rank() != r);

    GeneratedInstance out{GidInstance{problem, q, n, k, t, h, std::nullopt}, std::nullopt};
    if (problem == ProblemKind::lwp) return out;

    if (mode == GenMode::planted) {
        if (t == 0) throw ConfigError("planted error weight must be positive");
        FieldVector e(f, n);
        FieldVector s(f, r);
        do {
            e.clear();
            for (size_t j : rng.subset(n, t)) e.set(j, rng.nonzero_residue(q));
            s = h.mul(e);
        } while (s.is_zero()); // the instance invariant wants a nonzero syndrome
        out.inst.s = std::move(s);
        out.planted_error = std::move(e);
    } else {
        FieldVector s(f, r);
        do {
            for (size_t i = 0; i < r; ++i) s.set(i, rng.residue(q));
        } while (s.is_zero());
        out.inst.s = std::move(s);
    }
    return out;
}

void write_gid(std::ostream& os, const GidInstance& inst) {
    os << "GID v1\n";
    os << "problem: " << (inst.problem == ProblemKind::sdp ? "sdp" : "lwp") << '\n';
    os << "q: " << inst.q << '\n';
    os << "n: " << inst.n << '\n';
    os << "k: " << inst.k << '\n';
    os << "t: " << inst.t << '\n';
    os << "H:\n";
    for (size_t i = 0; i < inst.H.rows(); ++i) {
        for (size_t j = 0; j < inst.H.cols(); ++j) {
            if (j) os << ' ';
            os << inst.H.get(i, j);
        }
        os << '\n';
    }
    if (inst.problem == ProblemKind::sdp) {
        os << "s:\n";
        os << inst.s->to_string() << '\n';
    }
}

namespace {

std::string expect_line(std::istream& is, const char* what) {
    std::string line;
    if (!std::getline(is, line))
        throw ParseError(std::string("unexpected end of file, expected ") + what);
    while (!line.empty() && (line.back() == '\r')) line.pop_back();
    return line;
}

std::string expect_field(std::istream& is, const std::string& key) {
    std::string line = expect_line(is, key.c_str());
    if (line.rfind(key + ":", 0) != 0)
        throw ParseError("expected '" + key + ":' line, got '" + line + "'");
    std::string v = line.substr(key.size() + 1);
    size_t p = v.find_first_not_of(' ');
    return p == std::string::npos ? "" : v.substr(p);
}

std::vector<uint32_t> parse_residues(const std::string& line, uint32_t q, size_t expect) {
    std::istringstream ls(line);
    std::vector<uint32_t> vals;
    uint32_t v;
    while (ls >> v) {
        if (v >= q) throw ParseError("entry " + std::to_string(v) + " not a residue mod " +
                                     std::to_string(q));
        vals.push_back(v);
    }
    if (vals.size() != expect)
        throw ParseError("expected " + std::to_string(expect) + " residues, got " +
                         std::to_string(vals.size()));
    return vals;
}

} // namespace

GidInstance read_gid(std::istream& is) {
    if (expect_line(is, "magic") != "GID v1") throw ParseError("not a GID v1 file");
    std::string prob = expect_field(is, "problem");
    GidInstance inst;
    if (prob == "sdp")
        inst.problem = ProblemKind::sdp;
    else if (prob == "lwp")
        inst.problem = ProblemKind::lwp;
    else
        throw ParseError("unknown problem kind '" + prob + "'");
    inst.q = (uint32_t)std::stoul(expect_field(is, "q"));
    inst.n = std::stoul(expect_field(is, "n"));
    inst.k = std::stoul(expect_field(is, "k"));
    inst.t = std::stoul(expect_field(is, "t"));
    if (inst.k >= inst.n) throw ParseError("k must be smaller than n");
    PrimeField f(inst.q);
    if (expect_line(is, "H:") != "H:") throw ParseError("expected 'H:'");
    size_t r = inst.n - inst.k;
    Matrix h(f, r, inst.n);
    for (size_t i = 0; i < r; ++i) {
        auto vals = parse_residues(expect_line(is, "matrix row"), inst.q, inst.n);
        for (size_t j = 0; j < inst.n; ++j)
            if (vals[j]) h.set(i, j, vals[j]);
    }
    inst.H = std::move(h);
    if (inst.problem == ProblemKind::sdp) {
        if (expect_line(is, "s:") != "s:") throw ParseError("expected 's:'");
        auto vals = parse_residues(expect_line(is, "syndrome"), inst.q, r);
        inst.s = FieldVector::from(f, vals);
    }
    return inst;
}

void write_solution(std::ostream& os, const FieldVector& x) {
    os << x.to_string() << '\n';
    os << "weight: " << x.weight() << '\n';
}

FieldVector read_solution(std::istream& is, PrimeField f, size_t n,
                          bool* weight_consistent) {
    auto vals = parse_residues(expect_line(is, "solution vector"), f.q(), n);
    FieldVector x = FieldVector::from(f, vals);
    std::string wline = expect_line(is, "weight line");
    if (wline.rfind("weight:", 0) != 0) throw ParseError("expected 'weight:' line");
    size_t w = std::stoul(wline.substr(7));
    if (weight_consistent) {
        *weight_consistent = (w == x.weight());
    } else if (w != x.weight()) {
        throw ParseError("declared weight " + std::to_string(w) + " != actual " +
                         std::to_string(x.weight()));
    }
    return x;
}

} // namespace gid
