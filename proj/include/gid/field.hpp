#ifndef GID_FIELD_HPP
#define GID_FIELD_HPP

#include <gid/errors.hpp>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gid {

/// Prime field F_q, q prime, 2 <= q <= 65536. Elements are canonical
/// residues in [0, q) carried as uint32_t.
class PrimeField {
public:
    explicit PrimeField(uint32_t q);

    uint32_t q() const { return q_; }
    bool is_binary() const { return q_ == 2; }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const {
        return a >= b ? a - b : a + q_ - b;
    }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : q_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return (uint32_t)(((uint64_t)a * b) % q_);
    }
    /// Multiplicative inverse; throws ZeroInverse on a == 0.
    uint32_t inv(uint32_t a) const;

    bool operator==(const PrimeField& o) const { return q_ == o.q_; }
    bool operator!=(const PrimeField& o) const { return q_ != o.q_; }

private:
    uint32_t q_;
};

/// Dense vector over F_q. GF(2) vectors are bit-packed into 64-bit words;
/// larger fields store one byte (q < 256) or two bytes per entry.
///
/// Entry access is 0-based; support() reports 1-based positions, matching
/// the convention used in file formats and error messages.
class FieldVector {
public:
    FieldVector(PrimeField f, size_t n);
    static FieldVector from(PrimeField f, std::initializer_list<uint32_t> vals);
    static FieldVector from(PrimeField f, const std::vector<uint32_t>& vals);

    const PrimeField& field() const { return f_; }
    size_t size() const { return n_; }

    uint32_t get(size_t i) const;
    void set(size_t i, uint32_t v);

    size_t weight() const;
    /// Weight with early exit: returns cap+1 as soon as the count exceeds cap.
    size_t weight_capped(size_t cap) const;
    /// 1-based support positions, ascending.
    std::vector<size_t> support() const;
    bool is_zero() const;

    void add_in_place(const FieldVector& o);
    void sub_in_place(const FieldVector& o);
    /// this += c * o
    void addmul_in_place(const FieldVector& o, uint32_t c);
    void scale_in_place(uint32_t c);
    void clear();

    FieldVector operator+(const FieldVector& o) const;
    FieldVector operator-(const FieldVector& o) const;

    bool operator==(const FieldVector& o) const;
    bool operator!=(const FieldVector& o) const { return !(*this == o); }
    /// Lexicographic order on entries (for use in ordered containers).
    bool operator<(const FieldVector& o) const;

    std::string to_string() const; // space-separated residues

    // Packed-word access for GF(2) hot paths (empty span otherwise).
    const std::vector<uint64_t>& words() const { return w_; }
    std::vector<uint64_t>& words() { return w_; }

private:
    friend class Matrix;
    void check_compatible(const FieldVector& o) const;

    PrimeField f_;
    size_t n_ = 0;
    std::vector<uint64_t> w_;   // q == 2, bit-packed, tail bits zero
    std::vector<uint8_t> b8_;   // 2 < q < 256
    std::vector<uint16_t> b16_; // q >= 256
};

} // namespace gid

#endif
