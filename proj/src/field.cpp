#include <gid/field.hpp>

#include <bit>
#include <sstream>

namespace gid {

namespace {

bool is_prime_u32(uint32_t q) {
    if (q < 2) return false;
    if (q % 2 == 0) return q == 2;
    for (uint32_t d = 3; (uint64_t)d * d <= q; d += 2)
        if (q % d == 0) return false;
    return true;
}

} // namespace

PrimeField::PrimeField(uint32_t q) : q_(q) {
    if (q > 65536 || !is_prime_u32(q))
        throw NotPrime("field order " + std::to_string(q) +
                       " is not a prime <= 2^16 (extension fields are not supported)");
}

uint32_t PrimeField::inv(uint32_t a) const {
    if (a == 0)
        throw ZeroInverse("inverse of zero requested in F_" + std::to_string(q_));
    // extended Euclid on (a, q)
    int64_t t = 0, new_t = 1;
    int64_t r = q_, new_r = a;
    while (new_r != 0) {
        int64_t quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += q_;
    return (uint32_t)t;
}

FieldVector::FieldVector(PrimeField f, size_t n) : f_(f), n_(n) {
    if (f_.is_binary())
        w_.assign((n + 63) / 64, 0);
    else if (f_.q() < 256)
        b8_.assign(n, 0);
    else
        b16_.assign(n, 0);
}

FieldVector FieldVector::from(PrimeField f, std::initializer_list<uint32_t> vals) {
    return from(f, std::vector<uint32_t>(vals));
}

FieldVector FieldVector::from(PrimeField f, const std::vector<uint32_t>& vals) {
    FieldVector v(f, vals.size());
    for (size_t i = 0; i < vals.size(); ++i)
        v.set(i, vals[i]);
    return v;
}

uint32_t FieldVector::get(size_t i) const {
    if (f_.is_binary()) return (uint32_t)((w_[i >> 6] >> (i & 63)) & 1u);
    if (f_.q() < 256) return b8_[i];
    return b16_[i];
}

void FieldVector::set(size_t i, uint32_t v) {
    if (v >= f_.q()) v %= f_.q(); // keep entries canonical
    if (f_.is_binary()) {
        uint64_t mask = 1ULL << (i & 63);
        if (v)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    } else if (f_.q() < 256) {
        b8_[i] = (uint8_t)v;
    } else {
        b16_[i] = (uint16_t)v;
    }
}

size_t FieldVector::weight() const {
    size_t c = 0;
    if (f_.is_binary()) {
        for (uint64_t x : w_) c += (size_t)std::popcount(x);
    } else if (f_.q() < 256) {
        for (uint8_t x : b8_) c += (x != 0);
    } else {
        for (uint16_t x : b16_) c += (x != 0);
    }
    return c;
}

size_t FieldVector::weight_capped(size_t cap) const {
    size_t c = 0;
    if (f_.is_binary()) {
        for (uint64_t x : w_) {
            c += (size_t)std::popcount(x);
            if (c > cap) return cap + 1;
        }
    } else if (f_.q() < 256) {
        for (uint8_t x : b8_) {
            c += (x != 0);
            if (c > cap) return cap + 1;
        }
    } else {
        for (uint16_t x : b16_) {
            c += (x != 0);
            if (c > cap) return cap + 1;
        }
    }
    return c;
}

std::vector<size_t> FieldVector::support() const {
    std::vector<size_t> s;
    for (size_t i = 0; i < n_; ++i)
        if (get(i) != 0) s.push_back(i + 1);
    return s;
}

bool FieldVector::is_zero() const {
    if (f_.is_binary()) {
        for (uint64_t x : w_)
            if (x) return false;
        return true;
    }
    if (f_.q() < 256) {
        for (uint8_t x : b8_)
            if (x) return false;
        return true;
    }
    for (uint16_t x : b16_)
        if (x) return false;
    return true;
}

void FieldVector::check_compatible(const FieldVector& o) const {
    if (f_ != o.f_)
        throw FieldMismatch("vectors over different fields");
    if (n_ != o.n_)
        throw DimensionMismatch("vector lengths differ: " + std::to_string(n_) +
                                " vs " + std::to_string(o.n_));
}

void FieldVector::add_in_place(const FieldVector& o) {
    check_compatible(o);
    if (f_.is_binary()) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    } else if (f_.q() < 256) {
        for (size_t i = 0; i < n_; ++i) b8_[i] = (uint8_t)f_.add(b8_[i], o.b8_[i]);
    } else {
        for (size_t i = 0; i < n_; ++i) b16_[i] = (uint16_t)f_.add(b16_[i], o.b16_[i]);
    }
}

void FieldVector::sub_in_place(const FieldVector& o) {
    check_compatible(o);
    if (f_.is_binary()) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    } else if (f_.q() < 256) {
        for (size_t i = 0; i < n_; ++i) b8_[i] = (uint8_t)f_.sub(b8_[i], o.b8_[i]);
    } else {
        for (size_t i = 0; i < n_; ++i) b16_[i] = (uint16_t)f_.sub(b16_[i], o.b16_[i]);
    }
}

void FieldVector::addmul_in_place(const FieldVector& o, uint32_t c) {
    check_compatible(o);
    if (c == 0) return;
    if (f_.is_binary()) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    } else if (f_.q() < 256) {
        for (size_t i = 0; i < n_; ++i)
            b8_[i] = (uint8_t)f_.add(b8_[i], f_.mul(c, o.b8_[i]));
    } else {
        for (size_t i = 0; i < n_; ++i)
            b16_[i] = (uint16_t)f_.add(b16_[i], f_.mul(c, o.b16_[i]));
    }
}

void FieldVector::scale_in_place(uint32_t c) {
    if (f_.is_binary()) {
        if (c == 0) clear();
        return;
    }
    if (f_.q() < 256) {
        for (size_t i = 0; i < n_; ++i) b8_[i] = (uint8_t)f_.mul(c, b8_[i]);
    } else {
        for (size_t i = 0; i < n_; ++i) b16_[i] = (uint16_t)f_.mul(c, b16_[i]);
    }
}

void FieldVector::clear() {
    std::fill(w_.begin(), w_.end(), 0);
    std::fill(b8_.begin(), b8_.end(), 0);
    std::fill(b16_.begin(), b16_.end(), 0);
}

FieldVector FieldVector::operator+(const FieldVector& o) const {
    FieldVector r = *this;
    r.add_in_place(o);
    return r;
}

FieldVector FieldVector::operator-(const FieldVector& o) const {
    FieldVector r = *this;
    r.sub_in_place(o);
    return r;
}

bool FieldVector::operator==(const FieldVector& o) const {
    return f_ == o.f_ && n_ == o.n_ && w_ == o.w_ && b8_ == o.b8_ && b16_ == o.b16_;
}

bool FieldVector::operator<(const FieldVector& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (size_t i = 0; i < n_; ++i) {
        uint32_t a = get(i), b = o.get(i);
        if (a != b) return a < b;
    }
    return false;
}

std::string FieldVector::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < n_; ++i) {
        if (i) os << ' ';
        os << get(i);
    }
    return os.str();
}

} // namespace gid
