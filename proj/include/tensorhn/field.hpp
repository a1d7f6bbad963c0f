#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace thn {

using Rng = std::mt19937_64;

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_prime_u64(uint64_t n);

// Polynomials over GF(p), coefficient i is the coefficient of t^i.
using PolyP = std::vector<uint32_t>;
bool is_irreducible_mod_p(const PolyP& f, uint32_t p);
PolyP smallest_irreducible(uint32_t p, int e);

// GF(p^e). Elements are encoded as integers sum a_i p^i where a_i are the
// coefficients of the residue polynomial in t.
class FiniteField {
public:
    using Elem = uint32_t;
    struct Impl;

    FiniteField() = default;
    static FiniteField prime(uint32_t p);
    static FiniteField extension(uint32_t p, int e);
    static FiniteField extension(uint32_t p, int e, const PolyP& modulus);

    uint32_t characteristic() const { return p_; }
    int degree() const { return e_; }
    uint64_t size() const { return q_; }
    const PolyP& modulus() const;
    bool valid() const { return impl_ != nullptr; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    bool is_one(Elem a) const { return a == 1; }

    Elem add(Elem a, Elem b) const {
        if (e_ == 1) {
            uint32_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (p_ == 2) return a ^ b;
        return add_digits(a, b);
    }
    Elem neg(Elem a) const {
        if (a == 0) return 0;
        if (e_ == 1) return p_ - a;
        if (p_ == 2) return a;
        return neg_digits(a);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (e_ == 1) return static_cast<Elem>((uint64_t)a * b % p_);
        if (a == 0 || b == 0) return 0;
        if (exp_) return exp_[log_[a] + log_[b]];
        return mul_poly(a, b);
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, uint64_t k) const;

    Elem from_int(int64_t v) const;
    Elem random(Rng& rng) const { return static_cast<Elem>(rng() % q_); }
    std::string to_string(Elem a) const;
    Elem parse(const std::string& s) const;

    // Elements of the prime subfield are exactly the indices below p.
    bool in_prime_subfield(Elem a) const { return a < p_; }

    bool operator==(const FiniteField& o) const { return impl_ == o.impl_; }
    bool operator!=(const FiniteField& o) const { return impl_ != o.impl_; }
    std::string describe() const;

private:
    explicit FiniteField(std::shared_ptr<const Impl> impl);
    Elem add_digits(Elem a, Elem b) const;
    Elem neg_digits(Elem a) const;
    Elem mul_poly(Elem a, Elem b) const;

    std::shared_ptr<const Impl> impl_;
    uint32_t p_ = 0;
    int e_ = 0;
    uint64_t q_ = 0;
    const uint32_t* exp_ = nullptr;
    const uint32_t* log_ = nullptr;
};

// Embedding of a finite field into an extension of it.
class FieldEmbedding {
public:
    FieldEmbedding() = default;
    FieldEmbedding(const FiniteField& small, const FiniteField& big);
    const FiniteField& source() const { return small_; }
    const FiniteField& target() const { return big_; }
    FiniteField::Elem up(FiniteField::Elem a) const;
    // Returns false if b is not in the image.
    bool down(FiniteField::Elem b, FiniteField::Elem& out) const;
    bool identity() const { return identity_; }

private:
    FiniteField small_, big_;
    bool identity_ = true;
    bool prime_ = true;
    std::vector<uint32_t> up_;
    std::vector<int64_t> down_;
};

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class RationalField {
public:
    using Elem = Rational;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw FieldError("division by zero");
        return Elem(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem from_int(int64_t v) const { return Elem(v); }
    Elem random(Rng& rng) const {
        return Elem(static_cast<int64_t>(rng() % (1u << 20)) - (1 << 19));
    }
    std::string to_string(const Elem& a) const;
    Elem parse(const std::string& s) const;
    uint64_t size() const { return 0; }
    std::string describe() const { return "Q"; }

    bool operator==(const RationalField&) const { return true; }
    bool operator!=(const RationalField&) const { return false; }
};

// Field used for random substitutions, and the way back.
template <class F>
struct ExtensionFor;

template <>
struct ExtensionFor<FiniteField> {
    FieldEmbedding emb;
    const FiniteField& field() const { return emb.target(); }
    FiniteField::Elem up(FiniteField::Elem a) const { return emb.up(a); }
    bool down(FiniteField::Elem b, FiniteField::Elem& out) const { return emb.down(b, out); }
};

template <>
struct ExtensionFor<RationalField> {
    RationalField f;
    const RationalField& field() const { return f; }
    Rational up(const Rational& a) const { return a; }
    bool down(const Rational& b, Rational& out) const {
        out = b;
        return true;
    }
};

// Smallest extension of F with at least min_size elements (never F itself
// smaller than requested).
ExtensionFor<FiniteField> extension_at_least(const FiniteField& f, uint64_t min_size);
ExtensionFor<RationalField> extension_at_least(const RationalField& f, uint64_t min_size);

// Extension of degree `factor` over f.
FieldEmbedding extension_by(const FiniteField& f, int factor);

}  // namespace thn
