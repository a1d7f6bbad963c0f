#include "tensorhn/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <unordered_map>

namespace thn {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
    int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        int64_t q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw FieldError("element not invertible");
    if (t < 0) t += p;
    return static_cast<uint32_t>(t);
}

void trim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& f, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + (uint64_t)a[i] * b[j]) % p;
    }
    size_t df = f.size() - 1;
    uint32_t lead_inv = inv_mod(f.back(), p);
    for (size_t i = r.size(); i-- > df;) {
        uint64_t c = r[i] % p;
        if (c == 0) continue;
        c = c * lead_inv % p;
        for (size_t j = 0; j <= df; ++j) r[i - df + j] = (r[i - df + j] + (p - c) * f[j]) % p;
    }
    PolyP out(std::min(r.size(), df));
    for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<uint32_t>(r[i] % p);
    trim(out);
    return out;
}

PolyP poly_mod(PolyP a, const PolyP& f, uint32_t p) {
    trim(a);
    size_t df = f.size() - 1;
    uint32_t lead_inv = inv_mod(f.back(), p);
    for (size_t i = a.size(); i-- > df;) {
        uint64_t c = a[i];
        if (c == 0) continue;
        c = c * lead_inv % p;
        for (size_t j = 0; j <= df; ++j) a[i - df + j] = static_cast<uint32_t>((a[i - df + j] + (p - c) * f[j]) % p);
    }
    if (a.size() > df) a.resize(df);
    trim(a);
    return a;
}

PolyP poly_gcd(PolyP a, PolyP b, uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = poly_mod(a, b, p);
        std::swap(a, b);
    }
    return a;
}

PolyP poly_powmod(PolyP base, BigInt k, const PolyP& f, uint32_t p) {
    PolyP r{1};
    base = poly_mod(base, f, p);
    while (k > 0) {
        if ((k & 1) != 0) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        k >>= 1;
    }
    return r;
}

PolyP poly_sub(PolyP a, const PolyP& b, uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

}  // namespace

bool is_irreducible_mod_p(const PolyP& f0, uint32_t p) {
    PolyP f = f0;
    trim(f);
    if (f.size() < 2) return false;
    int e = static_cast<int>(f.size()) - 1;
    if (e == 1) return true;
    PolyP x{0, 1};
    BigInt pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (!poly_sub(poly_powmod(x, pe, f, p), x, p).empty()) return false;
    for (uint64_t r : prime_factors(static_cast<uint64_t>(e))) {
        BigInt pk = 1;
        for (uint64_t i = 0; i < static_cast<uint64_t>(e) / r; ++i) pk *= p;
        PolyP g = poly_gcd(f, poly_sub(poly_powmod(x, pk, f, p), x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

PolyP smallest_irreducible(uint32_t p, int e) {
    if (e < 1) throw FieldError("extension degree must be positive");
    uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (uint64_t c = 0; c < count; ++c) {
        PolyP f(e + 1, 0);
        uint64_t v = c;
        for (int i = 0; i < e; ++i) {
            f[i] = static_cast<uint32_t>(v % p);
            v /= p;
        }
        f[e] = 1;
        if (e > 1 && f[0] == 0) continue;
        if (is_irreducible_mod_p(f, p)) return f;
    }
    throw FieldError("no irreducible polynomial found");
}

struct FiniteField::Impl {
    uint32_t p = 0;
    int e = 0;
    uint64_t q = 0;
    PolyP modulus;
    std::vector<uint32_t> exp, log;
    std::vector<uint64_t> pw;

    PolyP decode(uint32_t a) const {
        PolyP r(e, 0);
        for (int i = 0; i < e; ++i) {
            r[i] = a % p;
            a /= p;
        }
        trim(r);
        return r;
    }
    uint32_t encode(const PolyP& a) const {
        uint64_t v = 0;
        for (size_t i = a.size(); i-- > 0;) v = v * p + a[i];
        return static_cast<uint32_t>(v);
    }
    uint32_t mul_slow(uint32_t a, uint32_t b) const {
        if (e == 1) return static_cast<uint32_t>((uint64_t)a * b % p);
        return encode(poly_mulmod(decode(a), decode(b), modulus, p));
    }
};

namespace {

constexpr uint64_t kTableLimit = 1ull << 21;
constexpr uint64_t kSizeLimit = 1ull << 30;

std::shared_ptr<const FiniteField::Impl> build_impl(uint32_t p, int e, const PolyP& modulus) {
    auto impl = std::make_shared<FiniteField::Impl>();
    impl->p = p;
    impl->e = e;
    impl->modulus = modulus;
    uint64_t q = 1;
    for (int i = 0; i < e; ++i) {
        impl->pw.push_back(q);
        q *= p;
        if (q > kSizeLimit) throw FieldError("field too large");
    }
    impl->q = q;
    if (e > 1 && q <= kTableLimit) {
        auto fac = prime_factors(q - 1);
        uint32_t g = 0;
        for (uint32_t cand = 2; cand < q; ++cand) {
            bool ok = true;
            for (uint64_t r : fac) {
                uint32_t acc = 1, b = cand;
                uint64_t k = (q - 1) / r;
                while (k) {
                    if (k & 1) acc = impl->mul_slow(acc, b);
                    b = impl->mul_slow(b, b);
                    k >>= 1;
                }
                if (acc == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                g = cand;
                break;
            }
        }
        if (g == 0) throw FieldError("no primitive element");
        impl->exp.assign(2 * (q - 1), 0);
        impl->log.assign(q, 0);
        uint32_t x = 1;
        for (uint64_t i = 0; i < q - 1; ++i) {
            impl->exp[i] = x;
            impl->log[x] = static_cast<uint32_t>(i);
            x = impl->mul_slow(x, g);
        }
        for (uint64_t i = q - 1; i < 2 * (q - 1); ++i) impl->exp[i] = impl->exp[i - (q - 1)];
    }
    return impl;
}

std::mutex g_registry_mutex;
std::map<std::pair<uint32_t, PolyP>, std::shared_ptr<const FiniteField::Impl>> g_registry;

std::shared_ptr<const FiniteField::Impl> lookup(uint32_t p, int e, const PolyP* modulus) {
    if (p >= (1u << 31) || !is_prime_u64(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw FieldError("extension degree must be positive");
    PolyP mod;
    if (modulus) {
        mod = *modulus;
        trim(mod);
        if (static_cast<int>(mod.size()) != e + 1) throw FieldError("modulus has wrong degree");
        for (auto& c : mod) c %= p;
        if (mod.back() != 1) throw FieldError("modulus must be monic");
        if (!is_irreducible_mod_p(mod, p)) throw FieldError("modulus is not irreducible");
    }
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    if (!modulus) {
        if (e == 1)
            mod = {0, 1};
        else
            mod = smallest_irreducible(p, e);
    }
    if (e == 1) mod = {0, 1};
    auto key = std::make_pair(p, mod);
    auto it = g_registry.find(key);
    if (it != g_registry.end()) return it->second;
    auto impl = build_impl(p, e, mod);
    g_registry.emplace(key, impl);
    return impl;
}

}  // namespace

FiniteField::FiniteField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {
    p_ = impl_->p;
    e_ = impl_->e;
    q_ = impl_->q;
    if (!impl_->exp.empty()) {
        exp_ = impl_->exp.data();
        log_ = impl_->log.data();
    }
}

FiniteField FiniteField::prime(uint32_t p) { return FiniteField(lookup(p, 1, nullptr)); }
FiniteField FiniteField::extension(uint32_t p, int e) { return FiniteField(lookup(p, e, nullptr)); }
FiniteField FiniteField::extension(uint32_t p, int e, const PolyP& modulus) {
    return FiniteField(lookup(p, e, &modulus));
}

const PolyP& FiniteField::modulus() const { return impl_->modulus; }

FiniteField::Elem FiniteField::add_digits(Elem a, Elem b) const {
    uint64_t r = 0, w = 1;
    while (a || b) {
        uint32_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * w;
        w *= p_;
        a /= p_;
        b /= p_;
    }
    return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::neg_digits(Elem a) const {
    uint64_t r = 0, w = 1;
    while (a) {
        uint32_t d = a % p_;
        r += (d ? p_ - d : 0) * w;
        w *= p_;
        a /= p_;
    }
    return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::mul_poly(Elem a, Elem b) const { return impl_->mul_slow(a, b); }

FiniteField::Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw FieldError("division by zero");
    if (e_ == 1) return inv_mod(a, p_);
    if (exp_) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
}

FiniteField::Elem FiniteField::pow(Elem a, uint64_t k) const {
    Elem r = 1;
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

FiniteField::Elem FiniteField::from_int(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

std::string FiniteField::to_string(Elem a) const {
    if (e_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    std::string out;
    for (int i = 0; i < e_; ++i) {
        uint32_t d = a % p_;
        a /= p_;
        if (d == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0)
            out += std::to_string(d);
        else {
            if (d != 1) out += std::to_string(d) + "*";
            out += "t";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

FiniteField::Elem FiniteField::parse(const std::string& s0) const {
    std::string s;
    for (char c : s0)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw FieldError("empty scalar");
    std::vector<int64_t> coef(e_, 0);
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty()) throw FieldError("malformed scalar '" + s0 + "'");
        int64_t c = 1;
        int deg = 0;
        auto tpos = term.find('t');
        try {
            if (tpos == std::string::npos) {
                c = std::stoll(term) % static_cast<int64_t>(p_);
            } else {
                std::string cs = term.substr(0, tpos);
                if (!cs.empty()) {
                    if (cs.back() != '*') throw FieldError("malformed scalar '" + s0 + "'");
                    cs.pop_back();
                    c = std::stoll(cs) % static_cast<int64_t>(p_);
                }
                std::string ds = term.substr(tpos + 1);
                deg = 1;
                if (!ds.empty()) {
                    if (ds[0] != '^') throw FieldError("malformed scalar '" + s0 + "'");
                    deg = std::stoi(ds.substr(1));
                }
            }
        } catch (const std::logic_error&) {
            throw FieldError("malformed scalar '" + s0 + "'");
        }
        if (deg >= e_ || deg < 0) throw FieldError("degree too large in '" + s0 + "'");
        coef[deg] += sign * c;
        i = j;
    }
    uint64_t v = 0;
    for (int d = e_ - 1; d >= 0; --d) {
        int64_t c = coef[d] % static_cast<int64_t>(p_);
        if (c < 0) c += p_;
        v = v * p_ + static_cast<uint64_t>(c);
    }
    return static_cast<Elem>(v);
}

std::string FiniteField::describe() const {
    if (e_ == 1) return "GF(" + std::to_string(p_) + ")";
    return "GF(" + std::to_string(p_) + "^" + std::to_string(e_) + ")";
}

FieldEmbedding::FieldEmbedding(const FiniteField& small, const FiniteField& big) : small_(small), big_(big) {
    if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0)
        throw FieldError("incompatible fields for embedding");
    identity_ = small == big;
    prime_ = small.degree() == 1;
    if (identity_ || prime_) return;
    const PolyP& f = small.modulus();
    uint32_t root = 0;
    bool found = false;
    for (uint64_t b = 0; b < big.size() && !found; ++b) {
        uint32_t acc = 0;
        for (size_t i = f.size(); i-- > 0;) acc = big.add(big.mul(acc, static_cast<uint32_t>(b)), f[i]);
        if (acc == 0) {
            root = static_cast<uint32_t>(b);
            found = true;
        }
    }
    if (!found) throw FieldError("modulus has no root in extension");
    up_.resize(small.size());
    down_.assign(big.size(), -1);
    for (uint64_t a = 0; a < small.size(); ++a) {
        uint32_t v = static_cast<uint32_t>(a), acc = 0, pw = 1;
        for (int i = 0; i < small.degree(); ++i) {
            acc = big.add(acc, big.mul(v % small.characteristic(), pw));
            v /= small.characteristic();
            pw = big.mul(pw, root);
        }
        up_[a] = acc;
        down_[acc] = static_cast<int64_t>(a);
    }
}

FiniteField::Elem FieldEmbedding::up(FiniteField::Elem a) const {
    if (identity_ || prime_) return a;
    return up_[a];
}

bool FieldEmbedding::down(FiniteField::Elem b, FiniteField::Elem& out) const {
    if (identity_) {
        out = b;
        return true;
    }
    if (prime_) {
        out = b;
        return b < big_.characteristic();
    }
    int64_t v = down_[b];
    if (v < 0) return false;
    out = static_cast<FiniteField::Elem>(v);
    return true;
}

FieldEmbedding extension_by(const FiniteField& f, int factor) {
    if (factor == 1) return FieldEmbedding(f, f);
    return FieldEmbedding(f, FiniteField::extension(f.characteristic(), f.degree() * factor));
}

ExtensionFor<FiniteField> extension_at_least(const FiniteField& f, uint64_t min_size) {
    int factor = 1;
    uint64_t q = f.size();
    while (q < min_size) {
        ++factor;
        q *= f.size();
        if (q > (1ull << 21)) break;
    }
    return ExtensionFor<FiniteField>{extension_by(f, factor)};
}

ExtensionFor<RationalField> extension_at_least(const RationalField& f, uint64_t) {
    return ExtensionFor<RationalField>{f};
}

std::string RationalField::to_string(const Elem& a) const {
    if (denominator(a) == 1) return numerator(a).str();
    return numerator(a).str() + "/" + denominator(a).str();
}

RationalField::Elem RationalField::parse(const std::string& s0) const {
    std::string s;
    for (char c : s0)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto slash = s.find('/');
    auto parse_int = [&](const std::string& t) {
        if (t.empty()) throw FieldError("malformed rational '" + s0 + "'");
        size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (k == t.size()) throw FieldError("malformed rational '" + s0 + "'");
        for (size_t i = k; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw FieldError("malformed rational '" + s0 + "'");
        return BigInt(t[0] == '+' ? t.substr(1) : t);
    };
    if (slash == std::string::npos) return Elem(parse_int(s));
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw FieldError("zero denominator in '" + s0 + "'");
    return Elem(num, den);
}

}  // namespace thn
