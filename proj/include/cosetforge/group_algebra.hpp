#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cosetforge/error.hpp"

namespace cosetforge {

/// Desk-scale cap on |F_q| and |Z/n|. Everything here is exhaustive-friendly
/// by design; this is not a cryptographic library.
inline constexpr std::uint64_t kSizeCap = std::uint64_t(1) << 20;

/// Full discrete-log tables are materialized below this size; above it,
/// baby-step/giant-step answers individual queries (identical results).
inline constexpr std::uint64_t kLogTableCap = std::uint64_t(1) << 16;

// ---------------------------------------------------------------------------
// Elementary number theory (trial division only; sizes are <= 2^20)
// ---------------------------------------------------------------------------

inline bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

/// Prime factorization as (prime, exponent) pairs, primes ascending.
inline std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t v) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            std::uint32_t e = 0;
            while (v % d == 0) { v /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (v > 1) out.emplace_back(v, 1);
    return out;
}

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

inline std::uint64_t mod_inv(std::uint64_t a, std::uint64_t mod) {
    // extended Euclid; requires gcd(a, mod) == 1
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(mod), new_r = static_cast<std::int64_t>(a % mod);
    while (new_r != 0) {
        const std::int64_t qq = r / new_r;
        t -= qq * new_t; std::swap(t, new_t);
        r -= qq * new_r; std::swap(r, new_r);
    }
    if (r != 1) fail(Errc::config, "mod_inv of non-unit");
    if (t < 0) t += static_cast<std::int64_t>(mod);
    return static_cast<std::uint64_t>(t);
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

/// Residue-class representative in F_p[t]/(modulus): coefficient i multiplies
/// t^i. Length always equals the field degree m, entries reduced mod p.
struct FieldElement {
    std::vector<std::uint32_t> coeffs;

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.coeffs == b.coeffs;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// FiniteField
// ---------------------------------------------------------------------------

/// F_{p^m} with a deterministically chosen irreducible modulus and generator,
/// so that serialized instances are reproducible across runs and platforms.
///
/// Canonical element order: element index = sum coeffs[i] * p^i, a fixed
/// bijection [0,q) <-> field elements shared by every module.
class FiniteField {
  public:
    FiniteField(std::uint64_t p, std::uint32_t m) : p_(p), m_(m) {
        if (!is_prime(p)) fail(Errc::config, "field characteristic " + std::to_string(p) + " is not prime");
        if (m < 1) fail(Errc::config, "field degree must be >= 1");
        q_ = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            if (q_ > kSizeCap / p) fail(Errc::cap_exceeded, "field size p^m exceeds cap 2^20");
            q_ *= p;
        }
        pow_p_.resize(m + 1);
        pow_p_[0] = 1;
        for (std::uint32_t i = 1; i <= m; ++i) pow_p_[i] = pow_p_[i - 1] * p;

        find_modulus();
        build_trace_basis();
        find_generator();
        if (q_ <= kLogTableCap) build_log_tables();
    }

    std::uint64_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus_poly() const { return modpoly_; }
    std::uint64_t generator_index() const { return gen_; }
    FieldElement generator() const { return element_at(gen_); }

    // -- canonical index codec ------------------------------------------------

    FieldElement element_at(std::uint64_t index) const {
        if (index >= q_) fail(Errc::config, "element index out of range");
        FieldElement e;
        e.coeffs.resize(m_);
        for (std::uint32_t i = 0; i < m_; ++i) {
            e.coeffs[i] = static_cast<std::uint32_t>(index % p_);
            index /= p_;
        }
        return e;
    }

    std::uint64_t index_of(const FieldElement& e) const {
        check(e);
        std::uint64_t idx = 0;
        for (std::uint32_t i = m_; i-- > 0;) idx = idx * p_ + e.coeffs[i];
        return idx;
    }

    // -- element arithmetic ---------------------------------------------------

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        check(a); check(b);
        FieldElement r = a;
        for (std::uint32_t i = 0; i < m_; ++i) {
            r.coeffs[i] += b.coeffs[i];
            if (r.coeffs[i] >= p_) r.coeffs[i] -= static_cast<std::uint32_t>(p_);
        }
        return r;
    }

    FieldElement sub(const FieldElement& a, const FieldElement& b) const {
        check(a); check(b);
        FieldElement r = a;
        for (std::uint32_t i = 0; i < m_; ++i) {
            r.coeffs[i] += static_cast<std::uint32_t>(p_) - b.coeffs[i];
            if (r.coeffs[i] >= p_) r.coeffs[i] -= static_cast<std::uint32_t>(p_);
        }
        return r;
    }

    FieldElement neg(const FieldElement& a) const {
        check(a);
        FieldElement r = a;
        for (std::uint32_t i = 0; i < m_; ++i)
            if (r.coeffs[i] != 0) r.coeffs[i] = static_cast<std::uint32_t>(p_) - r.coeffs[i];
        return r;
    }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        check(a); check(b);
        return element_at(mul_index(index_of(a), index_of(b)));
    }

    FieldElement pow(const FieldElement& a, std::uint64_t e) const {
        check(a);
        return element_at(pow_index(index_of(a), e));
    }

    FieldElement inv(const FieldElement& a) const {
        check(a);
        return element_at(inv_index(index_of(a)));
    }

    FieldElement zero() const { return element_at(0); }
    FieldElement one() const { return element_at(1); }

    /// Tr(x) = sum_{k<m} x^(p^k), an F_p value returned as an integer in [0,p).
    std::uint64_t trace(const FieldElement& a) const {
        check(a);
        return trace_index(index_of(a));
    }

    /// Exponent l in [0, q-1) with generator^l = x; x must be nonzero.
    std::uint64_t discrete_log(const FieldElement& a) const {
        check(a);
        return discrete_log_index(index_of(a));
    }

    // -- index-level arithmetic (hot paths: transforms, tables) ---------------

    std::uint64_t add_index(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t r = 0;
        for (std::uint32_t i = 0; i < m_; ++i) {
            std::uint64_t d = a % p_ + b % p_;
            if (d >= p_) d -= p_;
            r += d * pow_p_[i];
            a /= p_; b /= p_;
        }
        return r;
    }

    std::uint64_t negate_index(std::uint64_t a) const {
        std::uint64_t r = 0;
        for (std::uint32_t i = 0; i < m_; ++i) {
            const std::uint64_t d = a % p_;
            r += (d == 0 ? 0 : p_ - d) * pow_p_[i];
            a /= p_;
        }
        return r;
    }

    std::uint64_t mul_index(std::uint64_t a, std::uint64_t b) const {
        if (a == 0 || b == 0) return 0;
        if (!exp_table_.empty())
            return exp_table_[(static_cast<std::uint64_t>(log_table_[a]) + log_table_[b]) % (q_ - 1)];
        return mul_index_poly(a, b);
    }

    std::uint64_t pow_index(std::uint64_t a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul_index(r, a);
            a = mul_index(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint64_t inv_index(std::uint64_t a) const {
        if (a == 0) fail(Errc::config, "inverse of zero field element");
        if (q_ == 2) return 1;
        return pow_index(a, q_ - 2);
    }

    std::uint64_t trace_index(std::uint64_t a) const {
        // Tr is F_p-linear: Tr(x) = sum_i x_i * Tr(t^i).
        std::uint64_t t = 0;
        for (std::uint32_t i = 0; i < m_; ++i) {
            t += (a % p_) * tr_basis_[i];
            a /= p_;
        }
        return t % p_;
    }

    std::uint64_t discrete_log_index(std::uint64_t a) const {
        if (a == 0) fail(Errc::config, "discrete log of zero");
        if (!log_table_.empty()) return log_table_[a];
        return bsgs_log(a);
    }

    /// Canonical index of generator^l.
    std::uint64_t exp_index(std::uint64_t l) const {
        if (!exp_table_.empty()) return exp_table_[l % (q_ - 1)];
        return pow_index(gen_, l % (q_ - 1));
    }

    friend bool operator==(const FiniteField& a, const FiniteField& b) {
        return a.p_ == b.p_ && a.m_ == b.m_ && a.modpoly_ == b.modpoly_;
    }

    std::string label() const { return "F_" + std::to_string(q_); }

  private:
    void check(const FieldElement& e) const {
        if (e.coeffs.size() != m_) fail(Errc::domain_mismatch, "field element of wrong degree");
        for (const auto c : e.coeffs)
            if (c >= p_) fail(Errc::domain_mismatch, "field element coefficient not reduced");
    }

    // polynomial representation used only while bootstrapping tables
    std::uint64_t mul_index_poly(std::uint64_t a, std::uint64_t b) const {
        std::vector<std::uint64_t> av(m_), bv(m_), prod(2 * m_ - 1, 0);
        for (std::uint32_t i = 0; i < m_; ++i) { av[i] = a % p_; a /= p_; }
        for (std::uint32_t i = 0; i < m_; ++i) { bv[i] = b % p_; b /= p_; }
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (av[i] == 0) continue;
            for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] += av[i] * bv[j];
        }
        for (auto& c : prod) c %= p_;
        // reduce by the monic modulus: t^m = -sum_j modpoly[j] t^j
        for (std::uint32_t i = 2 * m_ - 1; i-- > m_;) {
            const std::uint64_t c = prod[i];
            if (c == 0) continue;
            prod[i] = 0;
            for (std::uint32_t j = 0; j < m_; ++j)
                prod[i - m_ + j] = (prod[i - m_ + j] + c * (p_ - modpoly_[j])) % p_;
        }
        std::uint64_t idx = 0;
        for (std::uint32_t i = m_; i-- > 0;) idx = idx * p_ + prod[i];
        return idx;
    }

    /// Divisibility trial against every monic polynomial of degree <= m/2;
    /// together with the implicit d=1 root check this decides irreducibility
    /// exhaustively at desk scale.
    bool is_irreducible(const std::vector<std::uint32_t>& f) const {
        const std::uint32_t deg = m_;
        if (deg == 1) return true;
        for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < d; ++i) count *= p_;
            for (std::uint64_t k = 0; k < count; ++k) {
                // divisor candidate: t^d + digits(k)
                std::vector<std::uint32_t> div(d + 1);
                std::uint64_t kk = k;
                for (std::uint32_t i = 0; i < d; ++i) { div[i] = static_cast<std::uint32_t>(kk % p_); kk /= p_; }
                div[d] = 1;
                if (poly_divides(div, f)) return false;
            }
        }
        return true;
    }

    bool poly_divides(const std::vector<std::uint32_t>& div, const std::vector<std::uint32_t>& f) const {
        std::vector<std::uint64_t> rem(f.begin(), f.end());
        const std::size_t dd = div.size() - 1;
        for (std::size_t i = rem.size(); i-- > dd;) {
            const std::uint64_t c = rem[i] % p_;
            if (c == 0) continue;
            rem[i] = 0;
            for (std::size_t j = 0; j < dd; ++j)
                rem[i - dd + j] = (rem[i - dd + j] + c * (p_ - div[j])) % p_;
        }
        for (std::size_t i = 0; i < dd; ++i)
            if (rem[i] % p_ != 0) return false;
        return true;
    }

    /// First monic irreducible of degree m in ascending lexicographic
    /// coefficient order (constant coefficient least significant); for m=1
    /// this yields the polynomial t.
    void find_modulus() {
        for (std::uint64_t k = 0; k < q_; ++k) {
            std::vector<std::uint32_t> f(m_ + 1);
            std::uint64_t kk = k;
            for (std::uint32_t i = 0; i < m_; ++i) { f[i] = static_cast<std::uint32_t>(kk % p_); kk /= p_; }
            f[m_] = 1;
            if (is_irreducible(f)) { modpoly_ = std::move(f); return; }
        }
        fail(Errc::verification, "no irreducible polynomial found"); // unreachable
    }

    void build_trace_basis() {
        tr_basis_.resize(m_);
        for (std::uint32_t i = 0; i < m_; ++i) {
            // Tr(t^i) = sum_{k<m} (t^i)^(p^k)
            std::uint64_t ti = 1;
            for (std::uint32_t s = 0; s < i; ++s) ti = mul_index_poly(ti, p_); // t has index p
            std::uint64_t acc = 0; // running sum as an index via digitwise add
            std::uint64_t frob = ti;
            for (std::uint32_t k = 0; k < m_; ++k) {
                acc = add_index(acc, frob);
                std::uint64_t next = frob;
                std::uint64_t e = p_;
                std::uint64_t r = 1;
                while (e) { // frob^p by square-multiply with poly mul
                    if (e & 1) r = mul_index_poly(r, next);
                    next = mul_index_poly(next, next);
                    e >>= 1;
                }
                frob = r;
            }
            // the trace lands in F_p: index equals its constant coefficient
            tr_basis_[i] = static_cast<std::uint32_t>(acc % p_);
        }
    }

    /// First element of full multiplicative order in canonical index order.
    void find_generator() {
        const auto factors = factorize(q_ - 1);
        for (std::uint64_t c = 1; c < q_; ++c) {
            bool ok = true;
            for (const auto& [r, e] : factors) {
                (void)e;
                std::uint64_t x = c, exp = (q_ - 1) / r, acc = 1;
                while (exp) {
                    if (exp & 1) acc = mul_index_poly(acc, x);
                    x = mul_index_poly(x, x);
                    exp >>= 1;
                }
                if (acc == 1) { ok = false; break; }
            }
            if (ok) { gen_ = c; return; }
        }
        fail(Errc::verification, "no multiplicative generator found"); // unreachable
    }

    void build_log_tables() {
        exp_table_.resize(q_ - 1);
        log_table_.assign(q_, 0);
        std::uint64_t cur = 1;
        for (std::uint64_t l = 0; l + 1 < q_; ++l) {
            exp_table_[l] = static_cast<std::uint32_t>(cur);
            log_table_[cur] = static_cast<std::uint32_t>(l);
            cur = mul_index_poly(cur, gen_);
        }
    }

    std::uint64_t bsgs_log(std::uint64_t x) const {
        const std::uint64_t order = q_ - 1;
        std::uint64_t step = 1;
        while (step * step < order) ++step;
        std::unordered_map<std::uint64_t, std::uint64_t> baby;
        baby.reserve(step * 2);
        std::uint64_t cur = 1;
        for (std::uint64_t j = 0; j < step; ++j) {
            baby.emplace(cur, j);
            cur = mul_index_poly(cur, gen_);
        }
        const std::uint64_t giant = inv_index_nolog(pow_index_poly(gen_, step));
        cur = x;
        for (std::uint64_t i = 0; i * step <= order; ++i) {
            const auto it = baby.find(cur);
            if (it != baby.end()) return (i * step + it->second) % order;
            cur = mul_index_poly(cur, giant);
        }
        fail(Errc::verification, "discrete log not found"); // unreachable
    }

    std::uint64_t pow_index_poly(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul_index_poly(r, a);
            a = mul_index_poly(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint64_t inv_index_nolog(std::uint64_t a) const {
        if (q_ == 2) return 1;
        return pow_index_poly(a, q_ - 2);
    }

    std::uint64_t p_, q_;
    std::uint32_t m_;
    std::vector<std::uint32_t> modpoly_;
    std::vector<std::uint64_t> pow_p_;
    std::vector<std::uint32_t> tr_basis_;
    std::uint64_t gen_ = 1;
    std::vector<std::uint32_t> exp_table_, log_table_;
};

// ---------------------------------------------------------------------------
// ResidueRing
// ---------------------------------------------------------------------------

/// Z/n for odd n >= 3, with its prime-power factorization, per-factor unit
/// group generators and discrete-log tables, and CRT splitting data. Even n is
/// rejected: (Z/2^m)^* is not cyclic, so the character machinery below would
/// not apply.
class ResidueRing {
  public:
    struct Factor {
        std::uint64_t prime;
        std::uint32_t exponent;
        std::uint64_t q;          ///< prime^exponent
        std::uint64_t unit_order; ///< (prime-1) * prime^(exponent-1)
        std::uint64_t unit_generator;
        std::uint64_t crt_unit;   ///< (n/q)^{-1} mod q
        std::uint64_t idempotent; ///< crt_unit * (n/q) mod n
        std::vector<std::uint32_t> dlog; ///< dlog[x] base unit_generator; kNonUnit off units
    };

    static constexpr std::uint32_t kNonUnit = 0xFFFFFFFFu;

    explicit ResidueRing(std::uint64_t n) : n_(n) {
        if (n < 3) fail(Errc::config, "ring modulus must be >= 3");
        if (n % 2 == 0) fail(Errc::config, "even modulus " + std::to_string(n) + ": (Z/2^m)* is not cyclic");
        if (n > kSizeCap) fail(Errc::cap_exceeded, "ring modulus exceeds cap 2^20");
        for (const auto& [prime, exponent] : factorize(n)) {
            Factor f;
            f.prime = prime;
            f.exponent = exponent;
            f.q = 1;
            for (std::uint32_t i = 0; i < exponent; ++i) f.q *= prime;
            f.unit_order = (prime - 1) * (f.q / prime);
            f.unit_generator = find_unit_generator(f.q, prime, f.unit_order);
            f.crt_unit = mod_inv((n / f.q) % f.q, f.q);
            f.idempotent = (f.crt_unit * (n / f.q)) % n;
            f.dlog.assign(f.q, kNonUnit);
            std::uint64_t cur = 1;
            for (std::uint64_t l = 0; l < f.unit_order; ++l) {
                f.dlog[cur] = static_cast<std::uint32_t>(l);
                cur = cur * f.unit_generator % f.q;
            }
            factors_.push_back(std::move(f));
        }
    }

    std::uint64_t n() const { return n_; }
    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t factor_count() const { return factors_.size(); }

    /// phi_j(x) = x mod p_j^{m_j}, componentwise.
    std::vector<std::uint64_t> crt_split(std::uint64_t x) const {
        if (x >= n_) fail(Errc::config, "residue out of range");
        std::vector<std::uint64_t> parts(factors_.size());
        for (std::size_t r = 0; r < factors_.size(); ++r) parts[r] = x % factors_[r].q;
        return parts;
    }

    std::uint64_t crt_combine(const std::vector<std::uint64_t>& parts) const {
        if (parts.size() != factors_.size()) fail(Errc::config, "wrong number of CRT parts");
        std::uint64_t x = 0;
        for (std::size_t r = 0; r < factors_.size(); ++r) {
            if (parts[r] >= factors_[r].q) fail(Errc::config, "CRT part out of range");
            x = (x + parts[r] % n_ * factors_[r].idempotent) % n_;
        }
        return x;
    }

    bool is_unit(std::uint64_t x) const {
        for (const auto& f : factors_)
            if (x % f.prime == 0) return false;
        return true;
    }

    /// Discrete log of a unit residue in factor r, base that factor's generator.
    std::uint64_t factor_dlog(std::size_t r, std::uint64_t residue) const {
        const auto& f = factors_[r];
        const std::uint32_t l = f.dlog[residue % f.q];
        if (l == kNonUnit) fail(Errc::config, "discrete log of non-unit residue");
        return l;
    }

    friend bool operator==(const ResidueRing& a, const ResidueRing& b) { return a.n_ == b.n_; }

    std::string label() const { return "Z/" + std::to_string(n_); }

  private:
    /// First full-order unit in the scan 2, 3, ... (deterministic).
    static std::uint64_t find_unit_generator(std::uint64_t q, std::uint64_t prime, std::uint64_t order) {
        std::vector<std::uint64_t> prime_factors;
        for (const auto& [r, e] : factorize(order)) { (void)e; prime_factors.push_back(r); }
        for (std::uint64_t c = 2; c < q; ++c) {
            if (c % prime == 0) continue;
            bool ok = true;
            for (const auto r : prime_factors)
                if (mod_pow(c, order / r, q) == 1) { ok = false; break; }
            if (ok) return c;
        }
        fail(Errc::verification, "no unit generator found"); // unreachable
    }

    std::uint64_t n_;
    std::vector<Factor> factors_;
};

} // namespace cosetforge
