#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "cosetforge/domain.hpp"

namespace cosetforge {

// ---------------------------------------------------------------------------
// Additive characters
// ---------------------------------------------------------------------------

/// psi_a: field psi_a(c) = exp(2*pi*i Tr(a*c)/p); ring psi_k(x) = exp(2*pi*i kx/n).
/// All are multiplicative translates of psi_1: psi_a(c) = psi_1(a*c).
struct AddCharacter {
    Domain domain;
    std::uint64_t index = 0;

    friend bool operator==(const AddCharacter& a, const AddCharacter& b) {
        return a.domain == b.domain && a.index == b.index;
    }
};

inline Complex add_char_eval(const AddCharacter& psi, std::uint64_t x) {
    if (x >= psi.domain.size()) fail(Errc::domain_mismatch, "additive character argument out of range");
    return psi.domain.add_char(psi.index, x);
}

// ---------------------------------------------------------------------------
// Multiplicative characters
// ---------------------------------------------------------------------------

/// chi_k on F_q^* (index k in [0, q-1)) or the per-factor product character
/// chi_{l_1,...,l_k} on (Z/n)^*, extended by 0 off the unit group. Characters
/// are identified by their indices, never by closures, so they compare and
/// serialize exactly. `period` is the additive period (rings only), computed
/// from the gcd formula below with the k=0 extension returning p.
struct MultCharacter {
    Domain domain;
    std::vector<std::uint64_t> indices;
    std::optional<std::uint64_t> period;

    bool is_trivial() const {
        for (const auto l : indices)
            if (l != 0) return false;
        return true;
    }

    /// True when every prime-power component is nontrivial; this is the
    /// precondition for the closed-form spectrum and the shift algorithm
    /// (a trivial component makes |g^| non-constant on its support).
    bool admissible() const {
        for (const auto l : indices)
            if (l == 0) return false;
        return true;
    }

    friend bool operator==(const MultCharacter& a, const MultCharacter& b) {
        return a.domain == b.domain && a.indices == b.indices;
    }
    friend bool operator!=(const MultCharacter& a, const MultCharacter& b) { return !(a == b); }
};

/// Additive period p^j of chi_k on Z/p^m, where gcd(p^m, k) = p^(m-j); the
/// exhaustive test oracle confirms this T is minimal. k = 0 falls outside
/// that formula's range: the unit-indicator function has minimal period p,
/// so that is what we return.
inline std::uint64_t char_period_prime_power(std::uint64_t p, std::uint32_t m, std::uint64_t k) {
    std::uint64_t q = 1, order;
    for (std::uint32_t i = 0; i < m; ++i) q *= p;
    order = (p - 1) * (q / p);
    if (k >= order) fail(Errc::config, "character index out of range");
    if (k == 0) return p;
    std::uint32_t valuation = 0;
    while (k % p == 0) { k /= p; ++valuation; }
    std::uint64_t t = 1;
    for (std::uint32_t i = 0; i < m - valuation; ++i) t *= p; // p^j with j = m - v_p(k)
    return t;
}

/// Product of the per-factor periods; the factor periods are powers of
/// distinct primes, so the product is also the lcm.
inline std::uint64_t char_period_ring(const ResidueRing& ring, const std::vector<std::uint64_t>& indices) {
    if (indices.size() != ring.factor_count()) fail(Errc::config, "index tuple arity mismatch");
    std::uint64_t t = 1;
    for (std::size_t r = 0; r < indices.size(); ++r)
        t *= char_period_prime_power(ring.factors()[r].prime, ring.factors()[r].exponent, indices[r]);
    return t;
}

inline MultCharacter mult_character_field(Domain domain, std::uint64_t k) {
    const auto& f = domain.field();
    if (k >= f.q() - 1 && f.q() > 2) fail(Errc::config, "field character index out of range");
    if (f.q() == 2 && k != 0) fail(Errc::config, "field character index out of range");
    MultCharacter chi;
    chi.domain = std::move(domain);
    chi.indices = {k};
    return chi;
}

inline MultCharacter mult_character_ring(Domain domain, std::vector<std::uint64_t> indices) {
    const auto& ring = domain.ring();
    if (indices.size() != ring.factor_count()) fail(Errc::config, "index tuple arity mismatch");
    for (std::size_t r = 0; r < indices.size(); ++r)
        if (indices[r] >= ring.factors()[r].unit_order)
            fail(Errc::config, "ring character component index out of range");
    MultCharacter chi;
    chi.domain = std::move(domain);
    chi.period = char_period_ring(ring, indices);
    chi.indices = std::move(indices);
    return chi;
}

/// Number of multiplicative characters: q-1 for fields, phi(n) for rings.
inline std::uint64_t mult_char_count(const Domain& domain) {
    if (domain.is_field()) return domain.field().q() - 1;
    std::uint64_t c = 1;
    for (const auto& f : domain.ring().factors()) c *= f.unit_order;
    return c;
}

/// Linear index codec for CLI and reports: fields use k directly; rings pack
/// the tuple mixed-radix with l_1 varying fastest.
inline MultCharacter mult_character(const Domain& domain, std::uint64_t linear_index) {
    if (linear_index >= mult_char_count(domain)) fail(Errc::config, "character index out of range");
    if (domain.is_field()) return mult_character_field(domain, linear_index);
    std::vector<std::uint64_t> indices(domain.ring().factor_count());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const std::uint64_t ord = domain.ring().factors()[r].unit_order;
        indices[r] = linear_index % ord;
        linear_index /= ord;
    }
    return mult_character_ring(domain, std::move(indices));
}

inline std::uint64_t mult_char_linear_index(const MultCharacter& chi) {
    if (chi.domain.is_field()) return chi.indices[0];
    std::uint64_t idx = 0;
    const auto& factors = chi.domain.ring().factors();
    for (std::size_t r = factors.size(); r-- > 0;)
        idx = idx * factors[r].unit_order + chi.indices[r];
    return idx;
}

inline std::vector<MultCharacter> enumerate_mult_characters(const Domain& domain) {
    std::vector<MultCharacter> out;
    const std::uint64_t count = mult_char_count(domain);
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(mult_character(domain, i));
    return out;
}

/// chi(x) as an exact phase fraction; nullopt encodes the value 0 (x off the
/// unit group). Field evaluation goes through discrete_log, ring evaluation
/// through the CRT product of per-factor logs.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>>
mult_char_phase(const MultCharacter& chi, std::uint64_t x) {
    if (x >= chi.domain.size()) fail(Errc::domain_mismatch, "character argument out of range");
    if (chi.domain.is_field()) {
        if (x == 0) return std::nullopt;
        const auto& f = chi.domain.field();
        if (f.q() == 2) return std::make_pair(std::uint64_t{0}, std::uint64_t{1});
        const std::uint64_t order = f.q() - 1;
        return std::make_pair(chi.indices[0] * f.discrete_log_index(x) % order, order);
    }
    const auto& ring = chi.domain.ring();
    std::uint64_t den = 1;
    for (const auto& f : ring.factors()) den = std::lcm(den, f.unit_order);
    std::uint64_t num = 0;
    for (std::size_t r = 0; r < ring.factor_count(); ++r) {
        const auto& f = ring.factors()[r];
        const std::uint64_t xr = x % f.q;
        if (xr % f.prime == 0) return std::nullopt;
        const std::uint64_t part = chi.indices[r] % f.unit_order * ring.factor_dlog(r, xr) % f.unit_order;
        num = (num + part * (den / f.unit_order)) % den;
    }
    return std::make_pair(num, den);
}

inline Complex mult_char_eval(const MultCharacter& chi, std::uint64_t x) {
    const auto phase = mult_char_phase(chi, x);
    if (!phase) return Complex(0.0, 0.0);
    return unit_root(phase->first, phase->second);
}

} // namespace cosetforge
