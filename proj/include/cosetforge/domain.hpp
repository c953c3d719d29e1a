#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <utility>

#include "cosetforge/group_algebra.hpp"

namespace cosetforge {

using Complex = std::complex<double>;

/// exp(2*pi*i * num/den), the root of unity every character value reduces to.
inline Complex unit_root(std::uint64_t num, std::uint64_t den) {
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(num % den) / static_cast<double>(den));
    return Complex(std::cos(angle), std::sin(angle));
}

/// The additive group a GroupFunction lives on: either the additive group of
/// F_{p^m} or Z/n (quotients Z/T are just rings of modulus T). Elements are
/// addressed by canonical index throughout; the dual group is identified with
/// the group itself via psi_y, so spectra share the same index space.
class Domain {
  public:
    Domain() = default;

    static Domain of(std::shared_ptr<const FiniteField> f) {
        Domain d;
        d.field_ = std::move(f);
        return d;
    }
    static Domain of(std::shared_ptr<const ResidueRing> r) {
        Domain d;
        d.ring_ = std::move(r);
        return d;
    }
    static Domain make_field(std::uint64_t p, std::uint32_t m) {
        return of(std::make_shared<const FiniteField>(p, m));
    }
    static Domain make_ring(std::uint64_t n) {
        return of(std::make_shared<const ResidueRing>(n));
    }

    bool is_field() const { return field_ != nullptr; }
    bool is_ring() const { return ring_ != nullptr; }
    bool valid() const { return is_field() || is_ring(); }

    const FiniteField& field() const {
        if (!field_) fail(Errc::domain_mismatch, "domain is not a finite field");
        return *field_;
    }
    const ResidueRing& ring() const {
        if (!ring_) fail(Errc::domain_mismatch, "domain is not a residue ring");
        return *ring_;
    }
    std::shared_ptr<const FiniteField> field_ptr() const { return field_; }
    std::shared_ptr<const ResidueRing> ring_ptr() const { return ring_; }

    std::uint64_t size() const { return is_field() ? field_->q() : ring().n(); }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        return is_field() ? field_->add_index(a, b) : (a + b) % ring().n();
    }

    std::uint64_t negate(std::uint64_t a) const {
        if (is_field()) return field_->negate_index(a);
        const std::uint64_t n = ring().n();
        return a == 0 ? 0 : n - a;
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, negate(b)); }

    /// psi_y(x) as an exact phase fraction of a full turn:
    /// field: Tr(y*x)/p, ring: y*x/n.
    std::pair<std::uint64_t, std::uint64_t> add_char_phase(std::uint64_t y, std::uint64_t x) const {
        if (is_field()) return {field_->trace_index(field_->mul_index(y, x)), field_->p()};
        const std::uint64_t n = ring().n();
        return {(y % n) * (x % n) % n, n};
    }

    Complex add_char(std::uint64_t y, std::uint64_t x) const {
        const auto [num, den] = add_char_phase(y, x);
        return unit_root(num, den);
    }

    friend bool operator==(const Domain& a, const Domain& b) {
        if (a.is_field() != b.is_field()) return false;
        if (a.is_field()) return *a.field_ == *b.field_;
        if (a.is_ring() && b.is_ring()) return *a.ring_ == *b.ring_;
        return !a.valid() && !b.valid();
    }
    friend bool operator!=(const Domain& a, const Domain& b) { return !(a == b); }

    std::string label() const {
        if (is_field()) return field_->label();
        if (is_ring()) return ring_->label();
        return "<empty>";
    }

  private:
    std::shared_ptr<const FiniteField> field_;
    std::shared_ptr<const ResidueRing> ring_;
};

inline void require_same_domain(const Domain& a, const Domain& b, const char* what) {
    if (a != b) fail(Errc::domain_mismatch, std::string(what) + ": domains differ");
}

} // namespace cosetforge
