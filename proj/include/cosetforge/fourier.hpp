#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cosetforge/characters.hpp"
#include "cosetforge/domain.hpp"

namespace cosetforge {

/// Dense complex-valued function on a finite abelian group, stored in
/// canonical element order. `source` records the character a function was
/// rendered from, when any; the shift engine uses it to decide whether the
/// closed-form spectrum is available (condition 3 of the sufficient
/// conditions).
struct GroupFunction {
    Domain domain;
    std::vector<Complex> values;
    std::optional<MultCharacter> source;
};

/// Same shape as GroupFunction, indexed by the dual: entry y is the value at
/// psi_y. The dual group is identified with the group via the canonical
/// additive characters, so both sides share one index space.
struct SpectrumFunction {
    Domain domain;
    std::vector<Complex> values;
};

inline GroupFunction make_function(Domain domain, std::vector<Complex> values) {
    if (values.size() != domain.size()) fail(Errc::config, "value vector length != |G|");
    return GroupFunction{std::move(domain), std::move(values), std::nullopt};
}

inline GroupFunction delta_function(const Domain& domain, std::uint64_t at) {
    GroupFunction g;
    g.domain = domain;
    g.values.assign(domain.size(), Complex(0, 0));
    g.values.at(at) = Complex(1, 0);
    return g;
}

/// f(x) = g(x + s).
inline GroupFunction translate(const GroupFunction& g, std::uint64_t s) {
    GroupFunction f;
    f.domain = g.domain;
    f.values.resize(g.values.size());
    for (std::uint64_t x = 0; x < g.values.size(); ++x)
        f.values[x] = g.values[g.domain.add(x, s)];
    return f;
}

/// chi rendered to a dense function (chi(0)=0 / zero off units), tagged with
/// its source so downstream code can use the closed-form spectrum.
inline GroupFunction render_character(const MultCharacter& chi) {
    GroupFunction g;
    g.domain = chi.domain;
    const std::uint64_t n = chi.domain.size();
    g.values.assign(n, Complex(0, 0));
    if (chi.domain.is_field()) {
        const auto& f = chi.domain.field();
        const std::uint64_t order = f.q() - 1;
        const std::uint64_t k = chi.indices[0];
        // walk x = g^l instead of running q discrete logs
        for (std::uint64_t l = 0; l < order; ++l)
            g.values[f.exp_index(l)] = unit_root(k * l % order, order);
    } else {
        for (std::uint64_t x = 0; x < n; ++x) g.values[x] = mult_char_eval(chi, x);
    }
    g.source = chi;
    return g;
}

namespace detail {

/// Cooley-Tukey DFT of length n = p^e with radix p:
/// out[k] = sum_x in[x*stride] * roots[(k*x mod n) * root_step],
/// where roots holds the n_top-th roots of unity and root_step = n_top/n.
inline void ct_dft(const Complex* in, std::size_t stride, Complex* out, std::size_t n,
                   std::size_t p, const Complex* roots, std::size_t root_step) {
    if (n == p) {
        for (std::size_t k = 0; k < n; ++k) {
            Complex acc(0, 0);
            std::size_t idx = 0;
            for (std::size_t x = 0; x < n; ++x) {
                acc += in[x * stride] * roots[idx * root_step];
                idx += k;
                if (idx >= n) idx -= n;
            }
            out[k] = acc;
        }
        return;
    }
    const std::size_t m = n / p;
    std::vector<Complex> sub(n);
    for (std::size_t r = 0; r < p; ++r)
        ct_dft(in + r * stride, stride * p, sub.data() + r * m, m, p, roots, root_step * p);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t km = k % m;
        Complex acc(0, 0);
        for (std::size_t r = 0; r < p; ++r)
            acc += sub[r * m + km] * roots[(k * r % n) * root_step];
        out[k] = acc;
    }
}

/// Inverse of a nonsingular matrix over F_p by Gauss-Jordan elimination.
inline std::vector<std::vector<std::uint64_t>>
invert_matrix_mod_p(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
    const std::size_t m = a.size();
    std::vector<std::vector<std::uint64_t>> inv(m, std::vector<std::uint64_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        while (pivot < m && a[pivot][col] % p == 0) ++pivot;
        if (pivot == m) fail(Errc::verification, "singular trace form matrix");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const std::uint64_t scale = mod_inv(a[col][col] % p, p);
        for (std::size_t j = 0; j < m; ++j) {
            a[col][j] = a[col][j] * scale % p;
            inv[col][j] = inv[col][j] * scale % p;
        }
        for (std::size_t row = 0; row < m; ++row) {
            if (row == col) continue;
            const std::uint64_t c = a[row][col] % p;
            if (c == 0) continue;
            for (std::size_t j = 0; j < m; ++j) {
                a[row][j] = (a[row][j] + (p - c) * a[col][j]) % p;
                inv[row][j] = (inv[row][j] + (p - c) * inv[col][j]) % p;
            }
        }
    }
    return inv;
}

} // namespace detail

/// Transform machinery for one domain. Builds the group-structure
/// decomposition once (CRT blocks for Z/n, the m-fold F_p product for field
/// additive groups) and reuses it across calls. The naive path is the test
/// oracle: the literal double sum over the group, independent of the fast
/// path's decomposition.
class FourierPlan {
  public:
    explicit FourierPlan(Domain domain) : domain_(std::move(domain)), n_(domain_.size()) {
        if (domain_.is_ring()) {
            const auto& ring = domain_.ring();
            std::size_t stride = 1;
            for (const auto& f : ring.factors()) {
                Axis ax;
                ax.len = f.q;
                ax.radix = f.prime;
                ax.stride = stride;
                ax.roots.resize(f.q);
                for (std::uint64_t j = 0; j < f.q; ++j) ax.roots[j] = unit_root(j, f.q);
                axes_.push_back(std::move(ax));
                stride *= f.q;
            }
            perm_in_.resize(n_);
            perm_out_.resize(n_);
            for (std::uint64_t x = 0; x < n_; ++x) {
                std::size_t flat_in = 0, flat_out = 0;
                for (std::size_t r = 0; r < axes_.size(); ++r) {
                    const auto& f = ring.factors()[r];
                    flat_in += (x % f.q) * axes_[r].stride;
                    flat_out += (f.crt_unit * (x % f.q) % f.q) * axes_[r].stride;
                }
                perm_in_[x] = flat_in;
                perm_out_[x] = flat_out;
            }
        } else {
            const auto& fld = domain_.field();
            const std::uint64_t p = fld.p();
            const std::uint32_t m = fld.m();
            Axis ax;
            ax.len = p;
            ax.radix = p;
            ax.stride = 1; // strides are p^a; filled per-axis below
            ax.roots.resize(p);
            for (std::uint64_t j = 0; j < p; ++j) ax.roots[j] = unit_root(j, p);
            std::size_t stride = 1;
            for (std::uint32_t a = 0; a < m; ++a) {
                Axis axis = ax;
                axis.stride = stride;
                axes_.push_back(std::move(axis));
                stride *= p;
            }
            // psi_y(x) = w_p^(y^T M x) with M[i][j] = Tr(t^(i+j)); substituting
            // z = M x turns the transform into the plain one over (Z/p)^m.
            std::vector<std::vector<std::uint64_t>> gram(m, std::vector<std::uint64_t>(m));
            std::vector<std::uint64_t> basis(m);
            for (std::uint32_t i = 0; i < m; ++i) {
                std::uint64_t idx = 1;
                for (std::uint32_t s = 0; s < i; ++s) idx = fld.mul_index(idx, p); // t^i
                basis[i] = idx;
            }
            for (std::uint32_t i = 0; i < m; ++i)
                for (std::uint32_t j = 0; j < m; ++j)
                    gram[i][j] = fld.trace_index(fld.mul_index(basis[i], basis[j]));
            const auto minv = detail::invert_matrix_mod_p(gram, p);
            perm_in_.resize(n_);
            for (std::uint64_t z = 0; z < n_; ++z) {
                std::uint64_t zz = z, x = 0, pw = 1;
                std::vector<std::uint64_t> zd(m);
                for (std::uint32_t i = 0; i < m; ++i) { zd[i] = zz % p; zz /= p; }
                for (std::uint32_t i = 0; i < m; ++i) {
                    std::uint64_t d = 0;
                    for (std::uint32_t j = 0; j < m; ++j) d += minv[i][j] * zd[j];
                    x += d % p * pw;
                    pw *= p;
                }
                perm_in_[z] = x; // h(z) = f(M^{-1} z)
            }
        }
        if (n_ <= kLogTableCap) build_naive_tables();
    }

    const Domain& domain() const { return domain_; }

    /// The literal O(|G|^2) sum f^(psi_y) = sum_x f(x) psi_y(x); no conjugate,
    /// no normalization (the convention every module shares).
    SpectrumFunction dft_naive(const GroupFunction& f) const {
        require_same_domain(f.domain, domain_, "dft_naive");
        SpectrumFunction out{domain_, std::vector<Complex>(n_)};
        if (domain_.is_ring() && !ring_roots_.empty()) {
            for (std::uint64_t y = 0; y < n_; ++y) {
                Complex acc(0, 0);
                std::size_t idx = 0;
                for (std::uint64_t x = 0; x < n_; ++x) {
                    acc += f.values[x] * ring_roots_[idx];
                    idx += y;
                    if (idx >= n_) idx -= n_;
                }
                out.values[y] = acc;
            }
        } else if (domain_.is_field() && !field_exp_.empty()) {
            const std::uint64_t order = n_ - 1;
            Complex total(0, 0);
            for (std::uint64_t x = 0; x < n_; ++x) total += f.values[x];
            out.values[0] = total;
            for (std::uint64_t y = 1; y < n_; ++y) {
                const std::uint64_t ly = domain_.field().discrete_log_index(y);
                Complex acc = f.values[0]; // psi_y(0) = 1
                std::size_t idx = ly;
                for (std::uint64_t j = 0; j < order; ++j) {
                    acc += f.values[field_exp_[j]] * char_roots_[field_trlog_[idx]];
                    ++idx;
                    if (idx == order) idx = 0;
                }
                out.values[y] = acc;
            }
        } else {
            for (std::uint64_t y = 0; y < n_; ++y) {
                Complex acc(0, 0);
                for (std::uint64_t x = 0; x < n_; ++x) acc += f.values[x] * domain_.add_char(y, x);
                out.values[y] = acc;
            }
        }
        return out;
    }

    /// Same values as dft_naive (within 1e-9) via the tensor decomposition:
    /// Good-Thomas over the coprime prime-power blocks of Z/n, radix-p
    /// Cooley-Tukey inside each block; for fields, the trace-form change of
    /// variables followed by an m-axis radix-p transform.
    SpectrumFunction dft_fast(const GroupFunction& f) const {
        require_same_domain(f.domain, domain_, "dft_fast");
        std::vector<Complex> buf(n_);
        if (domain_.is_ring()) {
            for (std::uint64_t x = 0; x < n_; ++x) buf[perm_in_[x]] = f.values[x];
        } else {
            for (std::uint64_t z = 0; z < n_; ++z) buf[z] = f.values[perm_in_[z]];
        }
        transform_axes(buf);
        SpectrumFunction out{domain_, std::vector<Complex>(n_)};
        if (domain_.is_ring()) {
            for (std::uint64_t k = 0; k < n_; ++k) out.values[k] = buf[perm_out_[k]];
        } else {
            out.values = std::move(buf);
        }
        return out;
    }

    /// Inverse transform: carries the conjugate and the 1/|G| that the
    /// forward direction omits (so idft(dft(f)) = f, and the shift
    /// algorithm's final step measures -s rather than s).
    GroupFunction idft(const SpectrumFunction& spec) const {
        require_same_domain(spec.domain, domain_, "idft");
        GroupFunction tmp{domain_, spec.values, std::nullopt};
        for (auto& v : tmp.values) v = std::conj(v);
        SpectrumFunction fwd = dft_fast(tmp);
        GroupFunction out{domain_, std::move(fwd.values), std::nullopt};
        const double scale = 1.0 / static_cast<double>(n_);
        for (auto& v : out.values) v = std::conj(v) * scale;
        return out;
    }

  private:
    struct Axis {
        std::size_t len;
        std::size_t radix;
        std::size_t stride;
        std::vector<Complex> roots;
    };

    void transform_axes(std::vector<Complex>& buf) const {
        std::vector<Complex> line_in, line_out;
        for (const auto& ax : axes_) {
            line_in.resize(ax.len);
            line_out.resize(ax.len);
            const std::size_t block = ax.len * ax.stride;
            for (std::size_t outer = 0; outer < n_ / block; ++outer) {
                for (std::size_t inner = 0; inner < ax.stride; ++inner) {
                    const std::size_t base = outer * block + inner;
                    for (std::size_t t = 0; t < ax.len; ++t) line_in[t] = buf[base + t * ax.stride];
                    detail::ct_dft(line_in.data(), 1, line_out.data(), ax.len, ax.radix,
                                   ax.roots.data(), 1);
                    for (std::size_t t = 0; t < ax.len; ++t) buf[base + t * ax.stride] = line_out[t];
                }
            }
        }
    }

    void build_naive_tables() {
        if (domain_.is_ring()) {
            ring_roots_.resize(n_);
            for (std::uint64_t j = 0; j < n_; ++j) ring_roots_[j] = unit_root(j, n_);
        } else {
            const auto& fld = domain_.field();
            const std::uint64_t order = n_ - 1;
            field_exp_.resize(order);
            field_trlog_.resize(order);
            for (std::uint64_t j = 0; j < order; ++j) {
                field_exp_[j] = fld.exp_index(j);
                field_trlog_[j] = fld.trace_index(field_exp_[j]);
            }
            char_roots_.resize(fld.p());
            for (std::uint64_t j = 0; j < fld.p(); ++j) char_roots_[j] = unit_root(j, fld.p());
        }
    }

    Domain domain_;
    std::uint64_t n_;
    std::vector<Axis> axes_;
    std::vector<std::size_t> perm_in_, perm_out_;
    // naive-path tables (built when |G| <= 2^16)
    std::vector<Complex> ring_roots_;
    std::vector<std::uint64_t> field_exp_, field_trlog_;
    std::vector<Complex> char_roots_;
};

inline SpectrumFunction dft_naive(const GroupFunction& f) { return FourierPlan(f.domain).dft_naive(f); }
inline SpectrumFunction dft_fast(const GroupFunction& f) { return FourierPlan(f.domain).dft_fast(f); }
inline GroupFunction idft(const SpectrumFunction& spec) { return FourierPlan(spec.domain).idft(spec); }

/// (a * b)(x) = sum_y a(y) b(x - y), by the literal sum; the transform-side
/// identity dft(a*b) = dft(a).dft(b) is a tested property, not an assumption.
inline GroupFunction convolve(const GroupFunction& a, const GroupFunction& b) {
    require_same_domain(a.domain, b.domain, "convolve");
    const std::uint64_t n = a.domain.size();
    GroupFunction out{a.domain, std::vector<Complex>(n, Complex(0, 0)), std::nullopt};
    for (std::uint64_t x = 0; x < n; ++x) {
        Complex acc(0, 0);
        for (std::uint64_t y = 0; y < n; ++y) acc += a.values[y] * b.values[a.domain.sub(x, y)];
        out.values[x] = acc;
    }
    return out;
}

/// Spectral support threshold shared by deconvolve, the pseudoinverse and the
/// condition checker; entries at or below it count as exact zeros.
inline constexpr double kSupportTol = 1e-9;

/// delta_{-s} = F^{-1}(f^ / g^), dividing only where g^ is nonzero and writing
/// zero otherwise. Writing zero (rather than passing f^ through) is exactly
/// the pseudoinverse of the diagonal, which keeps this path and the
/// shift-engine path provably identical.
inline GroupFunction deconvolve(const GroupFunction& f, const GroupFunction& g) {
    require_same_domain(f.domain, g.domain, "deconvolve");
    FourierPlan plan(f.domain);
    SpectrumFunction fh = plan.dft_fast(f);
    const SpectrumFunction gh = plan.dft_fast(g);
    bool any = false;
    for (std::uint64_t y = 0; y < fh.values.size(); ++y) {
        if (std::abs(gh.values[y]) > kSupportTol) {
            fh.values[y] /= gh.values[y];
            any = true;
        } else {
            fh.values[y] = Complex(0, 0);
        }
    }
    if (!any) fail(Errc::config, "deconvolve: spectrum of g is identically zero");
    return plan.idft(fh);
}

// ---------------------------------------------------------------------------
// Closed-form spectra of multiplicative characters
// ---------------------------------------------------------------------------

/// The unit-magnitude phase pattern of chi^ at psi_y, up to one global
/// constant per character:
///   field: 0 at psi_0, conj(chi(a)) at psi_a (a != 0);
///   Z/p^m: with gcd(p^m, l) = p^(m-j), zero unless p^(m-j) | y and the
///          quotient u = y / p^(m-j) is a unit, else conj(chi_l(u));
///   Z/n:   tensor product of the factor patterns under the CRT dual map.
/// The anchoring constant is gauss_sum(), measured numerically, never assumed.
inline Complex closed_form_spectrum_phase(const MultCharacter& chi, std::uint64_t y) {
    if (y >= chi.domain.size()) fail(Errc::domain_mismatch, "dual index out of range");
    if (!chi.admissible())
        fail(Errc::config, "closed-form spectrum requires nontrivial character components");
    if (chi.domain.is_field()) {
        if (y == 0) return Complex(0, 0);
        const auto& f = chi.domain.field();
        const std::uint64_t order = f.q() - 1;
        const std::uint64_t ph = chi.indices[0] * f.discrete_log_index(y) % order;
        return unit_root((order - ph) % order, order);
    }
    const auto& ring = chi.domain.ring();
    std::uint64_t den = 1;
    for (const auto& f : ring.factors()) den = std::lcm(den, f.unit_order);
    std::uint64_t num = 0;
    for (std::size_t r = 0; r < ring.factor_count(); ++r) {
        const auto& f = ring.factors()[r];
        const std::uint64_t v = f.crt_unit * (y % f.q) % f.q;
        const std::uint64_t divisor = std::gcd(f.q, chi.indices[r]); // p^(m-j)
        if (v % divisor != 0) return Complex(0, 0);
        const std::uint64_t u = v / divisor;
        if (u % f.prime == 0) return Complex(0, 0);
        const std::uint64_t ph = chi.indices[r] * ring.factor_dlog(r, u) % f.unit_order;
        num = (num + (f.unit_order - ph) % f.unit_order * (den / f.unit_order)) % den;
    }
    return unit_root(num, den);
}

/// Smallest dual index where the closed-form pattern is nonzero.
inline std::uint64_t first_supported_dual_index(const MultCharacter& chi) {
    for (std::uint64_t y = 1; y < chi.domain.size(); ++y)
        if (std::abs(closed_form_spectrum_phase(chi, y)) > 0.5) return y;
    fail(Errc::verification, "character spectrum has empty support"); // unreachable
}

/// The numeric constant anchoring the closed form: the spectrum value at the
/// first supported dual index divided by the unit phase there. For a field
/// this is the classical Gauss sum sum_x chi(x) psi_1(x), of magnitude
/// sqrt(q); for Z/p^m and Z/n it is measured, with no closed form claimed.
inline Complex gauss_sum(const MultCharacter& chi) {
    if (!chi.admissible()) fail(Errc::config, "gauss_sum of a character with trivial components");
    const std::uint64_t y0 = first_supported_dual_index(chi);
    const std::uint64_t n = chi.domain.size();
    Complex acc(0, 0);
    for (std::uint64_t x = 0; x < n; ++x) {
        const auto phase = mult_char_phase(chi, x);
        if (!phase) continue;
        acc += unit_root(phase->first, phase->second) * chi.domain.add_char(y0, x);
    }
    return acc / closed_form_spectrum_phase(chi, y0);
}

} // namespace cosetforge
