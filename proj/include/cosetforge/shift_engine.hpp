#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cosetforge/fourier.hpp"
#include "cosetforge/rational.hpp"
#include "cosetforge/rng.hpp"

namespace cosetforge {

/// Dense matrix paths exist to verify the factorization and pseudoinverse
/// literally; everything scalable is transform-based.
inline constexpr std::uint64_t kDenseCap = 512;

using Matrix = std::vector<std::vector<Complex>>;

/// A shift-problem instance: the oracle is constructed as the exact
/// s-translate of the base function, so the invariant f(x) = g(x+s) holds by
/// construction.
struct ShiftInstance {
    GroupFunction base;   ///< g
    std::uint64_t shift;  ///< s
    GroupFunction oracle; ///< f(x) = g(x+s)

    static ShiftInstance make(GroupFunction g, std::uint64_t s) {
        if (s >= g.domain.size()) fail(Errc::config, "shift out of range");
        GroupFunction f = translate(g, s);
        return ShiftInstance{std::move(g), s, std::move(f)};
    }

    static ShiftInstance from_character(const MultCharacter& chi, std::uint64_t s) {
        return make(render_character(chi), s);
    }
};

/// Normalized amplitude vector over the group, in canonical element order.
struct QuantumState {
    Domain domain;
    std::vector<Complex> amplitudes;

    double norm_sq() const {
        double t = 0;
        for (const auto& a : amplitudes) t += std::norm(a);
        return t;
    }
};

/// Outcome of the sufficient-condition check (conditions 1 and 2 as
/// magnitude constancy on support; condition 3 as the structural flag
/// "closed-form spectrum available", true for rendered admissible
/// characters). alpha and beta are exact support fractions.
struct ConditionReport {
    bool condition1 = false;
    bool condition2 = false;
    Rational alpha;
    Rational beta;
    bool closed_form_available = false;
};

struct RecoveryOutcome {
    bool aborted_at_support = false;
    std::optional<std::uint64_t> measured_value;
    std::optional<std::uint64_t> recovered_shift; ///< negation of measured_value
    bool success = false;                          ///< success implies recovered_shift == s
};

// ---------------------------------------------------------------------------
// Dense verification paths
// ---------------------------------------------------------------------------

/// X = [g(x+y)], row x, column y, canonical order.
inline Matrix build_shift_matrix(const GroupFunction& g) {
    const std::uint64_t n = g.domain.size();
    if (n > kDenseCap) fail(Errc::cap_exceeded, "dense shift matrix capped at |G| <= 512");
    Matrix x(n, std::vector<Complex>(n));
    for (std::uint64_t row = 0; row < n; ++row)
        for (std::uint64_t col = 0; col < n; ++col)
            x[row][col] = g.values[g.domain.add(row, col)];
    return x;
}

namespace detail {

inline Matrix fourier_matrix(const Domain& domain) {
    const std::uint64_t n = domain.size();
    Matrix f(n, std::vector<Complex>(n));
    for (std::uint64_t row = 0; row < n; ++row)
        for (std::uint64_t col = 0; col < n; ++col)
            f[row][col] = domain.add_char(col, row); // F[x][y] = psi_y(x)
    return f;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    Matrix c(n, std::vector<Complex>(m, Complex(0, 0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            const Complex av = a[i][t];
            if (av == Complex(0, 0)) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += av * b[t][j];
        }
    return c;
}

inline Matrix transpose(const Matrix& a) {
    Matrix t(a[0].size(), std::vector<Complex>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

/// Pseudoinverse of the diagonal D = |G| g^(psi_w): reciprocal of entries
/// with nonzero spectrum, zero elsewhere.
inline std::vector<Complex> diagonal_pinv(const SpectrumFunction& gh) {
    const double n = static_cast<double>(gh.values.size());
    std::vector<Complex> d(gh.values.size());
    for (std::size_t w = 0; w < gh.values.size(); ++w)
        d[w] = std::abs(gh.values[w]) > kSupportTol ? 1.0 / (n * gh.values[w]) : Complex(0, 0);
    return d;
}

} // namespace detail

/// Computes F^T X F numerically, asserts it is diagonal with entries
/// |G| g^(psi_w) (tolerance 1e-7 |G|), and returns the diagonal. Failures
/// surface as verification errors so the CLI `verify` suite can report them.
inline std::vector<Complex> verify_diagonalization(const GroupFunction& g) {
    const std::uint64_t n = g.domain.size();
    if (n > kDenseCap) fail(Errc::cap_exceeded, "diagonalization check capped at |G| <= 512");
    const Matrix x = build_shift_matrix(g);
    const Matrix f = detail::fourier_matrix(g.domain);
    const Matrix prod = detail::matmul(detail::transpose(f), detail::matmul(x, f));
    const SpectrumFunction gh = FourierPlan(g.domain).dft_fast(g);
    const double tol = 1e-7 * static_cast<double>(n);
    std::vector<Complex> diag(n);
    for (std::uint64_t v = 0; v < n; ++v) {
        for (std::uint64_t w = 0; w < n; ++w) {
            if (v == w) continue;
            if (std::abs(prod[v][w]) >= tol)
                fail(Errc::verification, "F^T X F has a large off-diagonal entry");
        }
        diag[v] = prod[v][v];
        if (std::abs(diag[v] - static_cast<double>(n) * gh.values[v]) >= tol)
            fail(Errc::verification, "diagonal of F^T X F differs from |G| g^(psi_w)");
    }
    return diag;
}

/// X* = F D* F^T, materialized (verification path, |G| <= 512).
inline Matrix pseudoinverse(const GroupFunction& g) {
    const std::uint64_t n = g.domain.size();
    if (n > kDenseCap) fail(Errc::cap_exceeded, "dense pseudoinverse capped at |G| <= 512");
    const SpectrumFunction gh = FourierPlan(g.domain).dft_fast(g);
    const std::vector<Complex> dstar = detail::diagonal_pinv(gh);
    const Matrix f = detail::fourier_matrix(g.domain);
    Matrix out(n, std::vector<Complex>(n, Complex(0, 0)));
    for (std::uint64_t xrow = 0; xrow < n; ++xrow)
        for (std::uint64_t w = 0; w < n; ++w) {
            const Complex scaled = f[xrow][w] * dstar[w];
            if (scaled == Complex(0, 0)) continue;
            for (std::uint64_t z = 0; z < n; ++z) out[xrow][z] += scaled * f[z][w];
        }
    return out;
}

/// X* v through transforms only (dft, pointwise D*, and F applied as a second
/// forward transform, F being symmetric); no matrix is materialized.
inline std::vector<Complex> apply_pseudoinverse(const GroupFunction& g, const std::vector<Complex>& v) {
    if (v.size() != g.domain.size()) fail(Errc::config, "vector length != |G|");
    FourierPlan plan(g.domain);
    const std::vector<Complex> dstar = detail::diagonal_pinv(plan.dft_fast(g));
    SpectrumFunction u = plan.dft_fast(GroupFunction{g.domain, v, std::nullopt});
    for (std::size_t w = 0; w < u.values.size(); ++w) u.values[w] *= dstar[w];
    return plan.dft_fast(GroupFunction{g.domain, std::move(u.values), std::nullopt}).values;
}

inline ConditionReport check_conditions(const GroupFunction& g) {
    ConditionReport rep;
    const std::uint64_t n = g.domain.size();
    const SpectrumFunction gh = FourierPlan(g.domain).dft_fast(g);
    auto scan = [](const std::vector<Complex>& vals) {
        std::uint64_t support = 0;
        double lo = 0, hi = 0;
        for (const auto& v : vals) {
            const double mag = std::abs(v);
            if (mag <= kSupportTol) continue;
            if (support == 0) { lo = hi = mag; }
            lo = std::min(lo, mag);
            hi = std::max(hi, mag);
            ++support;
        }
        return std::make_pair(support, hi - lo);
    };
    const auto [sg, spread_g] = scan(g.values);
    const auto [sh, spread_h] = scan(gh.values);
    rep.condition1 = sg > 0 && spread_g <= 1e-9;
    rep.condition2 = sh > 0 && spread_h <= 1e-9;
    rep.alpha = Rational(static_cast<std::int64_t>(sg), static_cast<std::int64_t>(n));
    rep.beta = Rational(static_cast<std::int64_t>(sh), static_cast<std::int64_t>(n));
    rep.closed_form_available = g.source.has_value() && g.source->admissible();
    return rep;
}

/// alpha * beta, the exact overall success probability, as a rational.
inline Rational exact_success_probability(const GroupFunction& g) {
    const ConditionReport rep = check_conditions(g);
    if (!rep.condition1 || !rep.condition2)
        fail(Errc::config, "success probability is alpha*beta only under conditions 1 and 2");
    return rep.alpha * rep.beta;
}

/// Round every amplitude's phase to the nearest 2^bits-th root of unity,
/// preserving magnitudes.
inline QuantumState quantize_phases(const QuantumState& state, unsigned bits) {
    if (bits < 1) fail(Errc::config, "quantize_phases needs bits >= 1");
    QuantumState out{state.domain, state.amplitudes};
    const double step = 2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(bits));
    for (auto& a : out.amplitudes) {
        const double mag = std::abs(a);
        if (mag == 0.0) continue;
        const double snapped = step * std::round(std::arg(a) / step);
        a = std::polar(mag, snapped);
    }
    return out;
}

/// Black-box wrapper around the oracle f counting batch evaluations; one
/// batch evaluation of all values counts as one query.
class ShiftOracle {
  public:
    explicit ShiftOracle(const GroupFunction& f) : f_(&f) {}
    const std::vector<Complex>& batch_values() const {
        ++queries_;
        return f_->values;
    }
    std::uint64_t queries() const { return queries_; }

  private:
    const GroupFunction* f_;
    mutable std::uint64_t queries_ = 0;
};

/// State-vector simulation of the four-step algorithm:
///   1. uniform superposition; measure "is f(x)=0" (a Bernoulli(alpha) event),
///      abort or renormalize onto the support with the phase of f(x) loaded
///      (optionally snapped to 2^bits-th roots of unity);
///   2. normalized forward transform;
///   3. multiply the amplitude at y by conj(phase of g^(psi_y)) where the
///      spectrum is nonzero, leaving zero-support amplitudes untouched;
///   4. normalized inverse transform; measuring samples |amplitude|^2.
/// The measured value is -s, so recovered_shift negates it before returning.
///
/// The deterministic part (steps 2-4 before measurement) is computed once at
/// construction with exactly one batch oracle query; trials then draw only the
/// support Bernoulli and the measurement sample, so (instance, seed) fully
/// determines every outcome.
class ShiftSimulator {
  public:
    explicit ShiftSimulator(ShiftInstance instance,
                            std::optional<unsigned> quantize_bits = std::nullopt)
        : instance_(std::move(instance)), oracle_(instance_.oracle), plan_(instance_.base.domain),
          shift_known_(true) {
        conditions_ = check_conditions(instance_.base);
        if (!conditions_.condition1 || !conditions_.condition2)
            fail(Errc::config, "shift recovery requires conditions 1 and 2 on g");
        build_state(quantize_bits);
    }

    /// Solver-side constructor: the oracle is given, the shift is unknown.
    /// Trials return candidate shifts; success flags and success_mass are
    /// unavailable (the caller must verify candidates against the oracle).
    ShiftSimulator(GroupFunction g, GroupFunction f_oracle,
                   std::optional<unsigned> quantize_bits = std::nullopt)
        : instance_{std::move(g), 0, std::move(f_oracle)}, oracle_(instance_.oracle),
          plan_(instance_.base.domain), shift_known_(false) {
        require_same_domain(instance_.base.domain, instance_.oracle.domain, "shift simulator");
        conditions_ = check_conditions(instance_.base);
        if (!conditions_.condition1 || !conditions_.condition2)
            fail(Errc::config, "shift recovery requires conditions 1 and 2 on g");
        build_state(quantize_bits);
    }

    ShiftSimulator(const ShiftSimulator&) = delete;
    ShiftSimulator& operator=(const ShiftSimulator&) = delete;

    const ConditionReport& conditions() const { return conditions_; }
    Rational alpha() const { return conditions_.alpha; }
    Rational beta() const { return conditions_.beta; }
    const QuantumState& pre_measurement_state() const { return state_; }
    bool used_closed_form() const { return used_closed_form_; }
    std::uint64_t oracle_queries() const { return oracle_.queries(); }
    std::uint64_t spectrum_phase_queries() const { return phase_queries_; }

    /// Probability mass the pre-measurement state puts on |-s>; equals beta
    /// exactly for character instances.
    double success_mass() const {
        if (!shift_known_) fail(Errc::config, "success_mass needs a known shift");
        return std::norm(state_.amplitudes[instance_.base.domain.negate(instance_.shift)]);
    }

    RecoveryOutcome run_trial(Rng& rng) const {
        RecoveryOutcome outcome;
        if (!rng.bernoulli(conditions_.alpha.value())) {
            outcome.aborted_at_support = true;
            return outcome;
        }
        // inverse-CDF sample over |amplitude|^2, fixed ascending traversal
        const double total = state_.norm_sq();
        const double r = rng.next_double() * total;
        double cum = 0;
        std::uint64_t measured = state_.amplitudes.size() - 1;
        for (std::uint64_t i = 0; i < state_.amplitudes.size(); ++i) {
            cum += std::norm(state_.amplitudes[i]);
            if (r < cum) { measured = i; break; }
        }
        outcome.measured_value = measured;
        outcome.recovered_shift = instance_.base.domain.negate(measured);
        outcome.success = shift_known_ && (*outcome.recovered_shift == instance_.shift);
        return outcome;
    }

  private:
    void build_state(std::optional<unsigned> quantize_bits) {
        const Domain& domain = instance_.base.domain;
        const std::uint64_t n = domain.size();
        const std::vector<Complex>& f = oracle_.batch_values(); // the one oracle query

        // step 1: phases of f on its support, renormalized
        std::vector<Complex> amp(n, Complex(0, 0));
        std::uint64_t support = 0;
        for (std::uint64_t x = 0; x < n; ++x) {
            const double mag = std::abs(f[x]);
            if (mag <= kSupportTol) continue;
            amp[x] = f[x] / mag;
            ++support;
        }
        QuantumState st{domain, std::move(amp)};
        if (quantize_bits) st = quantize_phases(st, *quantize_bits);
        const double scale1 = 1.0 / std::sqrt(static_cast<double>(support));
        for (auto& a : st.amplitudes) a *= scale1;

        // step 2: unitary forward transform F / sqrt(|G|)
        SpectrumFunction spec = plan_.dft_fast(GroupFunction{domain, std::move(st.amplitudes), std::nullopt});
        const double scale2 = 1.0 / std::sqrt(static_cast<double>(n));
        for (auto& a : spec.values) a *= scale2;

        // step 3: conj of the spectrum phase of g on its support
        used_closed_form_ = conditions_.closed_form_available;
        if (used_closed_form_) {
            const MultCharacter& chi = *instance_.base.source;
            for (std::uint64_t y = 0; y < n; ++y) {
                const Complex pattern = closed_form_spectrum_phase(chi, y);
                ++phase_queries_;
                if (std::abs(pattern) > 0.5) spec.values[y] *= std::conj(pattern);
            }
        } else {
            const SpectrumFunction gh = plan_.dft_fast(instance_.base);
            for (std::uint64_t y = 0; y < n; ++y) {
                const double mag = std::abs(gh.values[y]);
                if (mag > kSupportTol) spec.values[y] *= std::conj(gh.values[y] / mag);
            }
        }

        // step 4: unitary inverse transform F^dag / sqrt(|G|)
        for (auto& a : spec.values) a = std::conj(a);
        SpectrumFunction back = plan_.dft_fast(GroupFunction{domain, std::move(spec.values), std::nullopt});
        state_.domain = domain;
        state_.amplitudes.resize(n);
        for (std::uint64_t x = 0; x < n; ++x) state_.amplitudes[x] = std::conj(back.values[x]) * scale2;
    }

    ShiftInstance instance_;
    ShiftOracle oracle_;
    FourierPlan plan_;
    bool shift_known_;
    ConditionReport conditions_;
    QuantumState state_;
    bool used_closed_form_ = false;
    std::uint64_t phase_queries_ = 0;
};

/// Single-trial entry point: constructs the pipeline fresh, so the oracle is
/// read exactly once per trial. Batch runners construct one ShiftSimulator
/// and reuse it (still at most one query per trial).
inline RecoveryOutcome simulate_shift_recovery(const ShiftInstance& instance, Rng& rng,
                                               std::optional<unsigned> quantize_bits = std::nullopt) {
    return ShiftSimulator(instance, quantize_bits).run_trial(rng);
}

} // namespace cosetforge
