#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "cosetforge/shift_engine.hpp"

namespace cosetforge {

/// H = {0, T, 2T, ...} <= Z/n, the translation stabilizer of g. Subgroups of
/// Z/n are exactly the divisor lattice, so the period T is the whole
/// representation.
struct SubgroupZn {
    std::shared_ptr<const ResidueRing> ring;
    std::uint64_t period = 0; ///< T, a divisor of n; |H| = n/T

    std::uint64_t size() const { return ring->n() / period; }
};

/// All shifts consistent with the oracle: the coset representative + H.
/// An empty member list is the first-class NoShift outcome (f is not a
/// translate of g at all).
struct CosetAnswer {
    std::uint64_t modulus = 0;
    std::uint64_t period = 0;                       ///< T; 0 when NoShift
    std::optional<std::uint64_t> representative;    ///< in [0, T)
    std::vector<std::uint64_t> members;             ///< ascending

    bool no_shift() const { return members.empty(); }

    friend bool operator==(const CosetAnswer& a, const CosetAnswer& b) {
        return a.modulus == b.modulus && a.members == b.members;
    }
};

struct HspResult {
    SubgroupZn subgroup;
    std::uint64_t samples_used = 0;       ///< iterations incl. support aborts
    std::vector<std::uint64_t> samples;   ///< measured dual indices
};

/// Phase-variant Fourier sampling for the hidden subgroup: uniform
/// superposition, support projection, the phase of f loaded into amplitudes,
/// forward transform, measure. Every measured index lies in H-perp (the
/// multiples of n/T), so the gcd of the samples with n stabilizes at n/T;
/// we stop once it has been unchanged for `confidence` consecutive samples.
/// The caller is expected to verify the answer against the oracle.
inline HspResult fourier_sample_hsp(const GroupFunction& f, Rng& rng, unsigned confidence = 10) {
    if (!f.domain.is_ring()) fail(Errc::config, "hidden subgroup sampling needs a Z/n oracle");
    if (confidence < 1) fail(Errc::config, "confidence must be >= 1");
    const std::uint64_t n = f.domain.size();
    FourierPlan plan(f.domain);

    // the sampling distribution is trial-independent: build it once
    std::vector<Complex> amp(n, Complex(0, 0));
    std::uint64_t support = 0;
    for (std::uint64_t x = 0; x < n; ++x) {
        const double mag = std::abs(f.values[x]);
        if (mag <= kSupportTol) continue;
        amp[x] = f.values[x] / mag;
        ++support;
    }
    if (support == 0) fail(Errc::config, "oracle is identically zero");
    const double alpha = static_cast<double>(support) / static_cast<double>(n);
    SpectrumFunction spec = plan.dft_fast(GroupFunction{f.domain, std::move(amp), std::nullopt});
    std::vector<double> probs(n);
    double total = 0;
    for (std::uint64_t y = 0; y < n; ++y) {
        probs[y] = std::norm(spec.values[y]);
        total += probs[y];
    }

    const std::uint64_t budget =
        64 * (confidence + static_cast<unsigned>(std::bit_width(n)));
    HspResult result;
    std::uint64_t acc = n;
    unsigned stable = 0;
    for (std::uint64_t iter = 0; iter < budget; ++iter) {
        ++result.samples_used;
        if (!rng.bernoulli(alpha)) continue; // the f(x)=0 branch was measured
        const double r = rng.next_double() * total;
        double cum = 0;
        std::uint64_t y = n - 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            cum += probs[i];
            if (r < cum) { y = i; break; }
        }
        result.samples.push_back(y);
        const std::uint64_t next = std::gcd(acc, y);
        if (next == acc && result.samples.size() > 1) {
            if (++stable >= confidence) {
                result.subgroup = SubgroupZn{f.domain.ring_ptr(), n / acc};
                return result;
            }
        } else {
            stable = 0;
            acc = next;
        }
    }
    fail(Errc::verification, "hidden subgroup sampling budget exhausted without stabilization");
}

/// f'(x+H) = f(x) on Z/T, after exhaustively checking that T really is a
/// period of f (a violation means the sampled H was wrong).
inline GroupFunction quotient_reduce(const GroupFunction& f, const SubgroupZn& h) {
    const std::uint64_t n = f.domain.size();
    const std::uint64_t t = h.period;
    if (t == 0 || n % t != 0) fail(Errc::config, "subgroup period must divide n");
    for (std::uint64_t x = 0; x < n; ++x)
        if (std::abs(f.values[x] - f.values[(x + t) % n]) > 1e-9)
            fail(Errc::verification, "oracle is not T-periodic: hidden subgroup was wrong");
    if (t == n) return GroupFunction{f.domain, f.values, f.source};
    GroupFunction out;
    out.domain = Domain::make_ring(t);
    out.values.assign(f.values.begin(), f.values.begin() + static_cast<std::ptrdiff_t>(t));
    return out;
}

/// The character of Z/T that the period-T character chi projects to, made
/// explicit on indices: componentwise,
/// l' = (l / p^(m-j)) * dlog_g(h) mod (p-1)p^(j-1), where h is the quotient
/// factor's generator lifted back to Z/p^m. The result has full period on
/// Z/T, which is what makes the quotient shift problem well-posed.
inline MultCharacter quotient_character(const MultCharacter& chi, const Domain& quotient_domain) {
    const auto& ring = chi.domain.ring();
    const auto& qring = quotient_domain.ring();
    if (!chi.period || qring.n() != *chi.period)
        fail(Errc::config, "quotient modulus must equal the character period");
    if (qring.factor_count() != ring.factor_count())
        fail(Errc::verification, "quotient ring factor mismatch");
    std::vector<std::uint64_t> indices(ring.factor_count());
    for (std::size_t r = 0; r < ring.factor_count(); ++r) {
        const auto& f = ring.factors()[r];
        const auto& qf = qring.factors()[r];
        const std::uint64_t l = chi.indices[r];
        if (l == 0) { indices[r] = 0; continue; }
        const std::uint64_t l0 = l / std::gcd(f.q, l);
        const std::uint64_t lift_log = ring.factor_dlog(r, qf.unit_generator % f.q);
        indices[r] = l0 * lift_log % qf.unit_order;
    }
    return mult_character_ring(quotient_domain, std::move(indices));
}

struct CosetSolveResult {
    CosetAnswer answer;
    std::uint64_t hsp_samples = 0; ///< sampling iterations spent finding H
    std::uint64_t attempts = 0;    ///< quotient shift-recovery trials
};

/// Ground-truth oracle for the full problem statement: test every shift
/// exhaustively and assert the structural claim that the answer set is a
/// coset of a subgroup.
inline CosetAnswer brute_force_coset(const GroupFunction& g, const GroupFunction& f) {
    require_same_domain(g.domain, f.domain, "brute_force_coset");
    const std::uint64_t n = g.domain.size();
    if (n > 100000) fail(Errc::cap_exceeded, "brute force capped at |G| <= 1e5");
    CosetAnswer ans;
    ans.modulus = n;
    for (std::uint64_t s = 0; s < n; ++s) {
        bool ok = true;
        for (std::uint64_t x = 0; x < n; ++x) {
            if (std::abs(f.values[x] - g.values[g.domain.add(x, s)]) > 1e-9) { ok = false; break; }
        }
        if (ok) ans.members.push_back(s);
    }
    if (ans.members.empty()) return ans; // NoShift
    // structural check: differences to the first member form a subgroup
    std::vector<char> in_h(n, 0);
    std::vector<std::uint64_t> hs;
    hs.reserve(ans.members.size());
    for (const auto s : ans.members) {
        const std::uint64_t h = g.domain.sub(s, ans.members.front());
        in_h[h] = 1;
        hs.push_back(h);
    }
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i; j < hs.size(); ++j)
            if (!in_h[g.domain.add(hs[i], hs[j])])
                fail(Errc::verification, "answer set is not a coset of a subgroup");
    if (g.domain.is_ring()) {
        ans.period = n / ans.members.size();
        ans.representative = ans.members.front() % ans.period;
        for (const auto s : ans.members)
            if (s % ans.period != *ans.representative)
                fail(Errc::verification, "ring answer set is not a cyclic coset");
    } else {
        ans.period = 0;
        ans.representative = ans.members.front();
    }
    return ans;
}

/// End-to-end solver for the hidden coset problem over Z/n: find H by
/// phase-variant Fourier sampling, certify it against the oracle, reduce to
/// Z/T, run the shift algorithm there (retrying through its alpha*beta
/// failure branch), certify the candidate shift by full oracle comparison,
/// and return the complete coset s + H.
inline CosetSolveResult solve_hidden_coset(const MultCharacter& chi, const GroupFunction& f,
                                           Rng& rng, unsigned confidence = 10) {
    if (!chi.domain.is_ring()) fail(Errc::config, "hidden coset solver works over Z/n");
    require_same_domain(chi.domain, f.domain, "solve_hidden_coset");
    if (!chi.admissible())
        fail(Errc::config, "solver requires a character with nontrivial components");

    CosetSolveResult result;
    const std::uint64_t n = chi.domain.size();

    const HspResult hsp = fourier_sample_hsp(f, rng, confidence);
    result.hsp_samples = hsp.samples_used;
    const std::uint64_t t = hsp.subgroup.period;

    const GroupFunction f_quot = quotient_reduce(f, hsp.subgroup); // certifies T
    const MultCharacter chi_quot =
        t == n ? chi : quotient_character(chi, f_quot.domain);
    const GroupFunction g_quot = render_character(chi_quot);

    ShiftSimulator sampler(g_quot, f_quot);
    const Rational rate = sampler.alpha() * sampler.beta();
    const std::uint64_t cap =
        static_cast<std::uint64_t>((20 * rate.den + rate.num - 1) / rate.num);
    for (std::uint64_t attempt = 0; attempt < cap; ++attempt) {
        ++result.attempts;
        const RecoveryOutcome outcome = sampler.run_trial(rng);
        if (outcome.aborted_at_support) continue;
        const std::uint64_t candidate = *outcome.recovered_shift;
        bool ok = true;
        for (std::uint64_t x = 0; x < t; ++x) {
            if (std::abs(f_quot.values[x] - g_quot.values[(x + candidate) % t]) > 1e-9) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        CosetAnswer ans;
        ans.modulus = n;
        ans.period = t;
        ans.representative = candidate;
        for (std::uint64_t k = 0; k < n / t; ++k) ans.members.push_back(candidate + k * t);
        result.answer = std::move(ans);
        return result;
    }
    fail(Errc::verification, "quotient shift recovery retry cap exceeded");
}

} // namespace cosetforge
