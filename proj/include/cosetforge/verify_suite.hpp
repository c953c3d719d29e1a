#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "cosetforge/hidden_coset.hpp"
#include "cosetforge/shift_engine.hpp"

namespace cosetforge {

struct VerifyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace verify_detail {

inline GroupFunction random_function(const Domain& d, Rng& rng) {
    GroupFunction g{d, {}, std::nullopt};
    g.values.reserve(d.size());
    for (std::uint64_t i = 0; i < d.size(); ++i)
        g.values.emplace_back(rng.next_double() - 0.5, rng.next_double() - 0.5);
    return g;
}

inline double max_dev(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

/// Minimal additive period of chi on Z/q by honest scan over every candidate
/// shift; pure integer arithmetic, independent of the theorem it checks.
inline std::uint64_t exhaustive_period(std::uint64_t q, std::uint64_t prime, std::uint64_t order,
                                       const std::vector<std::uint32_t>& dlog, std::uint64_t k) {
    for (std::uint64_t t = 1; t <= q; ++t) {
        bool ok = true;
        for (std::uint64_t x = 0; x < q; ++x) {
            const std::uint64_t xs = (x + t) % q;
            const bool z1 = x % prime == 0, z2 = xs % prime == 0;
            if (z1 != z2) { ok = false; break; }
            if (z1) continue;
            if (k * dlog[x] % order != k * dlog[xs] % order) { ok = false; break; }
        }
        if (ok) return t;
    }
    return q;
}

} // namespace verify_detail

/// The cross-module invariant suite behind the CLI `verify` mode: smaller
/// bounds than the acceptance tests, a few seconds end to end.
inline std::vector<VerifyResult> run_verify_suite() {
    using namespace verify_detail;
    std::vector<VerifyResult> out;
    const auto push = [&out](const std::string& name, bool pass, const std::string& detail) {
        out.push_back(VerifyResult{name, pass, detail});
    };

    { // CRT round trips
        bool ok = true;
        for (const std::uint64_t n : {45ull, 105ull, 3465ull}) {
            const ResidueRing ring(n);
            for (std::uint64_t x = 0; x < n && ok; ++x)
                ok = ring.crt_combine(ring.crt_split(x)) == x;
        }
        push("crt-roundtrip", ok, "n in {45,105,3465}, all residues");
    }
    { // generator orders by direct powering
        bool ok = true;
        for (const auto& [p, m] : {std::pair{3u, 2u}, {5u, 2u}, {7u, 2u}, {2u, 3u}, {11u, 2u}}) {
            const FiniteField f(p, m);
            std::uint64_t cur = f.generator_index();
            for (std::uint64_t k = 1; k + 1 < f.q(); ++k) {
                if (cur == 1) { ok = false; break; }
                cur = f.mul_index(cur, f.generator_index());
            }
            ok = ok && cur == 1;
        }
        for (const std::uint64_t n : {9ull, 25ull, 27ull, 49ull}) {
            const ResidueRing ring(n);
            const auto& fac = ring.factors()[0];
            std::uint64_t cur = fac.unit_generator;
            for (std::uint64_t k = 1; k < fac.unit_order; ++k) {
                if (cur == 1) { ok = false; break; }
                cur = cur * fac.unit_generator % n;
            }
            ok = ok && cur == 1;
        }
        push("generator-order", ok, "F_9 F_25 F_49 F_8 F_121 and Z/{9,25,27,49} by powering");
    }
    { // trace: Frobenius stability and additivity
        bool ok = true;
        for (const auto& [p, m] : {std::pair{3u, 4u}, {2u, 6u}}) {
            const FiniteField f(p, m);
            for (std::uint64_t x = 0; x < f.q() && ok; ++x)
                ok = f.trace_index(f.pow_index(x, p)) == f.trace_index(x);
            Rng rng(11);
            for (int i = 0; i < 200 && ok; ++i) {
                const std::uint64_t x = rng.below(f.q()), y = rng.below(f.q());
                ok = f.trace_index(f.add_index(x, y)) ==
                     (f.trace_index(x) + f.trace_index(y)) % f.p();
            }
        }
        push("trace-properties", ok, "Frobenius stability exhaustive, additivity random");
    }
    { // multiplicativity and support of multiplicative characters
        bool ok = true;
        std::ostringstream detail;
        for (const auto& d : {Domain::make_ring(45), Domain::make_field(3, 2), Domain::make_ring(25)}) {
            for (const auto& chi : enumerate_mult_characters(d)) {
                const GroupFunction g = render_character(chi);
                for (std::uint64_t x = 0; x < d.size() && ok; ++x) {
                    const bool unit = d.is_field() ? x != 0 : d.ring().is_unit(x);
                    if (unit != (std::abs(g.values[x]) > 0.5)) { ok = false; break; }
                    if (!unit) continue;
                    if (std::abs(std::abs(g.values[x]) - 1.0) > 1e-9) { ok = false; break; }
                    for (std::uint64_t y = x; y < d.size(); ++y) {
                        const bool yunit = d.is_field() ? y != 0 : d.ring().is_unit(y);
                        if (!yunit) continue;
                        const std::uint64_t xy = d.is_field() ? d.field().mul_index(x, y) : x * y % d.size();
                        if (std::abs(g.values[xy] - g.values[x] * g.values[y]) > 1e-9) { ok = false; break; }
                    }
                }
                if (!ok) { detail << d.label() << " failed"; break; }
            }
            if (!ok) break;
        }
        push("char-multiplicativity-support", ok, ok ? "Z/45, F_9, Z/25, all characters, all pairs" : detail.str());
    }
    { // orthogonality of characters
        bool ok = true;
        for (const auto& d : {Domain::make_field(7, 1), Domain::make_ring(9)}) {
            const auto chars = enumerate_mult_characters(d);
            for (std::size_t a = 0; a < chars.size() && ok; ++a)
                for (std::size_t b = 0; b < chars.size() && ok; ++b) {
                    if (a == b) continue;
                    Complex acc(0, 0);
                    for (std::uint64_t x = 0; x < d.size(); ++x)
                        acc += mult_char_eval(chars[a], x) * std::conj(mult_char_eval(chars[b], x));
                    ok = std::abs(acc) <= 1e-9;
                }
            for (std::uint64_t a = 0; a < d.size() && ok; ++a)
                for (std::uint64_t b = 0; b < d.size() && ok; ++b) {
                    if (a == b) continue;
                    Complex acc(0, 0);
                    for (std::uint64_t x = 0; x < d.size(); ++x)
                        acc += d.add_char(a, x) * std::conj(d.add_char(b, x));
                    ok = std::abs(acc) <= 1e-9;
                }
        }
        push("character-orthogonality", ok, "multiplicative and additive, F_7 and Z/9");
    }
    { // the period theorem on small prime powers
        bool ok = true;
        for (std::uint64_t q = 3; q <= 200 && ok; q += 2) {
            const auto fac = factorize(q);
            if (fac.size() != 1) continue;
            const ResidueRing ring(q);
            const auto& f = ring.factors()[0];
            for (std::uint64_t k = 1; k < f.unit_order && ok; ++k)
                ok = exhaustive_period(q, f.prime, f.unit_order, f.dlog, k) ==
                     char_period_prime_power(f.prime, f.exponent, k);
        }
        push("period-theorem", ok, "odd prime powers <= 200, all k >= 1, exhaustive search");
    }
    { // character counts
        const bool ok = mult_char_count(Domain::make_field(5, 1)) == 4 &&
                        mult_char_count(Domain::make_ring(9)) == 6 &&
                        mult_char_count(Domain::make_ring(15)) == 8;
        push("character-counts", ok, "F_5: 4, Z/9: 6, Z/15: 8");
    }
    { // transform oracle equivalence, inverse round trip, Parseval
        bool ok = true;
        double worst = 0;
        for (const auto& d : {Domain::make_ring(45), Domain::make_field(3, 3), Domain::make_ring(225),
                              Domain::make_field(2, 6)}) {
            FourierPlan plan(d);
            Rng rng(5);
            for (int rep = 0; rep < 5 && ok; ++rep) {
                const GroupFunction g = random_function(d, rng);
                const auto naive = plan.dft_naive(g);
                const auto fast = plan.dft_fast(g);
                worst = std::max(worst, max_dev(naive.values, fast.values));
                ok = worst <= 1e-9;
                ok = ok && max_dev(plan.idft(fast).values, g.values) <= 1e-9;
                double sum_f = 0, sum_s = 0;
                for (const auto& v : g.values) sum_f += std::norm(v);
                for (const auto& v : fast.values) sum_s += std::norm(v);
                ok = ok && std::abs(sum_s - static_cast<double>(d.size()) * sum_f) <= 1e-6;
            }
        }
        std::ostringstream detail;
        detail << "max |naive-fast| = " << worst;
        push("dft-oracle-equivalence", ok, detail.str());
    }
    { // convolution theorem
        bool ok = true;
        for (const auto& d : {Domain::make_ring(15), Domain::make_field(3, 2)}) {
            FourierPlan plan(d);
            Rng rng(17);
            const GroupFunction a = random_function(d, rng);
            const GroupFunction b = random_function(d, rng);
            const auto lhs = plan.dft_fast(convolve(a, b));
            const auto fa = plan.dft_fast(a);
            const auto fb = plan.dft_fast(b);
            for (std::uint64_t y = 0; y < d.size() && ok; ++y)
                ok = std::abs(lhs.values[y] - fa.values[y] * fb.values[y]) <= 1e-9;
        }
        push("convolution-theorem", ok, "dft(a*b) = dft(a).dft(b), Z/15 and F_9");
    }
    { // closed-form spectra against the naive oracle
        bool ok = true;
        double worst = 0;
        for (const auto& d : {Domain::make_field(3, 2), Domain::make_field(5, 2),
                              Domain::make_ring(45), Domain::make_ring(27)}) {
            FourierPlan plan(d);
            for (const auto& chi : enumerate_mult_characters(d)) {
                if (!chi.admissible()) continue;
                const auto spec = plan.dft_naive(render_character(chi));
                const Complex k = gauss_sum(chi);
                for (std::uint64_t y = 0; y < d.size(); ++y)
                    worst = std::max(worst,
                                     std::abs(spec.values[y] - k * closed_form_spectrum_phase(chi, y)));
            }
        }
        ok = worst <= 1e-9;
        std::ostringstream detail;
        detail << "max deviation " << worst << " over F_9 F_25 Z/45 Z/27";
        push("closed-form-spectra", ok, detail.str());
    }
    { // Gauss sum magnitude sqrt(q) on fields
        bool ok = true;
        for (const auto& [p, m] : {std::pair{3u, 2u}, {5u, 2u}, {7u, 2u}, {3u, 3u}}) {
            const Domain d = Domain::make_field(p, m);
            for (const auto& chi : enumerate_mult_characters(d)) {
                if (chi.is_trivial()) continue;
                if (std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(d.size()))) > 1e-9)
                    ok = false;
            }
        }
        push("gauss-sum-magnitude", ok, "|gauss| = sqrt(q) on F_9 F_25 F_49 F_27");
    }
    { // diagonalization F^T X F = D for arbitrary g
        bool ok = true;
        for (const auto& d : {Domain::make_ring(9), Domain::make_field(2, 3), Domain::make_ring(15)}) {
            Rng rng(23);
            for (int rep = 0; rep < 3; ++rep) {
                try {
                    verify_diagonalization(random_function(d, rng));
                } catch (const Error&) {
                    ok = false;
                }
            }
        }
        push("diagonalization", ok, "random g on Z/9, F_8, Z/15");
    }
    { // Moore-Penrose axioms and path agreement
        bool ok = true;
        double worst = 0;
        for (const auto& d : {Domain::make_ring(9), Domain::make_field(3, 2)}) {
            FourierPlan plan(d);
            Rng rng(29);
            for (int rep = 0; rep < 3; ++rep) {
                // rank-deficient on the last repetition: zero out part of the spectrum
                GroupFunction g = random_function(d, rng);
                if (rep == 2) {
                    auto spec = plan.dft_fast(g);
                    for (std::uint64_t y = 0; y < d.size(); y += 2) spec.values[y] = Complex(0, 0);
                    g = plan.idft(spec);
                }
                const Matrix x = build_shift_matrix(g);
                const Matrix xs = pseudoinverse(g);
                const Matrix xxs = detail::matmul(x, xs);
                const Matrix xsx = detail::matmul(xs, x);
                const Matrix a1 = detail::matmul(xxs, x);
                const Matrix a2 = detail::matmul(xsx, xs);
                for (std::uint64_t i = 0; i < d.size(); ++i)
                    for (std::uint64_t j = 0; j < d.size(); ++j) {
                        worst = std::max(worst, std::abs(a1[i][j] - x[i][j]));
                        worst = std::max(worst, std::abs(a2[i][j] - xs[i][j]));
                        worst = std::max(worst, std::abs(xxs[i][j] - std::conj(xxs[j][i])));
                        worst = std::max(worst, std::abs(xsx[i][j] - std::conj(xsx[j][i])));
                    }
                const GroupFunction v = random_function(d, rng);
                const auto fast_path = apply_pseudoinverse(g, v.values);
                for (std::uint64_t i = 0; i < d.size(); ++i) {
                    Complex acc(0, 0);
                    for (std::uint64_t j = 0; j < d.size(); ++j) acc += xs[i][j] * v.values[j];
                    worst = std::max(worst, std::abs(acc - fast_path[i]));
                }
            }
        }
        ok = worst <= 1e-7;
        std::ostringstream detail_str;
        detail_str << "max deviation " << worst;
        push("moore-penrose", ok, detail_str.str());
    }
    { // exact conditional success mass, shift equivariance
        bool ok = true;
        for (const auto& d : {Domain::make_field(5, 1), Domain::make_field(3, 2), Domain::make_ring(15)}) {
            for (const auto& chi : enumerate_mult_characters(d)) {
                if (!chi.admissible()) continue;
                const GroupFunction g = render_character(chi);
                const double beta = check_conditions(g).beta.value();
                for (std::uint64_t s = 0; s < d.size() && ok; ++s) {
                    ShiftSimulator sim(ShiftInstance::make(g, s));
                    ok = std::abs(sim.success_mass() - beta) <= 1e-9;
                }
                if (!ok) break;
            }
        }
        push("exact-success-mass", ok, "pre-measurement mass at |-s> equals beta, all shifts");
    }
    { // deconvolution equals the pseudoinverse route
        bool ok = true;
        for (const auto& d : {Domain::make_field(5, 1), Domain::make_ring(45)}) {
            for (const auto& chi : enumerate_mult_characters(d)) {
                if (!chi.admissible()) continue;
                const GroupFunction g = render_character(chi);
                const GroupFunction f = translate(g, 3 % d.size());
                const GroupFunction dec = deconvolve(f, g);
                const auto pinv_f = apply_pseudoinverse(g, f.values);
                for (std::uint64_t x = 0; x < d.size() && ok; ++x)
                    ok = std::abs(dec.values[x] - pinv_f[d.negate(x)]) <= 1e-9;
                if (!ok) break;
            }
        }
        push("deconvolve-pseudoinverse", ok, "deconvolve(f,g)(x) = (X* f)(-x), F_5 and Z/45");
    }
    { // hidden coset agreement with brute force
        bool ok = true;
        Rng rng(31);
        for (const std::uint64_t n : {9ull, 15ull, 45ull}) {
            const Domain d = Domain::make_ring(n);
            for (const auto& chi : enumerate_mult_characters(d)) {
                if (!chi.admissible()) continue;
                const GroupFunction g = render_character(chi);
                for (int rep = 0; rep < 2 && ok; ++rep) {
                    const std::uint64_t s = rng.below(n);
                    const GroupFunction f = translate(g, s);
                    const auto solved = solve_hidden_coset(chi, f, rng);
                    ok = solved.answer == brute_force_coset(g, f);
                }
                if (!ok) break;
            }
        }
        push("hidden-coset-agreement", ok, "n in {9,15,45}, all admissible characters, 2 shifts");
    }
    { // sampling law: every HSP sample lies in H-perp
        bool ok = true;
        const Domain d = Domain::make_ring(45);
        const auto chi = mult_character_ring(d, {3, 1}); // period 15
        const GroupFunction f = translate(render_character(chi), 8);
        Rng rng(37);
        std::uint64_t seen = 0;
        while (seen < 2000) {
            const auto hsp = fourier_sample_hsp(f, rng);
            for (const auto y : hsp.samples)
                if (y % 3 != 0) ok = false; // H-perp = multiples of n/T = 3
            seen += hsp.samples.size();
            if (!ok) break;
        }
        push("hsp-sampling-law", ok, "2000+ samples on Z/45, all multiples of n/T");
    }
    { // query discipline: one batch oracle query per trial
        const auto chi = mult_character_field(Domain::make_field(5, 1), 2);
        ShiftSimulator sim(ShiftInstance::from_character(chi, 3));
        Rng rng(41);
        for (int i = 0; i < 50; ++i) sim.run_trial(rng);
        const bool ok = sim.oracle_queries() == 1 &&
                        sim.spectrum_phase_queries() == sim.pre_measurement_state().domain.size();
        push("query-discipline", ok, "one batch f query; one closed-form phase per dual index");
    }
    return out;
}

} // namespace cosetforge
