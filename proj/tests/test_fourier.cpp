#include <catch2/catch.hpp>

#include <cmath>

#include "cosetforge/fourier.hpp"
#include "cosetforge/rng.hpp"

using namespace cosetforge;

namespace {

constexpr double kTol = 1e-9;

GroupFunction random_function(const Domain& d, Rng& rng) {
    GroupFunction g{d, {}, std::nullopt};
    g.values.reserve(d.size());
    for (std::uint64_t i = 0; i < d.size(); ++i)
        g.values.emplace_back(rng.next_double() - 0.5, rng.next_double() - 0.5);
    return g;
}

double max_dev(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("naive transform on pinned inputs") {
    const Domain z3 = Domain::make_ring(3);
    FourierPlan plan(z3);
    SECTION("delta transforms to the constant") {
        const auto spec = plan.dft_naive(delta_function(z3, 0));
        for (std::uint64_t y = 0; y < 3; ++y) CHECK(std::abs(spec.values[y] - Complex(1, 0)) <= kTol);
    }
    SECTION("constant transforms to a scaled delta") {
        const auto spec = plan.dft_naive(make_function(z3, {Complex(1, 0), Complex(1, 0), Complex(1, 0)}));
        CHECK(std::abs(spec.values[0] - Complex(3, 0)) <= kTol);
        CHECK(std::abs(spec.values[1]) <= kTol);
        CHECK(std::abs(spec.values[2]) <= kTol);
    }
    SECTION("quadratic character of F_5: flat magnitude sqrt(5) off psi_0") {
        const Domain f5 = Domain::make_field(5, 1);
        const MultCharacter chi2 = mult_character_field(f5, 2);
        const auto spec = dft_naive(render_character(chi2));
        CHECK(std::abs(spec.values[0]) <= kTol);
        const double root5 = std::sqrt(5.0);
        for (std::uint64_t a = 1; a < 5; ++a) {
            CHECK(std::abs(std::abs(spec.values[a]) - root5) <= kTol);
            // sign pattern: conj(chi_2(a)) * sqrt(5)
            CHECK(std::abs(spec.values[a] - std::conj(mult_char_eval(chi2, a)) * root5) <= kTol);
        }
    }
}

TEST_CASE("fast transform equals the naive oracle") {
    for (const auto& d : {Domain::make_ring(45), Domain::make_ring(225), Domain::make_ring(1029),
                          Domain::make_field(2, 6), Domain::make_field(3, 4), Domain::make_field(13, 1),
                          Domain::make_ring(9), Domain::make_field(5, 2)}) {
        FourierPlan plan(d);
        Rng rng(101);
        for (int rep = 0; rep < 20; ++rep) {
            const GroupFunction g = random_function(d, rng);
            REQUIRE(max_dev(plan.dft_naive(g).values, plan.dft_fast(g).values) <= kTol);
        }
    }
}

TEST_CASE("inverse transform") {
    SECTION("pinned: (3,0,0) -> all ones, zeros -> zeros") {
        const Domain z3 = Domain::make_ring(3);
        FourierPlan plan(z3);
        const auto ones = plan.idft(SpectrumFunction{z3, {Complex(3, 0), Complex(0, 0), Complex(0, 0)}});
        for (const auto& v : ones.values) CHECK(std::abs(v - Complex(1, 0)) <= kTol);
        const auto zeros = plan.idft(SpectrumFunction{z3, {Complex(0, 0), Complex(0, 0), Complex(0, 0)}});
        for (const auto& v : zeros.values) CHECK(std::abs(v) == 0.0);
    }
    SECTION("idft(dft(f)) = f on random inputs") {
        for (const auto& d : {Domain::make_ring(405), Domain::make_field(7, 2), Domain::make_ring(15)}) {
            FourierPlan plan(d);
            Rng rng(7);
            for (int rep = 0; rep < 10; ++rep) {
                const GroupFunction g = random_function(d, rng);
                REQUIRE(max_dev(plan.idft(plan.dft_fast(g)).values, g.values) <= kTol);
            }
        }
    }
    SECTION("Parseval under the unnormalized forward convention") {
        const Domain d = Domain::make_ring(105);
        FourierPlan plan(d);
        Rng rng(13);
        const GroupFunction g = random_function(d, rng);
        const auto spec = plan.dft_fast(g);
        double sum_f = 0, sum_s = 0;
        for (const auto& v : g.values) sum_f += std::norm(v);
        for (const auto& v : spec.values) sum_s += std::norm(v);
        CHECK(std::abs(sum_s - 105.0 * sum_f) <= 1e-7);
    }
}

TEST_CASE("convolution") {
    const Domain z9 = Domain::make_ring(9);
    Rng rng(19);
    const GroupFunction g = random_function(z9, rng);
    SECTION("delta_{-s} * g is the s-translate") {
        const std::uint64_t s = 4;
        const auto conv = convolve(delta_function(z9, z9.negate(s)), g);
        REQUIRE(max_dev(conv.values, translate(g, s).values) <= kTol);
    }
    SECTION("delta_0 is the convolution identity") {
        REQUIRE(max_dev(convolve(delta_function(z9, 0), g).values, g.values) <= kTol);
    }
    SECTION("transform turns convolution into pointwise product") {
        for (const auto& d : {z9, Domain::make_field(2, 4)}) {
            FourierPlan plan(d);
            Rng rng2(23);
            const GroupFunction a = random_function(d, rng2);
            const GroupFunction b = random_function(d, rng2);
            const auto lhs = plan.dft_fast(convolve(a, b));
            const auto fa = plan.dft_fast(a);
            const auto fb = plan.dft_fast(b);
            for (std::uint64_t y = 0; y < d.size(); ++y)
                REQUIRE(std::abs(lhs.values[y] - fa.values[y] * fb.values[y]) <= 1e-8);
        }
    }
}

TEST_CASE("deconvolution") {
    SECTION("recovers the shifted delta for the quadratic character of F_5") {
        const Domain f5 = Domain::make_field(5, 1);
        const GroupFunction g = render_character(mult_character_field(f5, 2));
        const std::uint64_t s = 3;
        const GroupFunction out = deconvolve(translate(g, s), g);
        // unique max-magnitude entry at -3 = 2, carrying beta = 4/5 of the mass
        std::uint64_t argmax = 0;
        double best = -1, total = 0;
        for (std::uint64_t x = 0; x < 5; ++x) {
            total += std::norm(out.values[x]);
            if (std::abs(out.values[x]) > best) { best = std::abs(out.values[x]); argmax = x; }
        }
        CHECK(argmax == 2);
        CHECK(std::abs(std::norm(out.values[2]) / total - 0.8) <= kTol);
    }
    SECTION("full-support g^ gives exact deltas") {
        const Domain z9 = Domain::make_ring(9);
        const GroupFunction d0 = delta_function(z9, 0);
        const GroupFunction f = delta_function(z9, 7); // delta_{-s} with s = 2
        REQUIRE(max_dev(deconvolve(f, d0).values, f.values) <= kTol);
        Rng rng(29);
        const GroupFunction g = random_function(z9, rng); // generically full spectral support
        REQUIRE(max_dev(deconvolve(g, g).values, delta_function(z9, 0).values) <= kTol);
    }
    SECTION("identically zero spectrum is an error") {
        const Domain z9 = Domain::make_ring(9);
        const GroupFunction zero = make_function(z9, std::vector<Complex>(9, Complex(0, 0)));
        CHECK_THROWS_AS(deconvolve(delta_function(z9, 1), zero), Error);
    }
}

TEST_CASE("closed-form spectra of multiplicative characters") {
    SECTION("field pattern: conj(chi(a)) with zero at psi_0") {
        const Domain f5 = Domain::make_field(5, 1);
        const MultCharacter chi2 = mult_character_field(f5, 2);
        const auto spec = dft_naive(render_character(chi2));
        CHECK(std::abs(closed_form_spectrum_phase(chi2, 0)) == 0.0);
        // value at psi_2 is conj(chi_2(2)) = -1 times the value at psi_1
        CHECK(std::abs(spec.values[2] / spec.values[1] - Complex(-1, 0)) <= kTol);
        CHECK(std::abs(closed_form_spectrum_phase(chi2, 2) - Complex(-1, 0)) <= kTol);
    }
    SECTION("Z/9, chi_3 (period 3): zeros exactly where 3 does not divide y") {
        const Domain z9 = Domain::make_ring(9);
        const MultCharacter chi3 = mult_character(z9, 3);
        const auto spec = dft_naive(render_character(chi3));
        for (const std::uint64_t y : {1ull, 2ull, 4ull, 5ull, 7ull, 8ull}) {
            CHECK(std::abs(spec.values[y]) <= kTol);
            CHECK(std::abs(closed_form_spectrum_phase(chi3, y)) == 0.0);
        }
        for (const std::uint64_t y : {3ull, 6ull}) CHECK(std::abs(spec.values[y]) > 0.5);
    }
    SECTION("closed form times measured constant reproduces the oracle elementwise") {
        for (const auto& d : {Domain::make_field(3, 2), Domain::make_field(7, 1),
                              Domain::make_ring(45), Domain::make_ring(27), Domain::make_ring(105)}) {
            FourierPlan plan(d);
            for (const auto& chi : enumerate_mult_characters(d)) {
                if (!chi.admissible()) continue;
                const auto spec = plan.dft_naive(render_character(chi));
                const Complex k = gauss_sum(chi);
                for (std::uint64_t y = 0; y < d.size(); ++y)
                    REQUIRE(std::abs(spec.values[y] - k * closed_form_spectrum_phase(chi, y)) <= kTol);
            }
        }
    }
    SECTION("trivial characters are rejected") {
        const Domain f5 = Domain::make_field(5, 1);
        CHECK_THROWS_AS(closed_form_spectrum_phase(mult_character_field(f5, 0), 1), Error);
        const Domain z45 = Domain::make_ring(45);
        CHECK_THROWS_AS(closed_form_spectrum_phase(mult_character_ring(z45, {0, 1}), 1), Error);
    }
}

TEST_CASE("Gauss sums") {
    SECTION("F_5 quadratic: sqrt(5), real and positive") {
        const Complex gs = gauss_sum(mult_character_field(Domain::make_field(5, 1), 2));
        CHECK(std::abs(gs - Complex(std::sqrt(5.0), 0)) <= kTol);
    }
    SECTION("F_7 quadratic: i sqrt(7) (p = 3 mod 4)") {
        const Complex gs = gauss_sum(mult_character_field(Domain::make_field(7, 1), 3));
        CHECK(std::abs(gs - Complex(0, std::sqrt(7.0))) <= kTol);
    }
    SECTION("magnitude sqrt(q) for every nontrivial character of F_9") {
        const Domain f9 = Domain::make_field(3, 2);
        for (const auto& chi : enumerate_mult_characters(f9)) {
            if (chi.is_trivial()) continue;
            CHECK(std::abs(std::abs(gauss_sum(chi)) - 3.0) <= kTol);
        }
    }
    SECTION("trivial character is rejected") {
        CHECK_THROWS_AS(gauss_sum(mult_character_field(Domain::make_field(5, 1), 0)), Error);
    }
}
