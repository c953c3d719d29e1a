#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cosetforge/hidden_coset.hpp"
#include "cosetforge/serialization.hpp"
#include "cosetforge/shift_engine.hpp"
#include "cosetforge/verify_suite.hpp"

namespace cosetforge {

enum class Mode { field_shift, zn_shift, hsp, coset, gauss_table, verify, bench, dump_spectrum, deconv };
enum class Format { json, csv };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::field_shift: return "field-shift";
        case Mode::zn_shift: return "zn-shift";
        case Mode::hsp: return "hsp";
        case Mode::coset: return "coset";
        case Mode::gauss_table: return "gauss-table";
        case Mode::verify: return "verify";
        case Mode::bench: return "bench";
        case Mode::dump_spectrum: return "dump-spectrum";
        case Mode::deconv: return "deconv";
    }
    return "?";
}

inline Mode mode_from_name(const std::string& s) {
    for (const Mode m : {Mode::field_shift, Mode::zn_shift, Mode::hsp, Mode::coset, Mode::gauss_table,
                         Mode::verify, Mode::bench, Mode::dump_spectrum, Mode::deconv})
        if (s == mode_name(m)) return m;
    fail(Errc::config, "unknown mode: " + s);
}

/// One experiment invocation. The seed fully determines all randomness:
/// trial t uses Rng::stream(seed, t), a random shift uses
/// Rng::stream(seed, 2^64-1). Identical configs produce byte-identical JSON
/// (bench wall-clock fields are measurement outputs and the one exception).
struct ExperimentConfig {
    Mode mode = Mode::verify;
    std::optional<std::uint64_t> p;
    std::optional<std::uint32_t> m;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> character_index; ///< linear index (see docs)
    std::optional<std::uint64_t> shift;
    bool shift_random = false;
    std::uint64_t trials = 20000;
    std::uint64_t seed = 0;
    std::optional<unsigned> quantize_bits;
    unsigned confidence = 10;
    bool coset_brute_check = false; ///< coset mode: also run the brute-force oracle
    std::vector<std::uint64_t> bench_sizes = {45, 225, 2187, 14175};
};

namespace experiment_detail {

inline Domain resolve_domain(const ExperimentConfig& cfg, bool want_field) {
    if (want_field) {
        if (!cfg.p) fail(Errc::config, "this mode needs --p (and optionally --m)");
        return Domain::make_field(*cfg.p, cfg.m.value_or(1));
    }
    if (!cfg.n) fail(Errc::config, "this mode needs --n");
    return Domain::make_ring(*cfg.n);
}

inline Domain resolve_any_domain(const ExperimentConfig& cfg) {
    if (cfg.n && cfg.p) fail(Errc::config, "give either --n or --p/--m, not both");
    if (cfg.p) return Domain::make_field(*cfg.p, cfg.m.value_or(1));
    if (cfg.n) return Domain::make_ring(*cfg.n);
    fail(Errc::config, "this mode needs a domain (--p/--m or --n)");
}

inline MultCharacter resolve_character(const ExperimentConfig& cfg, const Domain& d) {
    if (!cfg.character_index) fail(Errc::config, "this mode needs --char");
    return mult_character(d, *cfg.character_index);
}

inline std::uint64_t resolve_shift(const ExperimentConfig& cfg, const Domain& d) {
    if (cfg.shift_random) {
        Rng rng = Rng::stream(cfg.seed, ~std::uint64_t{0});
        return rng.below(d.size());
    }
    if (!cfg.shift) fail(Errc::config, "this mode needs --shift (an element index, or 'random')");
    if (*cfg.shift >= d.size()) fail(Errc::config, "shift out of range");
    return *cfg.shift;
}

inline Json ci99(double rate, std::uint64_t trials) {
    const double half = 2.5758293 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
    return Json::array({std::max(0.0, rate - half), std::min(1.0, rate + half)});
}

inline Json shift_report(const ExperimentConfig& cfg, const Domain& domain) {
    const MultCharacter chi = resolve_character(cfg, domain);
    const std::uint64_t s = resolve_shift(cfg, domain);
    ShiftSimulator sim(ShiftInstance::from_character(chi, s), cfg.quantize_bits);

    std::uint64_t aborts = 0, successes = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed, t);
        const RecoveryOutcome outcome = sim.run_trial(rng);
        if (outcome.aborted_at_support) ++aborts;
        if (outcome.success) ++successes;
    }
    const double empirical = static_cast<double>(successes) / static_cast<double>(cfg.trials);
    const Rational rate = sim.alpha() * sim.beta();

    Json rep;
    rep["mode"] = mode_name(cfg.mode);
    rep["domain"] = to_json(domain);
    rep["characterIndex"] = *cfg.character_index;
    rep["character"] = to_json(chi);
    rep["shift"] = s;
    rep["shiftWasRandom"] = cfg.shift_random;
    rep["seed"] = cfg.seed;
    rep["trials"] = cfg.trials;
    rep["aborts"] = aborts;
    rep["successes"] = successes;
    rep["exactAlpha"] = to_json(sim.alpha());
    rep["exactBeta"] = to_json(sim.beta());
    rep["exactRate"] = to_json(rate);
    rep["empiricalRate"] = empirical;
    rep["ci99"] = ci99(empirical, cfg.trials);
    rep["successMassAtMinusShift"] = sim.success_mass();
    if (cfg.quantize_bits) rep["quantizeBits"] = *cfg.quantize_bits;
    rep["conditions"] = Json{{"condition1", sim.conditions().condition1},
                             {"condition2", sim.conditions().condition2},
                             {"closedFormAvailable", sim.conditions().closed_form_available}};
    return rep;
}

inline Json hsp_report(const ExperimentConfig& cfg) {
    const Domain domain = resolve_domain(cfg, false);
    const MultCharacter chi = resolve_character(cfg, domain);
    const std::uint64_t s = resolve_shift(cfg, domain);
    const GroupFunction f = translate(render_character(chi), s);
    Rng rng(cfg.seed);
    const HspResult hsp = fourier_sample_hsp(f, rng, cfg.confidence);
    Json rep;
    rep["mode"] = mode_name(cfg.mode);
    rep["n"] = domain.size();
    rep["characterIndex"] = *cfg.character_index;
    rep["shift"] = s;
    rep["seed"] = cfg.seed;
    rep["T"] = hsp.subgroup.period;
    rep["subgroupSize"] = hsp.subgroup.size();
    rep["characterPeriod"] = *chi.period;
    rep["hspSamples"] = hsp.samples_used;
    rep["samples"] = hsp.samples;
    return rep;
}

inline Json coset_report(const ExperimentConfig& cfg) {
    const Domain domain = resolve_domain(cfg, false);
    const MultCharacter chi = resolve_character(cfg, domain);
    const std::uint64_t s = resolve_shift(cfg, domain);
    const GroupFunction g = render_character(chi);
    const GroupFunction f = translate(g, s);
    Rng rng(cfg.seed);
    const CosetSolveResult res = solve_hidden_coset(chi, f, rng, cfg.confidence);
    Json rep;
    rep["mode"] = mode_name(cfg.mode);
    rep["n"] = domain.size();
    rep["characterIndex"] = *cfg.character_index;
    rep["shift"] = s;
    rep["seed"] = cfg.seed;
    rep["T"] = res.answer.period;
    rep["representative"] = *res.answer.representative;
    rep["members"] = res.answer.members;
    rep["hspSamples"] = res.hsp_samples;
    rep["attempts"] = res.attempts;
    if (cfg.coset_brute_check) {
        const CosetAnswer truth = brute_force_coset(g, f);
        rep["bruteMembers"] = truth.members;
        rep["bruteAgrees"] = truth == res.answer;
        rep["bruteNoShift"] = truth.no_shift();
    }
    return rep;
}

inline Json gauss_table_report(const ExperimentConfig& cfg) {
    const Domain domain = resolve_any_domain(cfg);
    Json rows = Json::array();
    for (const auto& chi : enumerate_mult_characters(domain)) {
        Json row;
        row["index"] = mult_char_linear_index(chi);
        if (domain.is_ring()) {
            row["indices"] = chi.indices;
            row["period"] = *chi.period;
        }
        row["admissible"] = chi.admissible();
        const ConditionReport rep = check_conditions(render_character(chi));
        row["alpha"] = to_json(rep.alpha);
        row["beta"] = to_json(rep.beta);
        if (chi.admissible()) {
            const Complex gs = gauss_sum(chi);
            row["gaussSum"] = to_json(gs);
            row["gaussAbs"] = std::abs(gs);
        } else {
            row["gaussSum"] = nullptr;
            row["gaussAbs"] = nullptr;
        }
        rows.push_back(std::move(row));
    }
    Json rep;
    rep["mode"] = mode_name(cfg.mode);
    rep["domain"] = to_json(domain);
    rep["rows"] = std::move(rows);
    return rep;
}

inline Json verify_report(const ExperimentConfig& cfg) {
    const auto results = run_verify_suite();
    Json rows = Json::array();
    bool all = true;
    for (const auto& r : results) {
        rows.push_back(Json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        all = all && r.pass;
    }
    Json rep;
    rep["mode"] = mode_name(cfg.mode);
    rep["results"] = std::move(rows);
    rep["allPassed"] = all;
    return rep;
}

inline Json bench_report(const ExperimentConfig& cfg) {
    using Clock = std::chrono::steady_clock;
    Json rows = Json::array();
    for (const std::uint64_t n : cfg.bench_sizes) {
        const Domain d = Domain::make_ring(n);
        FourierPlan plan(d);
        Rng rng(cfg.seed);
        GroupFunction g{d, {}, std::nullopt};
        g.values.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i)
            g.values.emplace_back(rng.next_double() - 0.5, rng.next_double() - 0.5);

        const auto t0 = Clock::now();
        const SpectrumFunction naive = plan.dft_naive(g);
        const auto t1 = Clock::now();
        const SpectrumFunction fast = plan.dft_fast(g);
        const auto t2 = Clock::now();

        double dev = 0;
        for (std::uint64_t y = 0; y < n; ++y) dev = std::max(dev, std::abs(naive.values[y] - fast.values[y]));
        if (dev > 1e-9) fail(Errc::verification, "fast/naive disagreement during bench");

        Json row;
        row["size"] = n;
        row["naiveMs"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
        row["fastMs"] = std::chrono::duration<double, std::milli>(t2 - t1).count();
        row["maxDeviation"] = dev;
        rows.push_back(std::move(row));
    }
    Json rep;
    rep["mode"] = mode_name(cfg.mode);
    rep["seed"] = cfg.seed;
    rep["rows"] = std::move(rows);
    return rep;
}

inline Json dump_spectrum_report(const ExperimentConfig& cfg) {
    const Domain domain = resolve_any_domain(cfg);
    const MultCharacter chi = resolve_character(cfg, domain);
    const GroupFunction g = render_character(chi);
    const SpectrumFunction spec = FourierPlan(domain).dft_fast(g);
    Json rep;
    rep["mode"] = mode_name(cfg.mode);
    rep["domain"] = to_json(domain);
    rep["characterIndex"] = *cfg.character_index;
    Json fn = Json::array(), sp = Json::array();
    for (const auto& v : g.values) fn.push_back(to_json(v));
    for (const auto& v : spec.values) sp.push_back(to_json(v));
    rep["function"] = std::move(fn);
    rep["spectrum"] = std::move(sp);
    return rep;
}

inline Json deconv_report(const ExperimentConfig& cfg) {
    const Domain domain = resolve_any_domain(cfg);
    const MultCharacter chi = resolve_character(cfg, domain);
    const std::uint64_t s = resolve_shift(cfg, domain);
    const GroupFunction g = render_character(chi);
    const GroupFunction f = translate(g, s);
    const GroupFunction dec = deconvolve(f, g);
    const auto pinv_path = apply_pseudoinverse(g, f.values);

    std::uint64_t argmax = 0;
    double best = -1, total = 0, path_dev = 0;
    for (std::uint64_t x = 0; x < domain.size(); ++x) {
        const double mag = std::abs(dec.values[x]);
        total += mag * mag;
        if (mag > best) { best = mag; argmax = x; }
        path_dev = std::max(path_dev, std::abs(dec.values[x] - pinv_path[domain.negate(x)]));
    }
    const std::uint64_t minus_s = domain.negate(s);
    Json rep;
    rep["mode"] = mode_name(cfg.mode);
    rep["domain"] = to_json(domain);
    rep["characterIndex"] = *cfg.character_index;
    rep["shift"] = s;
    rep["argmax"] = argmax;
    rep["argmaxIsMinusShift"] = argmax == minus_s;
    rep["recoveredShift"] = domain.negate(argmax);
    rep["massAtMinusShift"] = std::norm(dec.values[minus_s]) / total;
    rep["pseudoinversePathDeviation"] = path_dev;
    rep["exactBeta"] = to_json(check_conditions(g).beta);
    return rep;
}

} // namespace experiment_detail

/// Executes the configured mode and returns the canonical JSON report.
inline Json run_experiment(const ExperimentConfig& cfg) {
    using namespace experiment_detail;
    switch (cfg.mode) {
        case Mode::field_shift: return shift_report(cfg, resolve_domain(cfg, true));
        case Mode::zn_shift: return shift_report(cfg, resolve_domain(cfg, false));
        case Mode::hsp: return hsp_report(cfg);
        case Mode::coset: return coset_report(cfg);
        case Mode::gauss_table: return gauss_table_report(cfg);
        case Mode::verify: return verify_report(cfg);
        case Mode::bench: return bench_report(cfg);
        case Mode::dump_spectrum: return dump_spectrum_report(cfg);
        case Mode::deconv: return deconv_report(cfg);
    }
    fail(Errc::config, "unhandled mode");
}

/// CSV is a fixed-column projection of the JSON report; the header row
/// documents the columns. JSON stays the canonical format.
inline std::string csv_projection(const Json& rep) {
    std::ostringstream out;
    out.precision(17);
    const std::string mode = rep.at("mode").get<std::string>();
    const auto num = [](const Json& j) { return j.at("value").get<double>(); };
    if (mode == "field-shift" || mode == "zn-shift") {
        out << "mode,domain,characterIndex,shift,seed,trials,aborts,successes,"
               "exactAlpha,exactBeta,exactRate,empiricalRate,ci99lo,ci99hi\n";
        out << mode << ',' << rep.at("domain").at("type").get<std::string>()
            << (rep.at("domain").contains("n") ? rep.at("domain").at("n").get<std::uint64_t>()
                                               : rep.at("domain").at("p").get<std::uint64_t>())
            << ',' << rep.at("characterIndex") << ',' << rep.at("shift") << ',' << rep.at("seed")
            << ',' << rep.at("trials") << ',' << rep.at("aborts") << ',' << rep.at("successes") << ','
            << num(rep.at("exactAlpha")) << ',' << num(rep.at("exactBeta")) << ','
            << num(rep.at("exactRate")) << ',' << rep.at("empiricalRate").get<double>() << ','
            << rep.at("ci99")[0].get<double>() << ',' << rep.at("ci99")[1].get<double>() << '\n';
    } else if (mode == "gauss-table") {
        out << "index,admissible,period,alpha,beta,gaussRe,gaussIm,gaussAbs\n";
        for (const auto& row : rep.at("rows")) {
            out << row.at("index") << ',' << row.at("admissible").get<bool>() << ','
                << (row.contains("period") ? std::to_string(row.at("period").get<std::uint64_t>()) : "")
                << ',' << num(row.at("alpha")) << ',' << num(row.at("beta")) << ',';
            if (row.at("gaussSum").is_null())
                out << ",,";
            else
                out << row.at("gaussSum")[0].get<double>() << ',' << row.at("gaussSum")[1].get<double>()
                    << ',' << row.at("gaussAbs").get<double>();
            out << '\n';
        }
    } else if (mode == "verify") {
        out << "name,pass,detail\n";
        for (const auto& row : rep.at("results"))
            out << row.at("name").get<std::string>() << ',' << row.at("pass").get<bool>() << ",\""
                << row.at("detail").get<std::string>() << "\"\n";
    } else if (mode == "bench") {
        out << "size,naiveMs,fastMs,maxDeviation\n";
        for (const auto& row : rep.at("rows"))
            out << row.at("size") << ',' << row.at("naiveMs").get<double>() << ','
                << row.at("fastMs").get<double>() << ',' << row.at("maxDeviation").get<double>() << '\n';
    } else if (mode == "coset") {
        out << "n,characterIndex,shift,seed,T,representative,members,hspSamples,attempts\n";
        out << rep.at("n") << ',' << rep.at("characterIndex") << ',' << rep.at("shift") << ','
            << rep.at("seed") << ',' << rep.at("T") << ',' << rep.at("representative") << ",\"";
        const auto& members = rep.at("members");
        for (std::size_t i = 0; i < members.size(); ++i)
            out << (i ? " " : "") << members[i].get<std::uint64_t>();
        out << "\"," << rep.at("hspSamples") << ',' << rep.at("attempts") << '\n';
    } else if (mode == "hsp") {
        out << "n,characterIndex,shift,seed,T,subgroupSize,hspSamples\n";
        out << rep.at("n") << ',' << rep.at("characterIndex") << ',' << rep.at("shift") << ','
            << rep.at("seed") << ',' << rep.at("T") << ',' << rep.at("subgroupSize") << ','
            << rep.at("hspSamples") << '\n';
    } else if (mode == "deconv") {
        out << "characterIndex,shift,argmax,argmaxIsMinusShift,massAtMinusShift,pseudoinversePathDeviation\n";
        out << rep.at("characterIndex") << ',' << rep.at("shift") << ',' << rep.at("argmax") << ','
            << rep.at("argmaxIsMinusShift").get<bool>() << ',' << rep.at("massAtMinusShift").get<double>()
            << ',' << rep.at("pseudoinversePathDeviation").get<double>() << '\n';
    } else if (mode == "dump-spectrum") {
        out << "index,functionRe,functionIm,spectrumRe,spectrumIm\n";
        const auto& fn = rep.at("function");
        const auto& sp = rep.at("spectrum");
        for (std::size_t i = 0; i < fn.size(); ++i)
            out << i << ',' << fn[i][0].get<double>() << ',' << fn[i][1].get<double>() << ','
                << sp[i][0].get<double>() << ',' << sp[i][1].get<double>() << '\n';
    } else {
        fail(Errc::config, "no CSV projection for mode " + mode);
    }
    return out.str();
}

} // namespace cosetforge
