#pragma once

#include "qcoin/analysis.hpp"
#include "qcoin/coin.hpp"
#include "qcoin/patterns.hpp"
#include "qcoin/probability.hpp"
#include "qcoin/sampling.hpp"
#include "qcoin/sequences.hpp"
#include "qcoin/statevec.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <complex>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace qcoin::cli {

// Command-line surface. Every subcommand validates flags first, computes
// through the library, and emits in one of three formats. Exit codes:
// 0 success, 1 computation error (budget, pole, mismatch), 2 usage error.

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Table };

inline std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

inline Json json_rational(const Rational& q) {
    return Json{{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

inline std::string table_rational(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, sep)) out.push_back(item);
    return out;
}

inline CoinSpec parse_coin(const std::string& csv, bool exact) {
    const auto tokens = split(csv, ',');
    if (exact) {
        std::vector<Rational> probs;
        for (const auto& token : tokens) probs.push_back(parse_rational(token));
        return CoinSpec::from_rationals(std::move(probs));
    }
    std::vector<double> probs;
    for (const auto& token : tokens) probs.push_back(to_double(parse_rational(token)));
    return CoinSpec::from_reals(std::move(probs));
}

inline std::complex<double> parse_complex(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.empty() || parts.size() > 2) {
        throw std::invalid_argument("complex number must be 're' or 're,im'");
    }
    const double re = std::stod(parts[0]);
    const double im = parts.size() == 2 ? std::stod(parts[1]) : 0.0;
    return {re, im};
}

inline PatternSpec make_pattern(int d, int run_length, int target, const std::string& position,
                                int k) {
    if (position == "end") return PatternSpec::end(d, run_length, target);
    if (position == "anywhere") return PatternSpec::anywhere(d, run_length, target);
    if (position == "at") return PatternSpec::at(d, run_length, k, target);
    throw std::invalid_argument("position must be end, at, or anywhere");
}

inline const char* position_name(const PatternSpec& spec) {
    switch (spec.position) {
        case Position::End: return "end";
        case Position::At: return "at";
        case Position::Anywhere: return "anywhere";
    }
    return "?";
}

struct Emitter {
    std::ostream& out;
    Format format;

    void json_value(const Json& value) const { out << value.dump() << "\n"; }

    void big_integer(const BigInt& value) const {
        if (format == Format::Json) {
            json_value(Json{{"value", value.str()}});
        } else {
            out << value.str() << "\n";
        }
    }

    void rational(const Rational& value) const {
        if (format == Format::Json) {
            json_value(json_rational(value));
        } else {
            out << table_rational(value) << "\n";
        }
    }

    void real(double value) const {
        if (format == Format::Json) {
            json_value(Json{{"value", value}});
        } else {
            out << format_double(value) << "\n";
        }
    }

    void integer_list(const std::vector<std::uint64_t>& values) const {
        if (format == Format::Json) {
            json_value(Json(values));
        } else {
            for (auto v : values) out << v << "\n";
        }
    }

    void string_list(const std::vector<std::string>& values) const {
        if (format == Format::Json) {
            json_value(Json(values));
        } else {
            for (const auto& v : values) out << v << "\n";
        }
    }

    // rows of (index, exact term); table/csv get one record per term
    void indexed_rationals(const std::vector<std::pair<long, Rational>>& rows) const {
        if (format == Format::Json) {
            Json array = Json::array();
            for (const auto& [n, value] : rows) {
                array.push_back(Json{{"n", n}, {"num", numerator(value).str()},
                                     {"den", denominator(value).str()}});
            }
            json_value(array);
        } else if (format == Format::Csv) {
            for (const auto& [n, value] : rows) out << n << "," << table_rational(value) << "\n";
        } else {
            for (const auto& [n, value] : rows) out << n << "  " << table_rational(value) << "\n";
        }
    }
};

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"repeated-pattern statistics of qudit coin measurements"};
    app.require_subcommand(1);

    Format format = Format::Table;
    const std::map<std::string, Format> format_map{
        {"json", Format::Json}, {"csv", Format::Csv}, {"table", Format::Table}};
    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case));
    };

    // ---- seq ----------------------------------------------------------
    auto* seq = app.add_subcommand("seq", "integer sequence values and identities");
    std::string seq_kind = "fibonacci";
    long seq_n = 0;
    long seq_max_n = -1;
    long seq_m_index = 1;
    int seq_N = 2;
    int seq_mult = 1;
    seq->add_option("--kind", seq_kind, "fibonacci|lucas|tribonacci|nbonacci|gen|fib-product|fib-convolution")
        ->check(CLI::IsMember({"fibonacci", "lucas", "tribonacci", "nbonacci", "gen",
                               "fib-product", "fib-convolution"}));
    seq->add_option("--n", seq_n, "index (may be negative for fibonacci/lucas)");
    seq->add_option("--max-n", seq_max_n, "list indices 0..max-n instead of one value");
    seq->add_option("--N", seq_N, "recurrence depth for nbonacci/gen");
    seq->add_option("--m", seq_m_index, "first index for fib-product; multiplier uses --mult");
    seq->add_option("--mult", seq_mult, "multiplier for gen");
    add_format(seq);
    seq->callback([&] {
        detail::Emitter emit{out, format};
        const auto value_at = [&](long n) -> BigInt {
            if (seq_kind == "fibonacci") return fibonacci(n);
            if (seq_kind == "lucas") return lucas(n);
            if (seq_kind == "tribonacci") return tribonacci(n);
            if (seq_kind == "nbonacci") return nbonacci(seq_N, n);
            if (seq_kind == "gen") return gen_nbonacci(seq_N, seq_mult, n);
            if (seq_kind == "fib-product") return fibonacci_product_lucas(seq_m_index, n);
            return fibonacci_convolution_lucas(n);
        };
        if (seq_max_n >= 0) {
            std::vector<std::string> values;
            for (long n = 0; n <= seq_max_n; ++n) values.push_back(value_at(n).str());
            emit.string_list(values);
        } else {
            emit.big_integer(value_at(seq_n));
        }
    });

    // ---- pattern-flag bundle shared by count/enumerate/decimal/project/simulate
    struct PatternFlags {
        int d = 2;
        int N = 2;
        int target = 1;
        std::string position = "end";
        int k = 1;
    };
    const auto add_pattern_flags = [](CLI::App* cmd, PatternFlags& flags, bool with_d = true) {
        if (with_d) cmd->add_option("--d", flags.d, "alphabet size");
        cmd->add_option("--N", flags.N, "run length");
        cmd->add_option("--target", flags.target, "target symbol");
        cmd->add_option("--position", flags.position, "end|at|anywhere")
            ->check(CLI::IsMember({"end", "at", "anywhere"}));
        cmd->add_option("--k", flags.k, "1-based run start for --position at");
    };

    // ---- count --------------------------------------------------------
    auto* count = app.add_subcommand("count", "brute-force count of allowed outcome strings");
    PatternFlags count_flags;
    int count_n = 0;
    add_pattern_flags(count, count_flags);
    count->add_option("--n", count_n, "string length")->required();
    add_format(count);
    count->callback([&] {
        const auto spec = detail::make_pattern(count_flags.d, count_flags.N, count_flags.target,
                                               count_flags.position, count_flags.k);
        detail::Emitter{out, format}.big_integer(count_allowed(count_n, spec));
    });

    // ---- enumerate ----------------------------------------------------
    auto* enumerate = app.add_subcommand("enumerate", "list allowed outcome strings");
    PatternFlags enum_flags;
    int enum_n = 0;
    add_pattern_flags(enumerate, enum_flags);
    enumerate->add_option("--n", enum_n, "string length")->required();
    add_format(enumerate);
    enumerate->callback([&] {
        const auto spec = detail::make_pattern(enum_flags.d, enum_flags.N, enum_flags.target,
                                               enum_flags.position, enum_flags.k);
        std::vector<std::string> rows;
        for (const auto& s : enumerate_allowed(enum_n, spec)) rows.push_back(s.str());
        detail::Emitter{out, format}.string_list(rows);
    });

    // ---- decimal ------------------------------------------------------
    auto* decimal = app.add_subcommand("decimal", "allowed binary strings as integers");
    PatternFlags decimal_flags;
    int decimal_n = 0;
    add_pattern_flags(decimal, decimal_flags);
    decimal->add_option("--n", decimal_n, "string length")->required();
    add_format(decimal);
    decimal->callback([&] {
        const auto spec = detail::make_pattern(decimal_flags.d, decimal_flags.N,
                                               decimal_flags.target, decimal_flags.position,
                                               decimal_flags.k);
        detail::Emitter{out, format}.integer_list(decimal_states(decimal_n, spec));
    });

    // ---- prob ---------------------------------------------------------
    auto* prob = app.add_subcommand("prob", "pattern probabilities");
    prob->require_subcommand(1);

    auto* prob_end = prob->add_subcommand("end", "run only in the last N trials, uniform coin");
    int pe_d = 2, pe_N = 2;
    long pe_n = 0;
    bool pe_exact = true;
    prob_end->add_option("--d", pe_d, "alphabet size");
    prob_end->add_option("--N", pe_N, "run length");
    prob_end->add_option("--n", pe_n, "trial count")->required();
    prob_end->add_flag("--exact,!--float", pe_exact, "exact rational (default) or binary64");
    add_format(prob_end);
    prob_end->callback([&] {
        const Rational p = prob_end_uniform(pe_d, pe_N, pe_n);
        detail::Emitter emit{out, format};
        pe_exact ? emit.rational(p) : emit.real(to_double(p));
    });

    auto* prob_pos = prob->add_subcommand("position", "run at position k only, fair qubit coin");
    int pp_N = 2;
    long pp_n = 0, pp_k = 1;
    prob_pos->add_option("--N", pp_N, "run length");
    prob_pos->add_option("--n", pp_n, "trial count")->required();
    prob_pos->add_option("--k", pp_k, "1-based run start")->required();
    add_format(prob_pos);
    prob_pos->callback([&] {
        detail::Emitter{out, format}.rational(prob_position(pp_N, pp_n, pp_k));
    });

    auto* prob_any = prob->add_subcommand("anywhere", "run exactly once anywhere, fair qubit coin");
    int pa_N = 2;
    long pa_n = 0;
    prob_any->add_option("--N", pa_N, "run length");
    prob_any->add_option("--n", pa_n, "trial count")->required();
    add_format(prob_any);
    prob_any->callback([&] {
        detail::Emitter{out, format}.rational(prob_anywhere(pa_N, pa_n));
    });

    auto* prob_gen = prob->add_subcommand("generic", "run at the end for an arbitrary coin");
    std::string pg_probs;
    int pg_target = 1, pg_N = 2;
    long pg_n = 0;
    bool pg_exact = true;
    prob_gen->add_option("--probs", pg_probs, "comma-separated probabilities (a/b or decimal)")
        ->required();
    prob_gen->add_option("--target", pg_target, "target symbol");
    prob_gen->add_option("--N", pg_N, "run length");
    prob_gen->add_option("--n", pg_n, "trial count")->required();
    prob_gen->add_flag("--exact,!--float", pg_exact, "exact rational (default) or binary64");
    add_format(prob_gen);
    prob_gen->callback([&] {
        const CoinSpec coin = detail::parse_coin(pg_probs, pg_exact);
        detail::Emitter emit{out, format};
        if (pg_exact) {
            emit.rational(prob_end_generic(coin, pg_target, pg_N, pg_n));
        } else {
            emit.real(prob_end_generic_real(coin, pg_target, pg_N, pg_n));
        }
    });

    auto* prob_bloch = prob->add_subcommand("bloch", "qubit coin at Bloch angle theta");
    double pb_theta = 0.0, pb_phi = 0.0;
    int pb_N = 2;
    long pb_n = 0;
    prob_bloch->add_option("--theta", pb_theta, "polar angle in radians")->required();
    prob_bloch->add_option("--phi", pb_phi, "azimuthal angle (does not affect probabilities)");
    prob_bloch->add_option("--N", pb_N, "run length");
    prob_bloch->add_option("--n", pb_n, "trial count")->required();
    add_format(prob_bloch);
    prob_bloch->callback([&] {
        (void)pb_phi;
        detail::Emitter{out, format}.real(prob_end_bloch(pb_theta, pb_N, pb_n));
    });

    auto* prob_super = prob->add_subcommand("superposition",
                                            "single-trial probabilities of a|+> + b|->");
    std::string ps_alpha, ps_beta;
    prob_super->add_option("--alpha", ps_alpha, "complex amplitude 're' or 're,im'")->required();
    prob_super->add_option("--beta", ps_beta, "complex amplitude 're' or 're,im'")->required();
    add_format(prob_super);
    prob_super->callback([&] {
        const auto [p0, p1] = superposition_probs(detail::parse_complex(ps_alpha),
                                                  detail::parse_complex(ps_beta));
        if (format == Format::Json) {
            detail::Emitter{out, format}.json_value(Json{{"p0", p0}, {"p1", p1}});
        } else if (format == Format::Csv) {
            out << format_double(p0) << "," << format_double(p1) << "\n";
        } else {
            out << "p0 " << format_double(p0) << "\np1 " << format_double(p1) << "\n";
        }
    });

    // ---- genfun -------------------------------------------------------
    auto* genfun = app.add_subcommand("genfun", "generating functions of the probability series");
    std::string gf_kind = "duplicated-prob";
    std::string gf_x;
    int gf_terms = 0;
    bool gf_exact = true;
    genfun->add_option("--kind", gf_kind, "duplicated-prob|tribonacci-numbers|tribonacci-prob")
        ->check(CLI::IsMember({"duplicated-prob", "tribonacci-numbers", "tribonacci-prob"}));
    genfun->add_option("--x", gf_x, "evaluation point (a/b or decimal)")->required();
    genfun->add_option("--terms", gf_terms, "also evaluate the truncated series with this many terms");
    genfun->add_flag("--exact,!--float", gf_exact, "exact rational (default) or binary64");
    add_format(genfun);
    genfun->callback([&] {
        const Rational x = parse_rational(gf_x);
        const auto closed_exact = [&](const Rational& v) -> Rational {
            if (gf_kind == "duplicated-prob") return genfun_duplicated_prob(v);
            if (gf_kind == "tribonacci-numbers") return genfun_tribonacci_numbers(v);
            return genfun_tribonacci_prob(v);
        };
        const auto series_exact = [&](const Rational& v, int terms) -> Rational {
            if (gf_kind == "duplicated-prob") return series_duplicated_prob(v, terms);
            if (gf_kind == "tribonacci-numbers") return series_tribonacci_numbers(v, terms);
            return series_tribonacci_prob(v, terms);
        };
        const Rational closed = closed_exact(x);
        detail::Emitter emit{out, format};
        if (gf_terms > 0) {
            const Rational series = series_exact(x, gf_terms);
            if (format == Format::Json) {
                Json payload{{"closedForm", gf_exact ? Json(json_rational(closed))
                                                     : Json(to_double(closed))},
                             {"series", gf_exact ? Json(json_rational(series))
                                                 : Json(to_double(series))},
                             {"termsUsed", gf_terms}};
                emit.json_value(payload);
            } else {
                const std::string c = gf_exact ? table_rational(closed) : format_double(to_double(closed));
                const std::string s = gf_exact ? table_rational(series) : format_double(to_double(series));
                if (format == Format::Csv) {
                    out << c << "," << s << "," << gf_terms << "\n";
                } else {
                    out << "closedForm " << c << "\nseries " << s << "\ntermsUsed " << gf_terms
                        << "\n";
                }
            }
        } else {
            gf_exact ? emit.rational(closed) : emit.real(to_double(closed));
        }
    });

    // ---- completeness -------------------------------------------------
    auto* complete = app.add_subcommand("completeness",
                                        "partial sum of end-run probabilities with tail bound");
    int cp_d = 2, cp_N = 2;
    long cp_max_n = 0;
    complete->add_option("--d", cp_d, "alphabet size");
    complete->add_option("--N", cp_N, "run length");
    complete->add_option("--max-n", cp_max_n, "last trial count included")->required();
    add_format(complete);
    complete->callback([&] {
        const auto result = completeness_partial_sum(cp_d, cp_N, cp_max_n);
        if (format == Format::Json) {
            detail::Emitter{out, format}.json_value(
                Json{{"partialSum", json_rational(result.partial_sum)},
                     {"termsUsed", result.terms_used},
                     {"tailBound", result.tail_bound}});
        } else if (format == Format::Csv) {
            std::vector<std::pair<long, Rational>> rows;
            for (long n = cp_N; n <= cp_max_n; ++n) rows.emplace_back(n, prob_end_uniform(cp_d, cp_N, n));
            detail::Emitter{out, format}.indexed_rationals(rows);
        } else {
            out << "partialSum " << table_rational(result.partial_sum) << "\ntermsUsed "
                << result.terms_used << "\ntailBound " << format_double(result.tail_bound) << "\n";
        }
    });

    // ---- entropy ------------------------------------------------------
    auto* entropy = app.add_subcommand("entropy", "Shannon entropy, single trial or series");
    entropy->require_subcommand(1);

    auto* entropy_coin = entropy->add_subcommand("coin", "entropy of one trial in bits");
    std::string ec_probs;
    entropy_coin->add_option("--probs", ec_probs, "comma-separated probabilities")->required();
    add_format(entropy_coin);
    entropy_coin->callback([&] {
        const CoinSpec coin = detail::parse_coin(ec_probs, true);
        detail::Emitter{out, format}.real(shannon_entropy_bits(coin));
    });

    auto* entropy_ser = entropy->add_subcommand("series", "entropy of the trial-count distribution");
    int es_d = 2, es_N = 2;
    long es_max_n = 0;
    entropy_ser->add_option("--d", es_d, "alphabet size");
    entropy_ser->add_option("--N", es_N, "run length");
    entropy_ser->add_option("--max-n", es_max_n, "last trial count included")->required();
    add_format(entropy_ser);
    entropy_ser->callback([&] {
        const auto result = entropy_series(es_d, es_N, es_max_n);
        if (format == Format::Json) {
            detail::Emitter{out, format}.json_value(Json{{"partialSum", result.partial_sum},
                                                         {"termsUsed", result.terms_used},
                                                         {"tailBound", result.tail_bound}});
        } else if (format == Format::Csv) {
            for (long n = es_N; n <= es_max_n; ++n) {
                out << n << "," << format_double(entropy_term(es_d, es_N, n)) << "\n";
            }
        } else {
            out << "partialSum " << format_double(result.partial_sum) << "\ntermsUsed "
                << result.terms_used << "\ntailBound " << format_double(result.tail_bound) << "\n";
        }
    });

    // ---- golden -------------------------------------------------------
    auto* golden = app.add_subcommand("golden", "consecutive-term ratios tending to the Golden ratio");
    std::string go_kind = "count";
    long go_n = 0;
    golden->add_option("--kind", go_kind, "count|prob|anywhere-count|anywhere-prob")
        ->check(CLI::IsMember({"count", "prob", "anywhere-count", "anywhere-prob"}));
    golden->add_option("--n", go_n, "index of the ratio")->required();
    add_format(golden);
    golden->callback([&] {
        const RatioKind kind = go_kind == "count"            ? RatioKind::Count
                               : go_kind == "prob"           ? RatioKind::Probability
                               : go_kind == "anywhere-count" ? RatioKind::AnywhereCount
                                                             : RatioKind::AnywhereProbability;
        detail::Emitter{out, format}.real(golden_ratio_limit(kind, go_n));
    });

    // ---- project ------------------------------------------------------
    auto* project_cmd = app.add_subcommand("project", "tree projector onto the allowed subspace");
    PatternFlags proj_flags;
    int proj_n = 0;
    add_pattern_flags(project_cmd, proj_flags);
    project_cmd->add_option("--n", proj_n, "site count")->required();
    add_format(project_cmd);
    project_cmd->callback([&] {
        const auto spec = detail::make_pattern(proj_flags.d, proj_flags.N, proj_flags.target,
                                               proj_flags.position, proj_flags.k);
        const TreeProjector projector = build_projector(proj_n, spec);
        const Rational uniform_prob(BigInt(projector.dimension()),
                                    int_pow(proj_flags.d, static_cast<unsigned>(proj_n)));
        if (format == Format::Json) {
            detail::Emitter{out, format}.json_value(
                Json{{"d", proj_flags.d},
                     {"n", proj_n},
                     {"N", proj_flags.N},
                     {"position", detail::position_name(spec)},
                     {"dimension", projector.dimension()},
                     {"indices", projector.indices},
                     {"uniformBornProbability", json_rational(uniform_prob)}});
        } else if (format == Format::Csv) {
            for (auto index : projector.indices) out << index << "\n";
        } else {
            out << "dimension " << projector.dimension() << "\n";
            out << "indices";
            for (auto index : projector.indices) out << " " << index;
            out << "\nuniformBornProbability " << table_rational(uniform_prob) << "\n";
        }
    });

    // ---- simulate -----------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "seeded sequential-measurement sampling");
    PatternFlags sim_flags;
    int sim_n = 0;
    long long sim_shots = 0;
    std::uint64_t sim_seed = 0;
    std::string sim_probs;
    bool sim_float = false;
    add_pattern_flags(simulate, sim_flags);
    simulate->add_option("--n", sim_n, "trials per shot")->required();
    simulate->add_option("--shots", sim_shots, "number of shots")->required();
    simulate->add_option("--seed", sim_seed, "RNG seed (required for reproducibility)")->required();
    simulate->add_option("--probs", sim_probs, "coin probabilities; omit for the uniform coin");
    simulate->add_flag("--float", sim_float, "parse --probs as binary64");
    add_format(simulate);
    simulate->callback([&] {
        const CoinSpec coin = sim_probs.empty() ? CoinSpec::uniform(sim_flags.d)
                                                : detail::parse_coin(sim_probs, !sim_float);
        const auto spec = detail::make_pattern(coin.alphabet(), sim_flags.N, sim_flags.target,
                                               sim_flags.position, sim_flags.k);
        const std::vector<PatternSpec> events{spec};
        const SampleResult result = sample_trials(coin, sim_n, sim_shots, RngSpec{sim_seed}, events);
        const double frequency =
            static_cast<double>(result.event_counts[0]) / static_cast<double>(result.shots);
        if (format == Format::Json) {
            detail::Emitter{out, format}.json_value(Json{{"shots", result.shots},
                                                         {"seed", sim_seed},
                                                         {"position", detail::position_name(spec)},
                                                         {"count", result.event_counts[0]},
                                                         {"frequency", frequency}});
        } else if (format == Format::Csv) {
            out << result.shots << "," << result.event_counts[0] << "," << format_double(frequency)
                << "\n";
        } else {
            out << "shots " << result.shots << "\ncount " << result.event_counts[0]
                << "\nfrequency " << format_double(frequency) << "\n";
        }
    });

    // ---- oracle verify --------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "brute-force verification of the closed forms");
    auto* verify = oracle->add_subcommand("verify", "sweep n and compare counts with closed forms");
    int ov_d = 2, ov_N = 2;
    int ov_max_n = 0;
    verify->add_option("--d", ov_d, "alphabet size");
    verify->add_option("--N", ov_N, "run length");
    verify->add_option("--max-n", ov_max_n, "sweep n from N to this bound")->required();
    add_format(verify);
    verify->callback([&] {
        bool all_match = true;
        Json checks = Json::array();
        std::vector<std::string> lines;
        for (int n = ov_N; n <= ov_max_n; ++n) {
            const BigInt brute = count_allowed(n, PatternSpec::end(ov_d, ov_N));
            const BigInt closed = gen_nbonacci(ov_N, ov_d - 1, n - 1);
            bool ok = brute == closed;

            // anywhere must equal the sum over run positions
            BigInt by_position = 0;
            for (int k = 1; k <= n - ov_N + 1; ++k) {
                const BigInt at_k = count_allowed(n, PatternSpec::at(ov_d, ov_N, k));
                by_position += at_k;
                if (ov_d == 2) {
                    const BigInt product =
                        nbonacci(ov_N, k + ov_N - 2) * nbonacci(ov_N, n - k);
                    ok = ok && at_k == product;
                }
            }
            const BigInt anywhere = count_allowed(n, PatternSpec::anywhere(ov_d, ov_N));
            ok = ok && anywhere == by_position;

            all_match = all_match && ok;
            checks.push_back(Json{{"n", n},
                                  {"count", brute.str()},
                                  {"closedForm", closed.str()},
                                  {"ok", ok}});
            lines.push_back("n=" + std::to_string(n) + " count=" + brute.str() +
                            " closed=" + closed.str() + (ok ? " ok" : " MISMATCH"));
        }
        if (format == Format::Json) {
            detail::Emitter{out, format}.json_value(Json{{"d", ov_d},
                                                         {"N", ov_N},
                                                         {"allMatch", all_match},
                                                         {"checks", checks}});
        } else {
            for (const auto& line : lines) out << line << "\n";
            out << (all_match ? "all closed forms match" : "MISMATCH FOUND") << "\n";
        }
        if (!all_match) throw std::runtime_error("oracle verify: closed forms do not match counts");
    });

    // ---- parse ----------------------------------------------------------
    std::vector<std::string> full_args;
    full_args.reserve(args.size() + 1);
    full_args.push_back("qcoin");
    full_args.insert(full_args.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(full_args.size());
    for (auto& arg : full_args) argv.push_back(arg.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace qcoin::cli
