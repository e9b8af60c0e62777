// locvar: command-line front end for languages, closures, dual automata and D-monoids.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "locvar/locvar.hpp"

namespace {

using namespace locvar;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct Options {
    std::vector<std::string> regexes;
    std::string alphabet = "ab";
    std::string word;
    std::string side = "left";
    std::string variety = "ba";
    std::string out;
    std::string format = "json";
    std::string batch;
    std::string what = "dfa";
    std::uint64_t seed = 1;
    std::size_t random = 0;
    std::size_t max_states = Limits{}.max_states;
    std::size_t threads = 0;
    bool rqc = false;
};

class UsageError : public Error {
public:
    using Error::Error;
};

DualityTag parse_duality(const std::string& v) {
    if (v == "ba" || v == "set") return DualityTag::BA_SET;
    if (v == "dl" || v == "pos") return DualityTag::DL01_POS;
    if (v == "jsl") return DualityTag::JSL_SELF;
    if (v == "z2") return DualityTag::Z2_SELF;
    throw UsageError("unknown variety '" + v + "' (expected ba|dl|jsl|z2)");
}

Limits limits_of(const Options& o) {
    Limits l;
    l.max_states = o.max_states;
    return l;
}

std::vector<LanguageId> languages(const Options& o, std::size_t min_count = 1) {
    if (o.regexes.size() < min_count)
        throw UsageError("expected at least " + std::to_string(min_count) + " --regex argument(s)");
    const Alphabet alphabet(o.alphabet);
    std::vector<LanguageId> out;
    for (const auto& r : o.regexes) out.push_back(compile(r, alphabet, limits_of(o)));
    return out;
}

LanguageId single_language(const Options& o) {
    if (o.regexes.size() != 1) throw UsageError("expected exactly one --regex argument");
    return languages(o).front();
}

Json regex_tree(const Regex& r) {
    switch (r.kind()) {
        case Regex::Kind::Empty: return {{"kind", "empty"}};
        case Regex::Kind::Epsilon: return {{"kind", "epsilon"}};
        case Regex::Kind::Literal: return {{"kind", "literal"}, {"symbol", std::string(1, r.symbol())}};
        case Regex::Kind::Union: return {{"kind", "union"}, {"left", regex_tree(r.left())}, {"right", regex_tree(r.right())}};
        case Regex::Kind::Concat:
            return {{"kind", "concat"}, {"left", regex_tree(r.left())}, {"right", regex_tree(r.right())}};
        case Regex::Kind::Star: return {{"kind", "star"}, {"inner", regex_tree(r.inner())}};
    }
    return nullptr;
}

LocalVarietyPiece piece_of(const Options& o, bool rqc) {
    const DualityTag d = parse_duality(o.variety);
    const auto gens = languages(o);
    return rqc ? rqc_closure(c_side(d), gens, limits_of(o)) : generate_subcoalgebra(c_side(d), gens, limits_of(o));
}

SigmaMonoid monoid_of(const Options& o, const LanguageId& l) {
    const DualityTag d = parse_duality(o.variety);
    return piece_to_monoid(d, rqc_closure(c_side(d), {l}, limits_of(o)), limits_of(o));
}

struct Report {
    std::string text;
    int code = exit_ok;
};

Report json_report(const Json& j, int code = exit_ok) { return {j.dump(), code}; }

Report run_parse(const Options& o) {
    if (o.regexes.size() != 1) throw UsageError("expected exactly one --regex argument");
    const Regex r = parse_regex(o.regexes.front(), Alphabet(o.alphabet));
    return json_report({{"regex", to_string(r)}, {"ast", regex_tree(r)}});
}

Report run_min_dfa(const Options& o) {
    const LanguageId l = single_language(o);
    if (o.format == "dot") return {to_dot(l.dfa())};
    return json_report(to_json(l.dfa()));
}

Report run_derive(const Options& o) {
    const LanguageId l = single_language(o);
    if (o.side != "left" && o.side != "right") throw UsageError("--side must be left or right");
    const LanguageId r = o.side == "left" ? left_derivative(l, o.word) : right_derivative(l, o.word);
    return json_report({{"result", to_regex_string(r)}});
}

Report run_residuals(const Options& o) {
    const LanguageId l = single_language(o);
    std::set<LanguageId> res;
    if (o.side == "left") res = residuals(l);
    else if (o.side == "right") res = right_residuals(l);
    else if (o.side == "both") res = two_sided_residuals(l);
    else throw UsageError("--side must be left, right or both");
    return json_report({{"count", res.size()}, {"residuals", language_list({res.begin(), res.end()})}});
}

Report run_closure(const Options& o) {
    const LocalVarietyPiece p = piece_of(o, o.rqc);
    if (o.format == "dot") return {to_dot(p)};
    Json j = to_json(p);
    j["rqc_closed"] = is_rqc_closed(p);
    return json_report(j);
}

Report run_dualize(const Options& o) {
    const DualityTag d = parse_duality(o.variety);
    const DAlgebra a = coalgebra_to_dalgebra(d, piece_of(o, o.rqc), limits_of(o));
    if (o.format == "dot") return {to_dot(a)};
    return json_report(to_json(a));
}

Report run_monoid(const Options& o) {
    const SigmaMonoid m = monoid_of(o, single_language(o));
    if (o.format == "dot") return {to_dot(m)};
    Json j = to_json(m);
    j["valid"] = validate_monoid(m);
    return json_report(j);
}

Report run_subdirect(const Options& o) {
    const auto langs = languages(o, 2);
    SigmaMonoid s = monoid_of(o, langs[0]);
    for (std::size_t i = 1; i < langs.size(); ++i) s = subdirect_product(s, monoid_of(o, langs[i]), limits_of(o));
    if (o.format == "dot") return {to_dot(s)};
    return json_report(to_json(s));
}

Report run_leq(const Options& o) {
    const auto langs = languages(o, 2);
    if (langs.size() != 2) throw UsageError("leq expects exactly two --regex arguments");
    const SigmaMonoid m1 = monoid_of(o, langs[0]), m2 = monoid_of(o, langs[1]);
    return json_report({{"leq", quotient_leq(m1, m2, limits_of(o))},
                        {"geq", quotient_leq(m2, m1, limits_of(o))},
                        {"sizes", {m1.size(), m2.size()}}});
}

Json verify_instance(DualityTag d, const std::vector<LanguageId>& gens, const Limits& limits, bool& ok) {
    const LocalVarietyPiece p = rqc_closure(c_side(d), gens, limits);
    const SigmaMonoid m = piece_to_monoid(d, p, limits);
    RoundtripResult r = match_pieces(p, monoid_to_piece(d, m, limits));
    r.piece_size = p.carrier.size();
    r.monoid_size = m.size();
    const bool monoid_ok = monoid_roundtrip(d, m, limits).has_value();
    ok = r.ok() && monoid_ok;
    Json j = correspondence_report(p, m, r);
    j["monoid_roundtrip"] = monoid_ok ? "ok" : "failed";
    return j;
}

Json verify_guarded(DualityTag d, const std::vector<LanguageId>& gens, const Limits& limits, bool& ok) {
    try {
        return verify_instance(d, gens, limits, ok);
    } catch (const ResourceExceeded& e) {
        ok = true;  // skipped, not failed
        return {{"skipped", e.what()}};
    }
}

std::vector<std::vector<std::string>> batch_instances(const Options& o) {
    std::vector<std::vector<std::string>> out;
    if (!o.batch.empty()) {
        std::ifstream in(o.batch);
        if (!in) throw UsageError("cannot read batch file " + o.batch);
        // one instance per line: generator regexes separated by whitespace
        for (std::string line; std::getline(in, line);) {
            std::istringstream words(line);
            std::vector<std::string> gens{std::istream_iterator<std::string>(words), {}};
            if (!gens.empty()) out.push_back(std::move(gens));
        }
    }
    std::mt19937_64 rng(o.seed);
    const Alphabet alphabet(o.alphabet);
    std::uniform_int_distribution<int> count(1, 2);
    for (std::size_t i = 0; i < o.random; ++i) {
        std::vector<std::string> gens;
        for (int k = count(rng); k > 0; --k) gens.push_back(to_string(random_regex(rng, alphabet, 3)));
        out.push_back(std::move(gens));
    }
    return out;
}

Report run_verify(const Options& o) {
    const DualityTag d = parse_duality(o.variety);
    const Limits limits = limits_of(o);
    const Alphabet alphabet(o.alphabet);
    if (o.batch.empty() && o.random == 0) {
        bool ok = false;
        const Json j = verify_instance(d, languages(o), limits, ok);
        return json_report(j, ok ? exit_ok : exit_failed);
    }
    const auto instances = batch_instances(o);
    std::vector<std::vector<LanguageId>> gens;
    for (const auto& inst : instances) {
        std::vector<LanguageId> g;
        for (const auto& r : inst) g.push_back(compile(r, alphabet, limits));
        gens.push_back(std::move(g));
    }
    std::vector<Json> reports(gens.size());
    std::vector<char> ok(gens.size(), 0);
    std::vector<std::string> errors(gens.size());
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(o.threads ? o.threads : std::thread::hardware_concurrency(), gens.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < gens.size();) {
                try {
                    bool good = false;
                    reports[i] = verify_guarded(d, gens[i], limits, good);
                    ok[i] = good;
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        });
    for (auto& t : pool) t.join();
    Json list = Json::array();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Json entry{{"generators", instances[i]}};
        if (!errors[i].empty()) {
            entry["error"] = errors[i];
            ++failures;
        } else {
            entry["roundtrip"] = reports[i].contains("roundtrip") ? reports[i]["roundtrip"] : Json("skipped");
            if (reports[i].contains("skipped")) entry["reason"] = reports[i]["skipped"];
            else {
                entry["piece_size"] = reports[i]["piece_size"];
                entry["monoid_size"] = reports[i]["monoid_size"];
                entry["monoid_roundtrip"] = reports[i]["monoid_roundtrip"];
            }
            if (!ok[i]) ++failures;
        }
        list.push_back(std::move(entry));
    }
    return json_report({{"instances", list}, {"failures", failures}}, failures ? exit_failed : exit_ok);
}

Report run_export_dot(const Options& o) {
    const DualityTag d = parse_duality(o.variety);
    if (o.what == "dfa") return {to_dot(single_language(o).dfa())};
    if (o.what == "piece") return {to_dot(piece_of(o, true))};
    if (o.what == "algebra") return {to_dot(coalgebra_to_dalgebra(d, piece_of(o, true), limits_of(o)))};
    if (o.what == "monoid") return {to_dot(monoid_of(o, single_language(o)))};
    throw UsageError("--what must be dfa, piece, algebra or monoid");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local varieties of regular languages and their D-monoids"};
    app.require_subcommand(1, 1);
    Options o;

    auto add = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--regex,--gens", o.regexes, "Regular expression; repeat for several generators");
        sub->add_option("--alphabet", o.alphabet, "Alphabet symbols")->capture_default_str();
        sub->add_option("--variety", o.variety, "ba|dl|jsl|z2 (set and pos name the D-sides)")->capture_default_str();
        sub->add_option("--out", o.out, "Write the report to this file");
        sub->add_option("--format", o.format, "json|dot")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();
        sub->add_option("--max-states", o.max_states, "State cap for language compilation")->capture_default_str();
        return sub;
    };

    auto* parse = add("parse", "Parse a regular expression");
    auto* min_dfa = add("min-dfa", "Canonical minimal DFA");
    auto* derive = add("derive", "Left or right derivative by a word");
    derive->add_option("--word", o.word, "Word to derive by");
    derive->add_option("--side", o.side, "left|right")->capture_default_str();
    auto* resid = add("residuals", "Left, right or two-sided residuals");
    resid->add_option("--side", o.side, "left|right|both")->capture_default_str();
    auto* closure = add("closure", "Closure of the generators under derivatives and the variety operations");
    closure->add_flag("--rqc", o.rqc, "Also close under right derivatives");
    auto* dualize = add("dualize", "Dual automaton of a closure");
    dualize->add_flag("--rqc", o.rqc, "Dualize the right-derivative closure");
    auto* monoid = add("monoid", "D-monoid of the right-derivative closure of one language");
    auto* subdirect = add("subdirect", "Subdirect product of the monoids of several languages");
    auto* leq = add("leq", "Compare the monoids of two languages in the quotient order");
    auto* verify = add("verify-eilenberg", "Round trip between a closure and its monoid");
    verify->add_option("--batch", o.batch, "File with one generator set per line");
    verify->add_option("--random", o.random, "Number of random generator sets");
    verify->add_option("--seed", o.seed, "Seed for random generator sets")->capture_default_str();
    verify->add_option("--threads", o.threads, "Worker threads for batch runs (0 = hardware)");
    auto* dot = add("export-dot", "Graphviz export");
    dot->add_option("--what", o.what, "dfa|piece|algebra|monoid")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    Report report;
    try {
        CLI::App* sub = app.get_subcommands().front();
        if (sub == parse) report = run_parse(o);
        else if (sub == min_dfa) report = run_min_dfa(o);
        else if (sub == derive) report = run_derive(o);
        else if (sub == resid) report = run_residuals(o);
        else if (sub == closure) report = run_closure(o);
        else if (sub == dualize) report = run_dualize(o);
        else if (sub == monoid) report = run_monoid(o);
        else if (sub == subdirect) report = run_subdirect(o);
        else if (sub == leq) report = run_leq(o);
        else if (sub == verify) report = run_verify(o);
        else if (sub == dot) report = run_export_dot(o);
    } catch (const NotRqcClosed& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << '\n';
        return exit_failed;
    } catch (const Error& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << '\n';
        return exit_usage;
    }

    if (!report.text.empty() && report.text.back() != '\n') report.text += '\n';
    if (o.out.empty()) {
        std::cout << report.text;
    } else {
        std::ofstream file(o.out);
        if (!file) {
            std::cerr << Json{{"error", "cannot write " + o.out}}.dump() << '\n';
            return exit_usage;
        }
        file << report.text;
    }
    return report.code;
}
