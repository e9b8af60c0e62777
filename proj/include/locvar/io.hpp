#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "locvar/eilenberg.hpp"

namespace locvar {

using Json = nlohmann::ordered_json;

inline Json alphabet_json(const Alphabet& alphabet) {
    Json a = Json::array();
    for (char c : alphabet.symbols()) a.push_back(std::string(1, c));
    return a;
}

inline Json to_json(const Dfa& d) {
    Json finals = Json::array(), delta = Json::array();
    for (State q = 0; q < d.states; ++q) {
        if (d.is_final(q)) finals.push_back(q);
        Json row = Json::array();
        for (std::size_t a = 0; a < d.alphabet.size(); ++a) row.push_back(d.next(q, a));
        delta.push_back(row);
    }
    return {{"alphabet", alphabet_json(d.alphabet)},
            {"states", d.states},
            {"initial", d.initial},
            {"finals", finals},
            {"delta", delta}};
}

inline Json relation_json(const Relation& r) {
    Json m = Json::array();
    for (std::size_t i = 0; i < r.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < r.size(); ++j) row.push_back(r(i, j));
        m.push_back(row);
    }
    return m;
}

inline Json to_json(const FinAlgebra& x) {
    Json j{{"tag", to_string(x.tag())}, {"size", x.size()}};
    switch (x.tag()) {
        case VarietyTag::BA: j["atoms"] = x.atoms(); break;
        case VarietyTag::DL01: j["ji_order"] = relation_json(x.ji_order()); break;
        case VarietyTag::JSL0: {
            Json join = Json::array();
            for (Elem a = 0; a < x.size(); ++a) {
                Json row = Json::array();
                for (Elem b = 0; b < x.size(); ++b) row.push_back(x.join(a, b));
                join.push_back(row);
            }
            j["join"] = join;
            j["zero"] = x.zero();
            break;
        }
        case VarietyTag::Z2VECT: j["dim"] = x.dim(); break;
        case VarietyTag::SET: break;
        case VarietyTag::POS: j["order"] = relation_json(x.order()); break;
    }
    return j;
}

inline Json to_json(const FinMorphism& f) {
    return {{"domain", to_json(f.domain)}, {"codomain", to_json(f.codomain)}, {"graph", f.graph}};
}

inline Json language_list(const std::vector<LanguageId>& langs) {
    Json a = Json::array();
    for (const auto& l : langs) a.push_back(to_regex_string(l));
    return a;
}

inline Json to_json(const CCoalgebra& q) {
    Json j = to_json(q.carrier);
    j["alphabet"] = alphabet_json(q.alphabet);
    Json gamma = Json::array();
    for (const auto& g : q.gamma) gamma.push_back(g.graph);
    j["gamma"] = gamma;
    j["out"] = q.out.graph;
    if (q.labels) j["labels"] = language_list(*q.labels);
    return j;
}

inline Json to_json(const DAlgebra& a) {
    Json j = to_json(a.carrier);
    j["alphabet"] = alphabet_json(a.alphabet);
    Json alpha = Json::array();
    for (const auto& f : a.alpha) alpha.push_back(f.graph);
    j["alpha"] = alpha;
    j["init"] = a.init;
    return j;
}

inline Json to_json(const SigmaMonoid& m) {
    Json mult = Json::array();
    for (Elem x = 0; x < m.size(); ++x) {
        Json row = Json::array();
        for (Elem y = 0; y < m.size(); ++y) row.push_back(m.mul(x, y));
        mult.push_back(row);
    }
    Json gen = Json::object();
    for (std::size_t a = 0; a < m.gen.size(); ++a) gen[std::string(1, m.alphabet[a])] = m.gen[a];
    return {{"tag", to_string(m.tag())},
            {"size", m.size()},
            {"carrier", to_json(m.carrier)},
            {"unit", m.unit},
            {"mult", mult},
            {"gen", gen}};
}

inline Json roundtrip_json(const RoundtripResult& r) {
    if (r.ok()) return "ok";
    return {{"counterexample",
             {{"language", to_regex_string(r.counterexample->language)},
              {"side", r.counterexample->in_first ? "piece" : "roundtrip"}}}};
}

/// {"piece":{"languages":[...]}, "monoid":{...}, "roundtrip":"ok"|{"counterexample":...}}
inline Json correspondence_report(const LocalVarietyPiece& p, const SigmaMonoid& m, const RoundtripResult& r) {
    const std::set<LanguageId> labels = label_set(p);
    return {{"piece", {{"size", p.carrier.size()}, {"languages", language_list({labels.begin(), labels.end()})}}},
            {"monoid", to_json(m)},
            {"roundtrip", roundtrip_json(r)},
            {"piece_size", r.piece_size},
            {"monoid_size", r.monoid_size}};
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline void dot_edges(std::ostringstream& os, const Alphabet& alphabet, std::size_t n,
                      const std::function<Elem(Elem, std::size_t)>& next) {
    for (Elem x = 0; x < n; ++x) {
        // merge parallel edges into one labeled arrow
        std::map<Elem, std::string> targets;
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            auto& label = targets[next(x, a)];
            if (!label.empty()) label += ",";
            label += alphabet[a];
        }
        for (const auto& [y, label] : targets) os << "  " << x << " -> " << y << " [label=\"" << label << "\"];\n";
    }
}

}  // namespace detail

inline std::string to_dot(const Dfa& d) {
    std::ostringstream os;
    os << "digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n";
    for (State q = 0; q < d.states; ++q)
        os << "  " << q << " [shape=" << (d.is_final(q) ? "doublecircle" : "circle") << "];\n";
    os << "  start -> " << d.initial << ";\n";
    detail::dot_edges(os, d.alphabet, d.states, [&d](Elem x, std::size_t a) { return d.next(x, a); });
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const CCoalgebra& q) {
    std::ostringstream os;
    os << "digraph coalgebra {\n  rankdir=LR;\n";
    for (Elem x = 0; x < q.carrier.size(); ++x) {
        os << "  " << x << " [shape=" << (q.accepting(x) ? "doublecircle" : "circle");
        if (q.labels) os << ", tooltip=\"" << detail::dot_escape(to_regex_string((*q.labels)[x])) << "\"";
        os << "];\n";
    }
    detail::dot_edges(os, q.alphabet, q.carrier.size(), [&q](Elem x, std::size_t a) { return q.gamma[a](x); });
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const DAlgebra& a) {
    std::ostringstream os;
    os << "digraph algebra {\n  rankdir=LR;\n  start [shape=point];\n";
    for (Elem x = 0; x < a.carrier.size(); ++x) os << "  " << x << " [shape=circle];\n";
    os << "  start -> " << a.init << ";\n";
    detail::dot_edges(os, a.alphabet, a.carrier.size(), [&a](Elem x, std::size_t i) { return a.alpha[i](x); });
    os << "}\n";
    return os.str();
}

/// Right Cayley graph: x → x·gen(a).
inline std::string to_dot(const SigmaMonoid& m) {
    std::ostringstream os;
    os << "digraph cayley {\n  start [shape=point];\n";
    for (Elem x = 0; x < m.size(); ++x) os << "  " << x << " [shape=circle];\n";
    os << "  start -> " << m.unit << ";\n";
    detail::dot_edges(os, m.alphabet, m.size(), [&m](Elem x, std::size_t a) { return m.mul(x, m.gen[a]); });
    os << "}\n";
    return os.str();
}

}  // namespace locvar
