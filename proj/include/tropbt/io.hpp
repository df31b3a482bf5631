#pragma once

#include "family.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

namespace tropbt {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

namespace detail {

inline Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput, std::string("invalid JSON: ") + e.what());
    }
}

inline int json_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw Error(ErrorCode::MalformedInput, std::string("missing integer field \"") + key + "\"");
    return j[key].get<int>();
}

inline std::string coefficient_text(const Json& c) {
    if (c.is_string()) return c.get<std::string>();
    if (c.is_number_integer()) return std::to_string(c.get<std::int64_t>());
    throw Error(ErrorCode::MalformedRational, "coefficient must be a string \"p/q\" or an integer");
}

inline void check_convention(const Json& j) {
    if (j.contains("convention") && j["convention"] != "min")
        throw Error(ErrorCode::MalformedInput, "only the \"min\" convention is supported");
}

template <class F>
void for_each_term(const Json& j, int degree, F&& f) {
    if (!j.contains("terms") || !j["terms"].is_array()) throw Error(ErrorCode::MalformedInput, "missing \"terms\" array");
    std::set<LatticePoint> seen;
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("c")) throw Error(ErrorCode::MalformedInput, "term needs i, j and c");
        LatticePoint p{json_int(t, "i"), json_int(t, "j")};
        if (!in_simplex(p, degree)) throw Error(ErrorCode::TermOutsideTriangle, "term outside the degree triangle");
        if (!seen.insert(p).second)
            throw Error(ErrorCode::DuplicateTerm, "duplicate term (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")");
        f(p, coefficient_text(t["c"]));
    }
}

}  // namespace detail

inline TropicalPolynomial parse_curve(const Json& j) {
    if (!j.is_object()) throw Error(ErrorCode::MalformedInput, "curve file must be a JSON object");
    const int degree = detail::json_int(j, "degree");
    if (degree <= 0) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
    detail::check_convention(j);
    Lift lift;
    detail::for_each_term(j, degree, [&](const LatticePoint& p, const std::string& c) { lift.value[p] = parse_rational(c); });
    return make_polynomial(degree, std::move(lift));
}

inline TropicalPolynomial parse_curve_text(std::string_view text) { return parse_curve(detail::parse_json_text(text)); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json curve_to_json(const TropicalPolynomial& p) {
    Json j;
    j["degree"] = p.degree;
    j["convention"] = "min";
    Json terms = Json::array();
    for (const auto& [pt, c] : p.terms.value) terms.push_back({{"i", pt.x}, {"j", pt.y}, {"c", to_string(c)}});
    j["terms"] = std::move(terms);
    return j;
}

// α + β·h with α, β rational; accepted spellings include "8-h", "1/2+3*h", "-2h", "5".
inline AffineCoefficient parse_affine(std::string_view text, const std::string& param) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw Error(ErrorCode::MalformedRational, "empty coefficient");
    AffineCoefficient out{Rational(0), Rational(0)};
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        bool negative = false;
        if (term[0] == '+' || term[0] == '-') {
            negative = term[0] == '-';
            term.erase(0, 1);
        }
        if (term.empty()) throw Error(ErrorCode::MalformedRational, "malformed coefficient \"" + std::string(text) + "\"");
        bool has_param = false;
        if (!param.empty() && term.size() >= param.size() && term.compare(term.size() - param.size(), param.size(), param) == 0) {
            has_param = true;
            term.erase(term.size() - param.size());
            if (!term.empty() && term.back() == '*') {
                term.pop_back();
                if (term.empty()) throw Error(ErrorCode::MalformedRational, "malformed coefficient \"" + std::string(text) + "\"");
            }
        }
        Rational v = term.empty() ? Rational(1) : parse_rational(term);
        if (negative) v = -v;
        if (has_param) out.slope += v;
        else out.constant += v;
    }
    return out;
}

inline std::string affine_to_string(const AffineCoefficient& a, const std::string& param) {
    if (sgn(a.slope) == 0) return to_string(a.constant);
    std::string s = sgn(a.constant) == 0 ? "" : to_string(a.constant);
    Rational m = a.slope;
    if (sgn(m) < 0) {
        s += "-";
        m = -m;
    } else if (!s.empty()) {
        s += "+";
    }
    if (m != 1) s += to_string(m) + "*";
    return s + param;
}

inline PolynomialFamily parse_family(const Json& j) {
    if (!j.is_object()) throw Error(ErrorCode::MalformedInput, "family file must be a JSON object");
    PolynomialFamily fam;
    fam.degree = detail::json_int(j, "degree");
    if (fam.degree <= 0) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
    detail::check_convention(j);
    if (j.contains("parameter")) {
        if (!j["parameter"].is_string()) throw Error(ErrorCode::MalformedInput, "\"parameter\" must be a string");
        fam.parameter = j["parameter"].get<std::string>();
    }
    if (fam.parameter.empty() || !std::all_of(fam.parameter.begin(), fam.parameter.end(), [](char ch) { return std::isalpha(static_cast<unsigned char>(ch)); }))
        throw Error(ErrorCode::MalformedInput, "parameter name must be alphabetic");
    detail::for_each_term(j, fam.degree, [&](const LatticePoint& p, const std::string& c) { fam.terms[p] = parse_affine(c, fam.parameter); });
    // the hull check does not depend on the coefficients
    Lift probe;
    for (const auto& [p, c] : fam.terms) probe.value[p] = Rational(0);
    make_polynomial(fam.degree, probe);
    return fam;
}

inline Json family_to_json(const PolynomialFamily& fam) {
    Json j;
    j["degree"] = fam.degree;
    j["convention"] = "min";
    j["parameter"] = fam.parameter;
    Json terms = Json::array();
    for (const auto& [p, c] : fam.terms) terms.push_back({{"i", p.x}, {"j", p.y}, {"c", affine_to_string(c, fam.parameter)}});
    j["terms"] = std::move(terms);
    return j;
}

// Comma-separated rationals, e.g. "1,1/2,1/4,0".
inline std::vector<Rational> parse_value_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string_view::npos) j = text.size();
        out.push_back(parse_rational(text.substr(i, j - i)));
        i = j + 1;
    }
    return out;
}

// ---- reports ----

inline Json to_json(const Rational& r) { return to_string(r); }
inline Json to_json(const Point2& p) { return Json::array({to_string(p.x), to_string(p.y)}); }

inline Json curve_summary_json(const PlaneCurve& c) {
    Json j;
    j["degree"] = c.degree;
    Json vs = Json::array();
    for (const auto& v : c.vertices) vs.push_back({{"position", to_json(v.position)}, {"weight", v.weight}});
    j["vertices"] = std::move(vs);
    Json es = Json::array();
    for (const auto& e : c.edges) {
        Json je;
        je["tail"] = e.tail;
        je["head"] = e.bounded() ? Json(e.head) : Json(nullptr);
        je["direction"] = {e.direction.dx, e.direction.dy};
        je["weight"] = e.weight;
        je["length"] = e.bounded() ? to_json(e.length) : Json(nullptr);
        es.push_back(std::move(je));
    }
    j["edges"] = std::move(es);
    const auto gr = genus(c);
    j["genus"] = {{"b1", gr.b1}, {"vertex_weights", gr.vertex_weight_sum}, {"edge_weight_excess", gr.edge_weight_excess}, {"g_sigma", gr.g_sigma}};
    j["smooth"] = is_smooth(c);
    Json sv = Json::array();
    for (const auto& s : singular_vertices(c)) sv.push_back({{"vertex", s.vertex}, {"area", to_json(s.area)}});
    j["singular_vertices"] = std::move(sv);
    j["balanced"] = check_balancing(c).empty();
    return j;
}

inline Json cycle_json(const CycleZ2& c) { return Json(c.edges); }

inline Json theta_table_json(const ThetaClassTable& t, int g, int g_sigma) {
    Json j;
    j["g"] = g;
    j["g_sigma"] = g_sigma;
    Json cls = Json::array();
    for (std::size_t i = 0; i < t.classes.size(); ++i) {
        Json fib = Json::array();
        for (const auto& c : t.classes[i].fiber) fib.push_back(cycle_json(c));
        cls.push_back({{"index", i}, {"multiplicity", t.classes[i].multiplicity}, {"fiber", std::move(fib)}});
    }
    j["classes"] = std::move(cls);
    j["violations"] = table_violations(t, g, g_sigma);
    return j;
}

inline Json witness_json(const BitangentWitness& w) {
    Json j;
    j["line_vertex"] = to_json(w.line.vertex);
    Json tp = Json::array();
    for (const auto& t : w.tangency) tp.push_back(to_json(t.position));
    j["tangency"] = std::move(tp);
    Json comps = Json::array();
    for (const auto& c : w.components) comps.push_back(c.multiplicity);
    j["component_multiplicities"] = std::move(comps);
    return j;
}

inline Json bitangents_json(const BitangentEnumeration& en) {
    Json j;
    Json cls = Json::array();
    for (const auto& c : en.classes)
        cls.push_back({{"class", c.table_index}, {"multiplicity", c.multiplicity}, {"faces", c.faces.size()},
                       {"representative", witness_json(c.representative)}});
    j["classes"] = std::move(cls);
    j["missing"] = en.missing;
    j["faces_tested"] = en.faces_tested;
    j["bitangent_faces"] = en.bitangent_faces;
    return j;
}

inline Json verdict_json(const MainTheoremReport& r) {
    return {{"g", r.g}, {"g_sigma", r.g_sigma}, {"summary", r.summary}, {"multiplicities", r.multiplicities},
            {"passed", r.passed}, {"failures", r.failures}};
}

inline Json family_report_json(const FamilyReport& r) {
    Json j;
    j["parameter"] = r.parameter;
    Json samples = Json::array();
    for (const auto& s : r.samples) {
        Json ms = Json::array();
        for (const auto& c : s.table.classes) ms.push_back(c.multiplicity);
        samples.push_back({{"value", to_json(s.value)}, {"g", s.g}, {"smooth", is_smooth(s.curve)},
                           {"table_multiplicities", std::move(ms)}, {"verdict", verdict_json(s.verdict)}});
    }
    j["samples"] = std::move(samples);
    Json matches = Json::array();
    for (const auto& m : r.matches) {
        Json src = Json::array();
        for (const auto& s : m.sources)
            src.push_back({{"value", to_json(s.value)}, {"classes", s.classes}, {"multiplicity_sum", s.multiplicity_sum}});
        matches.push_back({{"limit_class", m.limit_class}, {"limit_multiplicity", m.limit_multiplicity}, {"sources", std::move(src)}});
    }
    j["matches"] = std::move(matches);
    j["passed"] = r.passed;
    j["failures"] = r.failures;
    return j;
}

inline Json report_header(const std::string& command) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    return j;
}

}  // namespace tropbt
