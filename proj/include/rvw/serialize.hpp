#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rvw/fq.hpp"
#include "rvw/multipoly.hpp"
#include "rvw/numeric.hpp"
#include "rvw/report.hpp"

namespace rvw {

using Json = nlohmann::ordered_json;

// Large integers travel as decimal strings; values within the exact JSON
// number range stay numbers so simple reports remain human friendly.
inline Json int_to_json(const Int& v) {
    if (v.fits_slong_p()) {
        long x = v.get_si();
        if (x >= -9007199254740991L && x <= 9007199254740991L) return x;
    }
    return v.get_str();
}

inline Int int_from_json(const Json& j) {
    if (j.is_number_integer())
        return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected integer or decimal string");
}

inline std::string rat_to_string(const Rat& c) {
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

// A polynomial serializes as a list of [coefficient, [e_1,...,e_n]] pairs in
// descending graded-lex order; coefficients are decimal or "num/den" strings.
inline Json poly_to_json(const MultiPoly<Int>& f) {
    Json out = Json::array();
    const auto& terms = f.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        out.push_back(Json::array({it->second.get_str(), it->first.e}));
    return out;
}

inline Json poly_to_json(const MultiPoly<Rat>& f) {
    Json out = Json::array();
    const auto& terms = f.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        out.push_back(Json::array({rat_to_string(it->second), it->first.e}));
    return out;
}

inline Json poly_to_json(const MultiPoly<FqElem>& f) {
    Json out = Json::array();
    const auto& terms = f.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        out.push_back(
            Json::array({it->second.index().get_str(), it->first.e}));
    return out;
}

inline MultiPoly<Int> poly_int_from_json(const Json& j, int nvars) {
    MultiPoly<Int> f(nvars);
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("bad polynomial term");
        Rat c = pair[0].is_string() ? rat_from_string(pair[0]) : Rat(int_from_json(pair[0]));
        if (c.get_den() != 1)
            throw std::invalid_argument("integer polynomial expected");
        std::vector<std::uint32_t> e = pair[1].get<std::vector<std::uint32_t>>();
        if (static_cast<int>(e.size()) != nvars)
            throw std::invalid_argument("term arity mismatch");
        f.add_term(Monomial{std::move(e)}, Int(c.get_num()));
    }
    return f;
}

inline MultiPoly<FqElem> poly_fq_from_json(const Json& j, int nvars,
                                           const FqField& field) {
    MultiPoly<FqElem> f(nvars);
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("bad polynomial term");
        Int idx = pair[0].is_string() ? Int(pair[0].get<std::string>())
                                      : int_from_json(pair[0]);
        std::vector<std::uint32_t> e = pair[1].get<std::vector<std::uint32_t>>();
        if (static_cast<int>(e.size()) != nvars)
            throw std::invalid_argument("term arity mismatch");
        f.add_term(Monomial{std::move(e)},
                   field.from_index(to_ulong_checked(idx, "element index")));
    }
    return f;
}

inline Json verdict_to_json(Verdict v) { return to_string(v); }

inline Json count_report_to_json(const CountReport& rep) {
    Json out;
    out["count"] = int_to_json(rep.count);
    out["bound"] = int_to_json(rep.bound);
    out["degree_budget"] = int_to_json(rep.degree_budget);
    out["verdict"] = verdict_to_json(rep.verdict);
    if (rep.full_grid_bound)
        out["full_grid_bound"] = int_to_json(*rep.full_grid_bound);
    if (rep.boolean_bound)
        out["boolean_bound"] = int_to_json(*rep.boolean_bound);
    if (rep.witness) {
        Json w = Json::array();
        for (const Int& v : *rep.witness) w.push_back(int_to_json(v));
        out["witness"] = w;
    }
    if (rep.seed) out["seed"] = *rep.seed;
    return out;
}

inline Json int_vector_to_json(const std::vector<Int>& vals) {
    Json out = Json::array();
    for (const Int& v : vals) out.push_back(int_to_json(v));
    return out;
}

}  // namespace rvw
