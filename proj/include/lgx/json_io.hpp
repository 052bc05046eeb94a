#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "lgx/builtin_groups.hpp"
#include "lgx/homomorphism.hpp"
#include "lgx/matrix.hpp"
#include "lgx/seminorm.hpp"

namespace lgx {

using nlohmann::json;

/// {"field": "real"} vs {"field": {"p": 5, "prec": 24}}
inline bool field_is_padic(const json& j) {
    if (!j.contains("field")) return false;
    return j.at("field").is_object();
}

inline PadicField parse_padic_field(const json& j) {
    const auto& f = j.at("field");
    if (!f.is_object() || !f.contains("p"))
        throw std::invalid_argument("field spec: expected {\"p\": ..., \"prec\": ...}");
    return PadicField(f.at("p").get<long>(), f.value("prec", 24));
}

inline cpp_rational parse_rational(const json& j) {
    if (j.is_number_integer()) return cpp_rational(j.get<long long>());
    if (j.is_string()) return cpp_rational(j.get<std::string>()); // "a/b" or "a"
    throw std::invalid_argument("rational: expected integer or \"a/b\" string");
}

inline Vec<double> parse_vec_real(const json& j) {
    Vec<double> v;
    for (const auto& c : j) v.c.push_back(c.get<double>());
    return v;
}

inline Vec<Padic> parse_vec_padic(const json& j, const PadicField& field) {
    Vec<Padic> v;
    for (const auto& c : j) v.c.push_back(Padic(parse_rational(c), field.p, field.prec));
    return v;
}

inline json vec_json(const Vec<double>& v) {
    json a = json::array();
    for (double c : v.c) a.push_back(c);
    return a;
}

inline json vec_json(const Vec<Padic>& v) {
    json a = json::array();
    for (const auto& c : v.c) a.push_back(c.str());
    return a;
}

template <class F>
Seminorm<F> parse_seminorm(const json& j) {
    Seminorm<F> q;
    const std::string kind = j.value("kind", "max");
    if (kind == "max")
        q.kind = Seminorm<F>::Kind::Max;
    else if (kind == "sum")
        q.kind = Seminorm<F>::Kind::Sum;
    else
        throw std::invalid_argument("seminorm: kind must be \"max\" or \"sum\"");
    if (j.contains("weights"))
        for (const auto& w : j.at("weights")) q.weights.push_back(w.get<double>());
    q.scale = j.value("scale", 1.0);
    if (q.scale <= 0.0) throw std::invalid_argument("seminorm: scale must be positive");
    return q;
}

/// {"field": ..., "dim": n, "seminorms": [{"name": ..., "kind": ..., ...}]}
template <class F>
SeminormFamily<F> parse_family(const json& j) {
    SeminormFamily<F> fam;
    const std::size_t dim = j.at("dim").get<std::size_t>();
    for (const auto& s : j.at("seminorms")) {
        auto q = parse_seminorm<F>(s);
        if (!q.weights.empty() && q.weights.size() != dim)
            throw std::invalid_argument("seminorm family: weight count != dim");
        fam.add(s.value("name", "q" + std::to_string(fam.size())), std::move(q));
    }
    if (fam.empty()) throw std::invalid_argument("seminorm family: empty");
    return fam;
}

template <class F>
json family_json(const F& field, std::size_t dim, const SeminormFamily<F>& fam) {
    json j;
    if constexpr (F::ultrametric)
        j["field"] = {{"p", field.p}, {"prec", field.prec}};
    else
        j["field"] = "real";
    j["dim"] = dim;
    j["seminorms"] = json::array();
    for (const auto& [name, q] : fam.items) {
        json s;
        s["name"] = name;
        s["kind"] = (q.kind == Seminorm<F>::Kind::Sum) ? "sum" : "max";
        if (!q.weights.empty()) s["weights"] = q.weights;
        s["scale"] = q.scale;
        j["seminorms"].push_back(s);
    }
    return j;
}

inline Mat<double> parse_matrix_real(const json& j) {
    const std::size_t n = j.size();
    Mat<double> M(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (j.at(i).size() != n) throw std::invalid_argument("matrix: must be square");
        for (std::size_t k = 0; k < n; ++k) M(i, k) = j.at(i).at(k).get<double>();
    }
    return M;
}

inline Mat<Padic> parse_matrix_padic(const json& j, const PadicField& field) {
    const std::size_t n = j.size();
    Mat<Padic> M(n, field.zero());
    for (std::size_t i = 0; i < n; ++i) {
        if (j.at(i).size() != n) throw std::invalid_argument("matrix: must be square");
        for (std::size_t k = 0; k < n; ++k)
            M(i, k) = Padic(parse_rational(j.at(i).at(k)), field.p, field.prec);
    }
    return M;
}

/// {"group": "matrix_log", "n": 2, "radius": 0.2} and friends.
inline LocalChartGroup<RealField> parse_group_real(const json& j) {
    const std::string kind = j.at("group").get<std::string>();
    if (kind == "abelian")
        return abelian_group(RealField{}, j.at("dim").get<std::size_t>(), j.value("radius", 1.0));
    if (kind == "matrix_log")
        return matrix_log_group(j.at("n").get<std::size_t>(), j.value("radius", 0.2));
    if (kind == "heisenberg") return heisenberg_group(j.value("radius", 1.0));
    if (kind == "multiplicative") return multiplicative_group(j.value("radius", 0.5));
    throw std::invalid_argument("group spec: unknown real group \"" + kind + "\"");
}

inline LocalChartGroup<PadicField> parse_group_padic(const json& j) {
    const std::string kind = j.at("group").get<std::string>();
    const long p = j.at("p").get<long>();
    const int prec = j.value("prec", 24);
    if (kind == "abelian")
        return abelian_group(PadicField(p, prec), j.at("dim").get<std::size_t>(),
                             j.value("radius", 1.5));
    if (kind == "padic_congruence")
        return padic_congruence_group(j.value("n", std::size_t{1}), p, prec, j.value("radius", 1.5));
    throw std::invalid_argument("group spec: unknown p-adic group \"" + kind + "\"");
}

namespace detail {

template <class F>
void apply_hom_extras(BlackBoxHom<F>& h, const json& j) {
    if (j.contains("alpha")) h.alpha = j.at("alpha").get<double>();
    if (j.contains("noise")) {
        NoiseModel nm;
        nm.eps = j.at("noise").at("eps").get<double>();
        nm.beta = j.at("noise").value("beta", 2.0);
        h.noise = nm;
    }
}

} // namespace detail

/// {"hom": "conjugation", "S": [[1,1],[0,1]], ...} — the built-in corpus,
/// plus "table" for exact-lookup regression fixtures.
inline BlackBoxHom<RealField> parse_hom_real(const json& j) {
    const std::string kind = j.at("hom").get<std::string>();
    BlackBoxHom<RealField> h;
    if (kind == "linear") {
        h = linear_hom(parse_matrix_real(j.at("matrix")), j.value("radius", 1.0));
    } else if (kind == "conjugation") {
        h = conjugation_hom(parse_matrix_real(j.at("S")), j.value("radius", 0.2));
    } else if (kind == "det") {
        h = det_hom(j.value("radius", 0.2));
    } else if (kind == "heisenberg_scale") {
        h = heisenberg_scale_hom(j.at("r").get<double>(), j.at("s").get<double>(),
                                 j.value("radius", 1.0));
    } else if (kind == "heisenberg_exp") {
        h = heisenberg_exp_hom(j.value("rate", 1.0), j.value("radius", 0.5));
    } else if (kind == "table") {
        const std::size_t dim_in = j.at("dim_in").get<std::size_t>();
        const std::size_t dim_out = j.at("dim_out").get<std::size_t>();
        std::vector<std::pair<Vec<double>, Vec<double>>> rows;
        for (const auto& r : j.at("rows"))
            rows.emplace_back(parse_vec_real(r.at("in")), parse_vec_real(r.at("out")));
        h.source = abelian_group(RealField{}, dim_in, j.value("radius", 1.0));
        h.target = abelian_group(RealField{}, dim_out, j.value("radius", 1.0));
        h.name = "table";
        h.eval = TableEvaluator<RealField>(RealField{}, std::move(rows));
    } else {
        throw std::invalid_argument("hom spec: unknown real homomorphism \"" + kind + "\"");
    }
    detail::apply_hom_extras(h, j);
    return h;
}

inline BlackBoxHom<PadicField> parse_hom_padic(const json& j) {
    const std::string kind = j.at("hom").get<std::string>();
    BlackBoxHom<PadicField> h;
    if (kind == "padic_power") {
        h = padic_power_hom(j.at("m").get<long>(), j.at("p").get<long>(), j.value("prec", 24));
    } else if (kind == "padic_linear") {
        const PadicField field(j.at("p").get<long>(), j.value("prec", 24));
        h = padic_linear_hom(parse_matrix_padic(j.at("matrix"), field), field.p, field.prec,
                             j.value("radius", 1.5));
    } else {
        throw std::invalid_argument("hom spec: unknown p-adic homomorphism \"" + kind + "\"");
    }
    detail::apply_hom_extras(h, j);
    return h;
}

} // namespace lgx
