#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lgx/vector.hpp"

namespace lgx {

/// Coordinate seminorm ||x||_q = scale * max_i w_i |x_i| (or the weighted
/// sum in the real case). Ultrametric fields only admit the max form.
template <class F>
struct Seminorm {
    enum class Kind { Max, Sum };

    Kind kind = Kind::Max;
    std::vector<double> weights; // empty means weight 1 on every coordinate
    double scale = 1.0;

    double weight(std::size_t i) const {
        if (weights.empty()) return 1.0;
        if (i >= weights.size())
            throw std::invalid_argument("Seminorm: dimension mismatch");
        return weights[i];
    }

    double eval(const F& field, const Vec<typename F::scalar>& x) const {
        if (!weights.empty() && weights.size() != x.dim())
            throw std::invalid_argument("Seminorm: dimension mismatch");
        if (F::ultrametric && kind == Kind::Sum)
            throw std::invalid_argument("Seminorm: sum kind is not ultrametric");
        double acc = 0.0;
        for (std::size_t i = 0; i < x.dim(); ++i) {
            const double term = weight(i) * field.abs(x[i]);
            acc = (kind == Kind::Max) ? std::max(acc, term) : acc + term;
        }
        return scale * acc;
    }

    Seminorm scaled(double factor) const {
        if (factor <= 0.0) throw std::invalid_argument("Seminorm: nonpositive scale");
        Seminorm r = *this;
        r.scale *= factor;
        return r;
    }

    /// Pointwise domination: this >= other on every vector.
    bool dominates(const Seminorm& other, std::size_t dim) const {
        if (kind == Kind::Max && other.kind == Kind::Sum) {
            // max form can only dominate a sum after a factor dim; compare crudely.
            for (std::size_t i = 0; i < dim; ++i)
                if (scale * weight(i) < static_cast<double>(dim) * other.scale * other.weight(i))
                    return false;
            return true;
        }
        for (std::size_t i = 0; i < dim; ++i)
            if (scale * weight(i) < other.scale * other.weight(i)) return false;
        return true;
    }
};

template <class F>
Seminorm<F> max_abs_seminorm() {
    return Seminorm<F>{};
}

/// Finite named family of seminorms; realizes the "for every q there
/// exists p" quantifier as a lookup for a dominating member.
template <class F>
struct SeminormFamily {
    std::vector<std::pair<std::string, Seminorm<F>>> items;

    bool empty() const { return items.empty(); }
    std::size_t size() const { return items.size(); }

    void add(std::string name, Seminorm<F> q) {
        items.emplace_back(std::move(name), std::move(q));
    }

    const Seminorm<F>& get(const std::string& name) const {
        for (const auto& [n, q] : items)
            if (n == name) return q;
        throw std::invalid_argument("SeminormFamily: unknown seminorm " + name);
    }

    /// Name of a family member dominating q, if any.
    std::optional<std::string> dominating(const std::string& qname, std::size_t dim) const {
        const auto& q = get(qname);
        for (const auto& [n, p] : items)
            if (p.dominates(q, dim)) return n;
        return std::nullopt;
    }
};

template <class F>
SeminormFamily<F> default_family(std::size_t /*dim*/) {
    SeminormFamily<F> fam;
    fam.add("max", max_abs_seminorm<F>());
    return fam;
}

/// Open q-ball around a center.
template <class F>
struct Ball {
    Vec<typename F::scalar> center;
    double radius;
    Seminorm<F> seminorm;

    bool contains(const F& field, const Vec<typename F::scalar>& y) const {
        return seminorm.eval(field, y - center) < radius;
    }
};

/// seminorm_eval: ||x||_q with the invariant checks delegated to Seminorm.
template <class F>
double seminorm_eval(const F& field, const Seminorm<F>& q, const Vec<typename F::scalar>& x) {
    return q.eval(field, x);
}

} // namespace lgx
