#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace lgx {

/// Finite coordinate vector over a ground-field scalar type.
template <class S>
struct Vec {
    std::vector<S> c;

    Vec() = default;
    explicit Vec(std::vector<S> coords) : c(std::move(coords)) {}
    Vec(std::initializer_list<S> coords) : c(coords) {}

    std::size_t dim() const { return c.size(); }
    S& operator[](std::size_t i) { return c[i]; }
    const S& operator[](std::size_t i) const { return c[i]; }

    Vec operator+(const Vec& o) const {
        check_dim(o);
        Vec r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        check_dim(o);
        Vec r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] - o.c[i];
        return r;
    }
    Vec operator-() const {
        Vec r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    Vec scaled(const S& s) const {
        Vec r = *this;
        for (auto& x : r.c) x = x * s;
        return r;
    }

    void check_dim(const Vec& o) const {
        if (c.size() != o.c.size())
            throw std::invalid_argument("Vec: dimension mismatch");
    }
};

/// Concatenate two vectors (product-space argument packing).
template <class S>
Vec<S> join(const Vec<S>& a, const Vec<S>& b) {
    Vec<S> r = a;
    r.c.insert(r.c.end(), b.c.begin(), b.c.end());
    return r;
}

template <class S>
Vec<S> join(const Vec<S>& a, const Vec<S>& b, const Vec<S>& c) {
    return join(join(a, b), c);
}

template <class S>
Vec<S> slice(const Vec<S>& v, std::size_t begin, std::size_t len) {
    if (begin + len > v.dim()) throw std::invalid_argument("slice: out of range");
    return Vec<S>(std::vector<S>(v.c.begin() + begin, v.c.begin() + begin + len));
}

template <class F>
Vec<typename F::scalar> zero_vec(const F& field, std::size_t dim) {
    return Vec<typename F::scalar>(std::vector<typename F::scalar>(dim, field.zero()));
}

template <class F>
Vec<typename F::scalar> basis_vec(const F& field, std::size_t dim, std::size_t i) {
    auto v = zero_vec(field, dim);
    v[i] = field.one();
    return v;
}

} // namespace lgx
