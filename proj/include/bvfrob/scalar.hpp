#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace bvf {

/// Exact rational scalar. Always kept in canonical (reduced) form.
using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& x);

inline Scalar sign_of(int exponent) { return (exponent & 1) ? Scalar(-1) : Scalar(1); }
inline bool is_odd(int d) { return (d & 1) != 0; }

inline bool is_zero(const Vec& v)
{
    for (const auto& x : v)
        if (sgn(x) != 0)
            return false;
    return true;
}

inline Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

inline Vec unit_vec(std::size_t n, std::size_t i)
{
    Vec v(n, Scalar(0));
    v[i] = 1;
    return v;
}

inline void axpy(Vec& y, const Scalar& a, const Vec& x)
{
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0)
            y[i] += a * x[i];
}

inline Vec operator+(Vec a, const Vec& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

inline Vec operator-(Vec a, const Vec& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}

inline Vec operator*(const Scalar& s, Vec a)
{
    for (auto& x : a)
        x *= s;
    return a;
}

Scalar dot(const Vec& a, const Vec& b);

}  // namespace bvf
