#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "exterior.hpp"

// Exact arithmetic for index computations: rational characteristic numbers,
// the weight polynomials of su(2) irreducibles, interpolation of index
// polynomials, and integer root scans with a Cauchy cap. Floating point
// enters only in the differential form realizations of the character forms.

namespace spinlab {

using CharNumber = boost::multiprecision::cpp_rational;
using CharInt = boost::multiprecision::cpp_int;

inline CharInt char_factorial(int n) {
    CharInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// A-roof number of the degree 2d hypersurface of complex dimension 2n in
// projective (2n+1)-space: 2d / (2n+1)! times prod_{k=1..n} (d^2 - k^2).
// Degree two (d = 1) gives zero, the quartic surface (n = 1, d = 2) gives 2.
inline CharNumber a_hat_hypersurface(int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("a_hat_hypersurface: need n, d >= 1");
    CharNumber out(2 * d, char_factorial(2 * n + 1));
    for (int k = 1; k <= n; ++k) out *= CharNumber(d * d - k * k);
    return out;
}

// Character weight of the (l+1)-dimensional su(2) irreducible in degree 2j:
// (-1)^j / (2j)! sum_{s=0..l} (l - 2s)^{2j}. Degree zero gives l + 1.
inline CharNumber p_weight(int j, long l) {
    if (j < 0 || l < 0) throw std::invalid_argument("p_weight: negative argument");
    CharInt acc = 0;
    for (long s = 0; s <= l; ++s) {
        CharInt base = l - 2 * s;
        CharInt pw = 1;
        for (int r = 0; r < 2 * j; ++r) pw *= base;
        acc += pw;
    }
    CharNumber out(acc, char_factorial(2 * j));
    if (j % 2 != 0) out = -out;
    return out;
}

// Index against the data a = (a_0,...,a_n): sum_j p_j(l) a_j. As a function
// of l this extends to a polynomial of degree at most 2n + 1 vanishing at -1.
inline CharNumber su2_twisted_index(const std::vector<CharNumber>& a, long l) {
    CharNumber out = 0;
    for (size_t j = 0; j < a.size(); ++j) out += p_weight(static_cast<int>(j), l) * a[j];
    return out;
}

// Monomial coefficients, low degree first, of the polynomial interpolating
// samples q[i] at the integers i = 0..deg. Newton forward differences.
inline std::vector<CharNumber> poly_coeffs_from_samples(const std::vector<CharNumber>& q) {
    if (q.empty()) throw std::invalid_argument("poly_coeffs_from_samples: empty");
    std::vector<CharNumber> diff = q;
    std::vector<CharNumber> deltas; // Delta^k q(0)
    deltas.reserve(q.size());
    for (size_t k = 0; k < q.size(); ++k) {
        deltas.push_back(diff[0]);
        for (size_t i = 0; i + 1 < diff.size() - k; ++i) diff[i] = diff[i + 1] - diff[i];
    }
    std::vector<CharNumber> coef(q.size(), CharNumber(0));
    std::vector<CharNumber> basis{CharNumber(1)}; // prod_{i<k} (x - i)
    CharInt kfact = 1;
    for (size_t k = 0; k < q.size(); ++k) {
        if (k > 0) {
            kfact *= static_cast<long>(k);
            std::vector<CharNumber> next(basis.size() + 1, CharNumber(0));
            CharNumber root(static_cast<long>(k - 1));
            for (size_t i = 0; i < basis.size(); ++i) {
                next[i + 1] += basis[i];
                next[i] -= root * basis[i];
            }
            basis = std::move(next);
        }
        CharNumber w = deltas[k] / CharNumber(kfact);
        for (size_t i = 0; i < basis.size(); ++i) coef[i] += w * basis[i];
    }
    while (coef.size() > 1 && coef.back() == 0) coef.pop_back();
    return coef;
}

inline CharNumber poly_eval(const std::vector<CharNumber>& coef, long x) {
    CharNumber acc = 0;
    for (size_t i = coef.size(); i-- > 0;) acc = acc * x + coef[i];
    return acc;
}

inline std::vector<CharNumber> index_poly_coeffs(const std::vector<CharNumber>& a) {
    if (a.empty()) throw std::invalid_argument("index_poly_coeffs: empty data");
    int deg = 2 * static_cast<int>(a.size() - 1) + 1;
    std::vector<CharNumber> samples;
    samples.reserve(deg + 1);
    for (long l = 0; l <= deg; ++l) samples.push_back(su2_twisted_index(a, l));
    return poly_coeffs_from_samples(samples);
}

// 1 + max_i |c_i / c_top| bounds every root; capped scan range for the
// integer search. Returns -1 for the zero polynomial.
inline long root_scan_bound(const std::vector<CharNumber>& coef, long cap = 10000) {
    size_t top = coef.size();
    while (top > 0 && coef[top - 1] == 0) --top;
    if (top == 0) return -1;
    CharNumber mx = 0;
    for (size_t i = 0; i + 1 < top; ++i) {
        CharNumber r = abs(coef[i] / coef[top - 1]);
        if (r > mx) mx = r;
    }
    CharNumber bound = mx + 1;
    if (bound > cap) return cap;
    CharInt num = boost::multiprecision::numerator(bound);
    CharInt den = boost::multiprecision::denominator(bound);
    CharInt q = (num + den - 1) / den;
    return q.convert_to<long>();
}

inline std::vector<long> positive_integer_roots(const std::vector<CharNumber>& a, long cap = 10000) {
    auto coef = index_poly_coeffs(a);
    long bound = root_scan_bound(coef, cap);
    std::vector<long> roots;
    if (bound < 0) return roots; // identically zero, nothing meaningful to report
    for (long l = 1; l <= bound; ++l)
        if (poly_eval(coef, l) == 0) roots.push_back(l);
    return roots;
}

// Four dimensional relation between the adjoint and standard twists of a
// traceless rank N bundle: ind(ad) = 2N ind(E) - (N^2 + 1) ind(untwisted).
inline CharNumber index_adjoint_from_standard(int N, const CharNumber& ind_standard,
                                              const CharNumber& ind_untwisted) {
    return CharNumber(2 * N) * ind_standard - CharNumber(N * N + 1) * ind_untwisted;
}

// Degree 2k character form (1/k!) (i/2pi)^k tr(F ^ ... ^ F) of a curvature
// value; numeric counterpart of the rational data above.
inline ScalarForm chern_character_form(const MatForm& F, int k) {
    if (k < 1) throw std::invalid_argument("chern_character_form: k >= 1");
    MatForm w = F;
    for (int i = 1; i < k; ++i) w = wedge(w, F);
    const double tau = 2.0 * std::acos(-1.0);
    cplx unit = std::pow(cplx(0.0, 1.0) / tau, k);
    CharInt kf = char_factorial(k);
    cplx scale = unit / kf.convert_to<double>();
    ScalarForm out = scalar_form(F.m, w.k);
    for (size_t r = 0; r < w.c.size(); ++r) out.c[r] = w.c[r].trace() * scale;
    return out;
}

} // namespace spinlab
