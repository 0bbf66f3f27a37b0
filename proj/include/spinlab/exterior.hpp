#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "combinatorics.hpp"

// Exterior algebra over an oriented euclidean frame e_1..e_m, with scalar,
// matrix or fiber-vector values.
//
// Conventions, fixed once for the whole library:
//   * components sit on increasing tuples; component() extends them
//     antisymmetrically, so antisymmetry holds exactly by construction.
//   * wedge uses the shuffle normalization (k+l)!/(k!l!) Alt(a (x) b);
//     for matrix values the two factors compose in argument order.
//   * inner makes increasing monomials orthonormal (1/k! over all tuples);
//     scalar values conjugate the second argument, Lie values pair through
//     <z,w> = -2 tr(zw).
//   * hodge is fixed by   hodge(a) ^ b = inner(a,b) vol   for deg b = deg a,
//     vol = e^1 ^ ... ^ e^m. The dual stands on the left of the wedge.
//     Consequences in m = 4: hodge(e12) = e34, hodge(e1) = -e234.
//   * insert(i, a) feeds e_i into the first argument slot.

namespace spinlab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

template <class T>
struct Form {
    int m = 0;
    int k = 0;
    std::vector<T> c; // comb::tuples(m,k) order

    Form() = default;
    Form(int m_, int k_, const T& zero) : m(m_), k(k_) {
        if (m_ < 0 || k_ < 0 || k_ > m_) throw std::invalid_argument("Form: bad degree");
        c.assign(static_cast<size_t>(comb::binom(m_, k_)), zero);
    }

    const T& at(const std::vector<int>& increasing) const {
        return c[comb::rank(m, k, increasing)];
    }
    T& at(const std::vector<int>& increasing) {
        return c[comb::rank(m, k, increasing)];
    }

    // Antisymmetric extension to arbitrary index tuples.
    T component(std::vector<int> idx) const {
        if (static_cast<int>(idx.size()) != k) throw std::invalid_argument("component: arity");
        int s = comb::sort_sign(idx);
        if (s == 0) return c[0] * 0.0;
        return c[comb::rank(m, k, idx)] * static_cast<double>(s);
    }

    void add_component(std::vector<int> idx, const T& v) {
        int s = comb::sort_sign(idx);
        if (s == 0) return;
        c[comb::rank(m, k, idx)] += v * static_cast<double>(s);
    }

    Form& operator+=(const Form& o) {
        for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    Form& operator-=(const Form& o) {
        for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, double s) {
        for (auto& v : a.c) v = v * s;
        return a;
    }
    friend Form operator*(Form a, cplx s) {
        for (auto& v : a.c) v = v * s;
        return a;
    }
};

using ScalarForm = Form<cplx>;
using MatForm = Form<Mat>;
using VecForm = Form<CVec>;

inline ScalarForm scalar_form(int m, int k) { return ScalarForm(m, k, cplx(0.0)); }
inline MatForm mat_form(int m, int k, int rows, int cols) {
    return MatForm(m, k, Mat::Zero(rows, cols));
}
inline VecForm vec_form(int m, int k, int d) { return VecForm(m, k, CVec::Zero(d)); }

inline ScalarForm volume_form(int m) {
    auto v = scalar_form(m, m);
    v.c[0] = 1.0;
    return v;
}

// Frame monomial e^{i1} ^ ... ^ e^{ik}; indices may come unsorted.
inline ScalarForm basis_form(int m, std::vector<int> idx) {
    auto f = scalar_form(m, static_cast<int>(idx.size()));
    f.add_component(std::move(idx), cplx(1.0));
    return f;
}

namespace detail {
template <class A, class B, class R, class Mul>
Form<R> wedge_impl(const Form<A>& a, const Form<B>& b, Mul mul, const R& zero) {
    if (a.m != b.m) throw std::invalid_argument("wedge: frame mismatch");
    if (a.k + b.k > a.m) throw std::invalid_argument("wedge: degree exceeds frame");
    Form<R> out(a.m, a.k + b.k, zero);
    const auto& ta = comb::tuples(a.m, a.k);
    const auto& tb = comb::tuples(b.m, b.k);
    for (size_t ia = 0; ia < ta.size(); ++ia) {
        for (size_t ib = 0; ib < tb.size(); ++ib) {
            std::vector<int> merged;
            int s = comb::shuffle_sign(ta[ia], tb[ib], &merged);
            if (s == 0) continue;
            out.c[comb::rank(out.m, out.k, merged)] += mul(a.c[ia], b.c[ib]) * static_cast<double>(s);
        }
    }
    return out;
}
} // namespace detail

inline ScalarForm wedge(const ScalarForm& a, const ScalarForm& b) {
    return detail::wedge_impl(a, b, [](cplx x, cplx y) { return x * y; }, cplx(0.0));
}
inline MatForm wedge(const ScalarForm& a, const MatForm& b) {
    Mat z = Mat::Zero(b.c[0].rows(), b.c[0].cols());
    return detail::wedge_impl(a, b, [](cplx x, const Mat& y) { return Mat(x * y); }, z);
}
inline MatForm wedge(const MatForm& a, const ScalarForm& b) {
    Mat z = Mat::Zero(a.c[0].rows(), a.c[0].cols());
    return detail::wedge_impl(a, b, [](const Mat& x, cplx y) { return Mat(x * y); }, z);
}
// Matrix values compose; order of the factors is preserved.
inline MatForm wedge(const MatForm& a, const MatForm& b) {
    Mat z = Mat::Zero(a.c[0].rows(), b.c[0].cols());
    return detail::wedge_impl(a, b, [](const Mat& x, const Mat& y) { return Mat(x * y); }, z);
}

// hodge: (star a)_K = sign(K, K^c) a_{K^c}, from  star(a) ^ b = inner(a,b) vol.
template <class T>
Form<T> hodge(const Form<T>& a) {
    Form<T> out(a.m, a.m - a.k, a.c[0] * 0.0);
    const auto& tk = comb::tuples(a.m, a.m - a.k);
    for (size_t i = 0; i < tk.size(); ++i) {
        auto kc = comb::complement(a.m, tk[i]);
        int s = comb::shuffle_sign(tk[i], kc);
        out.c[i] = a.at(kc) * static_cast<double>(s);
    }
    return out;
}

// Inverse dual: hodge_inverse(hodge(a)) = a for every degree.
template <class T>
Form<T> hodge_inverse(const Form<T>& a) {
    double s = ((a.k * (a.m - a.k)) % 2 == 0) ? 1.0 : -1.0;
    return hodge(a) * s;
}

// insert(i, a)(X_1,..,X_{k-1}) = a(e_i, X_1,..,X_{k-1}).
template <class T>
Form<T> insert(int i, const Form<T>& a) {
    if (a.k == 0) throw std::invalid_argument("insert: degree 0");
    Form<T> out(a.m, a.k - 1, a.c[0] * 0.0);
    const auto& tk = comb::tuples(a.m, a.k - 1);
    for (size_t r = 0; r < tk.size(); ++r) {
        std::vector<int> idx;
        idx.reserve(a.k);
        idx.push_back(i);
        idx.insert(idx.end(), tk[r].begin(), tk[r].end());
        int s = comb::sort_sign(idx);
        if (s == 0) continue;
        out.c[r] = a.at(idx) * static_cast<double>(s);
    }
    return out;
}

inline cplx form_inner(const ScalarForm& a, const ScalarForm& b) {
    if (a.m != b.m || a.k != b.k) throw std::invalid_argument("form_inner: mismatch");
    cplx acc = 0.0;
    for (size_t i = 0; i < a.c.size(); ++i) acc += a.c[i] * std::conj(b.c[i]);
    return acc;
}

// Ad-invariant pairing on anti-hermitian matrices; real on the real algebra.
inline cplx lie_inner(const Mat& z, const Mat& w) { return -2.0 * (z * w).trace(); }

template <class ValueInner>
cplx form_inner_with(const MatForm& a, const MatForm& b, ValueInner vi) {
    if (a.m != b.m || a.k != b.k) throw std::invalid_argument("form_inner: mismatch");
    cplx acc = 0.0;
    for (size_t i = 0; i < a.c.size(); ++i) acc += vi(a.c[i], b.c[i]);
    return acc;
}

inline double lie_form_norm2(const MatForm& a) {
    return form_inner_with(a, a, [](const Mat& z, const Mat& w) { return lie_inner(z, w); }).real();
}

template <class T>
double form_max_abs(const Form<T>& a) {
    double mx = 0.0;
    for (const auto& v : a.c) {
        if constexpr (std::is_same_v<T, cplx>) mx = std::max(mx, std::abs(v));
        else mx = std::max(mx, v.cwiseAbs().maxCoeff());
    }
    return mx;
}

// Middle-degree split in dimensions where the dual squares to +Id there.
template <class T>
Form<T> sd_part(const Form<T>& a) {
    if (2 * a.k != a.m) throw std::invalid_argument("sd_part: not middle degree");
    if ((a.k * a.k) % 2 != 0) throw std::invalid_argument("sd_part: dual squares to -Id");
    return (a + hodge(a)) * 0.5;
}
template <class T>
Form<T> asd_part(const Form<T>& a) {
    if (2 * a.k != a.m) throw std::invalid_argument("asd_part: not middle degree");
    if ((a.k * a.k) % 2 != 0) throw std::invalid_argument("asd_part: dual squares to -Id");
    return (a - hodge(a)) * 0.5;
}

} // namespace spinlab
