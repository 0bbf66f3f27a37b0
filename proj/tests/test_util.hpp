#pragma once

#include <random>

#include <spinlab/exterior.hpp>

namespace testutil {

using spinlab::cplx;
using spinlab::CVec;
using spinlab::Mat;

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline double runif(std::mt19937_64& g) {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(g);
}

inline cplx rcplx(std::mt19937_64& g) { return {runif(g), runif(g)}; }

inline spinlab::ScalarForm random_scalar_form(int m, int k, std::mt19937_64& g) {
    auto f = spinlab::scalar_form(m, k);
    for (auto& v : f.c) v = rcplx(g);
    return f;
}

inline CVec random_cvec(int n, std::mt19937_64& g) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v[i] = rcplx(g);
    return v;
}

inline Mat random_cmat(int r, int c, std::mt19937_64& g) {
    Mat v(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) v(i, j) = rcplx(g);
    return v;
}

inline CVec random_unit(int n, std::mt19937_64& g) {
    CVec v = random_cvec(n, g);
    return v / v.norm();
}

// Random element of su(N) (traceless anti-hermitian) or u(N).
inline Mat random_lie(int N, bool traceless, std::mt19937_64& g) {
    Mat a = random_cmat(N, N, g);
    Mat x = 0.5 * (a - a.adjoint());
    if (traceless) x -= (x.trace() / static_cast<double>(N)) * Mat::Identity(N, N);
    return x;
}

} // namespace testutil
