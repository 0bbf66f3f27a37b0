#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "exterior.hpp"
#include "tolerances.hpp"

// Compact gauge algebras su(N) and u(N) as anti-hermitian matrices, with the
// ad-invariant inner product <z,w> = -2 tr(zw), plus the unitary
// representations used elsewhere: the defining one, the adjoint one on the
// orthonormal basis, and the symmetric powers of the su(2) doublet.
//
// Orthonormal basis, in this order:
//   pairs r < s:  -(i/2)(E_rs + E_sr), then -(1/2)(E_rs - E_sr)
//   diagonals k = 1..N-1:  -i diag(1,..,1,-k,0,..,0) / sqrt(2k(k+1))
//   for u(N) additionally  i Id / sqrt(2N)
// For su(2) this is exactly {-i s1/2, -i s2/2, -i s3/2}.

namespace spinlab {

struct GaugeAlgebra {
    enum class Family { su, u };
    Family family = Family::su;
    int N = 0;
    std::vector<Mat> basis;

    int dim() const { return static_cast<int>(basis.size()); }

    static GaugeAlgebra su(int N) { return build(Family::su, N); }
    static GaugeAlgebra u(int N) { return build(Family::u, N); }

    static GaugeAlgebra build(Family f, int N) {
        if (N < 1 || (f == Family::su && N < 2)) throw std::invalid_argument("GaugeAlgebra: N");
        GaugeAlgebra g;
        g.family = f;
        g.N = N;
        const cplx i01(0.0, 1.0);
        for (int r = 0; r < N; ++r) {
            for (int s = r + 1; s < N; ++s) {
                Mat x = Mat::Zero(N, N), y = Mat::Zero(N, N);
                x(r, s) = -0.5 * i01; x(s, r) = -0.5 * i01;
                y(r, s) = -0.5;       y(s, r) = 0.5;
                g.basis.push_back(x);
                g.basis.push_back(y);
            }
        }
        for (int k = 1; k < N; ++k) {
            Mat d = Mat::Zero(N, N);
            double c = 1.0 / std::sqrt(2.0 * k * (k + 1));
            for (int j = 0; j < k; ++j) d(j, j) = -i01 * c;
            d(k, k) = i01 * c * static_cast<double>(k);
            g.basis.push_back(d);
        }
        if (f == Family::u) g.basis.push_back(i01 / std::sqrt(2.0 * N) * Mat::Identity(N, N));
        return g;
    }
};

// Real coordinates in the orthonormal basis. When given, *off receives the
// reconstruction residual, nonzero for arguments outside the real algebra.
inline Eigen::VectorXd lie_coords(const GaugeAlgebra& g, const Mat& X, double* off = nullptr) {
    Eigen::VectorXd c(g.dim());
    for (int a = 0; a < g.dim(); ++a) c[a] = lie_inner(X, g.basis[a]).real();
    if (off) {
        Mat rec = Mat::Zero(g.N, g.N);
        for (int a = 0; a < g.dim(); ++a) rec += c[a] * g.basis[a];
        *off = (rec - X).cwiseAbs().maxCoeff();
    }
    return c;
}

// Complex-bilinear coordinates, valid on the complexified algebra.
inline CVec lie_coords_c(const GaugeAlgebra& g, const Mat& X) {
    CVec c(g.dim());
    for (int a = 0; a < g.dim(); ++a) c[a] = lie_inner(X, g.basis[a]);
    return c;
}

inline Mat lie_from_coords(const GaugeAlgebra& g, const CVec& c) {
    Mat x = Mat::Zero(g.N, g.N);
    for (int a = 0; a < g.dim(); ++a) x += c[a] * g.basis[a];
    return x;
}

struct GaugeRep {
    GaugeAlgebra alg;
    int d = 0;                 // color dimension
    std::vector<Mat> rho;      // images of alg.basis
    std::string name;

    // Complex-bilinear extension through the basis coordinates.
    Mat apply(const Mat& X) const {
        CVec c = lie_coords_c(alg, X);
        Mat out = Mat::Zero(d, d);
        for (int a = 0; a < alg.dim(); ++a) out += c[a] * rho[a];
        return out;
    }

    static GaugeRep standard(const GaugeAlgebra& g) {
        GaugeRep r;
        r.alg = g;
        r.d = g.N;
        r.rho = g.basis;
        r.name = "standard";
        return r;
    }

    static GaugeRep adjoint(const GaugeAlgebra& g) {
        GaugeRep r;
        r.alg = g;
        r.d = g.dim();
        r.name = "adjoint";
        for (int a = 0; a < g.dim(); ++a) {
            Mat ad = Mat::Zero(g.dim(), g.dim());
            for (int c = 0; c < g.dim(); ++c) {
                Mat br = g.basis[a] * g.basis[c] - g.basis[c] * g.basis[a];
                for (int b = 0; b < g.dim(); ++b) ad(b, c) = lie_inner(br, g.basis[b]);
            }
            r.rho.push_back(ad);
        }
        return r;
    }

    // Symmetric power of the su(2) doublet on monomials x^(l-s) y^s with the
    // bosonic normalization 1/sqrt((l-s)! s!); dimension l + 1.
    static GaugeRep sym_su2(int l) {
        if (l < 0) throw std::invalid_argument("sym_su2: l");
        GaugeRep r;
        r.alg = GaugeAlgebra::su(2);
        r.d = l + 1;
        r.name = "sym_su2(" + std::to_string(l) + ")";
        for (const auto& a : r.alg.basis) r.rho.push_back(derivation_2x2(a, l));
        return r;
    }

    static Mat derivation_2x2(const Mat& a, int l) {
        Mat out = Mat::Zero(l + 1, l + 1);
        for (int s = 0; s <= l; ++s) {
            out(s, s) += static_cast<double>(l - s) * a(0, 0) + static_cast<double>(s) * a(1, 1);
            if (s + 1 <= l) out(s + 1, s) += std::sqrt(double(l - s) * double(s + 1)) * a(1, 0);
            if (s - 1 >= 0) out(s - 1, s) += std::sqrt(double(s) * double(l - s + 1)) * a(0, 1);
        }
        return out;
    }
};

// max over basis pairs of |tr(ad_X ad_Y) - 2N tr(XY)| on su(N).
inline double killing_residual(const GaugeAlgebra& g) {
    if (g.family != GaugeAlgebra::Family::su) throw std::invalid_argument("killing_residual: su only");
    auto ad = GaugeRep::adjoint(g);
    double worst = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
        for (int b = 0; b < g.dim(); ++b) {
            cplx lhs = (ad.rho[a] * ad.rho[b]).trace();
            cplx rhs = 2.0 * g.N * (g.basis[a] * g.basis[b]).trace();
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

inline Mat casimir(const GaugeRep& r) {
    Mat out = Mat::Zero(r.d, r.d);
    for (const auto& m : r.rho) out += m * m;
    return out;
}

// Lie-valued form to fiber coordinates of the adjoint bundle. Values must
// lie in the real algebra up to tol::identity.
inline VecForm fiberize(const GaugeAlgebra& g, const MatForm& a) {
    VecForm out(a.m, a.k, CVec::Zero(g.dim()));
    for (size_t i = 0; i < a.c.size(); ++i) {
        double off = 0.0;
        Eigen::VectorXd c = lie_coords(g, a.c[i], &off);
        if (off > tol::identity) throw std::invalid_argument("fiberize: value outside the algebra");
        out.c[i] = c.cast<cplx>();
    }
    return out;
}

} // namespace spinlab
