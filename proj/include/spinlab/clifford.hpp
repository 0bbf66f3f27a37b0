#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "exterior.hpp"

// Clifford algebra on C^(2^floor(m/2)) with anti-hermitian unitary
// generators,
//
//     gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij Id.
//
// standard(m) builds the generators by tensor recursion:
//   m = 1:          { -i }
//   m = 2:          { -i s1, -i s2 }                         (s = Pauli)
//   even -> even+1: append the product gamma_1..gamma_{2n}, scaled by 1 for
//                   odd n and by i for even n so the square stays -Id.
//   even -> even+2: g -> g (x) s3, then append Id (x) {-i s1, -i s2}.
// The m = 3 generators come out as exactly {-i s1, -i s2, -i s3}.
//
// chirality (even m only): i^(m/2) gamma_1 ... gamma_m with overall sign +1,
// which squares to Id for every even m. Recorded per dimension:
//   m = 2: s3,  m = 4: s3 (x) s3,  m = 6: s3 (x) s3 (x) s3.
//
// Twisted spinors are S x d matrices: row index spinor, column index color.

namespace spinlab {

struct CliffordModule {
    int m = 0;
    int S = 1;
    std::vector<Mat> gamma;
    Mat chirality; // empty for odd m

    static CliffordModule standard(int m) {
        if (m < 1 || m > 10) throw std::invalid_argument("CliffordModule: m out of range");
        CliffordModule cm;
        cm.m = m;
        const cplx i01(0.0, 1.0);
        Mat s1(2, 2), s2(2, 2), s3(2, 2);
        s1 << 0, 1, 1, 0;
        s2 << 0, -i01, i01, 0;
        s3 << 1, 0, 0, -1;
        std::vector<Mat> g;
        if (m == 1) {
            g.push_back(Mat::Constant(1, 1, -i01));
        } else {
            g.push_back(-i01 * s1);
            g.push_back(-i01 * s2);
            int built = 2;
            while (built + 2 <= m) {
                std::vector<Mat> lifted;
                for (const auto& gk : g) lifted.push_back(kron(gk, s3));
                Mat id = Mat::Identity(g[0].rows(), g[0].cols());
                lifted.push_back(kron(id, Mat(-i01 * s1)));
                lifted.push_back(kron(id, Mat(-i01 * s2)));
                g = std::move(lifted);
                built += 2;
            }
            if (built < m) {
                // odd top generator: volume element of the even part below
                Mat w = g[0];
                for (int k = 1; k < built; ++k) w = w * g[k];
                int n = built / 2;
                g.push_back((n % 2 == 1) ? w : Mat(i01 * w));
            }
        }
        cm.gamma = std::move(g);
        cm.S = static_cast<int>(cm.gamma[0].rows());
        if (m % 2 == 0) {
            Mat w = cm.gamma[0];
            for (int k = 1; k < m; ++k) w = w * cm.gamma[k];
            cplx phase = std::pow(i01, m / 2);
            cm.chirality = phase * w;
        }
        return cm;
    }

    static Mat kron(const Mat& a, const Mat& b) {
        Mat out(a.rows() * b.rows(), a.cols() * b.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return out;
    }

    // gamma_{i1} ... gamma_{ik} for an increasing tuple; Id for the empty one.
    Mat monomial(const std::vector<int>& idx) const {
        Mat out = Mat::Identity(S, S);
        for (int i : idx) out = out * gamma[i - 1];
        return out;
    }

    // Scalar form as a spinor endomorphism: sum over increasing tuples.
    Mat embed(const ScalarForm& a) const {
        if (a.m != m) throw std::invalid_argument("embed: frame mismatch");
        Mat out = Mat::Zero(S, S);
        const auto& tk = comb::tuples(m, a.k);
        for (size_t r = 0; r < tk.size(); ++r) out += a.c[r] * monomial(tk[r]);
        return out;
    }
};

// Projector onto the +1 or -1 chirality eigenspace.
inline Mat chiral_projector(const CliffordModule& cm, int sign) {
    if (cm.m % 2 != 0) throw std::invalid_argument("chiral_projector: odd m");
    if (sign != 1 && sign != -1) throw std::invalid_argument("chiral_projector: sign");
    return 0.5 * (Mat::Identity(cm.S, cm.S) + static_cast<double>(sign) * cm.chirality);
}

inline CVec chiral_project(const CliffordModule& cm, int sign, const CVec& psi) {
    return chiral_projector(cm, sign) * psi;
}
inline Mat chiral_project(const CliffordModule& cm, int sign, const Mat& Psi) {
    return chiral_projector(cm, sign) * Psi;
}

// Broadcast a scalar-valued form onto a d-dimensional fiber.
inline VecForm fiberize(const ScalarForm& a, int d) {
    VecForm out(a.m, a.k, CVec::Zero(d));
    for (size_t i = 0; i < a.c.size(); ++i) out.c[i] = a.c[i] * CVec::Ones(d);
    return out;
}

// Clifford tensor product of a fiber-valued form with a bare spinor:
// sum_I (gamma_I psi) (x) theta_I, values placed in the color slot.
inline Mat clifford_tensor_product(const CliffordModule& cm, const VecForm& theta,
                                   const CVec& psi) {
    if (theta.m != cm.m) throw std::invalid_argument("clifford_tensor_product: frame");
    const int d = static_cast<int>(theta.c[0].size());
    Mat out = Mat::Zero(cm.S, d);
    const auto& tk = comb::tuples(cm.m, theta.k);
    for (size_t r = 0; r < tk.size(); ++r)
        out += (cm.monomial(tk[r]) * psi) * theta.c[r].transpose();
    return out;
}

// Endomorphism-valued form acting on a twisted spinor: gammas hit the spinor
// slot, values hit the color slot.
inline Mat clifford_action(const CliffordModule& cm, const MatForm& xi, const Mat& Psi) {
    if (xi.m != cm.m) throw std::invalid_argument("clifford_action: frame");
    Mat out = Mat::Zero(Psi.rows(), Psi.cols());
    const auto& tk = comb::tuples(cm.m, xi.k);
    for (size_t r = 0; r < tk.size(); ++r)
        out += cm.monomial(tk[r]) * Psi * xi.c[r].transpose();
    return out;
}

// Linear extension over mixed degree.
inline Mat clifford_action(const CliffordModule& cm, const std::vector<MatForm>& xs,
                           const Mat& Psi) {
    Mat out = Mat::Zero(Psi.rows(), Psi.cols());
    for (const auto& xi : xs) out += clifford_action(cm, xi, Psi);
    return out;
}

// sum_i e_i . theta . e_i evaluated in the representation and read back off
// as a form of the same degree. Distinct increasing monomials of one degree
// stay trace-orthogonal in every dimension, so the extraction is exact.
template <class T>
Form<T> conjugation_sum(const CliffordModule& cm, const Form<T>& theta) {
    if (theta.m != cm.m) throw std::invalid_argument("conjugation_sum: frame");
    Form<T> out(theta.m, theta.k, theta.c[0] * 0.0);
    const auto& tk = comb::tuples(cm.m, theta.k);
    for (size_t r = 0; r < tk.size(); ++r) {
        Mat base = cm.monomial(tk[r]);
        Mat conj = Mat::Zero(cm.S, cm.S);
        for (int i = 0; i < cm.m; ++i) conj += cm.gamma[i] * base * cm.gamma[i];
        for (size_t q = 0; q < tk.size(); ++q) {
            cplx coef = (cm.monomial(tk[q]).adjoint() * conj).trace() / static_cast<double>(cm.S);
            if (std::abs(coef) > 0.0) out.c[q] += theta.c[r] * coef;
        }
    }
    return out;
}

// Degree-j part of a spinor endomorphism, coefficients on increasing
// monomials. Only meaningful for even m, where the monomials form a basis.
inline ScalarForm form_part(const CliffordModule& cm, const Mat& op, int j) {
    if (cm.m % 2 != 0) throw std::invalid_argument("form_part: odd m is ambiguous");
    auto out = scalar_form(cm.m, j);
    const auto& tk = comb::tuples(cm.m, j);
    for (size_t r = 0; r < tk.size(); ++r)
        out.c[r] = (cm.monomial(tk[r]).adjoint() * op).trace() / static_cast<double>(cm.S);
    return out;
}

} // namespace spinlab
