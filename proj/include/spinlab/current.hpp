#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "clifford.hpp"
#include "gauge.hpp"
#include "tolerances.hpp"

// The bilinear current of a twisted spinor and the pointwise pairing that
// identifies it. Inner products are linear in the first slot and conjugate
// the second one.
//
//   current(k, a) = -1/2 < Psi, gamma_k rho_a Psi >        (real)
//   K_eta Psi     = sum_k gamma_k rho(eta_k) Psi           (hermitian)
//   -1/2 < Psi, K_eta Psi > = sum_{k,a} eta^{k,a} current(k, a)
//
// cross products of two commuting anti-hermitian slot actions are hermitian,
// which keeps the current entries real; the imaginary residue is checked
// against tol::imag_leak and discarded.

namespace spinlab {

inline cplx twisted_inner(const Mat& a, const Mat& b) {
    return (a.cwiseProduct(b.conjugate())).sum();
}

// gamma_k on the spinor slot, rho_a on the color slot.
inline Mat slot_action(const CliffordModule& cm, const Mat& rho, int k, const Mat& Psi) {
    return cm.gamma[k - 1] * Psi * rho.transpose();
}

inline Eigen::MatrixXd dirac_current(const CliffordModule& cm, const GaugeRep& rep,
                                     const Mat& Psi, double* imag_residue = nullptr) {
    if (Psi.rows() != cm.S || Psi.cols() != rep.d)
        throw std::invalid_argument("dirac_current: twisted spinor shape");
    Eigen::MatrixXd J(cm.m, rep.alg.dim());
    double leak = 0.0;
    for (int k = 1; k <= cm.m; ++k) {
        for (int a = 0; a < rep.alg.dim(); ++a) {
            cplx v = -0.5 * twisted_inner(Psi, slot_action(cm, rep.rho[a], k, Psi));
            leak = std::max(leak, std::abs(v.imag()));
            J(k - 1, a) = v.real();
        }
    }
    if (imag_residue) *imag_residue = leak;
    else if (leak > tol::imag_leak) throw std::runtime_error("dirac_current: imaginary residue");
    return J;
}

// eta: degree-1 form with values in the real algebra.
inline Mat k_eta_apply(const CliffordModule& cm, const GaugeRep& rep, const MatForm& eta,
                       const Mat& Psi) {
    if (eta.k != 1 || eta.m != cm.m) throw std::invalid_argument("k_eta_apply: eta shape");
    Mat out = Mat::Zero(Psi.rows(), Psi.cols());
    for (int k = 1; k <= cm.m; ++k) out += cm.gamma[k - 1] * Psi * rep.apply(eta.at({k})).transpose();
    return out;
}

// | -1/2 <Psi, K_eta Psi>  -  sum eta^{k,a} current(k,a) |
inline double pairing_residual(const CliffordModule& cm, const GaugeRep& rep, const Mat& Psi,
                               const MatForm& eta) {
    cplx lhs = -0.5 * twisted_inner(Psi, k_eta_apply(cm, rep, eta, Psi));
    auto J = dirac_current(cm, rep, Psi);
    double rhs = 0.0;
    for (int k = 1; k <= cm.m; ++k) {
        double off = 0.0;
        Eigen::VectorXd coords = lie_coords(rep.alg, eta.at({k}), &off);
        if (off > tol::identity) throw std::invalid_argument("pairing_residual: eta outside algebra");
        rhs += coords.dot(J.row(k - 1));
    }
    return std::abs(lhs - cplx(rhs));
}

// Proof-basis elements of su(N), unit norm, 1 <= k <= N-1.
inline Mat su_Hk(int N, int k) {
    Mat h = Mat::Zero(N, N);
    h(0, 0) = cplx(0.0, -0.5);
    h(k, k) = cplx(0.0, 0.5);
    return h;
}
inline Mat su_Xk(int N, int k) {
    Mat x = Mat::Zero(N, N);
    x(0, k) = cplx(0.0, -0.5);
    x(k, 0) = cplx(0.0, -0.5);
    return x;
}
inline Mat su_Yk(int N, int k) {
    Mat y = Mat::Zero(N, N);
    y(0, k) = -0.5;
    y(k, 0) = 0.5;
    return y;
}

// The nine frame/algebra bilinears "< e_l . sigma Psi, Psi >" that control
// injectivity of the current in three dimensions, standard representation.
// Order: (e3,H_k), (e1,X_k), (e2,Y_k), (e1,Y_k), (e2,X_k), (e1,H_k),
//        (e2,H_k), (e3,Y_k), (e3,X_k).
inline std::array<double, 9> dim3_bilinears(const CliffordModule& cm, int N, int k,
                                            const Mat& Psi) {
    if (cm.m != 3) throw std::invalid_argument("dim3_bilinears: needs m = 3");
    if (k < 1 || k >= N) throw std::invalid_argument("dim3_bilinears: k");
    auto val = [&](int l, const Mat& sig) {
        cplx v = twisted_inner(slot_action(cm, sig, l, Psi), Psi);
        if (std::abs(v.imag()) > tol::imag_leak)
            throw std::runtime_error("dim3_bilinears: imaginary residue");
        return v.real();
    };
    Mat H = su_Hk(N, k), X = su_Xk(N, k), Y = su_Yk(N, k);
    return {val(3, H), val(1, X), val(2, Y), val(1, Y), val(2, X),
            val(1, H), val(2, H), val(3, Y), val(3, X)};
}

struct MinCurrentResult {
    double min_norm = 0.0;       // smallest ||current|| found on the unit sphere
    CVec argmin;                 // flattened twisted spinor
    int restarts = 0;
    int iterations = 0;
};

// Multi-start projected gradient descent for min ||current(Psi)|| over the
// unit sphere. Restart seeds are derived deterministically from `seed`, so
// the outcome does not depend on scheduling.
inline MinCurrentResult current_min_on_sphere(const CliffordModule& cm, const GaugeRep& rep,
                                              int restarts = 64, std::uint64_t seed = 12345,
                                              int iters = 400) {
    const int S = cm.S, d = rep.d;
    const int n = S * d;
    std::vector<Mat> ops; // hermitian slot actions per (k, a)
    for (int k = 1; k <= cm.m; ++k)
        for (int a = 0; a < rep.alg.dim(); ++a) {
            Mat op = Mat::Zero(n, n);
            // flatten column-major: index = s + S * c
            for (int c = 0; c < d; ++c)
                for (int cc = 0; cc < d; ++cc)
                    if (rep.rho[a](c, cc) != cplx(0.0))
                        op.block(S * c, S * cc, S, S) += rep.rho[a](c, cc) * cm.gamma[k - 1];
            ops.push_back(op);
        }

    MinCurrentResult best;
    best.min_norm = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 g(seed ^ (0x9e3779b97f4a7c15ULL * (r + 1)));
        CVec psi(n);
        std::normal_distribution<double> nd(0.0, 1.0);
        for (int i = 0; i < n; ++i) psi[i] = cplx(nd(g), nd(g));
        psi.normalize();

        double step = 0.5;
        auto fval = [&](const CVec& v, std::vector<double>* comps = nullptr) {
            double f = 0.0;
            for (const auto& op : ops) {
                double j = -0.5 * (v.adjoint() * op * v).value().real();
                if (comps) comps->push_back(j);
                f += j * j;
            }
            return f;
        };
        double f = fval(psi);
        int it = 0;
        for (; it < iters; ++it) {
            std::vector<double> comps;
            comps.reserve(ops.size());
            fval(psi, &comps);
            CVec grad = CVec::Zero(n);
            for (size_t b = 0; b < ops.size(); ++b) grad += comps[b] * (-1.0) * (ops[b] * psi);
            grad -= psi * (psi.dot(grad).real());
            double gn = grad.norm();
            if (gn < 1e-14) break;
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                CVec cand = (psi - step * grad).normalized();
                double fc = fval(cand);
                if (fc < f - 1e-16) {
                    psi = cand;
                    f = fc;
                    step *= 1.3;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        double norm = std::sqrt(f);
        if (norm < best.min_norm) {
            best.min_norm = norm;
            best.argmin = psi;
            best.iterations = it;
        }
    }
    best.restarts = restarts;
    return best;
}

} // namespace spinlab
