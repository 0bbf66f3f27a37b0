#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "clifford.hpp"
#include "current.hpp"
#include "gauge.hpp"
#include "parallel.hpp"
#include "tolerances.hpp"

// Chart-level field calculus on flat R^m: central finite differences of
// orders 2/4/6, gauge covariant derivatives, curvature, the Dirac operator
// and its square, energy-momentum tensors, and compactified quadrature.
//
// Fields are plain callables of the chart point. Covariant derivatives act
// by the adjoint bracket on algebra-valued forms and by the representation
// on twisted spinors.

namespace spinlab {

template <class V>
using Field = std::function<V(const RVec&)>;

struct FD {
    int order = 4;
    double h = 1e-2;
};

inline const std::vector<std::pair<int, double>>& fd_stencil(int order) {
    static const std::vector<std::pair<int, double>> s2{{-1, -0.5}, {1, 0.5}};
    static const std::vector<std::pair<int, double>> s4{
        {-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}};
    static const std::vector<std::pair<int, double>> s6{
        {-3, -1.0 / 60}, {-2, 9.0 / 60}, {-1, -45.0 / 60},
        {1, 45.0 / 60},  {2, -9.0 / 60}, {3, 1.0 / 60}};
    switch (order) {
        case 2: return s2;
        case 4: return s4;
        case 6: return s6;
        default: throw std::invalid_argument("fd_stencil: order must be 2, 4 or 6");
    }
}

template <class F>
auto fd_partial(F&& f, const RVec& x, int axis, const FD& fd) -> std::decay_t<decltype(f(x))> {
    using V = std::decay_t<decltype(f(x))>;
    const auto& st = fd_stencil(fd.order);
    std::optional<V> acc;
    RVec y = x;
    for (const auto& [o, w] : st) {
        y[axis - 1] = x[axis - 1] + o * fd.h;
        V term = f(y) * (w / fd.h);
        if (acc) *acc += term;
        else acc = std::move(term);
    }
    return *acc;
}

struct Connection {
    int m = 0;
    int N = 0;               // matrix size of the algebra values
    Field<MatForm> A;        // degree-1 potential on the chart
};

inline Connection zero_connection(int m, int N) {
    return Connection{m, N, [m, N](const RVec&) { return mat_form(m, 1, N, N); }};
}

// F_ij = d_i A_j - d_j A_i + [A_i, A_j]
inline MatForm curvature_of(const Connection& conn, const RVec& x, const FD& fd = {}) {
    std::vector<MatForm> dA;
    dA.reserve(conn.m);
    for (int i = 1; i <= conn.m; ++i) dA.push_back(fd_partial(conn.A, x, i, fd));
    MatForm Ax = conn.A(x);
    MatForm F = mat_form(conn.m, 2, conn.N, conn.N);
    for (int i = 1; i <= conn.m; ++i) {
        for (int j = i + 1; j <= conn.m; ++j) {
            Mat ai = Ax.at({i}), aj = Ax.at({j});
            F.at({i, j}) = dA[i - 1].at({j}) - dA[j - 1].at({i}) + ai * aj - aj * ai;
        }
    }
    return F;
}

// Adjoint covariant derivative of an algebra-valued form field.
inline MatForm cov_partial_ad(const Connection& conn, const Field<MatForm>& xi, const RVec& x,
                              int axis, const FD& fd = {}) {
    MatForm d = fd_partial(xi, x, axis, fd);
    Mat a = conn.A(x).at({axis});
    MatForm v = xi(x);
    for (size_t r = 0; r < d.c.size(); ++r) d.c[r] += a * v.c[r] - v.c[r] * a;
    return d;
}

inline MatForm cov_d_ad(const Connection& conn, const Field<MatForm>& xi, const RVec& x,
                        const FD& fd = {}) {
    MatForm v = xi(x);
    MatForm out = mat_form(conn.m, v.k + 1, conn.N, conn.N);
    for (int i = 1; i <= conn.m; ++i)
        out += wedge(basis_form(conn.m, {i}), cov_partial_ad(conn, xi, x, i, fd));
    return out;
}

inline MatForm cov_delta_ad(const Connection& conn, const Field<MatForm>& xi, const RVec& x,
                            const FD& fd = {}) {
    MatForm v = xi(x);
    MatForm out = mat_form(conn.m, v.k - 1, conn.N, conn.N);
    for (int i = 1; i <= conn.m; ++i) out -= insert(i, cov_partial_ad(conn, xi, x, i, fd));
    return out;
}

// Dual-path codifferential (-1)^{k+m+1} inv-hodge d_w hodge, for cross
// checks; the sign follows inv-hodge(e^i ^ hodge T) = (-1)^{k+m} e_i -| T.
inline MatForm cov_delta_ad_star(const Connection& conn, const Field<MatForm>& xi, const RVec& x,
                                 const FD& fd = {}) {
    Field<MatForm> starred = [&xi](const RVec& y) { return hodge(xi(y)); };
    MatForm d = cov_d_ad(conn, starred, x, fd);
    int k = xi(x).k;
    double sign = ((k + conn.m + 1) % 2 == 0) ? 1.0 : -1.0;
    return hodge_inverse(d) * sign;
}

inline double bianchi_residual(const Connection& conn, const RVec& x, const FD& fd = {}) {
    Field<MatForm> F = [&conn, fd](const RVec& y) { return curvature_of(conn, y, fd); };
    return form_max_abs(cov_d_ad(conn, F, x, fd));
}

inline double yang_mills_residual(const Connection& conn, const RVec& x, const FD& fd = {}) {
    Field<MatForm> F = [&conn, fd](const RVec& y) { return curvature_of(conn, y, fd); };
    return form_max_abs(cov_delta_ad(conn, F, x, fd));
}

// Twisted spinor covariant derivative: d_k Psi + Psi rho(A_k)^T.
inline Mat cov_psi_partial(const CliffordModule& cm, const GaugeRep& rep, const Connection& conn,
                           const Field<Mat>& psi, const RVec& x, int axis, const FD& fd = {}) {
    Mat d = fd_partial(psi, x, axis, fd);
    return d + psi(x) * rep.apply(conn.A(x).at({axis})).transpose();
}

inline Mat dirac_apply(const CliffordModule& cm, const GaugeRep& rep, const Connection& conn,
                       const Field<Mat>& psi, const RVec& x, const FD& fd = {}) {
    Mat out = Mat::Zero(cm.S, rep.d);
    for (int k = 1; k <= cm.m; ++k)
        out += cm.gamma[k - 1] * cov_psi_partial(cm, rep, conn, psi, x, k, fd);
    return out;
}

// || D(D Psi) - Lap Psi - rho(F).Psi || at x; Lap is the connection
// laplacian -sum_k cov_k cov_k on the flat chart.
inline double weitzenbock_residual(const CliffordModule& cm, const GaugeRep& rep,
                                   const Connection& conn, const Field<Mat>& psi, const RVec& x,
                                   const FD& fd = {}) {
    Field<Mat> dpsi = [&](const RVec& y) { return dirac_apply(cm, rep, conn, psi, y, fd); };
    Mat dd = dirac_apply(cm, rep, conn, dpsi, x, fd);

    Mat lap = Mat::Zero(cm.S, rep.d);
    for (int k = 1; k <= cm.m; ++k) {
        Field<Mat> first = [&, k](const RVec& y) {
            return cov_psi_partial(cm, rep, conn, psi, y, k, fd);
        };
        lap -= cov_psi_partial(cm, rep, conn, first, x, k, fd);
    }

    MatForm F = curvature_of(conn, x, fd);
    MatForm rhoF = mat_form(cm.m, 2, rep.d, rep.d);
    for (size_t r = 0; r < F.c.size(); ++r) rhoF.c[r] = rep.apply(F.c[r]);
    Mat cur = clifford_action(cm, rhoF, psi(x));

    return (dd - lap - cur).cwiseAbs().maxCoeff();
}

// Yang-Mills energy-momentum: -<i -| F, j -| F> + 1/2 |F|^2 delta_ij.
inline Eigen::MatrixXd stress_ym(const Connection& conn, const RVec& x, const FD& fd = {}) {
    MatForm F = curvature_of(conn, x, fd);
    const int m = conn.m;
    double norm2 = lie_form_norm2(F);
    Eigen::MatrixXd T(m, m);
    for (int i = 1; i <= m; ++i) {
        for (int j = i; j <= m; ++j) {
            cplx acc = 0.0;
            for (int l = 1; l <= m; ++l)
                acc += lie_inner(F.component({i, l}), F.component({j, l}));
            double v = -acc.real() + (i == j ? 0.5 * norm2 : 0.0);
            T(i - 1, j - 1) = v;
            T(j - 1, i - 1) = v;
        }
    }
    return T;
}

// Spinor energy-momentum before taking real parts:
// -1/4 <g_i cov_j Psi + g_j cov_i Psi, Psi> + 1/2 <D Psi, Psi> delta_ij.
inline Eigen::MatrixXcd stress_dirac(const CliffordModule& cm, const GaugeRep& rep,
                                     const Connection& conn, const Field<Mat>& psi, const RVec& x,
                                     const FD& fd = {}) {
    const int m = cm.m;
    Mat P = psi(x);
    std::vector<Mat> cov;
    cov.reserve(m);
    for (int k = 1; k <= m; ++k) cov.push_back(cov_psi_partial(cm, rep, conn, psi, x, k, fd));
    Mat dp = Mat::Zero(cm.S, rep.d);
    for (int k = 1; k <= m; ++k) dp += cm.gamma[k - 1] * cov[k - 1];
    cplx dterm = twisted_inner(dp, P);

    Eigen::MatrixXcd T(m, m);
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            cplx v = -0.25 * twisted_inner(cm.gamma[i - 1] * cov[j - 1] + cm.gamma[j - 1] * cov[i - 1], P);
            if (i == j) v += 0.5 * dterm;
            T(i - 1, j - 1) = v;
        }
    }
    return T;
}

inline double stress_ym_trace_residual(const Connection& conn, const RVec& x, const FD& fd = {}) {
    MatForm F = curvature_of(conn, x, fd);
    double expect = (conn.m / 2.0 - 2.0) * lie_form_norm2(F);
    return std::abs(stress_ym(conn, x, fd).trace() - expect);
}

inline double stress_dirac_trace_residual(const CliffordModule& cm, const GaugeRep& rep,
                                          const Connection& conn, const Field<Mat>& psi,
                                          const RVec& x, const FD& fd = {}) {
    Mat P = psi(x);
    Mat dp = dirac_apply(cm, rep, conn, psi, x, fd);
    cplx expect = 0.5 * (cm.m - 1.0) * twisted_inner(dp, P);
    return std::abs(stress_dirac(cm, rep, conn, psi, x, fd).trace() - expect);
}

// max_j | sum_i d_i T(i, j) | for a tensor-valued field.
inline double divergence_residual(const Field<Eigen::MatrixXcd>& T, int m, const RVec& x,
                                  const FD& fd = {}) {
    Eigen::MatrixXcd div = Eigen::MatrixXcd::Zero(1, m);
    for (int i = 1; i <= m; ++i) {
        Eigen::MatrixXcd d = fd_partial(T, x, i, fd);
        div += d.row(i - 1);
    }
    return div.cwiseAbs().maxCoeff();
}

// Frame rescaling check for the middle-degree energy density in m = 4:
// components pick up e^{-2u} per slot pair, the norm picks up e^{-4u}, and
// the volume weight e^{4u} cancels it.
inline double conformal_ym_density_residual(const MatForm& F, double u) {
    if (F.m != 4 || F.k != 2) throw std::invalid_argument("conformal check: need a two-form on m=4");
    MatForm resc = F * std::exp(-2.0 * u);
    double lhs = lie_form_norm2(resc) * std::exp(4.0 * u);
    return std::abs(lhs - lie_form_norm2(F));
}

struct QuadResult {
    double value = 0.0;
    double refinement_delta = 0.0; // |value - value at half resolution|
};

// Midpoint tensor-product rule over a box, deterministic slice chunking.
inline double integrate_box_once(const std::function<double(const RVec&)>& f, const RVec& lo,
                                 const RVec& hi, int res, int threads = 1) {
    const int m = static_cast<int>(lo.size());
    std::vector<double> h(m), base(m);
    long total = 1;
    for (int i = 0; i < m; ++i) {
        h[i] = (hi[i] - lo[i]) / res;
        base[i] = lo[i] + 0.5 * h[i];
        total *= res;
    }
    const long slice = total / res;
    std::vector<double> partial(res, 0.0);
    parallel_chunks(res, threads, [&](int s) {
        RVec x(m);
        x[0] = base[0] + s * h[0];
        double acc = 0.0;
        for (long idx = 0; idx < slice; ++idx) {
            long rem = idx;
            for (int i = 1; i < m; ++i) {
                x[i] = base[i] + (rem % res) * h[i];
                rem /= res;
            }
            acc += f(x);
        }
        partial[s] = acc;
    });
    double sum = 0.0;
    for (double p : partial) sum += p;
    double cell = 1.0;
    for (int i = 0; i < m; ++i) cell *= h[i];
    return sum * cell;
}

inline QuadResult integrate_box(const std::function<double(const RVec&)>& f, const RVec& lo,
                                const RVec& hi, int res, int threads = 1) {
    QuadResult q;
    q.value = integrate_box_once(f, lo, hi, res, threads);
    int half = std::max(2, res / 2);
    q.refinement_delta = std::abs(q.value - integrate_box_once(f, lo, hi, half, threads));
    return q;
}

// Integral over R^m through the per-axis substitution x = tan(t),
// dx = dt / cos^2 t, on the open box (-pi/2, pi/2)^m.
inline double integrate_rm_compactified(const std::function<double(const RVec&)>& f, int m,
                                        int res, int threads = 1) {
    const double half_pi = std::acos(0.0);
    RVec lo = RVec::Constant(m, -half_pi), hi = RVec::Constant(m, half_pi);
    return integrate_box_once(
        [&f, m](const RVec& t) {
            RVec x(m);
            double w = 1.0;
            for (int i = 0; i < m; ++i) {
                double c = std::cos(t[i]);
                x[i] = std::tan(t[i]);
                w /= c * c;
            }
            return f(x) * w;
        },
        lo, hi, res, threads);
}

} // namespace spinlab
