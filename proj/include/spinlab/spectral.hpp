#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "clifford.hpp"
#include "current.hpp"
#include "gauge.hpp"
#include "tolerances.hpp"

// Dense Fourier discretization of the twisted Dirac operator on the flat
// torus [0,L)^m: plane waves n with max_i |n_i| <= K, spinor and color
// fibers attached per mode. With anti-hermitian gammas and an algebra
// valued potential obeying A_{-nu} = -A_nu^dagger the assembled matrix is
// hermitian, so the spectrum is real and comes from a dense self-adjoint
// solve. Branch continuation through parameter families follows eigenvector
// overlap, rotating inside degenerate clusters and bisecting the step when
// continuity drops.

namespace spinlab {

struct TorusGrid {
    int m = 0;
    int K = 0;
    double L = 1.0;
    std::vector<std::vector<int>> modes;

    static TorusGrid cubic(int m, int K, double L = 1.0) {
        TorusGrid g;
        g.m = m;
        g.K = K;
        g.L = L;
        int count = 1;
        for (int i = 0; i < m; ++i) count *= 2 * K + 1;
        g.modes.reserve(count);
        std::vector<int> n(m, -K);
        for (;;) {
            g.modes.push_back(n);
            int axis = m - 1;
            while (axis >= 0 && n[axis] == K) n[axis--] = -K;
            if (axis < 0) break;
            ++n[axis];
        }
        return g;
    }

    int mode_count() const { return static_cast<int>(modes.size()); }

    int index_of(const std::vector<int>& n) const {
        int idx = 0;
        for (int i = 0; i < m; ++i) {
            if (n[i] < -K || n[i] > K) return -1;
            idx = idx * (2 * K + 1) + (n[i] + K);
        }
        return idx;
    }
};

// Finite Fourier data of a degree-1 potential: nu -> (A_{1,nu},...,A_{m,nu}).
struct FourierPotential {
    int m = 0;
    int N = 1;
    std::map<std::vector<int>, std::vector<Mat>> coef;

    static FourierPotential zero(int m, int N) { return FourierPotential{m, N, {}}; }

    void add(const std::vector<int>& nu, const std::vector<Mat>& comps) {
        if (static_cast<int>(nu.size()) != m || static_cast<int>(comps.size()) != m)
            throw std::invalid_argument("FourierPotential::add: shape");
        auto it = coef.find(nu);
        if (it == coef.end()) coef.emplace(nu, comps);
        else
            for (int k = 0; k < m; ++k) it->second[k] += comps[k];
    }

    // constant potential, the nu = 0 coefficient alone
    static FourierPotential constant(const MatForm& eta) {
        if (eta.k != 1) throw std::invalid_argument("FourierPotential::constant: need degree 1");
        FourierPotential p;
        p.m = eta.m;
        p.N = static_cast<int>(eta.c[0].rows());
        std::vector<Mat> comps;
        for (int k = 1; k <= eta.m; ++k) comps.push_back(eta.at({k}));
        p.coef.emplace(std::vector<int>(eta.m, 0), comps);
        return p;
    }
};

// max_k |A_{k,-nu} + A_{k,nu}^dagger|; zero exactly when the potential is a
// real algebra valued function of the chart point.
inline double potential_reality_residual(const FourierPotential& p) {
    double mx = 0.0;
    for (const auto& [nu, comps] : p.coef) {
        std::vector<int> neg(nu.size());
        for (size_t i = 0; i < nu.size(); ++i) neg[i] = -nu[i];
        auto it = p.coef.find(neg);
        for (int k = 0; k < p.m; ++k) {
            Mat other = (it == p.coef.end()) ? Mat(Mat::Zero(p.N, p.N)) : it->second[k];
            mx = std::max(mx, (other + comps[k].adjoint()).cwiseAbs().maxCoeff());
        }
    }
    return mx;
}

inline MatForm potential_at(const FourierPotential& p, const RVec& x, double L = 1.0) {
    MatForm a = mat_form(p.m, 1, p.N, p.N);
    const double tau = 2.0 * std::acos(-1.0);
    for (const auto& [nu, comps] : p.coef) {
        double phase = 0.0;
        for (int i = 0; i < p.m; ++i) phase += nu[i] * x[i];
        cplx w = std::exp(cplx(0.0, tau * phase / L));
        for (int k = 1; k <= p.m; ++k) a.at({k}) += comps[k - 1] * w;
    }
    return a;
}

struct TorusDirac {
    CliffordModule cm;
    GaugeRep rep;
    TorusGrid grid;
    RVec twist; // boundary phase shift per axis, enters as n -> n + twist

    TorusDirac(const CliffordModule& c, const GaugeRep& r, const TorusGrid& g, RVec tw = {})
        : cm(c), rep(r), grid(g), twist(std::move(tw)) {
        if (twist.size() == 0) twist = RVec::Zero(grid.m);
        if (cm.m != grid.m || twist.size() != grid.m)
            throw std::invalid_argument("TorusDirac: dimension mismatch");
    }

    int fiber() const { return cm.S * rep.d; }
    int dim() const { return grid.mode_count() * fiber(); }
    int basis_index(int mode, int s, int c) const { return (mode * cm.S + s) * rep.d + c; }

    Mat free_matrix() const {
        const double tau = 2.0 * std::acos(-1.0);
        Mat H = Mat::Zero(dim(), dim());
        Mat idc = Mat::Identity(rep.d, rep.d);
        for (int a = 0; a < grid.mode_count(); ++a) {
            Mat blk = Mat::Zero(cm.S, cm.S);
            for (int k = 0; k < grid.m; ++k) {
                double freq = tau * (grid.modes[a][k] + twist[k]) / grid.L;
                blk += cplx(0.0, freq) * cm.gamma[k];
            }
            H.block(a * fiber(), a * fiber(), fiber(), fiber()) = CliffordModule::kron(blk, idc);
        }
        return H;
    }

    // multiplication part alone: blocks sum_k gamma_k (x) rho(A_{k, n - n'})
    Mat coupling_matrix(const FourierPotential& pot) const {
        if (pot.m != grid.m || pot.N != rep.alg.N)
            throw std::invalid_argument("coupling_matrix: potential shape");
        Mat H = Mat::Zero(dim(), dim());
        std::vector<int> diff(grid.m);
        for (const auto& [nu, comps] : pot.coef) {
            Mat blk = Mat::Zero(fiber(), fiber());
            for (int k = 0; k < grid.m; ++k)
                blk += CliffordModule::kron(cm.gamma[k], rep.apply(comps[k]));
            for (int a = 0; a < grid.mode_count(); ++a) {
                for (int i = 0; i < grid.m; ++i) diff[i] = grid.modes[a][i] - nu[i];
                int b = grid.index_of(diff);
                if (b >= 0) H.block(a * fiber(), b * fiber(), fiber(), fiber()) += blk;
            }
        }
        return H;
    }

    Mat matrix(const FourierPotential& pot) const { return free_matrix() + coupling_matrix(pot); }

    // Psi(x) = sum_n e^{2 pi i (n + twist) x / L} mat(v_n), an S x d fiber value.
    Mat spinor_value(const CVec& v, const RVec& x) const {
        const double tau = 2.0 * std::acos(-1.0);
        Mat out = Mat::Zero(cm.S, rep.d);
        for (int a = 0; a < grid.mode_count(); ++a) {
            double phase = 0.0;
            for (int i = 0; i < grid.m; ++i) phase += (grid.modes[a][i] + twist[i]) * x[i];
            cplx w = std::exp(cplx(0.0, tau * phase / grid.L));
            for (int s = 0; s < cm.S; ++s)
                for (int c = 0; c < rep.d; ++c) out(s, c) += w * v[basis_index(a, s, c)];
        }
        return out;
    }
};

// Fourier data of an algebra valued function, nu -> coefficient.
using FourierFunction = std::map<std::vector<int>, Mat>;

// Multiplication operator by a matrix function, with an optional constant
// factor acting on the spinor slot.
inline Mat multiplication_matrix(const TorusDirac& op, const FourierFunction& f,
                                 const Mat& spin_factor) {
    Mat H = Mat::Zero(op.dim(), op.dim());
    std::vector<int> diff(op.grid.m);
    for (const auto& [nu, val] : f) {
        Mat blk = CliffordModule::kron(spin_factor, op.rep.apply(val));
        for (int a = 0; a < op.grid.mode_count(); ++a) {
            for (int i = 0; i < op.grid.m; ++i) diff[i] = op.grid.modes[a][i] - nu[i];
            int b = op.grid.index_of(diff);
            if (b >= 0) H.block(a * op.fiber(), b * op.fiber(), op.fiber(), op.fiber()) += blk;
        }
    }
    return H;
}

// nabla_k = d_k + A_k as a matrix, identity on the spinor slot.
inline Mat covariant_matrix(const TorusDirac& op, const FourierPotential& pot, int axis) {
    const double tau = 2.0 * std::acos(-1.0);
    Mat H = Mat::Zero(op.dim(), op.dim());
    for (int a = 0; a < op.grid.mode_count(); ++a) {
        cplx f(0.0, tau * (op.grid.modes[a][axis - 1] + op.twist[axis - 1]) / op.grid.L);
        H.block(a * op.fiber(), a * op.fiber(), op.fiber(), op.fiber()) =
            f * Mat::Identity(op.fiber(), op.fiber());
    }
    FourierFunction fk;
    for (const auto& [nu, comps] : pot.coef) fk[nu] = comps[axis - 1];
    return H + multiplication_matrix(op, fk, Mat::Identity(op.cm.S, op.cm.S));
}

// Exact Fourier data of F_ij = d_i A_j - d_j A_i + [A_i, A_j].
inline FourierFunction curvature_fourier(const FourierPotential& pot, int i, int j, double L) {
    const double tau = 2.0 * std::acos(-1.0);
    FourierFunction F;
    auto acc = [&F](const std::vector<int>& nu, const Mat& v) {
        auto it = F.find(nu);
        if (it == F.end()) F.emplace(nu, v);
        else it->second += v;
    };
    for (const auto& [nu, comps] : pot.coef) {
        cplx di(0.0, tau * nu[i - 1] / L), dj(0.0, tau * nu[j - 1] / L);
        acc(nu, di * comps[j - 1] - dj * comps[i - 1]);
    }
    std::vector<int> sum;
    for (const auto& [mu, cm] : pot.coef)
        for (const auto& [nu, cn] : pot.coef) {
            sum.resize(mu.size());
            for (size_t r = 0; r < mu.size(); ++r) sum[r] = mu[r] + nu[r];
            acc(sum, cm[i - 1] * cn[j - 1] - cm[j - 1] * cn[i - 1]);
        }
    return F;
}

inline double hermiticity_residual(const Mat& H) {
    return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

inline std::vector<double> sorted_eigenvalues(const Mat& H) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + H.rows());
    return v;
}

inline double operator_norm_selfadjoint(const Mat& H) {
    auto ev = sorted_eigenvalues(H);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

// columns spanning the eigenspaces with |lambda| <= rel_tol * spectral radius
inline Mat kernel_basis(const Mat& H, double rel_tol = tol::kernel_rel) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    double rad = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(H.rows() - 1)));
    double cut = rel_tol * std::max(rad, 1.0);
    std::vector<int> keep;
    for (int i = 0; i < H.rows(); ++i)
        if (std::abs(es.eigenvalues()(i)) <= cut) keep.push_back(i);
    Mat V(H.rows(), keep.size());
    for (size_t j = 0; j < keep.size(); ++j) V.col(j) = es.eigenvectors().col(keep[j]);
    return V;
}

// eigenvalues of the perturbation compressed to the kernel, the first order
// shifts of the degenerate level
inline std::vector<double> first_order_shifts(const Mat& H0, const Mat& P,
                                              double rel_tol = tol::kernel_rel) {
    Mat V = kernel_basis(H0, rel_tol);
    if (V.cols() == 0) return {};
    Mat compressed = V.adjoint() * P * V;
    return sorted_eigenvalues(compressed);
}

struct BranchFlow {
    std::vector<double> t;
    std::vector<std::vector<double>> lambda; // lambda[branch][step]
    int bisections = 0;
    double worst_overlap = 1.0;
};

namespace detail {

struct BranchState {
    std::vector<double> lambda;
    Mat vectors; // one column per branch
};

// One continuation move. Eigenvalues are grouped into near-degenerate
// clusters; each branch picks the cluster carrying most of its previous
// vector, branches landing in a shared cluster are re-orthonormalized there.
inline bool branch_advance(const Mat& H, BranchState& st, double min_overlap, double& worst) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const auto& ev = es.eigenvalues();
    int n = static_cast<int>(ev.size());
    double rad = std::max({std::abs(ev(0)), std::abs(ev(n - 1)), 1.0});
    double gap = 1e-9 * rad;

    std::vector<std::pair<int, int>> clusters; // [first, last] index ranges
    for (int i = 0; i < n;) {
        int j = i;
        while (j + 1 < n && ev(j + 1) - ev(j) <= gap) ++j;
        clusters.push_back({i, j});
        i = j + 1;
    }

    int nb = static_cast<int>(st.lambda.size());
    std::vector<int> choice(nb);
    std::vector<double> mass(nb);
    for (int b = 0; b < nb; ++b) {
        CVec overlaps = es.eigenvectors().adjoint() * st.vectors.col(b);
        double best = -1.0;
        for (size_t c = 0; c < clusters.size(); ++c) {
            double p = 0.0;
            for (int j = clusters[c].first; j <= clusters[c].second; ++j)
                p += std::norm(overlaps(j));
            if (p > best) {
                best = p;
                choice[b] = static_cast<int>(c);
            }
        }
        mass[b] = best;
        worst = std::min(worst, std::sqrt(std::max(best, 0.0)));
        if (best < min_overlap * min_overlap) return false;
    }

    BranchState next;
    next.lambda.resize(nb);
    next.vectors = Mat(H.rows(), nb);
    for (size_t c = 0; c < clusters.size(); ++c) {
        std::vector<int> members;
        for (int b = 0; b < nb; ++b)
            if (choice[b] == static_cast<int>(c)) members.push_back(b);
        if (members.empty()) continue;
        int lo = clusters[c].first, hi = clusters[c].second;
        Mat basis = es.eigenvectors().middleCols(lo, hi - lo + 1);
        Mat proj = basis * (basis.adjoint() * st.vectors(Eigen::all, members));
        Eigen::HouseholderQR<Mat> qr(proj);
        Mat q = qr.householderQ() * Mat::Identity(proj.rows(), proj.cols());
        double lam = 0.0;
        for (int j = lo; j <= hi; ++j) lam += ev(j);
        lam /= (hi - lo + 1);
        for (size_t k = 0; k < members.size(); ++k) {
            next.lambda[members[k]] = lam;
            next.vectors.col(members[k]) = q.col(k);
        }
    }
    st = std::move(next);
    return true;
}

} // namespace detail

// Follow the nb eigenvalues nearest zero of H(t) across [t0, t1] on a
// uniform grid. Steps that lose eigenvector continuity are bisected.
inline BranchFlow track_branches(const std::function<Mat(double)>& H, double t0, double t1,
                                 int steps, int nb, double min_overlap = 0.9) {
    if (steps < 1 || nb < 1) throw std::invalid_argument("track_branches: sizes");
    BranchFlow flow;
    Mat H0 = H(t0);
    Eigen::SelfAdjointEigenSolver<Mat> es(H0);
    int n = static_cast<int>(es.eigenvalues().size());
    if (nb > n) throw std::invalid_argument("track_branches: more branches than dimension");

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(es.eigenvalues()(a)) < std::abs(es.eigenvalues()(b));
    });
    detail::BranchState st;
    st.lambda.resize(nb);
    st.vectors = Mat(n, nb);
    for (int b = 0; b < nb; ++b) {
        st.lambda[b] = es.eigenvalues()(order[b]);
        st.vectors.col(b) = es.eigenvectors().col(order[b]);
    }

    // A degenerate starting level leaves the eigenvector mix arbitrary, so
    // rotate each starting cluster to diagonalize the flow's first move;
    // that aligns the vectors with the branches splitting off the level.
    {
        double rad = std::max(
            {std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(n - 1)), 1.0});
        double gap = 1e-9 * rad;
        Mat dH = H(t0 + (t1 - t0) / steps) - H0;
        std::vector<char> seen(nb, 0);
        for (int b = 0; b < nb; ++b) {
            if (seen[b]) continue;
            std::vector<int> group{b};
            for (int c = b + 1; c < nb; ++c)
                if (std::abs(st.lambda[c] - st.lambda[b]) <= gap) group.push_back(c);
            if (group.size() > 1) {
                int lo = order[b];
                while (lo > 0 && es.eigenvalues()(lo) - es.eigenvalues()(lo - 1) <= gap) --lo;
                int hi = order[b];
                while (hi + 1 < n && es.eigenvalues()(hi + 1) - es.eigenvalues()(hi) <= gap) ++hi;
                Mat basis = es.eigenvectors().middleCols(lo, hi - lo + 1);
                Mat compressed = basis.adjoint() * dH * basis;
                Eigen::SelfAdjointEigenSolver<Mat> rot(compressed);
                Mat aligned = basis * rot.eigenvectors();
                for (size_t g = 0; g < group.size(); ++g)
                    st.vectors.col(group[g]) = aligned.col(static_cast<int>(g));
            }
            for (int c : group) seen[c] = 1;
        }
    }

    flow.t.push_back(t0);
    flow.lambda.assign(nb, {});
    for (int b = 0; b < nb; ++b) flow.lambda[b].push_back(st.lambda[b]);

    std::function<void(double, double, int)> step = [&](double ta, double tb, int depth) {
        detail::BranchState trial = st;
        if (detail::branch_advance(H(tb), trial, min_overlap, flow.worst_overlap)) {
            st = std::move(trial);
            return;
        }
        if (depth >= 24) throw std::runtime_error("track_branches: continuity lost");
        ++flow.bisections;
        double mid = 0.5 * (ta + tb);
        step(ta, mid, depth + 1);
        step(mid, tb, depth + 1);
    };

    for (int i = 1; i <= steps; ++i) {
        double ti = t0 + (t1 - t0) * i / steps;
        step(flow.t.back(), ti, 0);
        flow.t.push_back(ti);
        for (int b = 0; b < nb; ++b) flow.lambda[b].push_back(st.lambda[b]);
    }
    return flow;
}

// Slope check for linear families H0 + t P: the derivative of an eigenvalue
// branch equals the diagonal matrix element of P in its eigenvector.
inline double hellmann_feynman_residual(const Mat& H0, const Mat& P, double t, double dt) {
    Mat Ht = H0 + t * P;
    Eigen::SelfAdjointEigenSolver<Mat> es(Ht);
    auto lam_plus = sorted_eigenvalues(Mat(H0 + (t + dt) * P));
    auto lam_minus = sorted_eigenvalues(Mat(H0 + (t - dt) * P));
    double worst = 0.0;
    int n = static_cast<int>(es.eigenvalues().size());
    for (int j = 0; j < n; ++j) {
        bool isolated = (j == 0 || es.eigenvalues()(j) - es.eigenvalues()(j - 1) > 1e-6) &&
                        (j == n - 1 || es.eigenvalues()(j + 1) - es.eigenvalues()(j) > 1e-6);
        if (!isolated) continue; // slope of a sorted degenerate level need not match one vector
        double fd = (lam_plus[j] - lam_minus[j]) / (2 * dt);
        double hf = (es.eigenvectors().col(j).adjoint() * P * es.eigenvectors().col(j))(0).real();
        worst = std::max(worst, std::abs(fd - hf));
    }
    return worst;
}

// Exact multiset of free eigenvalues: +-2 pi |n + twist| / L, each S/2-fold
// per color dimension.
inline std::vector<double> free_spectrum(const TorusGrid& grid, const CliffordModule& cm, int d,
                                         const RVec& twist) {
    const double tau = 2.0 * std::acos(-1.0);
    std::vector<double> ev;
    ev.reserve(static_cast<size_t>(grid.mode_count()) * cm.S * d);
    for (const auto& n : grid.modes) {
        double q = 0.0;
        for (int i = 0; i < grid.m; ++i) {
            double f = tau * (n[i] + twist[i]) / grid.L;
            q += f * f;
        }
        double lam = std::sqrt(q);
        for (int r = 0; r < cm.S * d / 2; ++r) {
            ev.push_back(-lam);
            ev.push_back(lam);
        }
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Trig-polynomial quadrature tying the operator to the pointwise current:
// v* K v over the torus equals the grid average of -2 sum eta . J(Psi) once
// the grid resolves every frequency in the product. Returns the worst
// deviation between the three evaluations.
inline double pairing_parseval_residual(const TorusDirac& op, const FourierPotential& eta,
                                        const CVec& v, int G) {
    Mat K = op.coupling_matrix(eta);
    double spectral = (v.adjoint() * K * v)(0).real();

    double fiber_sum = 0.0, current_sum = 0.0;
    RVec x(op.grid.m);
    std::vector<int> g(op.grid.m, 0);
    long cells = 1;
    for (int i = 0; i < op.grid.m; ++i) cells *= G;
    for (long cell = 0; cell < cells; ++cell) {
        long rem = cell;
        for (int i = 0; i < op.grid.m; ++i) {
            x[i] = op.grid.L * (rem % G + 0.5) / G;
            rem /= G;
        }
        Mat psi = op.spinor_value(v, x);
        MatForm eta_x = potential_at(eta, x, op.grid.L);
        fiber_sum += twisted_inner(k_eta_apply(op.cm, op.rep, eta_x, psi), psi).real();

        Eigen::MatrixXd J = dirac_current(op.cm, op.rep, psi);
        double dot = 0.0;
        for (int k = 1; k <= op.grid.m; ++k) {
            Eigen::VectorXd coords = lie_coords(op.rep.alg, eta_x.at({k}));
            for (int a = 0; a < op.rep.alg.dim(); ++a) dot += coords[a] * J(k - 1, a);
        }
        current_sum += -2.0 * dot;
    }
    double vol_avg = 1.0 / static_cast<double>(cells);
    fiber_sum *= vol_avg;
    current_sum *= vol_avg;
    return std::max(std::abs(spectral - fiber_sum), std::abs(spectral - current_sum));
}

} // namespace spinlab
