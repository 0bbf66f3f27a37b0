#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "clifford.hpp"
#include "current.hpp"
#include "exterior.hpp"
#include "fieldcalc.hpp"
#include "gauge.hpp"

// Explicit solutions on flat R^4: the scale/center family of anti-self-dual
// su(2) instantons in the quaternionic chart, twistor spinors, and the
// decoupled Dirac field obtained by letting the curvature act on a twistor
// spinor of the chirality the curvature does not annihilate.

namespace spinlab {

struct Quaternion {
    double w = 0, x = 0, y = 0, z = 0;

    Quaternion conj() const { return {w, -x, -y, -z}; }
    double norm2() const { return w * w + x * x + y * y + z * z; }
    Quaternion im() const { return {0, x, y, z}; }

    Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
};

inline Quaternion quat_unit(int axis) {
    switch (axis) {
        case 1: return {1, 0, 0, 0};
        case 2: return {0, 1, 0, 0};
        case 3: return {0, 0, 1, 0};
        case 4: return {0, 0, 0, 1};
        default: throw std::invalid_argument("quat_unit: axis out of range");
    }
}

inline Quaternion quat_of_point(const RVec& p) {
    if (p.size() != 4) throw std::invalid_argument("quat_of_point: need four coordinates");
    return {p[0], p[1], p[2], p[3]};
}

// {1,i,j,k} -> {Id, -i s1, -i s2, -i s3}; imaginary quaternions land in su(2).
inline Mat quat_embed(const Quaternion& q) {
    Mat g(2, 2);
    g(0, 0) = cplx(q.w, -q.z);
    g(0, 1) = cplx(-q.y, -q.x);
    g(1, 0) = cplx(q.y, -q.x);
    g(1, 1) = cplx(q.w, q.z);
    return g;
}

// Instanton with scale lam and center c: potential Im(qbar dq)/(lam^2+|q|^2)
// in the chart q = x1 + x2 i + x3 j + x4 k shifted by the center. The
// curvature has constant quaternion numerators, F_ij = G_ij lam^2 / rho^2
// with rho = lam^2 + |q|^2 and G_ij = ebar_i e_j - ebar_j e_i.
struct Instanton {
    double lambda = 1.0;
    RVec center = RVec::Zero(4);

    Connection potential() const {
        double lam2 = lambda * lambda;
        RVec c = center;
        return Connection{4, 2, [lam2, c](const RVec& p) {
                              Quaternion q = quat_of_point(p - c);
                              double rho = lam2 + q.norm2();
                              MatForm a = mat_form(4, 1, 2, 2);
                              Quaternion qb = q.conj();
                              for (int mu = 1; mu <= 4; ++mu)
                                  a.at({mu}) = quat_embed((qb * quat_unit(mu)).im() * (1.0 / rho));
                              return a;
                          }};
    }

    MatForm curvature(const RVec& p) const {
        Quaternion q = quat_of_point(p - center);
        double lam2 = lambda * lambda;
        double rho = lam2 + q.norm2();
        double scale = lam2 / (rho * rho);
        MatForm F = mat_form(4, 2, 2, 2);
        for (int i = 1; i <= 4; ++i) {
            Quaternion ei = quat_unit(i).conj();
            for (int j = i + 1; j <= 4; ++j) {
                Quaternion g = ei * quat_unit(j) - quat_unit(j).conj() * quat_unit(i);
                F.at({i, j}) = quat_embed(g * scale);
            }
        }
        return F;
    }

    Field<MatForm> curvature_field() const {
        Instanton self = *this;
        return [self](const RVec& p) { return self.curvature(p); };
    }

    // Top coefficient of (1/2)(i/2pi)^2 tr(F ^ F); integrates to -1 over R^4
    // for every scale and center.
    double degree_density(const RVec& p) const {
        RVec d = p - center;
        double lam2 = lambda * lambda;
        double rho = lam2 + d.squaredNorm();
        double u = lam2 / (rho * rho);
        return -6.0 / (pi() * pi()) * u * u;
    }

    static double pi() { return std::acos(-1.0); }
};

// phi(x) = psi0 + (1/4) sum_k x_k g_k psi1 solves d_k phi + (1/m) g_k (sum g_j d_j phi) = 0.
inline Field<CVec> twistor_spinor(const CliffordModule& cm, const CVec& psi0, const CVec& psi1) {
    if (psi0.size() != cm.S || psi1.size() != cm.S)
        throw std::invalid_argument("twistor_spinor: fiber size mismatch");
    CliffordModule mod = cm;
    CVec a = psi0, b = psi1;
    return [mod, a, b](const RVec& x) {
        CVec out = a;
        for (int k = 1; k <= mod.m; ++k) out += 0.25 * x[k - 1] * (mod.gamma[k - 1] * b);
        return out;
    };
}

// Coupled pair on R^4: anti-self-dual connection plus the adjoint-valued
// spinor Psi(x) = c(F(x)) phi(x) built from a twistor spinor phi whose
// constant part lies in the chirality the curvature acts on without
// annihilating. Psi is chiral, so its current vanishes identically, and the
// two field equations hold separately.
struct CoupledSolution {
    CliffordModule cm;
    GaugeAlgebra alg;
    GaugeRep rep;          // adjoint action on the curvature values
    Instanton inst;
    Connection conn;
    Field<MatForm> F;
    Field<CVec> phi;
    Field<Mat> psi;        // S x dim(g), columns in the algebra basis
};

inline CoupledSolution coupled_solution(const Instanton& inst, const CVec& seed0, const CVec& seed1) {
    CoupledSolution s;
    s.cm = CliffordModule::standard(4);
    s.alg = GaugeAlgebra::su(2);
    s.rep = GaugeRep::adjoint(s.alg);
    s.inst = inst;
    s.conn = inst.potential();
    s.F = inst.curvature_field();

    // The curvature kills the +1 chirality space, so keep the -1 part of the
    // constant seed and the +1 part of the linear seed.
    CVec psi0 = chiral_project(s.cm, -1, seed0);
    CVec psi1 = chiral_project(s.cm, +1, seed1);
    s.phi = twistor_spinor(s.cm, psi0, psi1);

    CliffordModule cm = s.cm;
    GaugeAlgebra alg = s.alg;
    Field<MatForm> F = s.F;
    Field<CVec> phi = s.phi;
    s.psi = [cm, alg, F, phi](const RVec& x) {
        return clifford_tensor_product(cm, fiberize(alg, F(x)), phi(x));
    };
    return s;
}

} // namespace spinlab
