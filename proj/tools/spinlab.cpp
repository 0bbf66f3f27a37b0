// Command line front end. Every subcommand runs a battery of named checks,
// prints one JSON record per check, and closes with a summary object. With
// --out DIR the records, the summary, and any branch tables are also written
// to files. Exit codes: 0 all checks passed, 1 at least one failed, 2 usage
// or configuration error.

#include "CLI11.hpp"
#include "json.hpp"

#include <spinlab/spinlab.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace spinlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kRecordVersion = "spinlab-records-v1";
constexpr const char* kBranchCsvVersion = "spinlab-branches-v1";

double runif(std::mt19937_64& g) {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(g);
}
cplx rcplx(std::mt19937_64& g) { return {runif(g), runif(g)}; }
Mat random_cmat(int r, int c, std::mt19937_64& g) {
    Mat v(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) v(i, j) = rcplx(g);
    return v;
}
CVec random_cvec(int n, std::mt19937_64& g) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v[i] = rcplx(g);
    return v;
}

struct Options {
    std::uint64_t seed = 12345;
    std::string out;
    int threads = 1;
    double tol_scale = 1.0;
};

struct Runner {
    std::string command;
    Options opt;
    std::vector<json> records;
    int passed = 0;
    int failed = 0;

    json base(const std::string& name) const {
        return json{{"version", kRecordVersion}, {"command", command}, {"check", name}};
    }
    void emit(json r, bool ok) {
        r["pass"] = ok;
        (ok ? passed : failed)++;
        std::cout << r.dump() << "\n";
        records.push_back(std::move(r));
    }
    // value <= bound * tol_scale
    void residual(const std::string& name, double value, double bound, json extra = nullptr) {
        double b = bound * opt.tol_scale;
        json r = base(name);
        if (!extra.is_null()) r.update(extra);
        r["kind"] = "residual";
        r["value"] = value;
        r["bound"] = b;
        emit(std::move(r), value <= b);
    }
    // value >= floor; floors are structural and not rescaled
    void floor(const std::string& name, double value, double floor_value, json extra = nullptr) {
        json r = base(name);
        if (!extra.is_null()) r.update(extra);
        r["kind"] = "floor";
        r["value"] = value;
        r["floor"] = floor_value;
        emit(std::move(r), value >= floor_value);
    }
    void exact(const std::string& name, bool ok, json extra = nullptr) {
        json r = base(name);
        if (!extra.is_null()) r.update(extra);
        r["kind"] = "exact";
        emit(std::move(r), ok);
    }

    void write_branches(const BranchFlow& flow) const {
        if (opt.out.empty()) return;
        fs::create_directories(opt.out);
        std::ofstream f(fs::path(opt.out) / (command + "-branches.csv"));
        f << "# " << kBranchCsvVersion << "\n";
        f << "t,branch,lambda\n";
        f << std::setprecision(17);
        for (size_t b = 0; b < flow.lambda.size(); ++b)
            for (size_t i = 0; i < flow.t.size(); ++i)
                f << flow.t[i] << "," << b << "," << flow.lambda[b][i] << "\n";
    }

    int finish() {
        json summary = {{"version", kRecordVersion}, {"command", command},
                        {"seed", opt.seed},          {"tol_scale", opt.tol_scale},
                        {"records", records.size()}, {"passed", passed},
                        {"failed", failed},          {"status", failed == 0 ? "ok" : "fail"}};
        std::cout << summary.dump() << std::endl;
        if (!opt.out.empty()) {
            fs::create_directories(opt.out);
            std::ofstream jl(fs::path(opt.out) / (command + "-records.jsonl"));
            for (const auto& r : records) jl << r.dump() << "\n";
            std::ofstream sj(fs::path(opt.out) / (command + "-summary.json"));
            sj << summary.dump(2) << "\n";
        }
        return failed == 0 ? 0 : 1;
    }
};

double order_of(double coarse, double fine) {
    if (fine <= 0 || coarse <= 0) return 99.0; // both at roundoff, treat as converged
    double o = std::log2(coarse / fine);
    return std::isfinite(o) ? o : 99.0;
}

// shared torus benchmark: abelian fiber, constant coupling g along the first axis
struct Bench {
    TorusDirac op;
    Mat H0, P;
};
Bench make_bench(int K, double g) {
    auto cm = CliffordModule::standard(3);
    auto rep = GaugeRep::standard(GaugeAlgebra::u(1));
    TorusDirac op(cm, rep, TorusGrid::cubic(3, K));
    MatForm form = mat_form(3, 1, 1, 1);
    form.at({1})(0, 0) = cplx(0.0, g);
    auto eta = FourierPotential::constant(form);
    Mat H0 = op.free_matrix();
    Mat P = op.coupling_matrix(eta);
    return Bench{std::move(op), std::move(H0), std::move(P)};
}

double conjugation_worst(int m_max) {
    double worst = 0.0;
    for (int m = 2; m <= m_max; ++m) {
        auto cm = CliffordModule::standard(m);
        for (int r = 0; r <= m; ++r)
            for (const auto& idx : comb::tuples(m, r)) {
                Mat gI = cm.monomial(idx);
                Mat sum = Mat::Zero(cm.S, cm.S);
                for (int i = 0; i < m; ++i) sum += cm.gamma[i] * gI * cm.gamma[i];
                double factor = (r % 2 == 0 ? 1.0 : -1.0) * (2.0 * r - m);
                worst = std::max(worst, (sum - factor * gI).cwiseAbs().maxCoeff());
            }
    }
    return worst;
}

int run_identities(Runner& run, int trials) {
    auto rng = std::mt19937_64(run.opt.seed);

    run.residual("gamma-conjugation-sum", conjugation_worst(6), 1e-12, {{"m_max", 6}});

    double inv_worst = 0.0, adj_worst = 0.0;
    for (int m = 2; m <= 5; ++m) {
        for (int k = 0; k <= m; ++k) {
            for (int t = 0; t < trials / 10 + 1; ++t) {
                auto a = scalar_form(m, k);
                for (auto& v : a.c) v = rcplx(rng);
                auto b = hodge_inverse(hodge(a));
                for (size_t i = 0; i < a.c.size(); ++i)
                    inv_worst = std::max(inv_worst, std::abs(a.c[i] - b.c[i]));
            }
        }
        for (int k = 1; k <= m; ++k) {
            for (int t = 0; t < trials / 10 + 1; ++t) {
                auto a = scalar_form(m, k - 1);
                auto b = scalar_form(m, k);
                for (auto& v : a.c) v = rcplx(rng);
                for (auto& v : b.c) v = rcplx(rng);
                for (int i = 1; i <= m; ++i) {
                    auto ei = basis_form(m, {i});
                    cplx lhs = form_inner(wedge(ei, a), b);
                    cplx rhs = form_inner(a, insert(i, b));
                    adj_worst = std::max(adj_worst, std::abs(lhs - rhs));
                }
            }
        }
    }
    run.residual("hodge-inverse-roundtrip", inv_worst, 1e-13);
    run.residual("frame-insertion-adjunction", adj_worst, 1e-12);

    double chiral_worst = 0.0;
    for (int m : {2, 4}) {
        auto cm = CliffordModule::standard(m);
        auto rep = GaugeRep::standard(GaugeAlgebra::su(2));
        for (int t = 0; t < trials; ++t) {
            Mat Psi = chiral_project(cm, t % 2 == 0 ? 1 : -1, random_cmat(cm.S, rep.d, rng));
            double leak = 0.0;
            auto J = dirac_current(cm, rep, Psi, &leak);
            chiral_worst = std::max({chiral_worst, leak, J.cwiseAbs().maxCoeff()});
        }
    }
    run.residual("chiral-current-vanishes", chiral_worst, 1e-12);

    auto cm3 = CliffordModule::standard(3);
    auto rep3 = GaugeRep::standard(GaugeAlgebra::su(2));
    double pair_worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Mat Psi = random_cmat(cm3.S, rep3.d, rng);
        MatForm eta = mat_form(3, 1, 2, 2);
        for (int k = 1; k <= 3; ++k) {
            Mat v = Mat::Zero(2, 2);
            for (const auto& T : rep3.alg.basis) v += runif(rng) * T;
            eta.at({k}) = v;
        }
        pair_worst = std::max(pair_worst, pairing_residual(cm3, rep3, Psi, eta));
    }
    run.residual("current-pairing", pair_worst, 1e-12, {{"trials", trials}});

    return run.finish();
}

int run_index(Runner& run, int trials) {
    const struct { int n, d; long want; } rows[] = {{1, 2, 2}, {1, 1, 0}, {2, 2, 0}, {2, 3, 2},
                                                    {3, 4, 2}, {1, 3, 8}, {2, 4, 12}};
    bool table_ok = true;
    for (auto [n, d, want] : rows) table_ok = table_ok && a_hat_hypersurface(n, d) == CharNumber(want);
    run.exact("hypersurface-table", table_ok);
    bool family_ok = true;
    for (int n = 1; n <= 8; ++n) family_ok = family_ok && a_hat_hypersurface(n, n + 1) == CharNumber(2);
    run.exact("hypersurface-family-value-two", family_ok);

    bool weights_ok = true;
    for (int l = 0; l <= 6; ++l) weights_ok = weights_ok && p_weight(0, l) == CharNumber(l + 1);
    weights_ok = weights_ok && p_weight(1, 1) == CharNumber(-1) && p_weight(1, 2) == CharNumber(-4);
    weights_ok = weights_ok && p_weight(2, 1) == CharNumber(1, 12) && p_weight(2, 2) == CharNumber(4, 3);
    run.exact("weight-sums", weights_ok);

    auto rng = std::mt19937_64(run.opt.seed);
    std::uniform_int_distribution<long> pick(1, 9);
    bool poly_ok = true;
    int roots_max = 0;
    for (int n = 1; n <= 3; ++n) {
        for (int t = 0; t < trials; ++t) {
            std::vector<CharNumber> a(n + 1);
            for (auto& v : a) v = pick(rng);
            auto c = index_poly_coeffs(a);
            poly_ok = poly_ok && static_cast<int>(c.size()) <= 2 * n + 2;
            poly_ok = poly_ok && poly_eval(c, -1) == 0;
            for (int l = 0; l <= 2 * n + 3; ++l)
                poly_ok = poly_ok && poly_eval(c, -2 - l) == -poly_eval(c, l);
            auto roots = positive_integer_roots(a);
            poly_ok = poly_ok && static_cast<int>(roots.size()) <= 2 * n - 1;
            roots_max = std::max(roots_max, static_cast<int>(roots.size()));
        }
    }
    run.exact("twist-polynomial-structure", poly_ok, {{"max_roots_seen", roots_max}});
    run.exact("constructed-root", positive_integer_roots({4, 1}) == std::vector<long>{4});

    bool adj_ok = index_adjoint_from_standard(2, 1, 0) == 4 &&
                  index_adjoint_from_standard(2, 0, 1) == -5;
    for (int t = 0; t < trials && adj_ok; ++t) {
        int N = 2 + t % 3;
        CharNumber iE = pick(rng), i0 = pick(rng);
        adj_ok = index_adjoint_from_standard(N, iE, i0) + i0 == 2 * N * iE - N * N * i0;
    }
    run.exact("adjoint-from-standard", adj_ok);

    double parity = 0.0;
    for (int t = 0; t < 3; ++t) {
        MatForm F = mat_form(6, 2, 3, 3);
        for (auto& v : F.c) v = random_cmat(3, 3, rng);
        for (int k = 1; k <= 3; ++k) {
            MatForm Fd = F;
            for (auto& v : Fd.c) v = Mat(-v.transpose());
            auto lhs = chern_character_form(Fd, k);
            auto rhs = chern_character_form(F, k);
            double sign = (k % 2 == 1) ? -1.0 : 1.0;
            for (size_t i = 0; i < lhs.c.size(); ++i)
                parity = std::max(parity, std::abs(lhs.c[i] - sign * rhs.c[i]));
        }
    }
    run.residual("character-parity", parity, 1e-12);

    return run.finish();
}

int run_spectrum(Runner& run, int cutoff, double coupling, int steps, double t1) {
    auto bench = make_bench(cutoff, coupling);
    run.residual("assembled-hermiticity", hermiticity_residual(Mat(bench.H0 + bench.P)), 1e-12,
                 {{"dim", bench.op.dim()}});

    auto got = sorted_eigenvalues(bench.H0);
    auto expect = free_spectrum(bench.op.grid, bench.op.cm, bench.op.rep.d, bench.op.twist);
    double free_worst = 0.0;
    for (size_t i = 0; i < got.size(); ++i)
        free_worst = std::max(free_worst, std::abs(got[i] - expect[i]));
    run.residual("free-spectrum-closed-form", free_worst, 1e-10);

    auto flow = track_branches([&](double t) { return Mat(bench.H0 + t * bench.P); }, 0.0, t1,
                               steps, 2);
    double dev = 0.0;
    for (size_t i = 0; i < flow.t.size(); ++i) {
        double lo = std::min(flow.lambda[0][i], flow.lambda[1][i]);
        double hi = std::max(flow.lambda[0][i], flow.lambda[1][i]);
        dev = std::max(dev, std::abs(lo + coupling * flow.t[i]));
        dev = std::max(dev, std::abs(hi - coupling * flow.t[i]));
    }
    run.residual("branch-linearity", dev, 1e-10,
                 {{"bisections", flow.bisections}, {"worst_overlap", flow.worst_overlap}});
    run.write_branches(flow);

    return run.finish();
}

int run_perturb(Runner& run, int cutoff, double coupling, double t_probe) {
    auto bench = make_bench(cutoff, coupling);

    auto shifts = first_order_shifts(bench.H0, bench.P);
    double split = 1e9;
    if (shifts.size() == 2)
        split = std::max(std::abs(shifts.front() + coupling), std::abs(shifts.back() - coupling));
    run.residual("first-order-splitting", split, 1e-12, {{"kernel_dim", shifts.size()}});

    run.residual("slope-identity", hellmann_feynman_residual(bench.H0, bench.P, t_probe, 1e-4),
                 1e-6, {{"t", t_probe}});

    double pnorm = operator_norm_selfadjoint(bench.P);
    auto basev = sorted_eigenvalues(bench.H0);
    double slack = 0.0;
    for (double t : {0.25, 1.0}) {
        auto moved = sorted_eigenvalues(Mat(bench.H0 + t * bench.P));
        for (size_t i = 0; i < basev.size(); ++i)
            slack = std::max(slack, std::abs(moved[i] - basev[i]) - t * pnorm);
    }
    run.residual("eigenvalue-motion-bound", slack, 1e-12, {{"coupling_norm", pnorm}});

    auto flow = track_branches([&](double t) { return Mat(bench.H0 + t * bench.P); }, -0.5, 0.5,
                               10, 2);
    double dev = 0.0;
    for (int b = 0; b < 2; ++b) {
        double slope = (flow.lambda[b].back() - flow.lambda[b].front()) /
                       (flow.t.back() - flow.t.front());
        dev = std::max(dev, std::abs(std::abs(slope) - coupling));
        for (size_t i = 0; i < flow.t.size(); ++i)
            dev = std::max(dev, std::abs(flow.lambda[b][i] - slope * flow.t[i]));
    }
    run.residual("straight-through-crossing", dev, 1e-10);
    run.write_branches(flow);

    return run.finish();
}

int run_current_scan(Runner& run, int restarts, int iters) {
    auto cm = CliffordModule::standard(3);

    auto su2 = GaugeRep::standard(GaugeAlgebra::su(2));
    auto res = current_min_on_sphere(cm, su2, restarts, run.opt.seed, iters);
    run.floor("nonabelian-sphere-minimum", res.min_norm, 1e-3,
              {{"restarts", restarts}, {"iterations", res.iterations}});

    Mat arg(cm.S, su2.d);
    for (int c = 0; c < su2.d; ++c)
        for (int s = 0; s < cm.S; ++s) arg(s, c) = res.argmin[s + cm.S * c];
    run.residual("argmin-feasibility", std::abs(dirac_current(cm, su2, arg).norm() - res.min_norm),
                 1e-9);

    auto u1 = GaugeRep::standard(GaugeAlgebra::u(1));
    auto resu = current_min_on_sphere(cm, u1, std::max(4, restarts / 4), run.opt.seed, iters);
    run.residual("abelian-norm-pinned", std::abs(resu.min_norm - 1.0 / (2.0 * std::sqrt(2.0))),
                 1e-9);

    return run.finish();
}

int run_verify_bpst(Runner& run, double scale, const std::vector<double>& center, int resolution) {
    auto rng = std::mt19937_64(run.opt.seed);
    Instanton inst;
    inst.lambda = scale;
    for (int i = 0; i < 4; ++i) inst.center[i] = center[i];
    auto sol = coupled_solution(inst, random_cvec(4, rng), random_cvec(4, rng));

    double asd = 0.0;
    for (int t = 0; t < 100; ++t) {
        RVec x(4);
        for (int i = 0; i < 4; ++i) x[i] = 3.0 * runif(rng);
        MatForm F = sol.F(x);
        asd = std::max(asd, form_max_abs(hodge(F) + F));
    }
    run.residual("anti-self-duality", asd, 1e-10);

    RVec x0(4);
    x0 << 0.7, -0.4, 0.5, 0.3;
    x0 += inst.center;
    const double hs[3] = {2e-2, 1e-2, 5e-3};
    double bi[3], ym[3], dr[3];
    for (int i = 0; i < 3; ++i) {
        FD fd{4, hs[i]};
        bi[i] = bianchi_residual(sol.conn, x0, fd);
        ym[i] = yang_mills_residual(sol.conn, x0, fd);
        dr[i] = dirac_apply(sol.cm, sol.rep, sol.conn, sol.psi, x0, fd).cwiseAbs().maxCoeff();
    }
    run.residual("differential-identity-residual", std::max({bi[2], ym[2], dr[2]}), 1e-7);
    run.floor("residual-convergence-order",
              std::min({order_of(bi[0], bi[1]), order_of(bi[1], bi[2]), order_of(ym[0], ym[1]),
                        order_of(ym[1], ym[2]), order_of(dr[0], dr[1]), order_of(dr[1], dr[2])}),
              3.8);

    double cur = 0.0, psi_min = 1e9;
    for (int t = 0; t < 50; ++t) {
        RVec x(4);
        for (int i = 0; i < 4; ++i) x[i] = 2.0 * runif(rng);
        Mat P = sol.psi(x);
        cur = std::max(cur, dirac_current(sol.cm, sol.rep, P).cwiseAbs().maxCoeff());
        psi_min = std::min(psi_min, P.norm());
    }
    run.residual("coupled-current-vanishes", cur, 1e-12);
    run.floor("coupled-spinor-nontrivial", psi_min, 1e-3);

    double match = 0.0;
    for (int t = 0; t < 50; ++t) {
        RVec x(4);
        for (int i = 0; i < 4; ++i) x[i] = 2.5 * runif(rng);
        cplx ch = chern_character_form(inst.curvature(x), 2).c[0];
        match = std::max(match, std::abs(ch - cplx(inst.degree_density(x))));
    }
    run.residual("degree-density-closed-form", match, 1e-12);

    auto density = [&inst](const RVec& x) { return inst.degree_density(x); };
    double val = integrate_rm_compactified(density, 4, resolution, run.opt.threads);
    run.residual("degree-integral", std::abs(val + 1.0), 1e-3,
                 {{"integral", val}, {"resolution", resolution}});

    return run.finish();
}

int run_selftest(Runner& run) {
    auto rng = std::mt19937_64(run.opt.seed);

    run.residual("gamma-conjugation-sum", conjugation_worst(4), 1e-12);

    auto cm4 = CliffordModule::standard(4);
    auto su2 = GaugeRep::standard(GaugeAlgebra::su(2));
    double chiral_worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        Mat Psi = chiral_project(cm4, t % 2 == 0 ? 1 : -1, random_cmat(cm4.S, su2.d, rng));
        double leak = 0.0;
        auto J = dirac_current(cm4, su2, Psi, &leak);
        chiral_worst = std::max({chiral_worst, leak, J.cwiseAbs().maxCoeff()});
    }
    run.residual("chiral-current-vanishes", chiral_worst, 1e-12);

    auto cm3 = CliffordModule::standard(3);
    double pair_worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        Mat Psi = random_cmat(cm3.S, su2.d, rng);
        MatForm eta = mat_form(3, 1, 2, 2);
        for (int k = 1; k <= 3; ++k) {
            Mat v = Mat::Zero(2, 2);
            for (const auto& T : su2.alg.basis) v += runif(rng) * T;
            eta.at({k}) = v;
        }
        pair_worst = std::max(pair_worst, pairing_residual(cm3, su2, Psi, eta));
    }
    run.residual("current-pairing", pair_worst, 1e-12);

    auto bench = make_bench(1, 0.3);
    auto got = sorted_eigenvalues(bench.H0);
    auto expect = free_spectrum(bench.op.grid, bench.op.cm, bench.op.rep.d, bench.op.twist);
    double free_worst = 0.0;
    for (size_t i = 0; i < got.size(); ++i)
        free_worst = std::max(free_worst, std::abs(got[i] - expect[i]));
    run.residual("free-spectrum-closed-form", free_worst, 1e-10);

    auto flow = track_branches([&](double t) { return Mat(bench.H0 + t * bench.P); }, 0.0, 1.0,
                               6, 2);
    double dev = 0.0;
    for (size_t i = 0; i < flow.t.size(); ++i) {
        double lo = std::min(flow.lambda[0][i], flow.lambda[1][i]);
        double hi = std::max(flow.lambda[0][i], flow.lambda[1][i]);
        dev = std::max(dev, std::abs(lo + 0.3 * flow.t[i]));
        dev = std::max(dev, std::abs(hi - 0.3 * flow.t[i]));
    }
    run.residual("branch-linearity", dev, 1e-10);

    bool table_ok = true;
    const struct { int n, d; long want; } rows[] = {{1, 2, 2}, {2, 3, 2}, {1, 3, 8}, {2, 4, 12}};
    for (auto [n, d, want] : rows) table_ok = table_ok && a_hat_hypersurface(n, d) == CharNumber(want);
    run.exact("hypersurface-table", table_ok);

    Instanton inst;
    auto sol = coupled_solution(inst, random_cvec(4, rng), random_cvec(4, rng));
    double asd = 0.0;
    for (int t = 0; t < 20; ++t) {
        RVec x(4);
        for (int i = 0; i < 4; ++i) x[i] = 3.0 * runif(rng);
        asd = std::max(asd, form_max_abs(hodge(sol.F(x)) + sol.F(x)));
    }
    run.residual("anti-self-duality", asd, 1e-10);

    RVec x0(4);
    x0 << 0.7, -0.4, 0.5, 0.3;
    run.residual("coupled-dirac-residual",
                 dirac_apply(sol.cm, sol.rep, sol.conn, sol.psi, x0, FD{4, 1e-2})
                     .cwiseAbs()
                     .maxCoeff(),
                 1e-5);

    auto density = [&inst](const RVec& x) { return inst.degree_density(x); };
    double val = integrate_rm_compactified(density, 4, 24, run.opt.threads);
    run.residual("degree-integral", std::abs(val + 1.0), 5e-3, {{"integral", val}});

    return run.finish();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for a coupled spinor and gauge field system"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--seed", opt.seed, "base seed for every randomized check")
        ->capture_default_str();
    app.add_option("--out", opt.out, "directory for record, summary and table files");
    app.add_option("--threads", opt.threads, "worker threads for quadrature")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--tol-scale", opt.tol_scale, "multiplier applied to every residual bound")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.set_config("--config", "", "key=value file; command line flags win");

    int trials = 200;
    int cutoff = 2;
    double coupling = 0.3;
    int steps = 8;
    double t1 = 1.0;
    double t_probe = 0.37;
    int restarts = 32;
    int iters = 400;
    double scale = 1.0;
    std::vector<double> center = {0.0, 0.0, 0.0, 0.0};
    int resolution = 32;

    auto* c_id = app.add_subcommand("identities", "algebraic identity battery");
    c_id->add_option("--trials", trials, "random draws per check")->capture_default_str();

    auto* c_ix = app.add_subcommand("index", "exact arithmetic invariants");
    c_ix->add_option("--trials", trials, "random weight vectors per size")->capture_default_str();

    auto* c_sp = app.add_subcommand("spectrum", "flat torus operator and its branches");
    c_sp->add_option("--cutoff", cutoff, "mode cutoff per axis")->capture_default_str();
    c_sp->add_option("--coupling", coupling, "constant coupling strength")->capture_default_str();
    c_sp->add_option("--steps", steps, "branch table steps")->capture_default_str();
    c_sp->add_option("--t1", t1, "final coupling parameter")->capture_default_str();

    auto* c_pe = app.add_subcommand("perturb", "first order response of the torus operator");
    c_pe->add_option("--cutoff", cutoff, "mode cutoff per axis")->capture_default_str();
    c_pe->add_option("--coupling", coupling, "constant coupling strength")->capture_default_str();
    c_pe->add_option("--t", t_probe, "probe parameter for the slope identity")
        ->capture_default_str();

    auto* c_cs = app.add_subcommand("current-scan", "current minima on the unit sphere");
    c_cs->add_option("--restarts", restarts, "descent restarts")->capture_default_str();
    c_cs->add_option("--iters", iters, "iterations per restart")->capture_default_str();

    auto* c_vb = app.add_subcommand("verify-bpst", "coupled solution checks");
    c_vb->add_option("--scale", scale, "concentration scale")->capture_default_str();
    c_vb->add_option("--center", center, "center, four components")->expected(4);
    c_vb->add_option("--resolution", resolution, "grid per axis for the degree integral")
        ->capture_default_str();

    auto* c_st = app.add_subcommand("selftest", "quick cross-module battery");

    for (auto* sc : {c_id, c_ix, c_sp, c_pe, c_cs, c_vb, c_st}) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Runner run;
    run.opt = opt;
    try {
        if (*c_id) { run.command = "identities"; return run_identities(run, trials); }
        if (*c_ix) { run.command = "index"; return run_index(run, std::min(trials, 20)); }
        if (*c_sp) { run.command = "spectrum"; return run_spectrum(run, cutoff, coupling, steps, t1); }
        if (*c_pe) { run.command = "perturb"; return run_perturb(run, cutoff, coupling, t_probe); }
        if (*c_cs) { run.command = "current-scan"; return run_current_scan(run, restarts, iters); }
        if (*c_vb) { run.command = "verify-bpst"; return run_verify_bpst(run, scale, center, resolution); }
        if (*c_st) { run.command = "selftest"; return run_selftest(run); }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
