#include "irslab/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace irslab::sdp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

double frob_inner(const MatrixXd& a, const MatrixXd& b) {
    return (a.array() * b.array()).sum();
}

MatrixXd symmetrized(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

/// Largest step alpha with S + alpha * D staying positive semidefinite.
double max_step(const Eigen::LLT<MatrixXd>& llt_s, const MatrixXd& d) {
    const MatrixXd l = llt_s.matrixL();
    const MatrixXd inner = l.triangularView<Eigen::Lower>().solve(
        l.triangularView<Eigen::Lower>().solve(d).transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(symmetrized(inner),
                                                Eigen::EigenvaluesOnly);
    const double lambda_min = eig.eigenvalues().minCoeff();
    if (lambda_min >= -1e-14) return kInf;
    return -1.0 / lambda_min;
}

struct RealProblem {
    MatrixXd c;
    std::vector<MatrixXd> a;
    VectorXd b;
};

struct RealResult {
    MatrixXd x;
    VectorXd y;
    MatrixXd z;
    SolveStatus status = SolveStatus::numerical_failure;
    int iterations = 0;
    std::vector<IterateRecord> trace;  // in the scaled units of the input
};

struct Residuals {
    VectorXd rp;     // b_k - <A_k, X>
    MatrixXd rd;     // C - sum y_k A_k + Z
    double rp_rel = kInf;
    double rd_rel = kInf;
    double gap_rel = kInf;
    double mu = kInf;
    double merit() const { return std::max({rp_rel, rd_rel, gap_rel}); }
};

Residuals compute_residuals(const RealProblem& p, const MatrixXd& x, const VectorXd& y,
                            const MatrixXd& z) {
    const int n = static_cast<int>(p.c.rows());
    const int m = static_cast<int>(p.a.size());
    Residuals r;
    r.rp.resize(m);
    double rp_rel = 0.0;
    for (int k = 0; k < m; ++k) {
        r.rp[k] = p.b[k] - frob_inner(p.a[k], x);
        rp_rel = std::max(rp_rel, std::abs(r.rp[k]) / (1.0 + std::abs(p.b[k])));
    }
    MatrixXd aty = MatrixXd::Zero(n, n);
    for (int k = 0; k < m; ++k) aty += y[k] * p.a[k];
    r.rd = p.c - aty + z;
    r.rp_rel = rp_rel;
    r.rd_rel = r.rd.norm() / (1.0 + p.c.norm());
    const double pobj = frob_inner(p.c, x);
    const double dobj = p.b.dot(y);
    r.gap_rel = std::abs(dobj - pobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    r.mu = frob_inner(x, z) / n;
    return r;
}

/// Nesterov-Todd scaling point W with W Z W = X, via Cholesky factors and the
/// SVD of Lz^T Lx.
MatrixXd nt_scaling(const Eigen::LLT<MatrixXd>& llt_x, const Eigen::LLT<MatrixXd>& llt_z) {
    const MatrixXd lx = llt_x.matrixL();
    const MatrixXd lz = llt_z.matrixL();
    Eigen::JacobiSVD<MatrixXd> svd(lz.transpose() * lx,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
    const VectorXd inv_sqrt = svd.singularValues().cwiseSqrt().cwiseInverse();
    const MatrixXd g = lx * svd.matrixV() * inv_sqrt.asDiagonal();
    return symmetrized(g * g.transpose());
}

struct NewtonContext {
    const RealProblem* p = nullptr;
    MatrixXd w;
    std::vector<MatrixXd> waw;  // W A_k W
    Eigen::LDLT<MatrixXd> schur;
    bool ok = false;
};

NewtonContext build_newton(const RealProblem& p, const MatrixXd& w) {
    NewtonContext ctx;
    ctx.p = &p;
    ctx.w = w;
    const int m = static_cast<int>(p.a.size());
    ctx.waw.resize(m);
    for (int k = 0; k < m; ++k) ctx.waw[k] = symmetrized(w * p.a[k] * w);
    MatrixXd schur(m, m);
    for (int k = 0; k < m; ++k)
        for (int j = k; j < m; ++j) schur(k, j) = schur(j, k) = frob_inner(p.a[k], ctx.waw[j]);
    ctx.schur.compute(symmetrized(schur));
    ctx.ok = ctx.schur.info() == Eigen::Success && ctx.schur.isPositive();
    if (!ctx.ok) {
        // near-degenerate scaling: regularize and retry once
        schur.diagonal().array() += 1e-13 * (1.0 + schur.diagonal().maxCoeff());
        ctx.schur.compute(symmetrized(schur));
        ctx.ok = ctx.schur.info() == Eigen::Success;
    }
    return ctx;
}

struct Direction {
    MatrixXd dx, dz;
    VectorXd dy;
};

/// Solves  <A_k, dX> = rp_k,  sum dy_k A_k - dZ = Rd,  dX + W dZ W = Rc.
Direction newton_direction(const NewtonContext& ctx, const Residuals& res, const MatrixXd& rc) {
    const auto& p = *ctx.p;
    const int m = static_cast<int>(p.a.size());
    const MatrixXd wrdw = symmetrized(ctx.w * res.rd * ctx.w);
    VectorXd rhs(m);
    for (int k = 0; k < m; ++k)
        rhs[k] = frob_inner(p.a[k], rc) + frob_inner(p.a[k], wrdw) - res.rp[k];
    Direction dir;
    dir.dy = ctx.schur.solve(rhs);
    const int n = static_cast<int>(p.c.rows());
    MatrixXd aty = MatrixXd::Zero(n, n);
    for (int k = 0; k < m; ++k) aty += dir.dy[k] * p.a[k];
    dir.dz = symmetrized(aty - res.rd);
    dir.dx = symmetrized(rc - ctx.w * dir.dz * ctx.w);
    return dir;
}

RealResult solve_real(const RealProblem& p, const SdpTolerances& tol) {
    const int n = static_cast<int>(p.c.rows());
    const int m = static_cast<int>(p.a.size());

    // Identity start, scaled by the least-squares fit of the trace equations.
    double num = 0.0, den = 0.0;
    for (int k = 0; k < m; ++k) {
        const double tr = p.a[k].trace();
        num += p.b[k] * tr;
        den += tr * tr;
    }
    const double fit = den > 1e-300 ? num / den : 1.0;
    const double xi = std::clamp(std::abs(fit), 1.0, 1e6);
    double eta = 1.0 + p.c.norm();
    for (int k = 0; k < m; ++k) eta = std::max(eta, 1.0 + p.a[k].norm());

    MatrixXd x = xi * MatrixXd::Identity(n, n);
    MatrixXd z = eta * MatrixXd::Identity(n, n);
    VectorXd y = VectorXd::Zero(m);

    const double target_feas = std::max(tol.feas * 1e-2, 1e-12);
    const double target_gap = std::max(tol.gap * 1e-2, 5e-12);
    const double frac = 0.98;

    RealResult result;
    MatrixXd best_x = x, best_z = z;
    VectorXd best_y = y;
    double best_merit = kInf;
    int stall = 0;
    double prev_merit = kInf;
    double prev_dobj = 0.0;
    bool diverged = false;

    int iter = 0;
    for (; iter < tol.max_iterations; ++iter) {
        const Residuals res = compute_residuals(p, x, y, z);

        double slack = 0.0;
        for (int k = 0; k < m; ++k) slack += std::abs(y[k] * res.rp[k]);
        slack += std::abs(frob_inner(res.rd, x));
        const double dobj = p.b.dot(y);
        result.trace.push_back({frob_inner(p.c, x), dobj, res.rp_rel, res.rd_rel,
                                res.mu, slack});

        if (res.merit() < best_merit) {
            best_merit = res.merit();
            best_x = x;
            best_y = y;
            best_z = z;
        }
        if (res.rp_rel <= target_feas && res.rd_rel <= target_feas && res.gap_rel <= target_gap)
            break;

        if (y.lpNorm<Eigen::Infinity>() > 1e7 * (1.0 + p.b.lpNorm<Eigen::Infinity>()) ||
            x.norm() > 1e9 * (1.0 + xi) * n) {
            diverged = true;
            break;
        }
        // The dual minimization escaping to -inf with a stuck primal residual
        // is how an infeasible instance presents; let it run to the divergence
        // check instead of stalling out.
        const bool dual_escaping =
            dobj < prev_dobj - (1e-6 + 0.01 * std::abs(prev_dobj)) && res.rp_rel > tol.feas;
        prev_dobj = std::min(prev_dobj, dobj);
        if (res.merit() > 0.999 * prev_merit && !dual_escaping) {
            if (++stall >= 8) break;
        } else {
            stall = 0;
        }
        prev_merit = std::min(prev_merit, res.merit());

        Eigen::LLT<MatrixXd> llt_x(x), llt_z(z);
        if (llt_x.info() != Eigen::Success || llt_z.info() != Eigen::Success) break;
        const MatrixXd w = nt_scaling(llt_x, llt_z);
        const NewtonContext ctx = build_newton(p, w);
        if (!ctx.ok) break;
        const MatrixXd z_inv = llt_z.solve(MatrixXd::Identity(n, n));

        // predictor
        const Direction aff = newton_direction(ctx, res, -x);
        const double ap_full = std::min(1.0, max_step(llt_x, aff.dx));
        const double ad_full = std::min(1.0, max_step(llt_z, aff.dz));
        const double mu_aff = std::max(
            0.0, frob_inner(x + ap_full * aff.dx, z + ad_full * aff.dz) / n);
        const double sigma = std::clamp(std::pow(mu_aff / res.mu, 3.0), 1e-10, 1.0);

        // corrector
        const MatrixXd second_order =
            0.5 * (aff.dx * aff.dz * z_inv + z_inv * aff.dz * aff.dx);
        MatrixXd rc = sigma * res.mu * z_inv - x - second_order;
        Direction dir = newton_direction(ctx, res, symmetrized(rc));
        double ap = std::min(1.0, frac * max_step(llt_x, dir.dx));
        double ad = std::min(1.0, frac * max_step(llt_z, dir.dz));
        const double ap_aff = std::min(1.0, frac * max_step(llt_x, aff.dx));
        const double ad_aff = std::min(1.0, frac * max_step(llt_z, aff.dz));
        if (ap + ad < 0.5 * (ap_aff + ad_aff)) {
            rc = sigma * res.mu * z_inv - x;
            dir = newton_direction(ctx, res, symmetrized(rc));
            ap = std::min(1.0, frac * max_step(llt_x, dir.dx));
            ad = std::min(1.0, frac * max_step(llt_z, dir.dz));
        }

        if (std::max(ap, ad) < 1e-8) break;
        x = symmetrized(x + ap * dir.dx);
        y += ad * dir.dy;
        z = symmetrized(z + ad * dir.dz);
    }

    const Residuals last = compute_residuals(p, x, y, z);
    if (last.merit() <= best_merit) {
        best_x = x;
        best_y = y;
        best_z = z;
        best_merit = last.merit();
    }
    result.x = best_x;
    result.y = best_y;
    result.z = best_z;
    result.iterations = iter;

    const Residuals best = compute_residuals(p, best_x, best_y, best_z);
    const bool acceptable =
        best.rp_rel <= tol.feas && best.rd_rel <= 10.0 * tol.feas && best.gap_rel <= tol.gap;
    if (acceptable) {
        result.status = SolveStatus::optimal;
        return result;
    }

    // Farkas certificate on the final dual direction: v with sum v_k A_k
    // (approximately) psd and b'v < 0 proves primal infeasibility, since any
    // feasible X >= 0 would give 0 <= <X, sum v A> = b'v.
    const double ynorm = y.norm();
    bool certified_infeasible = false;
    if (ynorm > 1.0) {
        const VectorXd v = y / ynorm;
        MatrixXd ray = MatrixXd::Zero(n, n);
        for (int k = 0; k < m; ++k) ray += v[k] * p.a[k];
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig(symmetrized(ray), Eigen::EigenvaluesOnly);
        certified_infeasible = p.b.dot(v) < -1e-8 && eig.eigenvalues().minCoeff() > -1e-6;
    }
    result.status = (diverged && ynorm > 1.0) || certified_infeasible
                        ? SolveStatus::infeasible
                        : SolveStatus::numerical_failure;
    return result;
}

void require_hermitian(const Eigen::MatrixXcd& h, const char* what) {
    if (h.rows() != h.cols() || !is_hermitian(h))
        throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian");
}

}  // namespace

bool is_hermitian(const Eigen::MatrixXcd& h, double tol) {
    if (h.rows() != h.cols()) return false;
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Eigen::MatrixXd real_embedding(const Eigen::MatrixXcd& h) {
    require_hermitian(h, "real_embedding");
    const auto n = h.rows();
    Eigen::MatrixXd s(2 * n, 2 * n);
    s.topLeftCorner(n, n) = h.real();
    s.topRightCorner(n, n) = -h.imag();
    s.bottomLeftCorner(n, n) = h.imag();
    s.bottomRightCorner(n, n) = h.real();
    return symmetrized(s);
}

Eigen::MatrixXcd from_real_embedding(const Eigen::MatrixXd& s) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0)
        throw std::invalid_argument("from_real_embedding: need an even-dimensional matrix");
    const auto n = s.rows() / 2;
    Eigen::MatrixXcd h(n, n);
    h.real() = 0.5 * (s.topLeftCorner(n, n) + s.bottomRightCorner(n, n));
    h.imag() = 0.5 * (s.bottomLeftCorner(n, n) - s.topRightCorner(n, n));
    return 0.5 * (h + Eigen::MatrixXcd(h.adjoint()));
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::numerical_failure: return "numerical-failure";
    }
    return "unknown";
}

SdpSolution solve(const SdpProblem& problem, const SdpTolerances& tol) {
    const int n = problem.dimension();
    const int m = problem.num_constraints();
    if (n < 1) throw std::invalid_argument("sdp::solve: empty objective");
    if (problem.constraint_rhs.size() != m)
        throw std::invalid_argument("sdp::solve: constraint/rhs count mismatch");
    require_hermitian(problem.objective, "sdp::solve objective");
    for (const auto& a : problem.constraint_mats) {
        require_hermitian(a, "sdp::solve constraint");
        if (a.rows() != n) throw std::invalid_argument("sdp::solve: constraint dimension mismatch");
    }

    double max_imag = problem.objective.imag().cwiseAbs().maxCoeff();
    double data_scale = problem.objective.cwiseAbs().maxCoeff();
    for (const auto& a : problem.constraint_mats) {
        max_imag = std::max(max_imag, a.imag().cwiseAbs().maxCoeff());
        data_scale = std::max(data_scale, a.cwiseAbs().maxCoeff());
    }
    const bool complex_path = max_imag > 1e-14 * std::max(1.0, data_scale);

    // Real cone data: complex problems via the embedding (b doubles along with
    // the trace); real problems directly.
    RealProblem rp;
    double obj_factor = 1.0;
    if (complex_path) {
        obj_factor = 0.5;
        rp.c = real_embedding(problem.objective);
        rp.a.reserve(m);
        for (const auto& a : problem.constraint_mats) rp.a.push_back(real_embedding(a));
        rp.b = 2.0 * problem.constraint_rhs;
    } else {
        rp.c = symmetrized(problem.objective.real());
        rp.a.reserve(m);
        for (const auto& a : problem.constraint_mats) rp.a.push_back(symmetrized(a.real()));
        rp.b = problem.constraint_rhs;
    }

    // Normalize constraints to unit Frobenius norm, the rhs to unit scale and
    // the objective to unit norm; everything is undone after the solve.
    VectorXd s_norm(m);
    for (int k = 0; k < m; ++k) {
        s_norm[k] = std::max(rp.a[k].norm(), 1e-300);
        rp.a[k] /= s_norm[k];
        rp.b[k] /= s_norm[k];
    }
    const double t_var = std::max(1.0, rp.b.size() > 0 ? rp.b.cwiseAbs().maxCoeff() : 1.0);
    rp.b /= t_var;
    const double c_norm = std::max(rp.c.norm(), 1e-300);
    rp.c /= c_norm;

    if (m > 0) {
        MatrixXd gram(m, m);
        for (int k = 0; k < m; ++k)
            for (int j = k; j < m; ++j) gram(k, j) = gram(j, k) = frob_inner(rp.a[k], rp.a[j]);
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < 1e-10)
            throw std::invalid_argument("sdp::solve: constraint matrices are linearly dependent");
    }

    RealResult inner = solve_real(rp, tol);

    SdpSolution sol;
    sol.iterations = inner.iterations;
    sol.status = inner.status;

    const MatrixXd x_unscaled = t_var * inner.x;
    Eigen::MatrixXcd y_complex;
    Eigen::MatrixXcd z_complex;
    if (complex_path) {
        y_complex = from_real_embedding(x_unscaled);
        z_complex = from_real_embedding(MatrixXd(c_norm * inner.z));
    } else {
        y_complex = x_unscaled.cast<std::complex<double>>();
        z_complex = MatrixXd(c_norm * inner.z).cast<std::complex<double>>();
    }
    sol.y = y_complex;
    sol.dual_values.resize(m);
    for (int k = 0; k < m; ++k) sol.dual_values[k] = inner.y[k] * c_norm / s_norm[k];

    sol.objective_value =
        (problem.objective.adjoint() * sol.y).trace().real();
    double rp_rel = 0.0;
    for (int k = 0; k < m; ++k) {
        const double got = (problem.constraint_mats[k].adjoint() * sol.y).trace().real();
        rp_rel = std::max(rp_rel, std::abs(got - problem.constraint_rhs[k]) /
                                      (1.0 + std::abs(problem.constraint_rhs[k])));
    }
    sol.primal_residual = rp_rel;
    Eigen::MatrixXcd dual_slack = -problem.objective - z_complex;
    for (int k = 0; k < m; ++k) dual_slack += sol.dual_values[k] * problem.constraint_mats[k];
    sol.dual_residual = dual_slack.norm() / (1.0 + problem.objective.norm());
    sol.duality_gap =
        std::abs(problem.constraint_rhs.dot(sol.dual_values) - sol.objective_value);

    const double unscale = c_norm * t_var * obj_factor;
    sol.trace = std::move(inner.trace);
    for (auto& rec : sol.trace) {
        rec.primal_obj *= unscale;
        rec.dual_obj *= unscale;
        rec.weak_duality_slack *= unscale;
    }

    if (sol.status == SolveStatus::optimal) {
        const bool ok = sol.primal_residual <= tol.feas &&
                        sol.dual_residual <= 10.0 * tol.feas &&
                        sol.duality_gap <= tol.gap * (1.0 + std::abs(sol.objective_value));
        if (!ok) sol.status = SolveStatus::numerical_failure;
    }
    return sol;
}

void dump_problem(const SdpProblem& problem, std::ostream& out) {
    const int n = problem.dimension();
    char buf[160];
    out << "# maximize tr(C Y) s.t. tr(A_k Y) = b_k, Y psd hermitian\n";
    out << "dim " << n << "\n";
    out << "constraints " << problem.num_constraints() << "\n";
    const auto dump_mat = [&](const Eigen::MatrixXcd& mat) {
        int nnz = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (std::abs(mat(i, j)) > 0.0) ++nnz;
        out << "nnz " << nnz << "\n";
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (std::abs(mat(i, j)) > 0.0) {
                    std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g\n", i, j,
                                  mat(i, j).real(), mat(i, j).imag());
                    out << buf;
                }
    };
    out << "objective\n";
    dump_mat(problem.objective);
    for (int k = 0; k < problem.num_constraints(); ++k) {
        std::snprintf(buf, sizeof(buf), "constraint %d rhs %.17g\n", k,
                      problem.constraint_rhs[k]);
        out << buf;
        dump_mat(problem.constraint_mats[k]);
    }
}

}  // namespace irslab::sdp
