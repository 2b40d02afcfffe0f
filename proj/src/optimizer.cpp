#include "irslab/optimizer.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "irslab/closed_form.hpp"

namespace irslab::optimizer {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

VectorXcd cascade_vector(const channels::ChannelRealization& ch) {
    const auto diag = channels::cascaded_diagonals(ch);
    return diag.d_iu.cwiseProduct(diag.d_si);
}

}  // namespace

XiMatrix build_xi(const channels::ChannelRealization& ch, const hwi::PhaseErrorVector& errors) {
    const int n = ch.n;
    if (errors.size() != n) throw std::invalid_argument("build_xi: errors length mismatch");
    VectorXcd u = cascade_vector(ch);
    for (int i = 0; i < n; ++i) u[i] *= std::polar(1.0, errors.theta[i]);

    XiMatrix xi = MatrixXcd::Zero(n + 1, n + 1);
    xi.topLeftCorner(n, n) = u * u.adjoint();
    const complex<double> border_scale = std::conj(ch.h_su());
    xi.block(0, n, n, 1) = border_scale * u;
    xi.block(n, 0, 1, n) = (border_scale * u).adjoint();
    return xi;
}

XiMatrix expected_xi(const channels::ChannelRealization& ch) {
    const int n = ch.n;
    const VectorXcd u = cascade_vector(ch);
    const double pair_corr = 4.0 / (kPi * kPi);

    XiMatrix xi = MatrixXcd::Zero(n + 1, n + 1);
    MatrixXcd top = pair_corr * (u * u.adjoint());
    for (int i = 0; i < n; ++i) top(i, i) = std::norm(u[i]);
    xi.topLeftCorner(n, n) = top;
    const complex<double> border_scale = (2.0 / kPi) * std::conj(ch.h_su());
    xi.block(0, n, n, 1) = border_scale * u;
    xi.block(n, 0, 1, n) = (border_scale * u).adjoint();
    return xi;
}

double p6_variable_scale(const scenario::ScenarioParams& params,
                         const scenario::LinkBudget& budget) {
    const double kappa = params.kappa_sum();
    if (!(kappa > 0.0))
        throw std::invalid_argument("p6: kappa_t + kappa_r must be positive");
    return 1.0 / (budget.mu_su + params.noise_w / (params.power_w * kappa));
}

sdp::SdpProblem build_p6(const XiMatrix& xi_bar, const scenario::ScenarioParams& params,
                         int n_elements) {
    const int n = n_elements;
    if (xi_bar.rows() != n + 1 || xi_bar.cols() != n + 1)
        throw std::invalid_argument("build_p6: xi_bar must have dimension N+1");
    const double kappa = params.kappa_sum();
    if (!(kappa > 0.0))
        throw std::invalid_argument("build_p6: kappa_t + kappa_r must be positive");

    const auto budget = scenario::link_budget(params);
    const double mu_su = budget.mu_su;
    const double noise_term = params.noise_w / (params.power_w * kappa);
    const double c = 1.0 / (mu_su + noise_term);
    const double alpha2 = params.alpha * params.alpha;
    const int dim = n + 2;

    sdp::SdpProblem p;
    p.objective = MatrixXcd::Zero(dim, dim);
    p.objective.topLeftCorner(n + 1, n + 1) = (c / kappa) * xi_bar;
    p.objective(dim - 1, dim - 1) = (c / kappa) * mu_su;

    p.constraint_mats.reserve(n + 2);
    p.constraint_rhs.resize(n + 2);
    for (int k = 0; k < n; ++k) {
        MatrixXcd a = MatrixXcd::Zero(dim, dim);
        a(k, k) = 1.0;
        a(dim - 1, dim - 1) = -alpha2;
        p.constraint_mats.push_back(std::move(a));
        p.constraint_rhs[k] = 0.0;
    }
    {
        MatrixXcd a = MatrixXcd::Zero(dim, dim);
        a(n, n) = 1.0;
        a(dim - 1, dim - 1) = -1.0;
        p.constraint_mats.push_back(std::move(a));
        p.constraint_rhs[n] = 0.0;
    }
    {
        MatrixXcd a = MatrixXcd::Zero(dim, dim);
        a.topLeftCorner(n + 1, n + 1) = c * xi_bar;
        a(dim - 1, dim - 1) = c * (mu_su + noise_term);
        p.constraint_mats.push_back(std::move(a));
        p.constraint_rhs[n + 1] = 1.0;
    }
    return p;
}

double average_snr_for(const XiMatrix& xi_bar, const Eigen::MatrixXcd& x,
                       const scenario::ScenarioParams& params,
                       const scenario::LinkBudget& budget) {
    const double q = (xi_bar.adjoint() * x).trace().real() + budget.mu_su;
    const double p = params.power_w;
    return p * q / (p * params.kappa_sum() * q + params.noise_w);
}

LiftedSolution extract_and_certify(const sdp::SdpSolution& sol, double mu_tilde, double alpha,
                                   double rank_tol) {
    if (sol.status != sdp::SolveStatus::optimal)
        throw sdp::SolverFailure(std::string("extract_and_certify: solver status ") +
                                 sdp::to_string(sol.status));
    const int dim = static_cast<int>(sol.y.rows());
    const int n = dim - 2;
    if (n < 1) throw std::invalid_argument("extract_and_certify: solution too small");

    const double corner = sol.y(dim - 1, dim - 1).real();
    if (!(corner > 0.0))
        throw sdp::SolverFailure("extract_and_certify: nonpositive normalization block");

    LiftedSolution out;
    out.mu_tilde = mu_tilde;
    out.x = sol.y.topLeftCorner(n + 1, n + 1) / corner;
    out.y = mu_tilde * out.x;

    // theta lives in the (N+1)-th row of X: entries alpha * e^{j theta_i}.
    out.theta.resize(n);
    for (int i = 0; i < n; ++i) out.theta[i] = std::arg(out.x(n, i));

    VectorXcd a(n + 1);
    for (int i = 0; i < n; ++i) a[i] = std::polar(alpha, -out.theta[i]);
    a[n] = 1.0;
    const MatrixXcd x_rebuilt = a * a.adjoint();

    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(out.x);
    const auto& ev = eig.eigenvalues();
    const double largest = ev[n];
    const double second = std::max(0.0, ev[n - 1]);
    out.eigen_ratio = largest > 0.0 ? second / largest : 1.0;

    const double scale = out.x.cwiseAbs().maxCoeff();
    const double mismatch = (x_rebuilt - out.x).cwiseAbs().maxCoeff();
    out.rank1_certified = out.eigen_ratio <= rank_tol && mismatch <= 1e-5 * scale;

    if (!out.rank1_certified) {
        // Dominant eigenvector fallback; its leading N entries carry
        // alpha * e^{-j theta_i} up to one common phase.
        VectorXcd v = eig.eigenvectors().col(n);
        const complex<double> ref = v[n];
        if (std::abs(ref) > 1e-9 * v.norm()) v *= std::conj(ref) / std::abs(ref);
        for (int i = 0; i < n; ++i) out.theta[i] = -std::arg(v[i]);
    }
    return out;
}

OptimizeOutcome optimize_and_evaluate(const channels::ChannelRealization& ch,
                                      const scenario::ScenarioParams& params, long trials,
                                      const rng::Stream& stream, double rank_tol) {
    const int n = ch.n;
    const auto budget = scenario::link_budget(params);
    const XiMatrix xi_bar = expected_xi(ch);
    const sdp::SdpProblem p6 = build_p6(xi_bar, params, n);

    OptimizeOutcome out;
    out.sdp_solution = sdp::solve(p6);
    const double c = p6_variable_scale(params, budget);
    const double corner = out.sdp_solution.status == sdp::SolveStatus::optimal
                              ? out.sdp_solution.y(n + 1, n + 1).real()
                              : 0.0;
    out.lifted = extract_and_certify(out.sdp_solution, c * corner, params.alpha, rank_tol);
    out.objective_snr = out.sdp_solution.objective_value;
    out.objective_rate = closed_form::log2_rate(out.objective_snr);

    VectorXcd phi(n);
    for (int i = 0; i < n; ++i) phi[i] = std::polar(params.alpha, out.lifted.theta[i]);
    out.mc_rate = monte_carlo::average_rate(
        [&](rng::Engine& eng) {
            const auto errors = hwi::sample_phase_errors(n, eng);
            return monte_carlo::instantaneous_rate_with_phi(phi, ch, errors, params);
        },
        trials, stream);
    return out;
}

std::string format_report_row(int n_elements, const OptimizeOutcome& outcome) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%d,%.17g", n_elements, outcome.objective_snr,
                  outcome.lifted.rank1_certified ? 1 : 0, outcome.lifted.eigen_ratio);
    std::string row = buf;
    for (int i = 0; i < outcome.lifted.theta.size(); ++i) {
        std::snprintf(buf, sizeof(buf), ",%.17g", outcome.lifted.theta[i]);
        row += buf;
    }
    return row;
}

}  // namespace irslab::optimizer
