#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace irslab::sdp {

/// Thrown when a pipeline step needs an optimal SDP solution and the solver
/// reported anything else.
struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// max |H - H^H| elementwise within tol (absolute, relative above unit scale).
bool is_hermitian(const Eigen::MatrixXcd& h, double tol = 1e-12);

/// [[Re H, -Im H], [Im H, Re H]]. The embedded matrix is symmetric, its trace
/// against another embedding is twice the real complex trace, and it is PSD
/// exactly when H is. Input must be Hermitian.
Eigen::MatrixXd real_embedding(const Eigen::MatrixXcd& h);

/// Inverse of real_embedding on symmetric 2n x 2n matrices: averages the two
/// diagonal blocks and antisymmetrizes the off-diagonal ones.
Eigen::MatrixXcd from_real_embedding(const Eigen::MatrixXd& s);

/// maximize tr(C Y) subject to tr(A_k Y) = b_k and Y positive semidefinite,
/// over Hermitian Y. All data matrices must be Hermitian of one dimension.
struct SdpProblem {
    Eigen::MatrixXcd objective;
    std::vector<Eigen::MatrixXcd> constraint_mats;
    Eigen::VectorXd constraint_rhs;

    int dimension() const { return static_cast<int>(objective.rows()); }
    int num_constraints() const { return static_cast<int>(constraint_mats.size()); }
};

enum class SolveStatus { optimal, infeasible, numerical_failure };

const char* to_string(SolveStatus s);

struct SdpTolerances {
    double feas = 1e-8;       // |tr(A_k Y) - b_k| <= feas * (1 + |b_k|)
    double gap = 1e-7;        // |b'y - tr(C Y)| <= gap * (1 + |tr(C Y)|)
    double psd_floor = 1e-8;  // smallest admissible eigenvalue of Y is -psd_floor
    int max_iterations = 200;
};

/// One interior-point iterate, in original problem units. Weak duality holds
/// up to `weak_duality_slack`, which accounts for the iterate's infeasibility.
struct IterateRecord {
    double primal_obj = 0.0;
    double dual_obj = 0.0;
    double primal_resid = 0.0;  // max_k |tr(A_k Y)-b_k| / (1+|b_k|)
    double dual_resid = 0.0;    // ||sum y_k A_k - Z - C||_F / (1+||C||_F)
    double mu = 0.0;            // complementarity <Y,Z>/n, scaled units
    double weak_duality_slack = 0.0;
};

struct SdpSolution {
    Eigen::MatrixXcd y;  // primal optimum
    double objective_value = 0.0;
    Eigen::VectorXd dual_values;
    double primal_residual = 0.0;  // max_k |tr(A_k Y)-b_k| / (1+|b_k|)
    double dual_residual = 0.0;
    double duality_gap = 0.0;      // |b' dual - objective_value|
    SolveStatus status = SolveStatus::numerical_failure;
    int iterations = 0;
    std::vector<IterateRecord> trace;
};

/// Primal-dual interior-point solve (Nesterov-Todd scaling, Mehrotra
/// predictor-corrector, dense linear algebra). Complex problems run through
/// real_embedding; the factor-2 trace is normalized away internally.
/// Deterministic given identical inputs. Throws std::invalid_argument on
/// non-Hermitian data or linearly dependent constraint matrices.
SdpSolution solve(const SdpProblem& problem, const SdpTolerances& tol = {});

/// Sparse-triplet text dump (upper triangle, `i j re im` per entry) for
/// differential testing against external solvers.
void dump_problem(const SdpProblem& problem, std::ostream& out);

}  // namespace irslab::sdp
