#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fanocav {

enum class ModelKind { GeneralizedLogistic, Moffat };

/// Richards curve y = a + c / (1 + T exp(-B (x - M)))^(1/T), T > 0.
struct GeneralizedLogistic {
    double a = 0.0;
    double c = 1.0;
    double T = 1.0;
    double B = 1.0;
    double M = 0.0;
};

/// y = A (1 + ((x - mu) / sigma)^2)^(-beta), sigma != 0.
struct Moffat {
    double A = 1.0;
    double mu = 0.0;
    double sigma = 1.0;
    double beta = 1.0;
};

using FitModel = std::variant<GeneralizedLogistic, Moffat>;

std::string_view to_string(ModelKind k) noexcept;
ModelKind parse_model_kind(std::string_view text);
ModelKind kind_of(const FitModel& m) noexcept;
std::size_t parameter_count(ModelKind k) noexcept;
/// Parameter order used by every vector-valued API: (a, c, T, B, M) or (A, mu, sigma, beta).
std::vector<std::string_view> parameter_names(ModelKind k);
std::vector<double> parameters(const FitModel& m);
FitModel make_model(ModelKind k, std::span<const double> params);
/// Throws DomainError if the model's invariant (T > 0, sigma != 0, finite values) fails.
void validate(const FitModel& m);

/// Saturates to a or a + c instead of overflowing.
double eval_model(const FitModel& m, double x);

struct DataPoint {
    double x = 0.0;
    double y = 0.0;
};

struct FitOptions {
    int max_iter = 500;
    double initial_lambda = 1e-3;
    double lambda_factor = 10.0;
    double chi2_rel_tol = 1e-10;
    double step_tol = 1e-12;
    /// Geodesic acceleration: a step is accepted only if 2|a|/|v| <= geodesic_alpha
    /// (0 disables the correction). geodesic_step is the finite-difference probe length.
    double geodesic_alpha = 0.75;
    double geodesic_step = 0.1;
};

struct FitResult {
    FitModel model;
    double chi2_per_dof = 0.0;
    int n_iterations = 0;
    bool converged = false;
    /// Normal matrix numerically rank deficient at the solution (unidentifiable parameters).
    bool degenerate = false;
    std::vector<double> residuals;  // model - data, in input order
    std::string message;
};

/// Levenberg-Marquardt with forward-difference Jacobians, Marquardt diagonal damping and
/// geodesic acceleration.
/// Requires more data points than parameters and a valid initial model.
FitResult fit_least_squares(ModelKind kind, std::span<const DataPoint> data, std::span<const double> init,
                            const FitOptions& opts = {});

/// Data-driven starting point for fit_least_squares.
std::vector<double> default_inits(ModelKind kind, std::span<const DataPoint> data);

/// Residual Jacobian d(model(x_i) - y_i)/d(param_j) by forward differences with step
/// relative_step * max(|p_j|, 1e-3), or central differences when `central` is set.
Eigen::MatrixXd finite_difference_jacobian(ModelKind kind, std::span<const DataPoint> data,
                                           std::span<const double> params, double relative_step, bool central = false);

}  // namespace fanocav
