#include "fanocav/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fanocav/errors.hpp"

namespace fanocav {

std::string_view to_string(ModelKind k) noexcept {
    return k == ModelKind::Moffat ? "moffat" : "generalized_logistic";
}

ModelKind parse_model_kind(std::string_view text) {
    if (text == "moffat") return ModelKind::Moffat;
    if (text == "generalized_logistic" || text == "logistic") return ModelKind::GeneralizedLogistic;
    throw DomainError("unknown model '" + std::string(text) + "'");
}

ModelKind kind_of(const FitModel& m) noexcept {
    return std::holds_alternative<Moffat>(m) ? ModelKind::Moffat : ModelKind::GeneralizedLogistic;
}

std::size_t parameter_count(ModelKind k) noexcept { return k == ModelKind::Moffat ? 4 : 5; }

std::vector<std::string_view> parameter_names(ModelKind k) {
    if (k == ModelKind::Moffat) return {"A", "mu", "sigma", "beta"};
    return {"a", "c", "T", "B", "M"};
}

std::vector<double> parameters(const FitModel& m) {
    if (const auto* f = std::get_if<Moffat>(&m)) return {f->A, f->mu, f->sigma, f->beta};
    const auto& l = std::get<GeneralizedLogistic>(m);
    return {l.a, l.c, l.T, l.B, l.M};
}

FitModel make_model(ModelKind k, std::span<const double> p) {
    if (p.size() != parameter_count(k)) throw DomainError("make_model: wrong parameter count");
    if (k == ModelKind::Moffat) return Moffat{p[0], p[1], p[2], p[3]};
    return GeneralizedLogistic{p[0], p[1], p[2], p[3], p[4]};
}

void validate(const FitModel& m) {
    for (double v : parameters(m)) {
        if (!std::isfinite(v)) throw DomainError("fit model: non-finite parameter");
    }
    if (const auto* f = std::get_if<Moffat>(&m)) {
        if (f->sigma == 0.0) throw DomainError("Moffat: sigma must be non-zero");
    } else if (!(std::get<GeneralizedLogistic>(m).T > 0.0)) {
        throw DomainError("generalized logistic: T must be positive");
    }
}

namespace {

// log(1 + e^z) without overflow.
double softplus(double z) {
    if (z > 30.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

double eval_unchecked(const FitModel& m, double x) {
    if (const auto* f = std::get_if<Moffat>(&m)) {
        const double u = (x - f->mu) / f->sigma;
        return f->A * std::pow(1.0 + u * u, -f->beta);
    }
    const auto& l = std::get<GeneralizedLogistic>(m);
    // (1 + T e^{-B(x-M)})^{-1/T} = exp(-softplus(log T - B(x-M)) / T)
    const double z = std::log(l.T) - l.B * (x - l.M);
    return l.a + l.c * std::exp(-softplus(z) / l.T);
}

bool admissible(ModelKind k, std::span<const double> p) {
    for (double v : p) {
        if (!std::isfinite(v)) return false;
    }
    return k == ModelKind::Moffat ? p[2] != 0.0 : p[2] > 0.0;
}

// Residuals model - data; returns +inf chi^2 when parameters leave the model's domain.
double residuals(ModelKind k, std::span<const DataPoint> data, std::span<const double> p, Eigen::VectorXd& r) {
    r.resize(static_cast<Eigen::Index>(data.size()));
    if (!admissible(k, p)) return std::numeric_limits<double>::infinity();
    const auto model = make_model(k, p);
    for (std::size_t i = 0; i < data.size(); ++i) {
        r(static_cast<Eigen::Index>(i)) = eval_unchecked(model, data[i].x) - data[i].y;
    }
    const double chi2 = r.squaredNorm();
    return std::isfinite(chi2) ? chi2 : std::numeric_limits<double>::infinity();
}

double param_norm(std::span<const double> p) {
    double s = 0.0;
    for (double v : p) s += v * v;
    return std::sqrt(s);
}

// Chi^2 decrease predicted by the linearized model for the undamped step, and that step's norm.
std::pair<double, double> gauss_newton_prediction(const Eigen::MatrixXd& jac, const Eigen::VectorXd& r) {
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    const double floor = 1e-15 * std::max(jtj.diagonal().maxCoeff(), 1e-300);
    jtj.diagonal().array() += floor;
    const Eigen::VectorXd step = jtj.ldlt().solve(-grad);
    if (!step.allFinite()) return {0.0, 0.0};
    return {std::max(-grad.dot(step), 0.0), step.norm()};
}

}  // namespace

double eval_model(const FitModel& m, double x) {
    validate(m);
    return eval_unchecked(m, x);
}

Eigen::MatrixXd finite_difference_jacobian(ModelKind kind, std::span<const DataPoint> data,
                                           std::span<const double> params, double relative_step, bool central) {
    const auto n = static_cast<Eigen::Index>(data.size());
    const auto np = static_cast<Eigen::Index>(params.size());
    Eigen::MatrixXd jac(n, np);
    std::vector<double> p(params.begin(), params.end());
    Eigen::VectorXd r0, rp, rm;
    residuals(kind, data, p, r0);
    for (Eigen::Index j = 0; j < np; ++j) {
        const double orig = p[static_cast<std::size_t>(j)];
        const double h = relative_step * std::max(std::abs(orig), 1e-3);
        p[static_cast<std::size_t>(j)] = orig + h;
        const bool fwd_ok = std::isfinite(residuals(kind, data, p, rp));
        p[static_cast<std::size_t>(j)] = orig - h;
        const bool bwd_ok = (central || !fwd_ok) && std::isfinite(residuals(kind, data, p, rm));
        p[static_cast<std::size_t>(j)] = orig;
        if (central && fwd_ok && bwd_ok) {
            jac.col(j) = (rp - rm) / (2.0 * h);
        } else if (fwd_ok) {
            jac.col(j) = (rp - r0) / h;
        } else if (bwd_ok) {
            jac.col(j) = (r0 - rm) / h;
        } else {
            jac.col(j).setZero();
        }
    }
    return jac;
}

FitResult fit_least_squares(ModelKind kind, std::span<const DataPoint> data, std::span<const double> init,
                            const FitOptions& opts) {
    const std::size_t np = parameter_count(kind);
    if (init.size() != np) throw DomainError("fit_least_squares: wrong number of initial parameters");
    if (data.size() <= np) throw DomainError("fit_least_squares: need more data points than parameters");
    validate(make_model(kind, init));

    const double fd_step = std::sqrt(std::numeric_limits<double>::epsilon());
    std::vector<double> p(init.begin(), init.end());
    Eigen::VectorXd r;
    double chi2 = residuals(kind, data, p, r);
    if (!std::isfinite(chi2)) throw DomainError("fit_least_squares: model not finite at the initial guess");

    FitResult result;
    double lambda = opts.initial_lambda;
    const auto npi = static_cast<Eigen::Index>(np);
    Eigen::MatrixXd jac = finite_difference_jacobian(kind, data, p, fd_step);
    bool done = chi2 == 0.0;
    if (done) {
        result.converged = true;
        result.message = "exact fit";
    }

    int it = 0;
    while (!done && it < opts.max_iter) {
        ++it;
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd grad = jac.transpose() * r;
        const double diag_floor = 1e-15 * std::max(jtj.diagonal().maxCoeff(), 1e-300);

        bool accepted = false;
        bool any_finite_step = false;
        while (!accepted) {
            Eigen::MatrixXd a = jtj;
            for (Eigen::Index j = 0; j < npi; ++j) a(j, j) += lambda * std::max(jtj(j, j), diag_floor);
            const auto ldlt = a.ldlt();
            Eigen::VectorXd step = ldlt.solve(-grad);
            if (step.allFinite() && opts.geodesic_alpha > 0.0) {
                // Geodesic acceleration: second directional derivative of the residuals along the
                // velocity step, by finite differences.
                const double h = opts.geodesic_step;
                std::vector<double> probe(np);
                for (std::size_t j = 0; j < np; ++j) probe[j] = p[j] + h * step(static_cast<Eigen::Index>(j));
                Eigen::VectorXd r_probe;
                const double chi2_probe = residuals(kind, data, probe, r_probe);
                Eigen::VectorXd accel = Eigen::VectorXd::Zero(npi);
                bool accel_ok = std::isfinite(chi2_probe);
                if (accel_ok) {
                    const Eigen::VectorXd rpp = (2.0 / h) * ((r_probe - r) / h - jac * step);
                    accel = ldlt.solve(-(jac.transpose() * rpp));
                    accel_ok = accel.allFinite() && 2.0 * accel.norm() <= opts.geodesic_alpha * step.norm();
                }
                if (!accel_ok) {
                    lambda *= opts.lambda_factor;
                    if (lambda > 1e20) {
                        result.converged = true;
                        result.message = "no further decrease possible";
                        done = true;
                        break;
                    }
                    continue;
                }
                step += 0.5 * accel;
            }
            if (!step.allFinite()) {
                lambda *= opts.lambda_factor;
            } else {
                any_finite_step = true;
                std::vector<double> trial(np);
                for (std::size_t j = 0; j < np; ++j) trial[j] = p[j] + step(static_cast<Eigen::Index>(j));
                Eigen::VectorXd r_trial;
                const double chi2_trial = residuals(kind, data, trial, r_trial);
                if (chi2_trial <= chi2) {
                    const double decrease = chi2 - chi2_trial;
                    const double step_norm = step.norm();
                    p = std::move(trial);
                    r = std::move(r_trial);
                    chi2 = chi2_trial;
                    lambda = std::max(lambda / opts.lambda_factor, 1e-15);
                    accepted = true;
                    jac = finite_difference_jacobian(kind, data, p, fd_step);
                    if (chi2 == 0.0) {
                        result.converged = true;
                        result.message = "exact fit";
                        done = true;
                    } else if (decrease <= opts.chi2_rel_tol * (chi2 + decrease) ||
                               step_norm <= opts.step_tol * (param_norm(p) + opts.step_tol)) {
                        // A damped step can be tiny far from the minimum; confirm with the
                        // undamped step at the new point before stopping.
                        const auto [pred, gn_norm] = gauss_newton_prediction(jac, r);
                        if (pred <= opts.chi2_rel_tol * chi2) {
                            result.converged = true;
                            result.message = "relative chi2 decrease below tolerance";
                            done = true;
                        } else if (gn_norm <= opts.step_tol * (param_norm(p) + opts.step_tol)) {
                            result.converged = true;
                            result.message = "step norm below tolerance";
                            done = true;
                        }
                    }
                } else {
                    lambda *= opts.lambda_factor;
                }
            }
            if (!accepted && lambda > 1e20) {
                // No descent direction survives heavy damping: the current point is a minimum to
                // working precision, unless the normal equations never produced a finite step.
                result.converged = any_finite_step;
                result.message = result.converged ? "no further decrease possible"
                                                  : "singular normal equations";
                done = true;
                break;
            }
        }
    }
    if (!done) result.message = "iteration limit reached";

    result.model = make_model(kind, p);
    result.n_iterations = it;
    result.chi2_per_dof = chi2 / static_cast<double>(data.size() - np);
    result.residuals.assign(r.data(), r.data() + r.size());

    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jtj);
    const double emax = eig.eigenvalues().maxCoeff();
    const double emin = eig.eigenvalues().minCoeff();
    result.degenerate = !(emax > 0.0) || emin <= 1e-12 * emax;
    if (result.degenerate) result.message += " (degenerate parameters)";
    return result;
}

std::vector<double> default_inits(ModelKind kind, std::span<const DataPoint> data) {
    if (data.empty()) throw DomainError("default_inits: empty data");
    const auto [ymin_it, ymax_it] =
        std::minmax_element(data.begin(), data.end(), [](const DataPoint& a, const DataPoint& b) { return a.y < b.y; });
    const auto [xmin_it, xmax_it] =
        std::minmax_element(data.begin(), data.end(), [](const DataPoint& a, const DataPoint& b) { return a.x < b.x; });
    const double xspan = xmax_it->x - xmin_it->x;
    if (kind == ModelKind::Moffat) {
        const double sigma = xspan > 0.0 ? xspan / 2.0 : 1.0;
        return {ymax_it->y, ymax_it->x, sigma, 2.0};
    }
    std::vector<double> xs;
    xs.reserve(data.size());
    for (const auto& d : data) xs.push_back(d.x);
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    const double median = n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
    const double rate = xspan > 0.0 ? 4.0 / xspan : 1.0;
    return {ymin_it->y, ymax_it->y - ymin_it->y, 1.0, rate, median};
}

}  // namespace fanocav
