#include "fanocav/commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "fanocav/errors.hpp"
#include "fanocav/svg.hpp"

namespace fanocav {

Command parse_command(std::string_view text) {
    if (text == "steady") return Command::Steady;
    if (text == "spectrum") return Command::Spectrum;
    if (text == "fig3") return Command::Fig3;
    if (text == "fig4") return Command::Fig4;
    if (text == "fig5") return Command::Fig5;
    if (text == "fig7") return Command::Fig7;
    if (text == "fit") return Command::Fit;
    throw DomainError("unknown command '" + std::string(text) + "'");
}

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::Steady: return "steady";
        case Command::Spectrum: return "spectrum";
        case Command::Fig3: return "fig3";
        case Command::Fig4: return "fig4";
        case Command::Fig5: return "fig5";
        case Command::Fig7: return "fig7";
        case Command::Fit: return "fit";
    }
    return "unknown";
}

std::string spectrum_stem(std::string_view prefix, double g_over_om) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_g%.3f", g_over_om);
    return std::string(prefix) + buf;
}

std::vector<CsvRow> spectrum_rows(const Spectrum& spec) {
    std::vector<CsvRow> rows;
    rows.reserve(spec.points.size());
    for (const auto& pt : spec.points) rows.push_back({format_double(pt.omega_over_om), format_double(pt.t_b)});
    return rows;
}

std::vector<CsvRow> separation_rows(const SeparationCurve& curve) {
    std::vector<CsvRow> rows;
    for (const auto& r : curve.rows) {
        rows.push_back({format_double(r.g_over_om), r.separation_over_om ? format_double(*r.separation_over_om) : "",
                        format_double(r.x1_scaled), format_double(r.x2_scaled)});
    }
    return rows;
}

std::vector<CsvRow> intensity_rows(const std::vector<IntensityRow>& table) {
    std::vector<CsvRow> rows;
    for (const auto& r : table) {
        rows.push_back({format_double(r.g_over_om), format_double(r.n_a), format_double(r.n_b), format_double(r.ratio)});
    }
    return rows;
}

std::vector<CsvRow> fit_report_rows(const FitResult& fit) {
    const auto kind = kind_of(fit.model);
    const std::string model(to_string(kind));
    const auto names = parameter_names(kind);
    const auto values = parameters(fit.model);
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < names.size(); ++i) rows.push_back({model, std::string(names[i]), format_double(values[i])});
    rows.push_back({model, "chi2_per_dof", format_double(fit.chi2_per_dof)});
    rows.push_back({model, "converged", fit.converged ? "1" : "0"});
    return rows;
}

std::string steady_report(const PhysicalParams& p, const SteadyState& s) {
    std::ostringstream out;
    auto line = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
    line("topology", std::string(to_string(s.topology)));
    line("g_over_Om", format_double(p.tunneling / p.omega_m()));
    line("a_bar_re", format_double(s.a_bar.real()));
    line("a_bar_im", format_double(s.a_bar.imag()));
    line("b_bar_re", format_double(s.b_bar.real()));
    line("b_bar_im", format_double(s.b_bar.imag()));
    line("n_a", format_double(std::norm(s.a_bar)));
    line("n_b", format_double(std::norm(s.b_bar)));
    line("x1_bar_m", format_double(s.x1_bar));
    line("x2_bar_m", format_double(s.x2_bar));
    line("DeltaBar1_over_Om", format_double(s.detuning1_eff / p.omega_m()));
    line("DeltaBar2_over_Om", format_double(s.detuning2_eff / p.omega_m()));
    line("C_cb_re", format_double(steady_reflection(p, s).real()));
    line("C_cb_im", format_double(steady_reflection(p, s).imag()));
    line("iterations", std::to_string(s.iterations));
    line("residual", format_double(s.residual));
    return out.str();
}

std::vector<FitResult> fit_separation_curve(const SeparationCurve& curve) {
    std::vector<DataPoint> data;
    for (const auto& r : curve.rows) {
        if (r.separation_over_om) data.push_back({r.g_over_om, *r.separation_over_om});
    }
    std::vector<FitResult> fits;
    for (auto kind : {ModelKind::GeneralizedLogistic, ModelKind::Moffat}) {
        fits.push_back(fit_least_squares(kind, data, default_inits(kind, data)));
    }
    return fits;
}

namespace {

// Tracks written files so a failing command can relabel them as partial.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void text(const std::string& name, std::string_view content) {
        const auto path = dir_ / name;
        write_text_file(path, content);
        files_.push_back(path);
    }

    void csv(const std::string& name, const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
        text(name, to_csv(header, rows));
    }

    void mark_partial() {
        for (auto& f : files_) {
            auto target = f;
            target += ".partial";
            std::error_code ec;
            std::filesystem::rename(f, target, ec);
            if (!ec) f = target;
        }
    }

    const std::vector<std::filesystem::path>& files() const { return files_; }

private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> files_;
};

std::string label_for(double g_over_om) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "g/Om = %.3g", g_over_om);
    return buf;
}

void write_sweep(OutputSet& outputs, const RunConfig& cfg, std::string_view prefix, Topology topology,
                 std::ostream& out, std::ostream& err) {
    const auto entries = sweep_tunneling(cfg.params, topology, cfg.grid, cfg.g_over_om, cfg.method);
    std::vector<PlotSeries> series;
    std::string failures;
    for (const auto& e : entries) {
        if (!e.spectrum) {
            failures += " " + label_for(e.g_over_om) + ": " + e.error + ";";
            continue;
        }
        const auto& spec = *e.spectrum;
        const auto stem = spectrum_stem(prefix, e.g_over_om);
        outputs.csv(stem + ".csv", schema::kSpectrum, spectrum_rows(spec));
        const auto dips = find_dips(spec, cfg.prominence);
        out << stem << ": " << spec.points.size() << " points, " << spec.gaps.size() << " gaps, " << dips.size()
            << " dip(s)\n";
        if (spec.points.empty()) {
            failures += " " + label_for(e.g_over_om) + ": no evaluable points (" + spec.gaps.front().reason + ");";
            continue;
        }
        // Gap points leave a usable spectrum; report them without failing the sweep.
        if (!spec.gaps.empty()) {
            err << "warning: " << stem << ": " << spec.gaps.size() << " gap point(s), first: " << spec.gaps.front().reason
                << '\n';
        }
        series.push_back({label_for(e.g_over_om), spec.omegas(), spec.reflection()});
    }
    if (cfg.emit_svg && !series.empty()) {
        PlotStyle style;
        style.title = std::string(prefix) + " (" + std::string(to_string(topology)) + ")";
        outputs.text(std::string(prefix) + ".svg", render_svg(series, style));
    }
    if (!failures.empty()) throw Error(std::string(prefix) + " incomplete:" + failures);
}

void run(Command cmd, const RunConfig& cfg, OutputSet& outputs, std::ostream& out, std::ostream& err) {
    switch (cmd) {
        case Command::Steady: {
            PhysicalParams p = cfg.params;
            p.tunneling = cfg.g_over_om.front() * p.omega_m();
            const auto s = solve_steady_state(p, cfg.topology);
            const auto report = steady_report(p, s);
            outputs.text("steady.txt", report);
            out << report;
            break;
        }
        case Command::Spectrum:
            write_sweep(outputs, cfg, "spectrum", cfg.topology, out, err);
            break;
        case Command::Fig3:
            write_sweep(outputs, cfg, "fig3", Topology::FixedEnds, out, err);
            break;
        case Command::Fig4:
            write_sweep(outputs, cfg, "fig4", Topology::DoubleMovable, out, err);
            break;
        case Command::Fig5: {
            SeparationOptions opts;
            opts.scale = cfg.scale_xbar;
            opts.prominence = cfg.prominence;
            const auto& s = cfg.separation;
            const auto curve = separation_vs_g(cfg.params, s.grid, s.g_min, s.g_max, s.n_g, opts);
            outputs.csv("fig5_separation.csv", schema::kSeparation, separation_rows(curve));
            const auto fits = fit_separation_curve(curve);
            std::vector<CsvRow> report;
            for (const auto& f : fits) {
                const auto rows = fit_report_rows(f);
                report.insert(report.end(), rows.begin(), rows.end());
                out << to_string(kind_of(f.model)) << ": chi2/dof = " << format_double(f.chi2_per_dof)
                    << (f.converged ? "" : " (not converged)") << '\n';
            }
            outputs.csv("fig5_fits.csv", schema::kFitReport, report);
            if (cfg.emit_svg) {
                PlotSeries sep{"separation", {}, {}}, x1{"x1_bar scaled", {}, {}}, x2{"x2_bar scaled", {}, {}};
                for (const auto& r : curve.rows) {
                    sep.x.push_back(r.g_over_om);
                    sep.y.push_back(r.separation_over_om.value_or(std::nan("")));
                    x1.x.push_back(r.g_over_om);
                    x1.y.push_back(r.x1_scaled);
                    x2.x.push_back(r.g_over_om);
                    x2.y.push_back(r.x2_scaled);
                }
                std::vector<PlotSeries> series{sep, x1, x2};
                PlotStyle style;
                style.title = "Fano separation and steady displacements";
                style.x_label = "g/Omega_m";
                style.y_label = "Omega/Omega_m";
                outputs.text("fig5.svg", render_svg(series, style));
            }
            break;
        }
        case Command::Fig7: {
            const auto table = intensity_table(cfg.params, cfg.topology, cfg.g_over_om);
            outputs.csv("fig7.csv", schema::kIntensity, intensity_rows(table));
            if (cfg.emit_svg) {
                PlotSeries na{"n_a", {}, {}}, nb{"n_b", {}, {}};
                for (const auto& r : table) {
                    na.x.push_back(r.g_over_om);
                    na.y.push_back(r.n_a);
                    nb.x.push_back(r.g_over_om);
                    nb.y.push_back(r.n_b);
                }
                std::vector<PlotSeries> series{na, nb};
                PlotStyle style;
                style.title = "Intracavity photon numbers";
                style.x_label = "g/Omega_m";
                style.y_label = "photon number";
                outputs.text("fig7.svg", render_svg(series, style));
            }
            break;
        }
        case Command::Fit: {
            if (cfg.fit_input.empty()) throw DomainError("fit: no input CSV given (--data)");
            const auto table = read_csv(cfg.fit_input);
            if (table.header.size() < 2) throw DomainError("fit: input needs at least two columns (x, y)");
            std::vector<DataPoint> data;
            for (const auto& row : table.rows) {
                if (row.size() < 2 || row[0].empty() || row[1].empty()) continue;
                data.push_back({parse_double(row[0]), parse_double(row[1])});
            }
            std::vector<CsvRow> report;
            for (auto kind : {ModelKind::GeneralizedLogistic, ModelKind::Moffat}) {
                const auto f = fit_least_squares(kind, data, default_inits(kind, data));
                const auto rows = fit_report_rows(f);
                report.insert(report.end(), rows.begin(), rows.end());
                out << to_string(kind) << ": chi2/dof = " << format_double(f.chi2_per_dof) << '\n';
            }
            outputs.csv("fit_report.csv", schema::kFitReport, report);
            break;
        }
    }
}

}  // namespace

CommandResult run_command(Command cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    OutputSet outputs(cfg.output_dir);
    CommandResult result;
    try {
        std::filesystem::create_directories(cfg.output_dir);
        run(cmd, cfg, outputs, out, err);
    } catch (const std::exception& e) {
        outputs.mark_partial();
        err << "fanocav " << to_string(cmd) << ": error: " << e.what() << '\n';
        result.exit_code = 1;
    }
    result.files = outputs.files();
    return result;
}

}  // namespace fanocav
