#include <CLI11.hpp>
#include <iostream>

#include "fanocav/commands.hpp"
#include "fanocav/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Double-cavity optomechanics: steady states, reflection spectra, Fano analysis"};
    app.set_version_flag("--version", "fanocav 0.1.0");

    std::string command;
    std::string config_path;
    std::string out_dir = ".";
    std::string method;
    std::string data_path;
    bool svg = false;

    app.add_option("command", command, "steady | spectrum | fig3 | fig4 | fig5 | fig7 | fit")
        ->required()
        ->check(CLI::IsMember({"steady", "spectrum", "fig3", "fig4", "fig5", "fig7", "fit"}));
    app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--svg", svg, "also write SVG plots");
    app.add_option("--method", method, "matrix | closed")->check(CLI::IsMember({"matrix", "closed"}));
    app.add_option("--data", data_path, "input CSV for the fit command (x, y columns)");

    CLI11_PARSE(app, argc, argv);

    try {
        auto cfg = config_path.empty() ? fanocav::parse_config("") : fanocav::load_config(config_path);
        cfg.output_dir = out_dir;
        cfg.emit_svg = svg;
        if (!method.empty()) cfg.method = fanocav::parse_method(method);
        if (!data_path.empty()) cfg.fit_input = data_path;
        const auto result = fanocav::run_command(fanocav::parse_command(command), cfg, std::cout, std::cerr);
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "fanocav: error: " << e.what() << '\n';
        return 2;
    }
}
