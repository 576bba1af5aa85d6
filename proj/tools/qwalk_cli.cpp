#include <string>

#include <CLI11.hpp>

#include "qwalk/cli.hpp"

namespace {

// --theta accepts "3pi/7" style tokens; everything else is plain decimal.
void add_common_flags(CLI::App* app, qwalk::cli::RunConfig& cfg, std::string& theta_text) {
    app->add_option("--theta", theta_text, "coin angle, radians or '<p>pi/<q>'");
    app->add_option("--mass", cfg.mass, "Dirac mass (natural units)");
    app->add_option("--gamma", cfg.gamma, "CTQW hopping rate");
    app->add_option("--alpha", cfg.alpha, "lattice localization parameter");
    app->add_option("--a", cfg.a, "continuum localization parameter");
    app->add_option("--time", cfg.time, "evolution time (integer steps for dtqw)");
    app->add_option("--half-width", cfg.half_width,
                    "lattice half-width in sites (length units for dirac)");
    app->add_option("--spacing", cfg.spacing, "grid spacing for dirac states");
    app->add_option("--out", cfg.out, "output CSV path (or prefix for figure)");
    app->add_option("--tol", cfg.tol, "quadrature absolute tolerance");
}

}  // namespace

int main(int argc, char** argv) {
    qwalk::cli::RunConfig cfg;
    std::string theta_text;

    CLI::App app{"1D quantum walk and Dirac wave-packet toolkit"};
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "run a direct simulation, write the final profile");
    simulate->add_option("--model", cfg.model, "dtqw | ctqw | dirac")->required();
    add_common_flags(simulate, cfg, theta_text);

    auto* packet = app.add_subcommand("packet", "evaluate a closed-form packet profile");
    packet->add_option("--model", cfg.model, "dtqw | ctqw | dirac")->required();
    packet->add_flag("--bessel", cfg.bessel, "use the Bessel approximation (dtqw only)");
    add_common_flags(packet, cfg, theta_text);

    auto* compare = app.add_subcommand("compare", "compare two models side by side");
    compare->add_flag_callback("--dtqw-vs-ctqw",
                               [&]() { cfg.compare_mode = "dtqw-vs-ctqw"; },
                               "walk vs continuous-time walk at matched maximum speed");
    add_common_flags(compare, cfg, theta_text);

    auto* scan = app.add_subcommand("entropy-scan", "spinor entropy vs localization scale");
    scan->add_option("--a-min", cfg.a_min, "smallest localization scale");
    scan->add_option("--a-max", cfg.a_max, "largest localization scale");
    scan->add_option("--points", cfg.points, "number of log-spaced scan points");
    add_common_flags(scan, cfg, theta_text);

    auto* figure = app.add_subcommand("figure", "reproduce a standard figure data set");
    figure->add_option("index", cfg.figure, "figure index 1..4")->required();
    figure->add_option("--a-min", cfg.a_min, "entropy scan: smallest scale (figure 3)");
    figure->add_option("--a-max", cfg.a_max, "entropy scan: largest scale (figure 3)");
    figure->add_option("--points", cfg.points, "entropy scan: point count (figure 3)");
    add_common_flags(figure, cfg, theta_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (simulate->parsed()) cfg.command = qwalk::cli::Command::Simulate;
    if (packet->parsed()) cfg.command = qwalk::cli::Command::Packet;
    if (compare->parsed()) cfg.command = qwalk::cli::Command::Compare;
    if (scan->parsed()) cfg.command = qwalk::cli::Command::EntropyScan;
    if (figure->parsed()) cfg.command = qwalk::cli::Command::Figure;

    if (!theta_text.empty()) {
        try {
            cfg.theta = qwalk::cli::parse_angle(theta_text);
        } catch (const qwalk::ParseError& e) {
            std::cerr << "argument error: " << e.what() << "\n";
            return 2;
        }
    }
    return qwalk::cli::run(cfg);
}
