#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qwalk/dispersion.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/walks.hpp"
#include "qwalk/wavepackets.hpp"

namespace qwalk::cli {

// Accepts a plain decimal (radians) or a rational multiple of pi written as
// "<p>pi", "pi/<q>" or "<p>pi/<q>", e.g. "3pi/7".
inline double parse_angle(const std::string& text) {
    auto parse_int = [&](const std::string& tok) -> long {
        long value = 0;
        const char* first = tok.data();
        const char* last = tok.data() + tok.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            throw ParseError("parse_angle: bad integer '" + tok + "' in '" + text + "'");
        }
        return value;
    };

    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw ParseError("parse_angle: empty token");

    const size_t pos = s.find("pi");
    if (pos == std::string::npos) {
        double value = 0.0;
        try {
            size_t used = 0;
            value = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw ParseError("parse_angle: cannot parse '" + text + "'");
        }
        return value;
    }

    const std::string head = s.substr(0, pos);
    const std::string tail = s.substr(pos + 2);
    double numerator = 1.0;
    if (head == "-") {
        numerator = -1.0;
    } else if (head == "+" || head.empty()) {
        numerator = 1.0;
    } else {
        numerator = static_cast<double>(parse_int(head));
    }
    double denominator = 1.0;
    if (!tail.empty()) {
        if (tail[0] != '/') {
            throw ParseError("parse_angle: expected '/' after 'pi' in '" + text + "'");
        }
        const long q = parse_int(tail.substr(1));
        if (q == 0) throw ParseError("parse_angle: zero denominator in '" + text + "'");
        denominator = static_cast<double>(q);
    }
    return numerator * kPi / denominator;
}

enum class Command { Simulate, Packet, Compare, EntropyScan, Figure };

struct RunConfig {
    Command command = Command::Simulate;
    std::string model;  // dtqw | ctqw | dirac
    double theta = std::nan("");
    double mass = std::nan("");
    double gamma = std::nan("");
    double alpha = std::nan("");
    double a = std::nan("");
    double time = std::nan("");
    double half_width = 0.0;  // sites for walks, length units for dirac
    double spacing = 0.0;     // dirac grid step; 0 selects the command default
    bool bessel = false;
    int figure = 0;
    std::string out;
    double tol = 1e-10;
    double a_min = 0.05;
    double a_max = 20.0;
    int points = 25;
    std::string compare_mode = "dtqw-vs-ctqw";
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw DomainError(msg);
}

inline bool has(double v) { return !std::isnan(v); }

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

inline std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct CsvColumn {
    std::string name;
    std::vector<double> values;
    bool density = false;
};

// Emits the fixed schema: header row, 12-significant-digit scientific
// notation, line-feed terminators. Density columns are checked for unit
// total probability before anything is written.
inline void write_csv(const std::string& path, const std::vector<CsvColumn>& columns,
                      double weight, std::vector<std::string>& written) {
    require(!columns.empty(), "write_csv: no columns");
    const size_t rows = columns.front().values.size();
    for (const auto& c : columns) {
        require(c.values.size() == rows, "write_csv: ragged columns");
    }
    for (const auto& c : columns) {
        if (!c.density) continue;
        double total = 0.0;
        for (double v : c.values) total += v;
        total *= weight;
        if (!(std::abs(total - 1.0) <= 1e-6)) {
            throw NormalizationError("column '" + c.name + "' sums to " + fmt_short(total) +
                                     " (expected 1 within 1e-6)");
        }
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    written.push_back(path);
    for (size_t i = 0; i < columns.size(); ++i) {
        f << (i ? "," : "") << columns[i].name;
    }
    f << "\n";
    for (size_t r = 0; r < rows; ++r) {
        for (size_t i = 0; i < columns.size(); ++i) {
            f << (i ? "," : "") << fmt(columns[i].values[r]);
        }
        f << "\n";
    }
    if (!f.good()) throw std::runtime_error("write failed for " + path);
}

inline std::vector<CsvColumn> spinor_columns(const SpinorLattice& s) {
    std::vector<CsvColumn> cols(6);
    cols[0].name = "position";
    cols[1].name = "rho";
    cols[1].density = true;
    cols[2].name = "re_up";
    cols[3].name = "im_up";
    cols[4].name = "re_dn";
    cols[5].name = "im_dn";
    for (int i = 0; i < s.size(); ++i) {
        const size_t u = static_cast<size_t>(i);
        cols[0].values.push_back(s.position(i));
        cols[1].values.push_back(std::norm(s.up[u]) + std::norm(s.down[u]));
        cols[2].values.push_back(s.up[u].real());
        cols[3].values.push_back(s.up[u].imag());
        cols[4].values.push_back(s.down[u].real());
        cols[5].values.push_back(s.down[u].imag());
    }
    return cols;
}

inline std::vector<CsvColumn> scalar_columns(const ScalarLattice& s) {
    std::vector<CsvColumn> cols(4);
    cols[0].name = "position";
    cols[1].name = "rho";
    cols[1].density = true;
    cols[2].name = "re";
    cols[3].name = "im";
    for (int i = 0; i < s.size(); ++i) {
        const size_t u = static_cast<size_t>(i);
        cols[0].values.push_back(static_cast<double>(s.site(i)));
        cols[1].values.push_back(std::norm(s.amp[u]));
        cols[2].values.push_back(s.amp[u].real());
        cols[3].values.push_back(s.amp[u].imag());
    }
    return cols;
}

inline std::vector<double> density_values(const DensityProfile& d) { return d.rho; }

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b,
                          double weight) {
    require(a.size() == b.size(), "l1_distance: size mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc * weight;
}

inline std::vector<double> log_grid(double lo, double hi, int points) {
    require(lo > 0.0 && hi > lo && points >= 2, "log grid: need 0 < a_min < a_max, points >= 2");
    std::vector<double> g(static_cast<size_t>(points));
    const double step = (std::log(hi) - std::log(lo)) / (points - 1);
    for (int i = 0; i < points; ++i) {
        g[static_cast<size_t>(i)] = std::exp(std::log(lo) + step * i);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

inline int round_steps(double t) {
    require(has(t), "--time required");
    const long s = std::lround(t);
    require(s >= 0 && std::abs(t - static_cast<double>(s)) < 1e-9,
            "time must be a nonnegative integer step count for the discrete walk");
    return static_cast<int>(s);
}

struct CommandResult {
    std::string summary;
};

inline CommandResult run_simulate(const RunConfig& cfg, const QuadratureSpec& spec,
                                  std::vector<std::string>& written) {
    require(!cfg.out.empty(), "simulate: --out required");
    if (cfg.model == "dtqw") {
        require(has(cfg.theta), "simulate dtqw: --theta required");
        const int steps = round_steps(cfg.time);
        const int w = cfg.half_width > 0 ? static_cast<int>(cfg.half_width) : 128;
        SpinorLattice start = SpinorLattice::zeros(-w, w);
        if (has(cfg.alpha) && cfg.alpha > 0.0) {
            start = dtqw_packet_profile(DTQWPacketParams{cfg.theta, cfg.alpha}, 0, -w, w, spec);
        } else {
            start.up[static_cast<size_t>(start.index_of(0))] = 1.0;
        }
        const SpinorLattice final_state = dtqw_evolve(start, cfg.theta, steps);
        write_csv(cfg.out, spinor_columns(final_state), 1.0, written);
        return {"simulate dtqw theta=" + fmt_short(cfg.theta) + " steps=" +
                std::to_string(steps) + " norm=" + fmt_short(final_state.squared_norm()) +
                " out=" + cfg.out};
    }
    if (cfg.model == "ctqw") {
        require(has(cfg.gamma), "simulate ctqw: --gamma required");
        require(has(cfg.time) && cfg.time >= 0.0, "simulate ctqw: --time must be >= 0");
        const int w = cfg.half_width > 0 ? static_cast<int>(cfg.half_width) : 128;
        ScalarLattice start = ScalarLattice::zeros(-w, w);
        if (has(cfg.alpha) && cfg.alpha > 0.0) {
            start = ctqw_packet_profile(CTQWPacketParams{cfg.gamma, cfg.alpha}, 0.0, -w, w, spec);
        } else {
            start.amp[static_cast<size_t>(start.index_of(0))] = 1.0;
        }
        const ScalarLattice final_state = ctqw_evolve(start, cfg.gamma, cfg.time);
        write_csv(cfg.out, scalar_columns(final_state), 1.0, written);
        return {"simulate ctqw gamma=" + fmt_short(cfg.gamma) + " t=" + fmt_short(cfg.time) +
                " norm=" + fmt_short(final_state.squared_norm()) + " out=" + cfg.out};
    }
    if (cfg.model == "dirac") {
        require(has(cfg.mass) && has(cfg.a), "simulate dirac: --mass and --a required");
        require(has(cfg.time) && cfg.time >= 0.0, "simulate dirac: --time must be >= 0");
        const double eps = cfg.spacing > 0.0 ? cfg.spacing : 0.1;
        const double w = cfg.half_width > 0.0 ? cfg.half_width : (cfg.time + cfg.a + 16.0);
        const DiracPacketParams params{cfg.mass, cfg.a};
        const SpinorLattice start = dirac_packet_profile(params, 0.0, w, eps, spec);
        const SpinorLattice final_state = dirac_evolve(start, cfg.mass, cfg.time);
        write_csv(cfg.out, spinor_columns(final_state), eps, written);
        return {"simulate dirac mass=" + fmt_short(cfg.mass) + " a=" + fmt_short(cfg.a) +
                " t=" + fmt_short(cfg.time) + " norm=" + fmt_short(final_state.squared_norm()) +
                " out=" + cfg.out};
    }
    throw DomainError("simulate: unknown --model '" + cfg.model + "'");
}

inline CommandResult run_packet(const RunConfig& cfg, const QuadratureSpec& spec,
                                std::vector<std::string>& written) {
    require(!cfg.out.empty(), "packet: --out required");
    if (cfg.model == "dtqw") {
        require(has(cfg.theta) && has(cfg.alpha), "packet dtqw: --theta and --alpha required");
        const int tau = round_steps(cfg.time);
        const int w = cfg.half_width > 0 ? static_cast<int>(cfg.half_width) : 128;
        const DTQWPacketParams params{cfg.theta, cfg.alpha};
        const SpinorLattice profile =
            cfg.bessel ? dtqw_packet_bessel_profile(params, tau, -w, w, spec)
                       : dtqw_packet_profile(params, tau, -w, w, spec);
        write_csv(cfg.out, spinor_columns(profile), 1.0, written);
        return {"packet dtqw theta=" + fmt_short(cfg.theta) + " alpha=" + fmt_short(cfg.alpha) +
                " tau=" + std::to_string(tau) + (cfg.bessel ? " variant=bessel" : "") +
                " norm=" + fmt_short(profile.squared_norm()) + " out=" + cfg.out};
    }
    if (cfg.model == "ctqw") {
        require(has(cfg.gamma) && has(cfg.alpha), "packet ctqw: --gamma and --alpha required");
        require(has(cfg.time) && cfg.time >= 0.0, "packet ctqw: --time must be >= 0");
        const int w = cfg.half_width > 0 ? static_cast<int>(cfg.half_width) : 128;
        const ScalarLattice profile =
            ctqw_packet_profile(CTQWPacketParams{cfg.gamma, cfg.alpha}, cfg.time, -w, w, spec);
        write_csv(cfg.out, scalar_columns(profile), 1.0, written);
        return {"packet ctqw gamma=" + fmt_short(cfg.gamma) + " alpha=" + fmt_short(cfg.alpha) +
                " t=" + fmt_short(cfg.time) + " norm=" + fmt_short(profile.squared_norm()) +
                " out=" + cfg.out};
    }
    if (cfg.model == "dirac") {
        require(has(cfg.mass) && has(cfg.a), "packet dirac: --mass and --a required");
        require(has(cfg.time) && cfg.time >= 0.0, "packet dirac: --time must be >= 0");
        const double eps = cfg.spacing > 0.0 ? cfg.spacing : 0.1;
        const double w = cfg.half_width > 0.0 ? cfg.half_width : (cfg.time + cfg.a + 16.0);
        const SpinorLattice profile =
            dirac_packet_profile(DiracPacketParams{cfg.mass, cfg.a}, cfg.time, w, eps, spec);
        write_csv(cfg.out, spinor_columns(profile), eps, written);
        return {"packet dirac mass=" + fmt_short(cfg.mass) + " a=" + fmt_short(cfg.a) +
                " t=" + fmt_short(cfg.time) + " norm=" + fmt_short(profile.squared_norm()) +
                " out=" + cfg.out};
    }
    throw DomainError("packet: unknown --model '" + cfg.model + "'");
}

inline CommandResult run_compare(const RunConfig& cfg, const QuadratureSpec& spec,
                                 std::vector<std::string>& written) {
    require(cfg.compare_mode == "dtqw-vs-ctqw",
            "compare: unknown mode '" + cfg.compare_mode + "'");
    require(!cfg.out.empty(), "compare: --out required");
    require(has(cfg.theta) && has(cfg.alpha), "compare: --theta and --alpha required");
    const int tau = round_steps(cfg.time);
    const int w = cfg.half_width > 0 ? static_cast<int>(cfg.half_width) : 160;
    // Matched maximum speeds: c = cos(theta) = 2*gamma.
    const double gamma = 0.5 * std::cos(cfg.theta);
    const SpinorLattice walk =
        dtqw_packet_profile(DTQWPacketParams{cfg.theta, cfg.alpha}, tau, -w, w, spec);
    const ScalarLattice cont =
        ctqw_packet_profile(CTQWPacketParams{gamma, cfg.alpha}, static_cast<double>(tau), -w, w,
                            spec);
    const auto rho_walk = density_values(density(walk));
    const auto rho_cont = density_values(density(cont));
    std::vector<CsvColumn> cols(3);
    cols[0].name = "position";
    cols[1].name = "rho_dtqw";
    cols[1].density = true;
    cols[1].values = rho_walk;
    cols[2].name = "rho_ctqw";
    cols[2].density = true;
    cols[2].values = rho_cont;
    for (int i = 0; i < walk.size(); ++i) {
        cols[0].values.push_back(static_cast<double>(walk.site(i)));
    }
    write_csv(cfg.out, cols, 1.0, written);
    const double l1 = l1_distance(rho_walk, rho_cont, 1.0);
    return {"compare dtqw-vs-ctqw theta=" + fmt_short(cfg.theta) + " alpha=" +
            fmt_short(cfg.alpha) + " tau=" + std::to_string(tau) + " gamma=" +
            fmt_short(gamma) + " l1=" + fmt_short(l1) + " out=" + cfg.out};
}

inline CommandResult run_entropy_scan(const RunConfig& cfg, const QuadratureSpec& spec,
                                      std::vector<std::string>& written) {
    require(!cfg.out.empty(), "entropy-scan: --out required");
    const double theta = has(cfg.theta) ? cfg.theta : 3.0 * kPi / 7.0;
    const double mass = has(cfg.mass) ? cfg.mass : 1.0;
    const auto grid = log_grid(cfg.a_min, cfg.a_max, cfg.points);
    const auto dirac_curve =
        entropy_vs_localization(DispersionModel{DiracModel{mass}}, grid, spec);
    const auto walk_curve =
        entropy_vs_localization(DispersionModel{DtqwModel{theta}}, grid, spec);
    std::vector<CsvColumn> cols(3);
    cols[0].name = "a";
    cols[1].name = "entropy_dirac";
    cols[2].name = "entropy_dtqw";
    for (size_t i = 0; i < grid.size(); ++i) {
        cols[0].values.push_back(grid[i]);
        cols[1].values.push_back(dirac_curve[i].second);
        cols[2].values.push_back(walk_curve[i].second);
    }
    write_csv(cfg.out, cols, 1.0, written);
    double gap = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        gap = std::max(gap, std::abs(dirac_curve[i].second - walk_curve[i].second));
    }
    return {"entropy-scan points=" + std::to_string(cfg.points) + " theta=" + fmt_short(theta) +
            " mass=" + fmt_short(mass) + " max_gap=" + fmt_short(gap) + " out=" + cfg.out};
}

inline CommandResult run_figure(const RunConfig& cfg, const QuadratureSpec& spec,
                                std::vector<std::string>& written) {
    const std::string stem = cfg.out.empty() ? ("fig" + std::to_string(cfg.figure)) : cfg.out;
    switch (cfg.figure) {
        case 1: {
            const double mass = has(cfg.mass) ? cfg.mass : 1.0;
            const double t1 = has(cfg.time) ? cfg.time : 50.0;
            const double w = cfg.half_width > 0.0 ? cfg.half_width : 100.0;
            // The a=0.5 packet has momentum content out to p ~ 30; a step
            // this fine keeps the sampled density summing to 1 within 1e-6.
            const double dx = cfg.spacing > 0.0 ? cfg.spacing : 0.125;
            for (double a : {5.0, 0.5}) {
                const DiracPacketParams params{mass, a};
                const SpinorLattice at0 = dirac_packet_profile(params, 0.0, w, dx, spec);
                const SpinorLattice at1 = dirac_packet_profile(params, t1, w, dx, spec);
                std::vector<CsvColumn> cols(3);
                cols[0].name = "position";
                for (int i = 0; i < at0.size(); ++i) {
                    cols[0].values.push_back(at0.position(i));
                }
                cols[1] = {"rho_t0", density_values(density(at0)), true};
                cols[2] = {"rho_t" + fmt_short(t1), density_values(density(at1)), true};
                write_csv(stem + "_a" + fmt_short(a) + ".csv", cols, dx, written);
            }
            return {"figure1 mass=" + fmt_short(mass) + " t=" + fmt_short(t1) +
                    " files=2 out=" + stem + "_a*.csv"};
        }
        case 2: {
            const double theta = has(cfg.theta) ? cfg.theta : 3.0 * kPi / 7.0;
            const int tau = has(cfg.time) ? round_steps(cfg.time) : 225;
            const int w = cfg.half_width > 0 ? static_cast<int>(cfg.half_width) : 160;
            std::string metrics;
            for (double alpha : {2.2, 22.0}) {
                const DTQWPacketParams params{theta, alpha};
                const SpinorLattice start = dtqw_packet_profile(params, 0, -w, w, spec);
                const SpinorLattice sim = dtqw_evolve(start, theta, tau);
                const SpinorLattice exact = dtqw_packet_profile(params, tau, -w, w, spec);
                const SpinorLattice bess0 = dtqw_packet_bessel_profile(params, 0, -w, w, spec);
                const SpinorLattice bess1 = dtqw_packet_bessel_profile(params, tau, -w, w, spec);
                const std::string tag = fmt_short(static_cast<double>(tau));
                std::vector<CsvColumn> cols(7);
                cols[0].name = "position";
                for (int i = 0; i < start.size(); ++i) {
                    cols[0].values.push_back(static_cast<double>(start.site(i)));
                }
                cols[1] = {"rho_sim_tau0", density_values(density(start)), true};
                cols[2] = {"rho_exact_tau0", density_values(density(start)), true};
                cols[3] = {"rho_bessel_tau0", density_values(density(bess0)), true};
                cols[4] = {"rho_sim_tau" + tag, density_values(density(sim)), true};
                cols[5] = {"rho_exact_tau" + tag, density_values(density(exact)), true};
                cols[6] = {"rho_bessel_tau" + tag, density_values(density(bess1)), true};
                write_csv(stem + "_alpha" + fmt_short(alpha) + ".csv", cols, 1.0, written);
                metrics += " l1_bessel_alpha" + fmt_short(alpha) + "=" +
                           fmt_short(l1_distance(cols[5].values, cols[6].values, 1.0));
            }
            return {"figure2 theta=" + fmt_short(theta) + " tau=" + std::to_string(tau) +
                    metrics + " out=" + stem + "_alpha*.csv"};
        }
        case 3: {
            RunConfig scan = cfg;
            scan.out = stem + ".csv";
            return {run_entropy_scan(scan, spec, written).summary};
        }
        case 4: {
            const double theta = has(cfg.theta) ? cfg.theta : 3.0 * kPi / 7.0;
            const double gamma = has(cfg.gamma) ? cfg.gamma : 0.5 * std::cos(theta);
            const double t1 = has(cfg.time) ? cfg.time : 225.0;
            const int w = cfg.half_width > 0 ? static_cast<int>(cfg.half_width) : 160;
            for (double alpha : {2.2, 22.0}) {
                const CTQWPacketParams params{gamma, alpha};
                const ScalarLattice at0 = ctqw_packet_profile(params, 0.0, -w, w, spec);
                const ScalarLattice at1 = ctqw_packet_profile(params, t1, -w, w, spec);
                const ScalarLattice sim = ctqw_evolve(at0, gamma, t1);
                const std::string tag = fmt_short(t1);
                std::vector<CsvColumn> cols(4);
                cols[0].name = "position";
                for (int i = 0; i < at0.size(); ++i) {
                    cols[0].values.push_back(static_cast<double>(at0.site(i)));
                }
                cols[1] = {"rho_exact_t0", density_values(density(at0)), true};
                cols[2] = {"rho_exact_t" + tag, density_values(density(at1)), true};
                cols[3] = {"rho_sim_t" + tag, density_values(density(sim)), true};
                write_csv(stem + "_alpha" + fmt_short(alpha) + ".csv", cols, 1.0, written);
            }
            return {"figure4 gamma=" + fmt_short(gamma) + " t=" + fmt_short(t1) +
                    " files=2 out=" + stem + "_alpha*.csv"};
        }
        default:
            throw DomainError("figure: index must be 1..4");
    }
}

}  // namespace detail

// Executes the command, writes CSV output, prints a one-line summary.
// Returns 0 on success, 2 on argument errors, 3 on numerical failures.
// Partially written output files are removed on failure.
inline int run(const RunConfig& cfg) {
    std::vector<std::string> written;
    const auto started = std::chrono::steady_clock::now();
    auto cleanup = [&]() {
        for (const auto& path : written) {
            std::error_code ec;
            std::filesystem::remove(path, ec);
        }
    };
    try {
        if (!(cfg.tol > 0.0)) throw DomainError("--tol must be positive");
        QuadratureSpec spec;
        spec.abs_tol = cfg.tol;
        detail::CommandResult result;
        switch (cfg.command) {
            case Command::Simulate: result = detail::run_simulate(cfg, spec, written); break;
            case Command::Packet: result = detail::run_packet(cfg, spec, written); break;
            case Command::Compare: result = detail::run_compare(cfg, spec, written); break;
            case Command::EntropyScan:
                result = detail::run_entropy_scan(cfg, spec, written);
                break;
            case Command::Figure: result = detail::run_figure(cfg, spec, written); break;
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::cout << result.summary << " runtime_s=" << detail::fmt_short(seconds) << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {  // ParseError, DomainError, DegenerateFit
        cleanup();
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const Unsupported& e) {
        cleanup();
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {  // convergence / normalization / light cone / io
        cleanup();
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qwalk::cli
