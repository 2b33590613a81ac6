// equipart: mass partition toolkit command line.
//
// Subcommands: gen (instances), bisect / fan / fourfan / sectors2q (solvers),
// scan (planar brute-force oracles), verify (recheck a report).
// Exit codes: 0 success/converged, 2 solver did not converge, 1 usage or
// validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "equipart/errors.hpp"
#include "equipart/generate.hpp"
#include "equipart/io_json.hpp"
#include "equipart/oracle.hpp"
#include "equipart/solver.hpp"
#include "equipart/svg.hpp"

namespace {

using namespace equipart;

std::vector<double> parse_doubles(const std::string& csv, std::size_t expect,
                                  const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw ValidationError(what + ": cannot parse '" + tok + "' as a number");
        }
    }
    if (expect != 0 && out.size() != expect)
        throw ValidationError(what + ": expected " + std::to_string(expect) + " numbers, got " +
                              std::to_string(out.size()));
    return out;
}

std::vector<MassDistribution> load_measures(const std::vector<std::string>& paths) {
    std::vector<MassDistribution> out;
    out.reserve(paths.size());
    for (const std::string& p : paths) out.push_back(load_measure(p));
    return out;
}

void maybe_svg(const std::string& path, const std::vector<MassDistribution>& measures,
               const SolveReport& rep) {
    if (path.empty()) return;
    if (measures[0].dim != 2) {
        std::cerr << "note: --svg is only rendered for planar measures\n";
        return;
    }
    write_planar_svg(path, measures, rep.fans, rep.hyperplanes);
}

void finish_solve(const SolveReport& rep, const std::vector<MassDistribution>& measures,
                  const std::string& out, const std::string& svg, int& exit_code) {
    if (!out.empty()) save_report(rep, out);
    maybe_svg(svg, measures, rep);
    std::cout << "kind=" << rep.kind << " defect=" << rep.defect
              << " converged=" << (rep.converged ? "yes" : "no")
              << " restarts=" << rep.restarts_used << " iterations=" << rep.iterations << "\n";
    exit_code = rep.converged ? 0 : 2;
}

struct SolveFlags {
    SearchConfig cfg;
    std::string out, svg;
    std::vector<std::string> measure_paths;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f, std::size_t min_measures) {
    cmd->add_option("measures", f.measure_paths,
                    "measure JSON files; the first is the levelling measure")
        ->required()
        ->expected(static_cast<int>(min_measures), -1);
    cmd->add_option("--tol", f.cfg.tol, "defect tolerance (fraction of total mass)");
    cmd->add_option("--restarts", f.cfg.restarts, "number of search restarts");
    cmd->add_option("--iters", f.cfg.max_iters, "iteration budget per restart");
    cmd->add_option("--seed", f.cfg.seed, "RNG seed (runs are reproducible per seed)");
    cmd->add_option("--guard", f.cfg.degenerate_guard,
                    "minimum norm of the fan-parameter block, in (0,1)");
    cmd->add_option("--threads", f.cfg.threads, "restart batches run on this many threads");
    cmd->add_option("--out", f.out, "write the solve report JSON here");
    cmd->add_option("--svg", f.svg, "render a planar run to this SVG file");
}

int run(int argc, char** argv) {
    CLI::App app{"equipart: bisecting hyperplane families and equipartitioning regular q-fans "
                 "for weighted point clouds"};
    app.require_subcommand(1);

    // gen ------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate measure instances");
    std::string kind = "mixture", gen_out, center_csv;
    int gen_dim = 2, gen_points = 200, gen_components = 3, gen_q = 3, gen_orbits = 60, gen_m = 2;
    std::uint64_t gen_seed = 0;
    double gen_bandwidth = 0.0, gen_scale = 1.0, gen_radius = 1.0, gen_separation = 6.0;
    gen->add_option("--kind", kind, "gaussian | mixture | ball | orbit | upper-bound")
        ->check(CLI::IsMember({"gaussian", "mixture", "ball", "orbit", "upper-bound"}));
    gen->add_option("--dim", gen_dim, "ambient dimension");
    gen->add_option("--points", gen_points, "sample count");
    gen->add_option("--seed", gen_seed, "sampler seed");
    gen->add_option("--bandwidth", gen_bandwidth, "smoothing bandwidth written to the file");
    gen->add_option("--scale", gen_scale, "gaussian scale");
    gen->add_option("--components", gen_components, "mixture components");
    gen->add_option("--center", center_csv, "comma-separated center (gaussian/ball)");
    gen->add_option("--radius", gen_radius, "ball radius");
    gen->add_option("--q", gen_q, "orbit symmetry order / upper-bound fan arity");
    gen->add_option("--orbits", gen_orbits, "orbit count for --kind orbit");
    gen->add_option("--m", gen_m, "number of balls for --kind upper-bound");
    gen->add_option("--separation", gen_separation, "ball center separation");
    gen->add_option("--out", gen_out, "output path (suffix _<i> added for upper-bound)")
        ->required();

    // solvers ----------------------------------------------------------------
    auto* bisect = app.add_subcommand("bisect", "k pairwise-orthogonal bisecting hyperplanes");
    SolveFlags bf;
    int bisect_k = 1;
    bisect->add_option("--k", bisect_k, "number of hyperplanes");
    add_solve_flags(bisect, bf, 1);

    auto* fan = app.add_subcommand("fan", "k equipartitioning regular q-fans, q an odd prime");
    SolveFlags ff;
    int fan_k = 1, fan_q = 3;
    std::string fan_mode = "complex-orthogonal";
    fan->add_option("--q", fan_q, "fan arity (odd prime)");
    fan->add_option("--k", fan_k, "number of fans");
    fan->add_option("--mode", fan_mode, "complex-orthogonal | real-independent")
        ->check(CLI::IsMember({"complex-orthogonal", "real-independent"}));
    add_solve_flags(fan, ff, 1);

    auto* fourfan = app.add_subcommand("fourfan", "k equipartitioning regular 4-fans");
    SolveFlags f4;
    int fourfan_k = 1;
    std::string fourfan_mode = "complex-orthogonal";
    fourfan->add_option("--k", fourfan_k, "number of 4-fans");
    fourfan->add_option("--mode", fourfan_mode, "complex-orthogonal | real-independent")
        ->check(CLI::IsMember({"complex-orthogonal", "real-independent"}));
    add_solve_flags(fourfan, f4, 1);

    auto* sectors = app.add_subcommand(
        "sectors2q", "q hyperplanes at angles pi/q with 2q equal-mass covering sectors");
    SolveFlags fs;
    int sectors_q = 3;
    sectors->add_option("--q", sectors_q, "half the sector count (odd prime)");
    add_solve_flags(sectors, fs, 1);

    // scan -------------------------------------------------------------------
    auto* scan = app.add_subcommand("scan", "planar brute-force parameter scans");
    std::vector<std::string> scan_paths;
    std::string scan_csv, scan_svg, center_box = "-2,2,-2,2", offset_range = "-2,2";
    int scan_q = 3, center_steps = 40, angle_steps = 36, offset_steps = 40;
    bool scan_line = false;
    scan->add_option("measures", scan_paths, "one measure (fan scan) or two (line scan)")
        ->required()
        ->expected(1, 2);
    scan->add_flag("--line", scan_line, "scan the line family against two measures");
    scan->add_option("--q", scan_q, "fan arity for the fan scan");
    scan->add_option("--center-box", center_box, "xmin,xmax,ymin,ymax");
    scan->add_option("--center-steps", center_steps, "grid steps per center axis");
    scan->add_option("--angle-steps", angle_steps, "grid steps over one sector arc");
    scan->add_option("--offset-range", offset_range, "min,max line offsets");
    scan->add_option("--offset-steps", offset_steps, "grid steps over the offset range");
    scan->add_option("--csv", scan_csv, "dump the full defect table to CSV");
    scan->add_option("--svg", scan_svg, "render the best fan or line to SVG");

    // verify -----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "recompute a report against its measures");
    std::vector<std::string> verify_paths;
    verify->add_option("files", verify_paths, "report.json followed by the measure files")
        ->required()
        ->expected(2, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    int exit_code = 0;
    try {
        if (gen->parsed()) {
            auto write = [&](const MassDistribution& mu, const std::string& path) {
                save_measure(mu, path);
                std::cout << "wrote " << path << " (" << mu.size() << " points, dim " << mu.dim
                          << ", bandwidth " << mu.bandwidth << ")\n";
            };
            Vec center;
            if (!center_csv.empty())
                center = parse_doubles(center_csv, static_cast<std::size_t>(gen_dim), "--center");
            if (kind == "gaussian") {
                write(gaussian_cloud(gen_dim, gen_points, gen_seed, gen_bandwidth, gen_scale,
                                     center),
                      gen_out);
            } else if (kind == "mixture") {
                write(mixture_cloud(gen_dim, gen_points, gen_components, gen_seed, gen_bandwidth),
                      gen_out);
            } else if (kind == "ball") {
                write(ball_cloud(gen_dim, gen_points, gen_seed, center, gen_radius, gen_bandwidth),
                      gen_out);
            } else if (kind == "orbit") {
                write(orbit_symmetric_cloud(gen_dim, gen_q, gen_orbits, gen_seed, gen_bandwidth),
                      gen_out);
            } else {
                std::vector<MassDistribution> balls =
                    upper_bound_instance(gen_q, gen_m, gen_dim, gen_separation);
                std::string stem = gen_out, ext;
                if (auto pos = gen_out.rfind(".json"); pos != std::string::npos) {
                    stem = gen_out.substr(0, pos);
                    ext = ".json";
                }
                for (std::size_t i = 0; i < balls.size(); ++i)
                    write(balls[i], stem + "_" + std::to_string(i) + ext);
            }
        } else if (bisect->parsed()) {
            std::vector<MassDistribution> ms = load_measures(bf.measure_paths);
            SolveReport rep = bisect_orthogonal(ms, bisect_k, bf.cfg);
            finish_solve(rep, ms, bf.out, bf.svg, exit_code);
        } else if (fan->parsed()) {
            std::vector<MassDistribution> ms = load_measures(ff.measure_paths);
            FanMode mode = (fan_mode == "complex-orthogonal") ? FanMode::complex_orthogonal
                                                              : FanMode::real_independent;
            SolveReport rep = equipartition_fans(ms, fan_q, mode, fan_k, ff.cfg);
            finish_solve(rep, ms, ff.out, ff.svg, exit_code);
        } else if (fourfan->parsed()) {
            std::vector<MassDistribution> ms = load_measures(f4.measure_paths);
            FanMode mode = (fourfan_mode == "complex-orthogonal") ? FanMode::complex_orthogonal
                                                                  : FanMode::real_independent;
            SolveReport rep = equipartition_fourfans(ms[0], mode, fourfan_k, f4.cfg);
            finish_solve(rep, ms, f4.out, f4.svg, exit_code);
        } else if (sectors->parsed()) {
            std::vector<MassDistribution> ms = load_measures(fs.measure_paths);
            SolveReport rep = near_equipartition_2q(ms[0], sectors_q, fs.cfg);
            finish_solve(rep, ms, fs.out, fs.svg, exit_code);
        } else if (scan->parsed()) {
            std::vector<MassDistribution> ms = load_measures(scan_paths);
            std::vector<double> box = parse_doubles(center_box, 4, "--center-box");
            std::vector<double> orange = parse_doubles(offset_range, 2, "--offset-range");
            ScanGrid grid;
            grid.center_x_min = box[0];
            grid.center_x_max = box[1];
            grid.center_y_min = box[2];
            grid.center_y_max = box[3];
            grid.center_steps = center_steps;
            grid.angle_steps = angle_steps;
            grid.offset_min = orange[0];
            grid.offset_max = orange[1];
            grid.offset_steps = offset_steps;
            bool keep_table = !scan_csv.empty();
            if (scan_line) {
                if (ms.size() != 2)
                    throw ValidationError("scan --line needs exactly two measures");
                LineScanResult res = planar_line_scan(ms[0], ms[1], grid, keep_table);
                std::cout << "line scan: min defect " << res.min_defect << " at angle "
                          << res.angle << " offset " << res.offset << "\n";
                if (keep_table) {
                    std::ofstream csv(scan_csv);
                    csv << "angle,offset,defect\n";
                    for (const auto& row : res.table)
                        csv << row[0] << "," << row[1] << "," << row[2] << "\n";
                }
                if (!scan_svg.empty())
                    write_planar_svg(scan_svg, ms, {},
                                     {Hyperplane({std::cos(res.angle), std::sin(res.angle)},
                                                 res.offset)});
            } else {
                if (ms.size() != 1) throw ValidationError("the fan scan takes one measure");
                FanScanResult res = planar_fan_scan(ms[0], scan_q, grid, keep_table);
                std::cout << "fan scan: min defect " << res.min_defect << " at center ("
                          << res.center_x << ", " << res.center_y << ") angle " << res.angle
                          << "\n";
                if (keep_table) {
                    std::ofstream csv(scan_csv);
                    csv << "cx,cy,angle,defect\n";
                    for (const auto& row : res.table)
                        csv << row[0] << "," << row[1] << "," << row[2] << "," << row[3] << "\n";
                }
                if (!scan_svg.empty())
                    write_planar_svg(scan_svg, ms,
                                     {planar_fan(res.center_x, res.center_y, res.angle, scan_q)},
                                     {});
            }
        } else if (verify->parsed()) {
            SolveReport rep = load_report(verify_paths[0]);
            std::vector<MassDistribution> ms = load_measures(
                {verify_paths.begin() + 1, verify_paths.end()});
            auto masses = recompute_masses(rep, ms);
            double worst = 0.0;
            for (std::size_t l = 0; l < masses.size(); ++l)
                for (std::size_t i = 0; i < masses[l].size(); ++i)
                    for (std::size_t j = 0; j < masses[l][i].size(); ++j)
                        worst = std::max(worst, std::abs(masses[l][i][j] - rep.masses[l][i][j]) /
                                                    rep.measure_totals[l]);
            double defect = report_defect(rep, masses, rep.measure_totals);
            bool ok = worst <= 1e-12 && std::abs(defect - rep.defect) <= 1e-12;
            std::cout << "recomputed defect " << defect << " (stored " << rep.defect
                      << "), largest mass deviation " << worst << (ok ? " -- ok" : " -- MISMATCH")
                      << "\n";
            exit_code = ok ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
