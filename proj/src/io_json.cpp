#include "equipart/io_json.hpp"

#include <fstream>

#include "equipart/errors.hpp"

namespace equipart {

namespace {

using nlohmann::json;

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return j;
}

void write_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << j.dump(2) << "\n";
}

double require_number(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ValidationError("measure JSON: missing field \"" + field + "\"");
    if (!j[field].is_number())
        throw ValidationError("measure JSON: field \"" + field + "\" must be a number");
    return j[field].get<double>();
}

}  // namespace

json matrix_to_json(const SquareMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.n; ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json measure_to_json(const MassDistribution& mu) {
    json pts = json::array();
    for (std::size_t p = 0; p < mu.size(); ++p) {
        json row = json::array();
        for (double c : mu.point(p)) row.push_back(c);
        pts.push_back(std::move(row));
    }
    json j;
    j["format_version"] = 1;
    j["dim"] = mu.dim;
    j["points"] = std::move(pts);
    j["weights"] = mu.weights;
    j["bandwidth"] = mu.bandwidth;
    return j;
}

MassDistribution measure_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("measure JSON: top level must be an object");
    if (!j.contains("dim")) throw ValidationError("measure JSON: missing field \"dim\"");
    if (!j["dim"].is_number_integer())
        throw ValidationError("measure JSON: field \"dim\" must be an integer");
    int dim = j["dim"].get<int>();
    if (dim <= 0) throw ValidationError("measure JSON: field \"dim\" must be positive");

    if (!j.contains("points")) throw ValidationError("measure JSON: missing field \"points\"");
    if (!j["points"].is_array())
        throw ValidationError("measure JSON: field \"points\" must be an array of arrays");
    std::vector<double> coords;
    std::size_t idx = 0;
    for (const json& row : j["points"]) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
            throw ValidationError("measure JSON: \"points[" + std::to_string(idx) + "]\" must have " +
                                  std::to_string(dim) + " coordinates");
        for (const json& v : row) {
            if (!v.is_number())
                throw ValidationError("measure JSON: \"points[" + std::to_string(idx) +
                                      "]\" contains a non-numeric entry");
            coords.push_back(v.get<double>());
        }
        ++idx;
    }
    if (idx == 0) throw ValidationError("measure JSON: field \"points\" must be nonempty");

    std::vector<double> weights;
    if (j.contains("weights")) {
        if (!j["weights"].is_array())
            throw ValidationError("measure JSON: field \"weights\" must be an array");
        for (const json& v : j["weights"]) {
            if (!v.is_number())
                throw ValidationError("measure JSON: field \"weights\" contains a non-numeric entry");
            weights.push_back(v.get<double>());
        }
        if (weights.size() != idx)
            throw ValidationError("measure JSON: field \"weights\" has length " +
                                  std::to_string(weights.size()) + ", expected " +
                                  std::to_string(idx));
        for (double w : weights)
            if (!(w > 0.0))
                throw ValidationError("measure JSON: field \"weights\" must be positive");
    }

    double bandwidth = 0.0;
    if (j.contains("bandwidth")) {
        bandwidth = require_number(j, "bandwidth");
        if (bandwidth < 0.0)
            throw ValidationError("measure JSON: field \"bandwidth\" must be >= 0");
    }
    return MassDistribution::make(dim, std::move(coords), std::move(weights), bandwidth);
}

MassDistribution load_measure(const std::string& path) { return measure_from_json(read_file(path)); }

void save_measure(const MassDistribution& mu, const std::string& path) {
    write_file(measure_to_json(mu), path);
}

json report_to_json(const SolveReport& rep) {
    json j;
    j["format_version"] = 1;
    j["kind"] = rep.kind;
    j["q"] = rep.q;
    j["dim"] = rep.dim;
    if (!rep.mode.empty()) j["mode"] = rep.mode;
    j["witness"] = rep.witness;
    json planes = json::array();
    for (const Hyperplane& h : rep.hyperplanes)
        planes.push_back({{"normal", h.normal}, {"offset", h.offset}});
    j["hyperplanes"] = std::move(planes);
    json fans = json::array();
    for (const ComplexRegularQFan& f : rep.fans)
        fans.push_back({{"q", f.arity},
                        {"half_dim", f.half_dim},
                        {"normal_re_im", f.normal},
                        {"offset", {f.offset.real(), f.offset.imag()}}});
    j["fans"] = std::move(fans);
    j["independent_fans"] = rep.independent_fans;
    j["measure_totals"] = rep.measure_totals;
    j["masses"] = rep.masses;
    j["defect"] = rep.defect;
    j["converged"] = rep.converged;
    j["iterations"] = rep.iterations;
    j["restarts_used"] = rep.restarts_used;
    j["tol"] = rep.tol;
    j["seed"] = rep.seed;
    j["diagnostics"] = {{"orbit_residuals", rep.orbit_residuals},
                        {"frame_gram_error", rep.frame_gram_error},
                        {"overlap_mass", rep.overlap_mass},
                        {"overlap_identity_residual", rep.overlap_identity_residual}};
    return j;
}

SolveReport report_from_json(const json& j) {
    try {
        SolveReport rep;
        rep.kind = j.at("kind").get<std::string>();
        rep.q = j.at("q").get<int>();
        rep.dim = j.at("dim").get<int>();
        if (j.contains("mode")) rep.mode = j["mode"].get<std::string>();
        rep.witness = j.at("witness").get<Vec>();
        for (const json& p : j.at("hyperplanes"))
            rep.hyperplanes.emplace_back(p.at("normal").get<Vec>(), p.at("offset").get<double>());
        for (const json& f : j.at("fans")) {
            auto off = f.at("offset").get<std::vector<double>>();
            rep.fans.emplace_back(f.at("q").get<int>(), f.at("half_dim").get<int>(),
                                  f.at("normal_re_im").get<Vec>(), Complex(off.at(0), off.at(1)));
        }
        rep.independent_fans = j.at("independent_fans").get<std::vector<std::size_t>>();
        rep.measure_totals = j.at("measure_totals").get<std::vector<double>>();
        rep.masses = j.at("masses").get<std::vector<std::vector<std::vector<double>>>>();
        rep.defect = j.at("defect").get<double>();
        rep.converged = j.at("converged").get<bool>();
        rep.iterations = j.at("iterations").get<int>();
        rep.restarts_used = j.at("restarts_used").get<int>();
        rep.tol = j.at("tol").get<double>();
        rep.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("diagnostics")) {
            const json& d = j["diagnostics"];
            if (d.contains("orbit_residuals"))
                rep.orbit_residuals = d["orbit_residuals"].get<std::vector<double>>();
            if (d.contains("frame_gram_error"))
                rep.frame_gram_error = d["frame_gram_error"].get<double>();
            if (d.contains("overlap_mass")) rep.overlap_mass = d["overlap_mass"].get<double>();
            if (d.contains("overlap_identity_residual"))
                rep.overlap_identity_residual = d["overlap_identity_residual"].get<double>();
        }
        return rep;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("report JSON: ") + e.what());
    }
}

SolveReport load_report(const std::string& path) { return report_from_json(read_file(path)); }

void save_report(const SolveReport& rep, const std::string& path) {
    write_file(report_to_json(rep), path);
}

}  // namespace equipart
