#include "equipart/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "equipart/errors.hpp"

namespace equipart {

namespace {

const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                          "#ff7f00", "#a65628", "#f781bf", "#17becf"};
constexpr int kPaletteSize = 8;
constexpr double kCanvas = 800.0;

struct Box {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    double sx(double x) const { return (x - xmin) / (xmax - xmin) * kCanvas; }
    double sy(double y) const { return kCanvas - (y - ymin) / (ymax - ymin) * kCanvas; }
};

int sector_of(std::span<const double> p, const ComplexRegularQFan& fan) {
    SectorWeights w = sector_membership(p, fan, 0.0);
    int best = 0;
    for (std::size_t j = 1; j < w.weights.size(); ++j)
        if (w.weights[j] > w.weights[static_cast<std::size_t>(best)]) best = static_cast<int>(j);
    return best;
}

}  // namespace

void write_planar_svg(const std::string& path, const std::vector<MassDistribution>& measures,
                      const std::vector<ComplexRegularQFan>& fans,
                      const std::vector<Hyperplane>& lines) {
    for (const MassDistribution& mu : measures)
        if (mu.dim != 2) throw DimensionError("write_planar_svg: measures must be planar");

    Box box;
    bool first = true;
    for (const MassDistribution& mu : measures)
        for (std::size_t p = 0; p < mu.size(); ++p) {
            auto pt = mu.point(p);
            if (first) {
                box = {pt[0], pt[0], pt[1], pt[1]};
                first = false;
            }
            box.xmin = std::min(box.xmin, pt[0]);
            box.xmax = std::max(box.xmax, pt[0]);
            box.ymin = std::min(box.ymin, pt[1]);
            box.ymax = std::max(box.ymax, pt[1]);
        }
    double pad = 0.1 * std::max({box.xmax - box.xmin, box.ymax - box.ymin, 1e-6});
    box.xmin -= pad;
    box.xmax += pad;
    box.ymin -= pad;
    box.ymax += pad;
    double reach = 2.0 * std::hypot(box.xmax - box.xmin, box.ymax - box.ymin);

    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
        << kCanvas << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n";
    out << "<rect width=\"" << kCanvas << "\" height=\"" << kCanvas << "\" fill=\"white\"/>\n";

    for (std::size_t m = 0; m < measures.size(); ++m) {
        const MassDistribution& mu = measures[m];
        for (std::size_t p = 0; p < mu.size(); ++p) {
            auto pt = mu.point(p);
            const char* fill = "#666666";
            if (!fans.empty())
                fill = kPalette[sector_of(pt, fans[0]) % kPaletteSize];
            else if (!lines.empty())
                fill = kPalette[(dot(pt, lines[0].normal) >= lines[0].offset) ? 0 : 1];
            out << "<circle cx=\"" << box.sx(pt[0]) << "\" cy=\"" << box.sy(pt[1]) << "\" r=\""
                << (m == 0 ? 3.0 : 2.5) << "\" fill=\"" << fill << "\""
                << (m == 0 ? "" : " fill-opacity=\"0.55\" stroke=\"black\" stroke-width=\"0.4\"")
                << "/>\n";
        }
    }

    for (const ComplexRegularQFan& fan : fans) {
        Complex a(fan.normal[0], fan.normal[1]);
        Complex center = std::conj(fan.offset) * a;
        double base = std::arg(a);
        for (int j = 0; j < fan.arity; ++j) {
            double ang = base + 2.0 * std::numbers::pi * j / fan.arity;
            double x1 = center.real(), y1 = center.imag();
            double x2 = x1 + reach * std::cos(ang), y2 = y1 + reach * std::sin(ang);
            out << "<line x1=\"" << box.sx(x1) << "\" y1=\"" << box.sy(y1) << "\" x2=\""
                << box.sx(x2) << "\" y2=\"" << box.sy(y2)
                << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        }
        out << "<circle cx=\"" << box.sx(center.real()) << "\" cy=\"" << box.sy(center.imag())
            << "\" r=\"4\" fill=\"black\"/>\n";
    }

    for (const Hyperplane& h : lines) {
        double x0 = h.normal[0] * h.offset, y0 = h.normal[1] * h.offset;
        double dx = -h.normal[1], dy = h.normal[0];
        out << "<line x1=\"" << box.sx(x0 - reach * dx) << "\" y1=\"" << box.sy(y0 - reach * dy)
            << "\" x2=\"" << box.sx(x0 + reach * dx) << "\" y2=\"" << box.sy(y0 + reach * dy)
            << "\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
    }

    out << "</svg>\n";
}

}  // namespace equipart
