#include "blaschke_approx/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace blaschke_approx {

namespace {

// fixed-format numbers keep the output byte-stable
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string pt(double x, double y) { return num(x) + " " + num(-y); } // svg y is flipped

// path for the closed polar box of a dyadic square
std::string square_path(const DyadicSquare& q) {
    double r1 = q.inner_radius(), r2 = 1.0;
    double a1 = q.theta_lo(), a2 = q.theta_hi();
    std::ostringstream p;
    p << "M " << pt(r1 * std::cos(a1), r1 * std::sin(a1));
    p << " L " << pt(r2 * std::cos(a1), r2 * std::sin(a1));
    p << " A " << num(r2) << " " << num(r2) << " 0 0 0 "
      << pt(r2 * std::cos(a2), r2 * std::sin(a2));
    p << " L " << pt(r1 * std::cos(a2), r1 * std::sin(a2));
    p << " A " << num(r1) << " " << num(r1) << " 0 0 1 "
      << pt(r1 * std::cos(a1), r1 * std::sin(a1));
    p << " Z";
    return p.str();
}

std::string edge_path(const Edge& e, bool move_first) {
    std::ostringstream p;
    DiskPoint a = e.point_at(0.0), b = e.point_at(1.0);
    if (move_first) p << "M " << pt(a.re, a.im) << " ";
    if (e.kind == Edge::Kind::Radial) {
        p << "L " << pt(b.re, b.im);
    } else {
        double r = e.radius();
        double sweep = static_cast<double>(e.a_len) * 2.0 * M_PI * 0x1.0p-64;
        int large = sweep > M_PI ? 1 : 0;
        int dir = e.dir > 0 ? 0 : 1; // svg sweep flag with flipped y
        p << "A " << num(r) << " " << num(r) << " 0 " << large << " " << dir << " "
          << pt(b.re, b.im);
    }
    return p.str();
}

} // namespace

std::string render_svg(const BlaschkeProduct& B, const ContourBuildResult& built,
                       const DiscretizationResult* disc) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.12 -1.12 2.36 2.24\" "
         "width=\"900\" height=\"860\">\n";
    s << "<rect x=\"-1.12\" y=\"-1.12\" width=\"2.36\" height=\"2.24\" fill=\"white\"/>\n";
    s << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#444444\" "
         "stroke-width=\"0.004\"/>\n";

    for (const auto& cs : built.selected_good)
        s << "<path d=\"" << square_path(cs.square)
          << "\" fill=\"#2e8b57\" fill-opacity=\"0.18\" stroke=\"#2e8b57\" "
             "stroke-width=\"0.0015\"/>\n";
    for (const auto& cs : built.selected_bad)
        s << "<path d=\"" << square_path(cs.square)
          << "\" fill=\"#b22222\" fill-opacity=\"0.15\" stroke=\"#b22222\" "
             "stroke-width=\"0.0015\"/>\n";

    for (const auto& comp : built.contour.components) {
        s << "<path d=\"";
        bool first = true;
        for (const auto& e : comp.edges) {
            s << edge_path(e, first) << " ";
            first = false;
        }
        s << "Z\" fill=\"#1e60c8\" fill-opacity=\"0.10\" stroke=\"#1e60c8\" "
             "stroke-width=\"0.005\"/>\n";
    }

    for (const auto& z : B.zeros)
        s << "<circle cx=\"" << num(z.position.re) << "\" cy=\"" << num(-z.position.im)
          << "\" r=\"0.006\" fill=\"#222222\"/>\n";
    if (B.origin_multiplicity > 0)
        s << "<circle cx=\"0\" cy=\"0\" r=\"0.01\" fill=\"#222222\"/>\n";

    if (disc) {
        for (const auto& arc : disc->arcs) {
            const auto& comp = built.contour.components.at(arc.component_id);
            DiskPoint cut = comp.point_at_arclength(arc.s_lo);
            s << "<circle cx=\"" << num(cut.re) << "\" cy=\"" << num(-cut.im)
              << "\" r=\"0.005\" fill=\"#ff8c00\"/>\n";
            s << "<path d=\"M " << pt(arc.placed_zero.re - 0.007, arc.placed_zero.im)
              << " L " << pt(arc.placed_zero.re + 0.007, arc.placed_zero.im) << " M "
              << pt(arc.placed_zero.re, arc.placed_zero.im - 0.007) << " L "
              << pt(arc.placed_zero.re, arc.placed_zero.im + 0.007)
              << "\" stroke=\"#c00080\" stroke-width=\"0.003\"/>\n";
        }
    }

    double ly = -1.02;
    auto legend = [&](const char* color, const char* label) {
        s << "<rect x=\"1.06\" y=\"" << num(ly) << "\" width=\"0.03\" height=\"0.03\" fill=\""
          << color << "\" fill-opacity=\"0.4\"/>\n";
        s << "<text x=\"1.10\" y=\"" << num(ly + 0.026)
          << "\" font-size=\"0.035\" font-family=\"sans-serif\">" << label << "</text>\n";
        ly += 0.06;
    };
    legend("#2e8b57", "good square");
    legend("#b22222", "bad square");
    legend("#1e60c8", "contour");
    legend("#222222", "zeros");
    legend("#ff8c00", "arc cuts");
    legend("#c00080", "placed zeros");

    s << "</svg>\n";
    return s.str();
}

} // namespace blaschke_approx
