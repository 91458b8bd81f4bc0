#include "parambar/barcode.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace parambar {

namespace {

const std::array<const char*, 4> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::string RunLabel::to_string() const {
    std::ostringstream os;
    os << '(' << variance_index << ',' << completeness_index << ',' << steps << ')';
    if (cluster_value) os << " cluster " << *cluster_value;
    return os.str();
}

std::string RunLabel::file_tag() const {
    std::ostringstream os;
    os << '(' << variance_index << ',' << completeness_index << ',' << steps << ')';
    if (cluster_value) os << "_cluster" << *cluster_value;
    return os.str();
}

std::string render_text(const PersistenceDiagram& d, const RunLabel& label) {
    std::ostringstream os;
    os << "barcode " << label.to_string() << '\n';
    os << "num_steps " << d.num_steps << '\n';
    os << "step_size " << fmt_g(d.step_size) << '\n';
    os << "persistence_threshold " << fmt_g(d.persistence_threshold) << '\n';
    os << "zero_length_dropped " << d.zero_length_dropped << '\n';
    if (d.intervals.empty()) {
        os << "no intervals\n";
        return os.str();
    }
    int current = -1;
    for (const PersistenceInterval& iv : d.intervals) {
        if (iv.dim != current) {
            current = iv.dim;
            os << 'H' << current << '\n';
        }
        os << "  [" << iv.birth << ", ";
        if (iv.infinite())
            os << "inf";
        else
            os << iv.death;
        os << ")  length " << iv.length(d.num_steps);
        if (interval_is_persistent(d, iv)) os << "  persistent";
        os << '\n';
    }
    return os.str();
}

std::string render_svg(const PersistenceDiagram& d, const RunLabel& label) {
    const int bars = static_cast<int>(d.intervals.size());
    const double left = 70, right = 40, top = 70, bottom = 50;
    const double width = 900;
    const double row_h = 40;
    const double height = top + row_h * std::max(bars, 1) + bottom;
    const double plot_w = width - left - right;
    const int steps = std::max(d.num_steps, 1);
    auto x_at = [&](double step) { return left + plot_w * step / steps; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
       << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
       << "\" fill=\"#ffffff\"/>\n";
    os << "<text x=\"" << fmt(left) << "\" y=\"24\" font-family=\"monospace\" font-size=\"16\">"
       << "barcode " << label.to_string() << "</text>\n";

    bool dim_present[4] = {false, false, false, false};
    for (const PersistenceInterval& iv : d.intervals)
        if (iv.dim >= 0 && iv.dim < 4) dim_present[iv.dim] = true;
    double lx = left;
    for (int k = 0; k < 4; ++k) {
        if (!dim_present[k]) continue;
        os << "<rect x=\"" << fmt(lx) << "\" y=\"38\" width=\"14\" height=\"14\" fill=\""
           << kPalette[k] << "\"/>\n";
        os << "<text x=\"" << fmt(lx + 20) << "\" y=\"50\" font-family=\"monospace\" font-size=\"13\">H"
           << k << "</text>\n";
        lx += 70;
    }

    if (bars == 0) {
        os << "<text x=\"" << fmt(left) << "\" y=\"" << fmt(top + row_h / 2)
           << "\" font-family=\"monospace\" font-size=\"14\">no intervals</text>\n";
    }

    int current = -1;
    for (int i = 0; i < bars; ++i) {
        const PersistenceInterval& iv = d.intervals[static_cast<std::size_t>(i)];
        const double row_y = top + row_h * i;
        if (iv.dim != current) {
            current = iv.dim;
            os << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(row_y) << "\" x2=\""
               << fmt(width - right) << "\" y2=\"" << fmt(row_y)
               << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
            os << "<text x=\"20\" y=\"" << fmt(row_y + 25)
               << "\" font-family=\"monospace\" font-size=\"14\">H" << current << "</text>\n";
        }
        const double x0 = x_at(iv.birth);
        const double x1 = iv.infinite() ? x_at(steps) : x_at(iv.death);
        const double y = row_y + 11;
        const char* color = kPalette[static_cast<std::size_t>(iv.dim) % kPalette.size()];
        const bool heavy = interval_is_persistent(d, iv);
        os << "<rect class=\"bar\" x=\"" << fmt(x0) << "\" y=\"" << fmt(y) << "\" width=\""
           << fmt(std::max(x1 - x0, 1.0)) << "\" height=\"18\" fill=\"" << color
           << "\" stroke=\"#333333\" stroke-width=\"" << (heavy ? 3 : 1) << "\"/>\n";
        if (iv.infinite()) {
            const double ax = x_at(steps);
            const double ay = y + 9;
            os << "<polygon class=\"arrow\" points=\"" << fmt(ax + 2) << ',' << fmt(ay - 8) << ' '
               << fmt(ax + 18) << ',' << fmt(ay) << ' ' << fmt(ax + 2) << ',' << fmt(ay + 8)
               << "\" fill=\"" << color << "\"/>\n";
        }
    }

    const double axis_y = top + row_h * std::max(bars, 1) + 8;
    os << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(axis_y) << "\" x2=\"" << fmt(width - right)
       << "\" y2=\"" << fmt(axis_y) << "\" stroke=\"#000000\"/>\n";
    int prev_tick = -1;
    for (int q = 0; q <= 4; ++q) {
        const int tick = steps * q / 4;
        if (tick == prev_tick) continue;
        prev_tick = tick;
        const double tx = x_at(tick);
        os << "<line x1=\"" << fmt(tx) << "\" y1=\"" << fmt(axis_y) << "\" x2=\"" << fmt(tx)
           << "\" y2=\"" << fmt(axis_y + 6) << "\" stroke=\"#000000\"/>\n";
        os << "<text x=\"" << fmt(tx) << "\" y=\"" << fmt(axis_y + 22)
           << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" << tick
           << "</text>\n";
    }
    os << "<text x=\"" << fmt(width - right) << "\" y=\"" << fmt(axis_y + 38)
       << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">step</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace parambar
