#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "tlf/csv.hpp"

// Small hand-rolled SVG charts for report figures. Nothing fancy: bars,
// one or more line series, and a matrix heatmap.

namespace tlf::svg {

namespace detail {

inline std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

inline const char* series_color(size_t i) {
    static const char* palette[] = {"#4878cf", "#d65f5f", "#6acc65", "#956cb4", "#c4ad66", "#77bedb"};
    return palette[i % 6];
}

}  // namespace detail

inline void bar_chart(const std::string& path, const std::string& title,
                      const std::vector<std::string>& labels, const std::vector<double>& values) {
    const double W = 720, H = 420, ml = 70, mr = 20, mt = 50, mb = 80;
    double vmax = 1;
    for (double v : values) vmax = std::max(vmax, v);
    std::ofstream out(path, std::ios::binary);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << detail::esc(title) << "</text>\n";
    double plot_w = W - ml - mr, plot_h = H - mt - mb;
    size_t n = values.size();
    double slot = n ? plot_w / double(n) : plot_w;
    for (size_t i = 0; i < n; ++i) {
        double h = plot_h * values[i] / vmax;
        double x = ml + double(i) * slot + slot * 0.15;
        double y = mt + plot_h - h;
        out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << slot * 0.7 << "\" height=\"" << h
            << "\" fill=\"" << detail::series_color(0) << "\"/>\n";
        out << "<text x=\"" << x + slot * 0.35 << "\" y=\"" << y - 4
            << "\" text-anchor=\"middle\" font-size=\"11\">" << csv::fmt(values[i]) << "</text>\n";
        out << "<text x=\"" << x + slot * 0.35 << "\" y=\"" << mt + plot_h + 16
            << "\" text-anchor=\"middle\" font-size=\"11\" transform=\"rotate(30 " << x + slot * 0.35
            << " " << mt + plot_h + 16 << ")\">" << detail::esc(labels[i]) << "</text>\n";
    }
    out << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\"" << W - mr << "\" y2=\""
        << mt + plot_h << "\" stroke=\"black\"/>\n";
    out << "</svg>\n";
}

struct LineSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;  // sorted by x; gaps allowed
};

inline void line_chart(const std::string& path, const std::string& title,
                       const std::vector<LineSeries>& series, const std::string& x_label,
                       const std::string& y_label) {
    const double W = 720, H = 420, ml = 70, mr = 20, mt = 50, mb = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 0, ymax = 1e-9;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymax = std::max(ymax, y);
        }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
    }
    if (xmax == xmin) xmax = xmin + 1;
    double plot_w = W - ml - mr, plot_h = H - mt - mb;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return mt + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    std::ofstream out(path, std::ios::binary);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << detail::esc(title) << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\"" << W - mr << "\" y2=\""
        << mt + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + plot_h
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
        << detail::esc(x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << mt + plot_h / 2 << "\" font-size=\"12\" transform=\"rotate(-90 18 "
        << mt + plot_h / 2 << ")\" text-anchor=\"middle\">" << detail::esc(y_label) << "</text>\n";
    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        out << "<polyline fill=\"none\" stroke=\"" << detail::series_color(si) << "\" stroke-width=\"2\" points=\"";
        for (auto [x, y] : s.points) out << px(x) << ',' << py(y) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << ml + 8 << "\" y=\"" << mt + 16 + 16 * double(si) << "\" font-size=\"12\" fill=\""
            << detail::series_color(si) << "\">" << detail::esc(s.name) << "</text>\n";
    }
    out << "</svg>\n";
}

inline void heatmap(const std::string& path, const std::string& title,
                    const std::vector<std::vector<double>>& matrix,
                    const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels) {
    const double cell = 64, ml = 110, mt = 80;
    size_t nr = matrix.size(), nc = nr ? matrix[0].size() : 0;
    double W = ml + cell * double(nc) + 30, H = mt + cell * double(nr) + 30;
    double vmax = 1e-9;
    for (const auto& row : matrix)
        for (double v : row) vmax = std::max(vmax, v);

    std::ofstream out(path, std::ios::binary);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << detail::esc(title) << "</text>\n";
    for (size_t r = 0; r < nr; ++r) {
        for (size_t c = 0; c < nc; ++c) {
            double frac = matrix[r][c] / vmax;
            int blue = 255 - int(200 * frac);
            double x = ml + cell * double(c), y = mt + cell * double(r);
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
                << "\" fill=\"rgb(" << blue << "," << blue << ",255)\" stroke=\"#999\"/>\n";
            out << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
                << "\" text-anchor=\"middle\" font-size=\"12\">" << csv::fmt(matrix[r][c]) << "</text>\n";
        }
        out << "<text x=\"" << ml - 8 << "\" y=\"" << mt + cell * double(r) + cell / 2 + 4
            << "\" text-anchor=\"end\" font-size=\"12\">" << detail::esc(row_labels[r]) << "</text>\n";
    }
    for (size_t c = 0; c < nc; ++c)
        out << "<text x=\"" << ml + cell * double(c) + cell / 2 << "\" y=\"" << mt - 10
            << "\" text-anchor=\"middle\" font-size=\"12\">" << detail::esc(col_labels[c]) << "</text>\n";
    out << "</svg>\n";
}

inline void clean_report_chart(const std::string& path, const std::vector<std::string>& rule_labels,
                               const std::vector<double>& counts) {
    bar_chart(path, "APC issues by rule", rule_labels, counts);
}

}  // namespace tlf::svg
