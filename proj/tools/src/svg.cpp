#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "polya/cli.hpp"

namespace polya::cli {

namespace {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

Table read_csv(const std::string& text) {
    std::stringstream in(text);
    std::string line;
    Table t;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        if (t.header.empty()) {
            t.header = cells;
            if (t.header.size() < 2) throw ConfigError("CSV needs at least two columns");
            t.cols.resize(t.header.size());
            continue;
        }
        if (cells.size() != t.header.size()) throw ConfigError("CSV row has " + std::to_string(cells.size()) + " cells, header has " + std::to_string(t.header.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            const char* b = cells[c].data();
            const char* e = b + cells[c].size();
            auto [p, ec] = std::from_chars(b, e, v);
            if (ec != std::errc() || p != e) throw ConfigError("CSV cell \"" + cells[c] + "\" is not a number");
            t.cols[c].push_back(v);
        }
    }
    if (t.header.empty() || t.cols[0].empty()) throw ConfigError("CSV has no data rows");
    return t;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

constexpr double width = 720, height = 440, margin = 50;
const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_svg(const std::string& csv_text) {
    const Table t = read_csv(csv_text);
    const bool histogram = t.header.size() >= 4 && t.header[0] == "bin_lo" && t.header[1] == "bin_hi";

    std::vector<std::size_t> series;
    if (histogram) {
        series = {2, 3};
    } else {
        for (std::size_t c = 1; c < t.cols.size(); ++c) series.push_back(c);
    }
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (double x : t.cols[0]) x0 = std::min(x0, x), x1 = std::max(x1, x);
    if (histogram)
        for (double x : t.cols[1]) x1 = std::max(x1, x);
    for (std::size_t c : series)
        for (double y : t.cols[c])
            if (std::isfinite(y)) y0 = std::min(y0, y), y1 = std::max(y1, y);
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!std::isfinite(y0)) y0 = 0.0, y1 = 1.0;
    y0 = std::min(y0, 0.0);
    if (!(y1 > y0)) y1 = y0 + 1.0;
    auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
      << width << ' ' << height << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<path d=\"M" << fmt(margin) << ',' << fmt(height - margin) << "H" << fmt(width - margin) << "M" << fmt(margin) << ','
      << fmt(height - margin) << "V" << fmt(margin) << "\" stroke=\"black\" fill=\"none\"/>\n";
    s << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(height - 15) << "\" font-size=\"12\">" << t.header[0] << " " << fmt(x0)
      << " .. " << fmt(x1) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const std::size_t c = series[k];
        const char* color = palette[k % 6];
        const auto& ys = t.cols[c];
        if (histogram && c == 2) {
            std::ostringstream d;
            for (std::size_t i = 0; i < ys.size(); ++i) {
                d << (i == 0 ? "M" : "L") << fmt(px(t.cols[0][i])) << ',' << fmt(py(ys[i]));
                d << "L" << fmt(px(t.cols[1][i])) << ',' << fmt(py(ys[i]));
            }
            s << "<path d=\"" << d.str() << "\" stroke=\"" << color << "\" fill=\"none\"/>\n";
        } else {
            s << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
            for (std::size_t i = 0; i < ys.size(); ++i) {
                if (!std::isfinite(ys[i])) continue;
                const double x = histogram ? 0.5 * (t.cols[0][i] + t.cols[1][i]) : t.cols[0][i];
                s << (i ? " " : "") << fmt(px(x)) << ',' << fmt(py(ys[i]));
            }
            s << "\"/>\n";
        }
        s << "<text x=\"" << fmt(width - margin - 120) << "\" y=\"" << fmt(margin + 16 * k) << "\" font-size=\"12\" fill=\"" << color
          << "\">" << t.header[c] << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void emit_svg(const std::string& csv_path, const std::string& svg_path) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw IoError("cannot read " + csv_path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string svg = render_svg(ss.str());
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + svg_path);
    out << svg;
    if (!out) throw IoError("write failed for " + svg_path);
}

}  // namespace polya::cli
