#include "morsekit/report.hpp"

#include "morsekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace morsekit::report {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

std::string format_double(double v) { return fmt("%.17g", v); }
std::string format_short(double v) { return fmt("%.6g", v); }

void Csv::header(std::span<const std::string> columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) body_ += ',';
        body_ += columns[i];
    }
    body_ += '\n';
}

void Csv::raw_row(std::span<const std::string> cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
}

Csv& Csv::cell(const std::string& s) {
    if (row_open_) body_ += ',';
    body_ += s;
    row_open_ = true;
    return *this;
}

Csv& Csv::cell(double v) { return cell(format_double(v)); }

Csv& Csv::cell(long long v) { return cell(std::to_string(v)); }

void Csv::end_row() {
    body_ += '\n';
    row_open_ = false;
}

namespace {

const char* index_color(unsigned idx) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    return palette[idx % 5];
}

}  // namespace

std::string critical_points_svg(std::span<const morse::CriticalPoint> points, const Box& box) {
    const double W = 480.0, H = 480.0, pad = 40.0;
    const std::size_t m = box.dim();
    const double lx = box.lo[0], hx = box.hi[0];
    const double ly = m >= 2 ? box.lo[1] : -1.0, hy = m >= 2 ? box.hi[1] : 1.0;
    auto sx = [&](double x) { return pad + (x - lx) / (hx - lx) * (W - 2 * pad); };
    auto sy = [&](double y) { return H - pad - (y - ly) / (hy - ly) * (H - 2 * pad); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" "
         "viewBox=\"0 0 480 480\">\n";
    s += "<rect x=\"" + fmt("%.2f", pad) + "\" y=\"" + fmt("%.2f", pad) + "\" width=\"" +
         fmt("%.2f", W - 2 * pad) + "\" height=\"" + fmt("%.2f", H - 2 * pad) +
         "\" fill=\"white\" stroke=\"black\"/>\n";

    if (points.empty()) {
        s += "<text x=\"240\" y=\"240\" text-anchor=\"middle\" font-size=\"16\">no critical "
             "points</text>\n";
    } else {
        std::vector<unsigned> indices;
        for (const auto& p : points) {
            const double px = p.location[0];
            const double py = p.location.size() >= 2 ? p.location[1] : 0.0;
            s += "<circle cx=\"" + fmt("%.2f", sx(px)) + "\" cy=\"" + fmt("%.2f", sy(py)) +
                 "\" r=\"5\" fill=\"" + index_color(p.morse_index) + "\" stroke=\"black\"/>\n";
            indices.push_back(p.morse_index);
        }
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
        double yleg = pad + 14.0;
        for (unsigned idx : indices) {
            s += "<circle cx=\"" + fmt("%.2f", W - pad - 90.0) + "\" cy=\"" +
                 fmt("%.2f", yleg - 4.0) + "\" r=\"5\" fill=\"" + index_color(idx) +
                 "\" stroke=\"black\"/>\n";
            s += "<text x=\"" + fmt("%.2f", W - pad - 78.0) + "\" y=\"" + fmt("%.2f", yleg) +
                 "\" font-size=\"12\">index " + std::to_string(idx) + "</text>\n";
            yleg += 16.0;
        }
    }
    s += "<text x=\"" + fmt("%.2f", pad) + "\" y=\"" + fmt("%.2f", H - pad + 16.0) +
         "\" font-size=\"11\">[" + format_short(lx) + ", " + format_short(hx) + "] x [" +
         format_short(ly) + ", " + format_short(hy) + "]</text>\n";
    s += "</svg>\n";
    return s;
}

std::string manifest(std::span<const std::pair<std::string, std::string>> entries) {
    std::vector<std::pair<std::string, std::string>> sorted(entries.begin(), entries.end());
    std::sort(sorted.begin(), sorted.end());
    std::string s;
    for (const auto& [k, v] : sorted) s += k + " = " + v + "\n";
    return s;
}

std::string timestamp_utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << body;
}

}  // namespace morsekit::report
