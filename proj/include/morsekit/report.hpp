#pragma once

#include "morsekit/linalg.hpp"
#include "morsekit/morse.hpp"

#include <span>
#include <string>
#include <vector>

namespace morsekit::report {

// CSV assembly with deterministic numeric formatting ("%.17g"): identical
// inputs give byte-identical bodies.
class Csv {
public:
    void header(std::span<const std::string> columns);
    void raw_row(std::span<const std::string> cells);
    Csv& cell(const std::string& s);
    Csv& cell(double v);
    Csv& cell(long long v);
    void end_row();
    const std::string& str() const { return body_; }

private:
    std::string body_;
    bool row_open_ = false;
};

std::string format_double(double v);   // %.17g
std::string format_short(double v);    // %.6g, for human tables

// SVG scatter of critical points in the box frame, markers colored by Morse
// index, with a legend; higher-dimensional points project to the first two
// coordinates, 1-d points draw on the axis.
std::string critical_points_svg(std::span<const morse::CriticalPoint> points, const Box& box);

// key = value lines, sorted by key.
std::string manifest(std::span<const std::pair<std::string, std::string>> entries);

std::string timestamp_utc_now();  // yyyymmdd-HHMMSS

void write_file(const std::string& path, const std::string& body);

}  // namespace morsekit::report
