#ifndef GEODESICA_IO_HPP
#define GEODESICA_IO_HPP

#include <string>
#include <vector>

#include "geodesica/polyline.hpp"

namespace geodesica {

/// Vertex coordinates are written with 12 significant digits.
std::string format_number(double v);

/// The polyline as it reads back after writing: every coordinate rounded to
/// the emitted digits.
Polyline quantized(const Polyline& line);

/// `x,y` header, one vertex per row. `flip_axis` writes 1 - y.
std::string to_csv(const Polyline& line, bool flip_axis = false);
/// {metric, engine, C, termination, points: [[x, y], ...]}
std::string to_json(const Polyline& line, bool flip_axis = false);

struct SvgCurve {
    std::string label;
    const Polyline* line;
    bool highlight = false;
};

/// Overlay plot with axes; a highlighted curve is drawn red and thicker.
std::string to_svg(const std::vector<SvgCurve>& curves, bool flip_axis = false, const std::string& title = "");

Polyline parse_csv(const std::string& text);
Polyline parse_json(const std::string& text);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

} // namespace geodesica

#endif // GEODESICA_IO_HPP
