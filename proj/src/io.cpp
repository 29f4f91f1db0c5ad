#include "geodesica/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geodesica {

namespace {

double read_number(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::ParseError, "bad number '" + std::string(text) + "'");
    }
    return v;
}

double rounded(double v) { return read_number(format_number(v)); }

Termination parse_termination(const std::string& s) {
    for (Termination t : {Termination::Budget, Termination::DomainExit, Termination::Pole, Termination::NegativeIndex}) {
        if (to_string(t) == s) return t;
    }
    throw Error(ErrorCode::ParseError, "unknown termination '" + s + "'");
}

Point2 emitted(const Point2& p, bool flip) { return Point2(p.x(), flip ? 1.0 - p.y() : p.y()); }

} // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Polyline quantized(const Polyline& line) {
    Polyline out;
    out.meta = line.meta;
    out.points.reserve(line.size());
    for (const Point2& p : line.points) out.points.emplace_back(rounded(p.x()), rounded(p.y()));
    return out;
}

std::string to_csv(const Polyline& line, bool flip_axis) {
    std::string out = "x,y\n";
    for (const Point2& p : line.points) {
        const Point2 q = emitted(p, flip_axis);
        out += format_number(q.x());
        out += ',';
        out += format_number(q.y());
        out += '\n';
    }
    return out;
}

std::string to_json(const Polyline& line, bool flip_axis) {
    nlohmann::ordered_json j;
    j["metric"] = line.meta.metric;
    j["engine"] = line.meta.engine;
    if (std::isfinite(line.meta.C)) j["C"] = rounded(line.meta.C);
    else j["C"] = nullptr;
    j["termination"] = std::string(to_string(line.meta.termination));
    if (flip_axis) j["flip_axis"] = true;
    auto pts = nlohmann::json::array();
    for (const Point2& p : line.points) {
        const Point2 q = emitted(p, flip_axis);
        pts.push_back({rounded(q.x()), rounded(q.y())});
    }
    j["points"] = std::move(pts);
    return j.dump() + "\n";
}

std::string to_svg(const std::vector<SvgCurve>& curves, bool flip_axis, const std::string& title) {
    static const char* palette[] = {"#1f1f1f", "#2a8a2a", "#2450b0", "#8a5a00", "#7a2a9a", "#0a8a8a"};
    double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
    for (const auto& c : curves) {
        for (const Point2& p : c.line->points) {
            const Point2 q = emitted(p, flip_axis);
            x0 = std::min(x0, q.x());
            x1 = std::max(x1, q.x());
            y0 = std::min(y0, q.y());
            y1 = std::max(y1, q.y());
        }
    }
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) y1 = y0 + 1.0;
    const double w = 640, h = 480, pad = 48;
    const double sx = (w - 2 * pad) / (x1 - x0), sy = (h - 2 * pad) / (y1 - y0);
    auto px = [&](double x) { return pad + (x - x0) * sx; };
    auto py = [&](double y) { return h - pad - (y - y0) * sy; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
       << ' ' << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    os << "<g stroke=\"#888\" stroke-width=\"1\">\n"
       << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\"" << h - pad << "\"/>\n"
       << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad << "\"/>\n</g>\n";
    os << "<g font-size=\"11\" fill=\"#444\">\n"
       << "<text x=\"" << pad << "\" y=\"" << h - pad + 16 << "\">" << format_number(x0) << "</text>\n"
       << "<text x=\"" << w - pad << "\" y=\"" << h - pad + 16 << "\" text-anchor=\"end\">" << format_number(x1) << "</text>\n"
       << "<text x=\"" << pad - 4 << "\" y=\"" << h - pad << "\" text-anchor=\"end\">" << format_number(y0) << "</text>\n"
       << "<text x=\"" << pad - 4 << "\" y=\"" << pad + 4 << "\" text-anchor=\"end\">" << format_number(y1) << "</text>\n"
       << "<text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">x</text>\n"
       << "<text x=\"14\" y=\"" << h / 2 << "\">" << (flip_axis ? "1-y" : "y") << "</text>\n</g>\n";
    int colour = 0;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& c = curves[i];
        const char* stroke = c.highlight ? "#d01c1c" : palette[colour++ % 6];
        os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << (c.highlight ? 2.5 : 1.2)
           << "\" points=\"";
        for (const Point2& p : c.line->points) {
            const Point2 q = emitted(p, flip_axis);
            os << format_number(px(q.x())) << ',' << format_number(py(q.y())) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << w - pad << "\" y=\"" << pad + 14 * (i + 1) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
           << stroke << "\">" << c.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

Polyline parse_csv(const std::string& text) {
    Polyline out;
    std::istringstream in(text);
    std::string row;
    bool first = true;
    while (std::getline(in, row)) {
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "row without a comma: '" + row + "'");
        if (first) {
            first = false;
            if (row == "x,y") continue;
        }
        out.points.emplace_back(read_number(std::string_view(row).substr(0, comma)),
                                read_number(std::string_view(row).substr(comma + 1)));
    }
    return out;
}

Polyline parse_json(const std::string& text) {
    Polyline out;
    try {
        const auto j = nlohmann::json::parse(text);
        out.meta.metric = j.at("metric").get<std::string>();
        out.meta.engine = j.at("engine").get<std::string>();
        if (!j.at("C").is_null()) out.meta.C = j.at("C").get<double>();
        out.meta.termination = parse_termination(j.at("termination").get<std::string>());
        for (const auto& p : j.at("points")) out.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace geodesica
