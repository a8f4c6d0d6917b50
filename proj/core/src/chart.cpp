#include "dyadic/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dyadic/errors.hpp"
#include "dyadic/text.hpp"

namespace dyadic {

namespace {

constexpr double kCell = 36.0;
constexpr double kLeft = 80.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 140.0;

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

const TestResult* chart_result(const ItemReport& item, MeasureId m) {
    const TestResult* pick = nullptr;
    for (const auto& r : item.results) {
        if (r.measure != m) continue;
        if (!pick || r.method == Method::exact) pick = &r;
    }
    return pick;
}

}  // namespace

double glyph_radius(double p_value) {
    double strength = kStrengthCap;
    if (p_value > 0.0) strength = std::clamp(-std::log10(p_value), 0.0, kStrengthCap);
    return kMinRadius + kRadiusSlope * strength;
}

std::string bubble_chart_svg(const ReportSet& reports) {
    const auto n_items = reports.items.size();
    const double width = kLeft + kCell * static_cast<double>(n_items) + 20.0;
    const double height = kTop + kCell * static_cast<double>(kAllMeasures.size()) + kBottom;

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) + "\" height=\"" + fixed(height) +
         "\" viewBox=\"0 0 " + fixed(width) + " " + fixed(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + fixed(width) + "\" height=\"" + fixed(height) + "\" fill=\"white\"/>\n";

    for (std::size_t m = 0; m < kAllMeasures.size(); ++m) {
        const double y = kTop + kCell * (static_cast<double>(m) + 0.5);
        s += "<text class=\"measure-label\" x=\"" + fixed(kLeft - 8.0) + "\" y=\"" + fixed(y + 4.0) +
             "\" text-anchor=\"end\">" + std::string(measure_code(kAllMeasures[m])) + "</text>\n";
        s += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(y) + "\" x2=\"" +
             fixed(kLeft + kCell * static_cast<double>(n_items)) + "\" y2=\"" + fixed(y) +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    }

    for (std::size_t i = 0; i < n_items; ++i) {
        const auto& item = reports.items[i];
        const double x = kLeft + kCell * (static_cast<double>(i) + 0.5);
        const double base = kTop + kCell * static_cast<double>(kAllMeasures.size()) + 10.0;
        s += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(x) + "\" y2=\"" +
             fixed(base - 10.0) + "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
        s += "<text class=\"item-label\" x=\"" + fixed(x) + "\" y=\"" + fixed(base) + "\" transform=\"rotate(60 " +
             fixed(x) + " " + fixed(base) + ")\">" + xml_escape(item.item.id) + "</text>\n";

        for (std::size_t m = 0; m < kAllMeasures.size(); ++m) {
            const auto* r = chart_result(item, kAllMeasures[m]);
            if (!r || !r->significant || r->direction == Direction::none) continue;
            const double y = kTop + kCell * (static_cast<double>(m) + 0.5);
            const double radius = glyph_radius(r->p_value);
            if (r->direction == Direction::positive) {
                s += "<circle class=\"glyph positive\" cx=\"" + fixed(x) + "\" cy=\"" + fixed(y) + "\" r=\"" +
                     fixed(radius) + "\" fill=\"#2b6cb0\"/>\n";
            } else {
                const double h = radius * 0.866;
                s += "<polygon class=\"glyph negative\" points=\"" + fixed(x) + "," + fixed(y - radius) + " " +
                     fixed(x - h) + "," + fixed(y + radius / 2.0) + " " + fixed(x + h) + "," +
                     fixed(y + radius / 2.0) + "\" fill=\"#c53030\"/>\n";
            }
        }
    }
    s += "</svg>\n";
    return s;
}

void emit_bubble_chart(const ReportSet& reports, const std::filesystem::path& path) {
    if (reports.items.empty()) throw InputError("no item reports to chart");
    write_text_file(path, bubble_chart_svg(reports));
}

}  // namespace dyadic
