#include <algorithm>
#include <charconv>
#include <string>

#include "ordeval/report.hpp"

namespace ordeval {
namespace {

// Track geometry. The vertical axis sits at kCenterX; upward bars grow
// right, downward bars grow left, kPxPerUnit pixels per factor unit.
constexpr double kCenterX = 350.0;
constexpr double kWidth = 550.0;
constexpr double kTopMargin = 64.0;
constexpr double kTrackH = 64.0;
constexpr double kBottomMargin = 16.0;

constexpr const char* kAxisColor = "#333333";
constexpr const char* kNaColor = "#777777";

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, ptr);
}

std::string xml_escape(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Palette {
    const char* up;
    const char* down;
};

Palette palette(const PlotOptions& options) {
    if (options.colorblind) return {"#e66101", "#5e3c99"};
    return {"#d62728", "#1f77b4"};
}

void open_svg(std::string& out, double height, std::string_view title) {
    const std::string h = fmt(height);
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
           "\" height=\"" + h + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + h + "\">\n";
    out += "  <title>" + xml_escape(title) + "</title>\n";
    out += "  <text x=\"12.00\" y=\"28.00\" font-family=\"sans-serif\" font-size=\"16\">" +
           xml_escape(title) + "</text>\n";
    out += "  <text x=\"" + fmt(kCenterX - 10.0) +
           "\" y=\"50.00\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"end\" fill=\"" + std::string(kAxisColor) +
           "\">downward</text>\n";
    out += "  <text x=\"" + fmt(kCenterX + 10.0) +
           "\" y=\"50.00\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
           std::string(kAxisColor) + "\">upward</text>\n";
}

void track_axis(std::string& out, double y0) {
    out += "  <line x1=\"" + fmt(kCenterX) + "\" y1=\"" + fmt(y0 + 6.0) +
           "\" x2=\"" + fmt(kCenterX) + "\" y2=\"" + fmt(y0 + 50.0) +
           "\" stroke=\"" + std::string(kAxisColor) + "\"/>\n";
}

void track_label(std::string& out, double y0, std::string_view text,
                 std::string_view sub) {
    out += "  <text x=\"12.00\" y=\"" + fmt(y0 + (sub.empty() ? 40.0 : 34.0)) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(text) +
           "</text>\n";
    if (!sub.empty())
        out += "  <text x=\"12.00\" y=\"" + fmt(y0 + 50.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
               std::string(kNaColor) + "\">" + xml_escape(sub) + "</text>\n";
}

// One factor cell: bar (or "n/a"), with its null box-and-whiskers above.
// sign is +1 for upward (right of axis), -1 for downward (left).
void render_cell(std::string& out, const ReportCell& cell, int sign, double y0,
                 const char* color) {
    auto x_of = [&](double factor) { return kCenterX + sign * factor * kPxPerUnit; };

    if (cell.probability) {
        const double len = *cell.probability * kPxPerUnit;
        const double x = sign > 0 ? kCenterX : kCenterX - len;
        out += "  <rect class=\"factor-bar\" x=\"" + fmt(x) + "\" y=\"" +
               fmt(y0 + 28.0) + "\" width=\"" + fmt(len) +
               "\" height=\"16.00\" fill=\"" + std::string(color) + "\"/>\n";
    } else {
        const double x = kCenterX + sign * 8.0;
        out += "  <text class=\"na-label\" x=\"" + fmt(x) + "\" y=\"" +
               fmt(y0 + 40.0) + "\" font-family=\"sans-serif\" font-size=\"11\"" +
               (sign > 0 ? std::string() : std::string(" text-anchor=\"end\"")) +
               " fill=\"" + std::string(kNaColor) + "\">n/a</text>\n";
    }

    if (!cell.box) return;
    const ConfidenceBox& box = *cell.box;
    const double wy = y0 + 16.0;
    auto hline = [&](double xa, double xb, double y) {
        out += "  <line class=\"box-whisker\" x1=\"" + fmt(xa) + "\" y1=\"" +
               fmt(y) + "\" x2=\"" + fmt(xb) + "\" y2=\"" + fmt(y) +
               "\" stroke=\"" + std::string(kAxisColor) + "\"/>\n";
    };
    auto vline = [&](double x, double ya, double yb) {
        out += "  <line class=\"box-whisker\" x1=\"" + fmt(x) + "\" y1=\"" +
               fmt(ya) + "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(yb) +
               "\" stroke=\"" + std::string(kAxisColor) + "\"/>\n";
    };
    hline(x_of(box.whisker_low), x_of(box.whisker_high), wy);
    vline(x_of(box.whisker_low), wy - 3.0, wy + 3.0);
    vline(x_of(box.whisker_high), wy - 3.0, wy + 3.0);
    const double q_lo = std::min(x_of(box.q1), x_of(box.q3));
    const double q_w = std::abs(x_of(box.q3) - x_of(box.q1));
    out += "  <rect class=\"null-box\" x=\"" + fmt(q_lo) + "\" y=\"" +
           fmt(wy - 5.0) + "\" width=\"" + fmt(q_w) +
           "\" height=\"10.00\" fill=\"none\" stroke=\"" +
           std::string(kAxisColor) + "\"/>\n";
    vline(x_of(box.median), wy - 5.0, wy + 5.0);
}

}  // namespace

std::string render_attribute_plot(const EvaluationReport& report,
                                  std::string_view attribute,
                                  const PlotOptions& options) {
    const ReportAttribute& attr = report.attribute(attribute);
    const Palette colors = palette(options);
    const std::size_t tracks = attr.up.size();
    const double height = kTopMargin + kTrackH * static_cast<double>(tracks) +
                          kBottomMargin;

    std::string out;
    open_svg(out, height, attr.name + ": reinforcement factors by value");
    for (std::size_t s = 0; s < tracks; ++s) {
        const double y0 = kTopMargin + kTrackH * static_cast<double>(s);
        track_axis(out, y0);
        track_label(out, y0, std::to_string(attr.scale.min + static_cast<int>(s)), "");
        render_cell(out, attr.down[s], -1, y0, colors.down);
        render_cell(out, attr.up[s], +1, y0, colors.up);
    }
    out += "</svg>\n";
    return out;
}

std::string render_summary_plot(const EvaluationReport& report,
                                const PlotOptions& options) {
    const Palette colors = palette(options);

    std::vector<std::size_t> order(report.attributes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto strength = [&](std::size_t i) {
        const ReportAttribute& a = report.attributes[i];
        return std::max(a.up_aggregate.probability.value_or(-1.0),
                        a.down_aggregate.probability.value_or(-1.0));
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return strength(a) > strength(b);
    });

    const double height = kTopMargin + kTrackH * static_cast<double>(order.size()) +
                          kBottomMargin;
    std::string out;
    open_svg(out, height, "aggregate reinforcement factors");
    for (std::size_t t = 0; t < order.size(); ++t) {
        const ReportAttribute& attr = report.attributes[order[t]];
        const double y0 = kTopMargin + kTrackH * static_cast<double>(t);
        track_axis(out, y0);
        track_label(out, y0, attr.name, attr.kano);
        render_cell(out, attr.down_aggregate, -1, y0, colors.down);
        render_cell(out, attr.up_aggregate, +1, y0, colors.up);
    }
    out += "</svg>\n";
    return out;
}

}  // namespace ordeval
