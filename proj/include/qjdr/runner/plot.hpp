// Copyright 2026 The qjdr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Self-contained SVG rendering of a sweep: error probability against pulse
 * magnitude on a logarithmic axis. The classical baseline is drawn as a line;
 * each temperature contributes trained-receiver dots and optimal-bound
 * markers. Every series is a `<g class="series ...">` group.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../error.hpp"
#include "../transduction.hpp"
#include "sweep.hpp"

namespace qjdr {

inline constexpr double kPlotFloor = 1e-6;

struct PlotOptions {
    /// Used to recover temperatures from nbar when rows carry none.
    double frequency_hz = 10e9;
    int width = 720;
    int height = 480;
};

namespace detail {

inline std::string fmt(const char *spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

inline std::string xml_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string temperature_label(const SweepRow &row, double frequency_hz) {
    double t = row.temperature_kelvin;
    if (!std::isfinite(t) && row.nbar > 0.0) {
        t = kPlanck * frequency_hz / (kBoltzmann * std::log1p(1.0 / row.nbar));
    }
    if (!std::isfinite(t)) {
        return "T → 0 K";
    }
    return "T = " + fmt("%.3g", t) + " K";
}

} // namespace detail

inline void write_plot(const std::vector<SweepRow> &rows, std::ostream &out,
                       const PlotOptions &opts = {}) {
    if (rows.empty()) {
        throw InputError("emit_plot: no rows to plot");
    }
    const double left = 70, right = 190, top = 30, bottom = 55;
    const double pw = opts.width - left - right;
    const double ph = opts.height - top - bottom;

    auto clip = [](double p) { return std::clamp(p, kPlotFloor, 1.0); };
    double x_max = 0.0;
    double y_min = 1.0;
    for (const auto &r : rows) {
        x_max = std::max(x_max, r.magnitude);
        for (double p : {r.p_err_classical, r.p_err_optimal, r.p_err_vqc}) {
            y_min = std::min(y_min, clip(p));
        }
    }
    x_max = x_max > 0.0 ? x_max * 1.05 : 1.0;
    const int decade_lo = std::min(-1, static_cast<int>(std::floor(std::log10(y_min))));
    auto sx = [&](double m) { return left + pw * m / x_max; };
    auto sy = [&](double p) {
        return top + ph * (0.0 - std::log10(clip(p))) / (0.0 - decade_lo);
    };

    // Series keyed by nbar in first-appearance order.
    std::vector<double> keys;
    std::map<double, std::vector<SweepRow>> groups;
    for (const auto &r : rows) {
        if (!groups.count(r.nbar)) {
            keys.push_back(r.nbar);
        }
        groups[r.nbar].push_back(r);
    }
    for (auto &[k, g] : groups) {
        std::sort(g.begin(), g.end(),
                  [](const SweepRow &a, const SweepRow &b) { return a.magnitude < b.magnitude; });
    }
    static const char *palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width
        << "\" height=\"" << opts.height << "\" viewBox=\"0 0 " << opts.width << ' '
        << opts.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    out << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
        << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw
        << "\" height=\"" << ph << "\"/>\n";
    for (int d = decade_lo; d <= 0; ++d) {
        const double y = sy(std::pow(10.0, d));
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::fmt("%.2f", y) << "\" x2=\""
            << left << "\" y2=\"" << detail::fmt("%.2f", y) << "\"/>\n";
    }
    const int xticks = 5;
    for (int i = 0; i <= xticks; ++i) {
        const double x = left + pw * i / xticks;
        out << "<line x1=\"" << detail::fmt("%.2f", x) << "\" y1=\"" << top + ph << "\" x2=\""
            << detail::fmt("%.2f", x) << "\" y2=\"" << top + ph + 5 << "\"/>\n";
    }
    out << "</g>\n<g class=\"labels\" fill=\"black\">\n";
    for (int d = decade_lo; d <= 0; ++d) {
        out << "<text x=\"" << left - 8 << "\" y=\"" << detail::fmt("%.2f", sy(std::pow(10.0, d)) + 4)
            << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    for (int i = 0; i <= xticks; ++i) {
        out << "<text x=\"" << detail::fmt("%.2f", left + pw * i / xticks) << "\" y=\""
            << top + ph + 18 << "\" text-anchor=\"middle\">"
            << detail::fmt("%.2f", x_max * i / xticks) << "</text>\n";
    }
    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << opts.height - 12
        << "\" text-anchor=\"middle\">|α|</text>\n"
        << "<text transform=\"translate(18," << top + ph / 2
        << ") rotate(-90)\" text-anchor=\"middle\">p_err</text>\n</g>\n";

    // Classical baseline does not depend on temperature.
    std::map<double, double> classical;
    for (const auto &r : rows) {
        classical.emplace(r.magnitude, r.p_err_classical);
    }
    out << "<g class=\"series line\" data-label=\"classical\" stroke=\"black\" "
           "stroke-width=\"1.5\" fill=\"none\">\n<polyline points=\"";
    bool first = true;
    for (const auto &[m, p] : classical) {
        out << (first ? "" : " ") << detail::fmt("%.2f", sx(m)) << ','
            << detail::fmt("%.2f", sy(p));
        first = false;
    }
    out << "\"/>\n</g>\n";

    std::vector<std::string> legend{"classical single-pulse"};
    std::vector<std::string> legend_color{"black"};
    for (std::size_t s = 0; s < keys.size(); ++s) {
        const auto &g = groups[keys[s]];
        const std::string color = palette[s % std::size(palette)];
        const std::string label = detail::xml_escape(detail::temperature_label(g.front(), opts.frequency_hz));

        out << "<g class=\"series points\" data-label=\"vqc " << label << "\" fill=\"" << color
            << "\">\n";
        for (const auto &r : g) {
            out << "<circle cx=\"" << detail::fmt("%.2f", sx(r.magnitude)) << "\" cy=\""
                << detail::fmt("%.2f", sy(r.p_err_vqc)) << "\" r=\"3.5\"/>\n";
        }
        out << "</g>\n";
        out << "<g class=\"series points\" data-label=\"optimal " << label
            << "\" fill=\"none\" stroke=\"" << color << "\">\n";
        for (const auto &r : g) {
            out << "<rect x=\"" << detail::fmt("%.2f", sx(r.magnitude) - 4) << "\" y=\""
                << detail::fmt("%.2f", sy(r.p_err_optimal) - 4)
                << "\" width=\"8\" height=\"8\"/>\n";
        }
        out << "</g>\n";
        legend.push_back("trained circuit, " + label);
        legend_color.push_back(color);
        legend.push_back("optimal POVM, " + label);
        legend_color.push_back(color);
    }

    out << "<g class=\"legend\">\n";
    for (std::size_t i = 0; i < legend.size(); ++i) {
        const double y = top + 10 + 18.0 * static_cast<double>(i);
        const double x = left + pw + 12;
        if (i == 0) {
            out << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 14 << "\" y2=\"" << y
                << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        } else if (i % 2 == 1) {
            out << "<circle cx=\"" << x + 7 << "\" cy=\"" << y << "\" r=\"3.5\" fill=\""
                << legend_color[i] << "\"/>\n";
        } else {
            out << "<rect x=\"" << x + 3 << "\" y=\"" << y - 4
                << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"" << legend_color[i]
                << "\"/>\n";
        }
        out << "<text x=\"" << x + 20 << "\" y=\"" << y + 4 << "\" font-size=\"10\">"
            << legend[i] << "</text>\n";
    }
    out << "</g>\n</svg>\n";
}

inline void emit_plot(const std::vector<SweepRow> &rows, const std::string &path,
                      const PlotOptions &opts = {}) {
    std::ostringstream buffer;
    write_plot(rows, buffer, opts);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << buffer.str();
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

} // namespace qjdr
