// SPDX-License-Identifier: Apache-2.0
//
// riskey: keyhole-model channel estimation for RIS-assisted MIMO links
// Copyright (C) 2026 The riskey authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "riskey/report.hpp"
#include "riskey/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace riskey
{

namespace
{

std::string optional_field(const std::optional<double> &value)
{
    return value ? format_double(*value) : std::string();
}

std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true)
    {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return fields;
}

template <typename T>
T parse_field(const std::string &text, const char *column)
{
    T value{};
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw std::runtime_error(std::string("records csv: bad value '") + text + "' in column " + column);
    return value;
}

std::optional<double> parse_optional(const std::string &text, const char *column)
{
    if (text.empty())
        return std::nullopt;
    return parse_field<double>(text, column);
}

// ---- svg ------------------------------------------------------------------

constexpr double svg_width = 720.0;
constexpr double svg_height = 460.0;
constexpr double plot_left = 80.0;
constexpr double plot_right = 560.0;
constexpr double plot_top = 30.0;
constexpr double plot_bottom = 400.0;

constexpr std::array<const char *, 6> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

double nice_step(double span, int max_ticks)
{
    const double raw = span / max_ticks;
    const double base = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0})
        if (base * mult >= raw)
            return base * mult;
    return base * 10.0;
}

std::string fmt(double v)
{
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

} // namespace

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

void write_records_csv(std::ostream &out, const std::vector<ExperimentRecord> &records,
                       const std::vector<std::string> &preamble)
{
    for (const auto &line : preamble)
        out << "# " << line << '\n';
    out << record_csv_header << '\n';
    for (const auto &r : records)
    {
        out << r.nt << ',' << r.nr << ',' << r.n << ',' << format_double(r.snr_db) << ',' << to_string(r.estimator)
            << ',' << r.trials << ',' << r.slots << ',' << optional_field(r.nmse_total) << ','
            << optional_field(r.nmse_h_aligned) << ',' << optional_field(r.nmse_g_aligned) << ','
            << format_double(r.wall_s) << '\n';
    }
}

void write_records(const std::vector<ExperimentRecord> &records, const std::filesystem::path &path,
                   const std::vector<std::string> &preamble, bool svg)
{
    if (path == "-")
    {
        if (svg)
            throw std::runtime_error("an SVG chart needs a file path for the CSV output");
        write_records_csv(std::cout, records, preamble);
        if (!std::cout.flush())
            throw std::runtime_error("failed writing CSV to standard output");
        return;
    }

    {
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        write_records_csv(out, records, preamble);
        if (!out.flush())
            throw std::runtime_error("failed writing '" + path.string() + "'");
    }
    if (svg)
    {
        std::filesystem::path svg_path = path;
        svg_path.replace_extension(".svg");
        std::ofstream out(svg_path);
        if (!out)
            throw std::runtime_error("cannot open '" + svg_path.string() + "' for writing");
        write_records_svg(out, records);
        if (!out.flush())
            throw std::runtime_error("failed writing '" + svg_path.string() + "'");
    }
}

std::vector<ExperimentRecord> read_records_csv(std::istream &in)
{
    std::vector<ExperimentRecord> records;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line))
    {
        if (line.empty() || line.front() == '#')
            continue;
        if (!header_seen)
        {
            if (line != record_csv_header)
                throw std::runtime_error("records csv: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 11)
            throw std::runtime_error("records csv: expected 11 fields, got " + std::to_string(f.size()));

        ExperimentRecord r;
        r.nt = parse_field<int>(f[0], "nt");
        r.nr = parse_field<int>(f[1], "nr");
        r.n = parse_field<int>(f[2], "n");
        r.snr_db = parse_field<double>(f[3], "snr_db");
        r.estimator = parse_estimator(f[4]);
        r.trials = parse_field<int>(f[5], "trials");
        r.slots = parse_field<std::int64_t>(f[6], "slots");
        r.nmse_total = parse_optional(f[7], "nmse_total");
        r.nmse_h_aligned = parse_optional(f[8], "nmse_h_aligned");
        r.nmse_g_aligned = parse_optional(f[9], "nmse_g_aligned");
        r.wall_s = parse_field<double>(f[10], "wall_s");
        r.feasible = r.nmse_total.has_value();
        records.push_back(r);
    }
    return records;
}

void write_records_svg(std::ostream &out, const std::vector<ExperimentRecord> &records)
{
    // series in order of first appearance
    std::vector<Estimator> order;
    std::map<Estimator, std::vector<std::pair<double, double>>> series;
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto &r : records)
    {
        if (!r.nmse_total || !(*r.nmse_total > 0.0) || !std::isfinite(*r.nmse_total))
            continue;
        if (!series.count(r.estimator))
            order.push_back(r.estimator);
        const double y = std::log10(*r.nmse_total);
        series[r.estimator].emplace_back(r.snr_db, y);
        x_min = std::min(x_min, r.snr_db);
        x_max = std::max(x_max, r.snr_db);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    if (order.empty())
    {
        x_min = 0.0;
        x_max = 1.0;
        y_min = -1.0;
        y_max = 0.0;
    }
    if (x_max <= x_min)
    {
        x_min -= 1.0;
        x_max += 1.0;
    }
    y_min = std::floor(y_min);
    y_max = std::ceil(y_max);
    if (y_max <= y_min)
        y_max = y_min + 1.0;

    auto px = [&](double x) { return plot_left + (x - x_min) / (x_max - x_min) * (plot_right - plot_left); };
    auto py = [&](double y) { return plot_bottom - (y - y_min) / (y_max - y_min) * (plot_bottom - plot_top); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_width << "\" height=\"" << svg_height
        << "\" viewBox=\"0 0 " << svg_width << ' ' << svg_height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // frame
    out << "<rect x=\"" << plot_left << "\" y=\"" << plot_top << "\" width=\"" << plot_right - plot_left
        << "\" height=\"" << plot_bottom - plot_top << "\" fill=\"none\" stroke=\"black\"/>\n";

    // decades on the NMSE axis
    for (double d = y_min; d <= y_max + 0.5; d += 1.0)
    {
        const double y = py(d);
        out << "<line x1=\"" << plot_left << "\" y1=\"" << fmt(y) << "\" x2=\"" << plot_right << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << plot_left - 8 << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">1e"
            << static_cast<int>(d) << "</text>\n";
    }

    const double step = nice_step(x_max - x_min, 8);
    for (double x = std::ceil(x_min / step) * step; x <= x_max + 1e-9 * step; x += step)
    {
        const double sx = px(x);
        out << "<line x1=\"" << fmt(sx) << "\" y1=\"" << plot_bottom << "\" x2=\"" << fmt(sx) << "\" y2=\""
            << plot_bottom + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(sx) << "\" y=\"" << plot_bottom + 20 << "\" text-anchor=\"middle\">" << fmt(x)
            << "</text>\n";
    }

    out << "<text x=\"" << (plot_left + plot_right) / 2 << "\" y=\"" << svg_height - 20
        << "\" text-anchor=\"middle\">SNR (dB)</text>\n";
    out << "<text x=\"20\" y=\"" << (plot_top + plot_bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << (plot_top + plot_bottom) / 2 << ")\">NMSE</text>\n";

    for (std::size_t s = 0; s < order.size(); ++s)
    {
        auto pts = series[order[s]];
        std::stable_sort(pts.begin(), pts.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        const char *color = palette[s % palette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            out << (i ? " " : "") << fmt(px(pts[i].first)) << ',' << fmt(py(pts[i].second));
        out << "\"/>\n";

        const double ly = plot_top + 10 + 20.0 * static_cast<double>(s);
        out << "<line x1=\"" << plot_right + 15 << "\" y1=\"" << ly << "\" x2=\"" << plot_right + 45 << "\" y2=\"" << ly
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << plot_right + 52 << "\" y=\"" << ly + 4 << "\">" << to_string(order[s]) << "</text>\n";
    }
    out << "</svg>\n";
}

void write_overhead_csv(std::ostream &out, const std::vector<OverheadReport> &rows)
{
    out << "scheme,nt,nr,n,slots,reduction_vs_lskrf\n";
    for (const auto &r : rows)
        out << to_string(r.scheme) << ',' << r.nt << ',' << r.nr << ',' << r.n << ',' << r.slots << ','
            << format_double(r.reduction_vs_lskrf) << '\n';
}

} // namespace riskey
