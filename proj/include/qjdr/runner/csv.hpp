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
 * Sweep CSV reader and writer.
 *
 * Header: magnitude,alpha_sq,nbar,p_err_classical,p_err_optimal,p_err_pgm,
 * p_err_vqc,ykl_residual,train_iterations,seed. Reals use 12 significant
 * digits, lines end with '\n'.
 */

#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "../error.hpp"
#include "sweep.hpp"

namespace qjdr {

inline constexpr const char *kSweepCsvHeader =
    "magnitude,alpha_sq,nbar,p_err_classical,p_err_optimal,p_err_pgm,p_err_vqc,"
    "ykl_residual,train_iterations,seed";

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void write_csv(const std::vector<SweepRow> &rows, std::ostream &out) {
    out << kSweepCsvHeader << '\n';
    for (const auto &r : rows) {
        out << format_real(r.magnitude) << ',' << format_real(r.alpha_sq) << ','
            << format_real(r.nbar) << ',' << format_real(r.p_err_classical) << ','
            << format_real(r.p_err_optimal) << ',' << format_real(r.p_err_pgm) << ','
            << format_real(r.p_err_vqc) << ',' << format_real(r.ykl_residual) << ','
            << r.train_iterations << ',' << r.seed << '\n';
    }
}

inline void emit_csv(const std::vector<SweepRow> &rows, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_csv(rows, out);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

inline std::vector<SweepRow> parse_csv(std::istream &in,
                                       const std::string &source = "<csv>") {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || line != kSweepCsvHeader) {
        throw ParseError(source + ":1: missing or unexpected CSV header");
    }
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 10) {
            throw ParseError(source + ":" + std::to_string(lineno) + ": expected 10 columns, found " +
                             std::to_string(cells.size()));
        }
        try {
            auto real = [&](std::size_t i) {
                // strtod rather than stod: subnormal values are valid here.
                char *end = nullptr;
                const double v = std::strtod(cells[i].c_str(), &end);
                if (cells[i].empty() || end != cells[i].c_str() + cells[i].size()) {
                    throw std::invalid_argument(cells[i]);
                }
                return v;
            };
            SweepRow r;
            r.magnitude = real(0);
            r.alpha_sq = real(1);
            r.nbar = real(2);
            r.p_err_classical = real(3);
            r.p_err_optimal = real(4);
            r.p_err_pgm = real(5);
            r.p_err_vqc = real(6);
            r.ykl_residual = real(7);
            r.train_iterations = std::stoi(cells[8]);
            r.seed = std::stoull(cells[9]);
            rows.push_back(r);
        } catch (const std::exception &) {
            throw ParseError(source + ":" + std::to_string(lineno) + ": malformed value");
        }
    }
    return rows;
}

inline std::vector<SweepRow> load_csv(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return parse_csv(in, path);
}

} // namespace qjdr
