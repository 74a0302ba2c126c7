#pragma once

#include "ssmp/exponents.hpp"
#include "ssmp/spectrum.hpp"
#include "ssmp/transform.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ssmp {

// JSON readers; unknown keys and missing required keys raise Validation.
BernsteinFunction parse_family(const std::string& json);
Exponent parse_exponent(const std::string& json);
GridSpec parse_grid(const std::string& json);

std::string report_json(const SpectrumReport& r);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
};

// UTF-8, header row, %.17g, LF endings.
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// Test functions on the log scale x:
//   h:eps:beta   e^{-(1/2+eps)x - beta e^{-x}}
//   gauss:a      e^{-(x-a)^2}
//   csv:path     columns x, re, im on exactly this grid
GridFunction function_on_grid(const std::string& spec, const GridSpec& grid);

// The same specs read on the r = e^x scale for Monte Carlo, plus "r" for
// the identity f(r) = r. csv:path is interpolated and needs a grid.
std::function<double(double)> function_on_r(const std::string& spec, const GridSpec* grid = nullptr);

} // namespace ssmp
