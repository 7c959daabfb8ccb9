#pragma once

// File-format plumbing: CSV ingestion (observations or count tables),
// margin spec strings, joint pmf JSON files, and number formatting for
// reports.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "cbcop/joint_pmf.hpp"
#include "cbcop/margin.hpp"

namespace cbcop {

struct CsvTable {
    std::size_t rows = 0, cols = 0;
    std::vector<double> values; // row-major
};

// Comma-separated numeric matrix; one optional header row (detected by
// non-numeric cells).  Ragged or non-numeric data rows raise
// validation_error with the line number.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

// Margin specs: "binomial(3,0.5)", "poisson(1)", "geometric(0.5)",
// "pmf(0.5,0.5)".  Case-insensitive name, numeric arguments.
DiscreteMargin parse_margin(const std::string& spec);

// Joint pmf JSON: {"margins": [<spec string> | {"pmf": [...], "support":
// [...]} , ...], "cells": <flat or nested row-major array>}.
JointPmf read_joint_pmf(std::istream& in);
JointPmf read_joint_pmf_file(const std::string& path);
void write_joint_pmf(const JointPmf& pmf, std::ostream& out);

// 6 significant digits, the default report precision.
std::string format_number(double x);
// Shortest representation that round-trips exactly (for structured output).
std::string format_full(double x);

} // namespace cbcop
