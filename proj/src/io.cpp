#include "cbcop/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cbcop/errors.hpp"

namespace cbcop {

namespace {

bool parse_double(std::string token, double& out) {
    // Trim surrounding whitespace, then require full consumption.
    const auto notspace = [](unsigned char ch) { return !std::isspace(ch); };
    token.erase(token.begin(), std::find_if(token.begin(), token.end(), notspace));
    token.erase(std::find_if(token.rbegin(), token.rend(), notspace).base(), token.end());
    if (token.empty())
        return false;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> tokens;
    std::string token;
    std::stringstream ss(line);
    while (std::getline(ss, token, ','))
        tokens.push_back(token);
    if (!line.empty() && line.back() == ',')
        tokens.emplace_back();
    return tokens;
}

} // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    bool first_content_row = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto tokens = split_line(line);

        std::vector<double> row;
        row.reserve(tokens.size());
        bool numeric = true;
        for (const auto& tok : tokens) {
            double x;
            if (!parse_double(tok, x)) {
                numeric = false;
                break;
            }
            row.push_back(x);
        }

        if (!numeric) {
            if (first_content_row) {
                first_content_row = false; // header row
                continue;
            }
            throw validation_error("csv: line " + std::to_string(lineno) +
                                   ": non-numeric value");
        }
        if (table.rows == 0) {
            table.cols = row.size();
        } else if (row.size() != table.cols) {
            throw validation_error("csv: line " + std::to_string(lineno) + ": expected " +
                                   std::to_string(table.cols) + " columns, found " +
                                   std::to_string(row.size()));
        }
        first_content_row = false;
        table.values.insert(table.values.end(), row.begin(), row.end());
        ++table.rows;
    }
    if (table.rows == 0)
        throw validation_error("csv: no data rows");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("csv: cannot open " + path);
    return read_csv(in);
}

DiscreteMargin parse_margin(const std::string& spec) {
    std::string text;
    for (const char ch : spec)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            text.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));

    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')')
        throw validation_error("margin spec: expected name(args): " + spec);
    const std::string name = text.substr(0, open);
    const std::string args_text = text.substr(open + 1, text.size() - open - 2);

    std::vector<double> args;
    std::string token;
    std::stringstream ss(args_text);
    while (std::getline(ss, token, ',')) {
        double x;
        if (!parse_double(token, x))
            throw validation_error("margin spec: bad numeric argument in " + spec);
        args.push_back(x);
    }

    if (name == "binomial") {
        if (args.size() != 2 || args[0] != std::floor(args[0]))
            throw validation_error("margin spec: binomial needs (trials, p)");
        return DiscreteMargin::binomial(static_cast<int>(args[0]), args[1]);
    }
    if (name == "poisson") {
        if (args.size() != 1)
            throw validation_error("margin spec: poisson needs (lambda)");
        return DiscreteMargin::poisson(args[0]);
    }
    if (name == "geometric") {
        if (args.size() != 1)
            throw validation_error("margin spec: geometric needs (p)");
        return DiscreteMargin::geometric(args[0]);
    }
    if (name == "pmf") {
        if (args.empty())
            throw validation_error("margin spec: pmf needs at least one weight");
        return DiscreteMargin::from_pmf(args);
    }
    throw validation_error("margin spec: unknown family " + name);
}

namespace {

void flatten_cells(const nlohmann::json& node, std::vector<double>& out) {
    if (node.is_array()) {
        for (const auto& child : node)
            flatten_cells(child, out);
        return;
    }
    if (!node.is_number())
        throw validation_error("joint pmf: cells must be numeric");
    out.push_back(node.get<double>());
}

DiscreteMargin margin_from_json(const nlohmann::json& node) {
    if (node.is_string())
        return parse_margin(node.get<std::string>());
    if (!node.is_object() || !node.contains("pmf"))
        throw validation_error("joint pmf: margin entries need a pmf or a spec string");
    std::vector<double> pmf = node.at("pmf").get<std::vector<double>>();
    std::vector<double> support;
    if (node.contains("support"))
        support = node.at("support").get<std::vector<double>>();
    return DiscreteMargin::from_pmf(std::move(pmf), std::move(support));
}

} // namespace

JointPmf read_joint_pmf(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("joint pmf: invalid json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("margins") || !doc.contains("cells"))
        throw validation_error("joint pmf: need \"margins\" and \"cells\"");

    std::vector<DiscreteMargin> margins;
    for (const auto& node : doc.at("margins"))
        margins.push_back(margin_from_json(node));

    std::vector<double> cells;
    flatten_cells(doc.at("cells"), cells);
    return JointPmf(std::move(margins), std::move(cells));
}

JointPmf read_joint_pmf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("joint pmf: cannot open " + path);
    return read_joint_pmf(in);
}

void write_joint_pmf(const JointPmf& pmf, std::ostream& out) {
    nlohmann::json doc;
    doc["margins"] = nlohmann::json::array();
    for (std::size_t j = 0; j < pmf.dim(); ++j) {
        nlohmann::json m;
        m["support"] = pmf.margin(j).support();
        m["pmf"] = pmf.margin(j).pmf();
        doc["margins"].push_back(std::move(m));
    }
    doc["cells"] = pmf.cells();
    out << doc.dump(2) << '\n';
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string format_full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace cbcop
