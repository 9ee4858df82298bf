#include "xsdep/panel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "xsdep/errors.hpp"

namespace xsdep {

void PanelDataset::validate() const {
    if (n_sections < 1 || n_periods < 1 || n_regressors < 0)
        throw DimensionError("panel needs N >= 1, T >= 1, p >= 0");
    if (y.rows() != n_sections || y.cols() != n_periods)
        throw DimensionError("y must be N x T");
    if (static_cast<long>(x.size()) != n_sections)
        throw DimensionError("need one design matrix per section");
    for (long i = 0; i < n_sections; ++i) {
        if (x[i].rows() != n_periods || x[i].cols() != n_regressors)
            throw DimensionError("design of section " + std::to_string(i) +
                                 " must be T x p");
        if (!x[i].allFinite())
            throw DimensionError("design of section " + std::to_string(i) +
                                 " has non-finite entries");
    }
    if (!y.allFinite()) throw DimensionError("y has non-finite entries");
    if (n_periods <= n_regressors)
        throw DimensionError(
            "T must exceed p (residual correlations are well-defined only "
            "for T > p); got T=" +
            std::to_string(n_periods) + ", p=" + std::to_string(n_regressors));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim ASCII whitespace on both ends
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string()
                                             : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

long parse_integer_cell(const std::string& s, long row, long col) {
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw ParseError("expected an integer id, got \"" + s + "\" at row " +
                             std::to_string(row) + ", column " +
                             std::to_string(col),
                         row, col);
    return static_cast<long>(v);
}

double parse_numeric_cell(const std::string& s, long row, long col) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw ParseError("expected a finite number, got \"" + s +
                             "\" at row " + std::to_string(row) + ", column " +
                             std::to_string(col),
                         row, col);
    return v;
}

}  // namespace

PanelDataset load_panel_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open panel CSV: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty file: " + path, 1, 1);
    const auto header = split_csv_line(line);

    long unit_idx = -1, time_idx = -1, y_idx = -1;
    std::vector<long> x_idx;
    for (long c = 0; c < static_cast<long>(header.size()); ++c) {
        if (header[c] == schema.unit_col)
            unit_idx = c;
        else if (header[c] == schema.time_col)
            time_idx = c;
        else if (header[c] == schema.y_col)
            y_idx = c;
        else
            x_idx.push_back(c);
    }
    if (unit_idx < 0 || time_idx < 0 || y_idx < 0)
        throw ParseError("header must contain columns \"" + schema.unit_col +
                             "\", \"" + schema.time_col + "\", \"" +
                             schema.y_col + "\"",
                         1, 1);
    const long p_raw = static_cast<long>(x_idx.size());

    struct Row {
        long unit;
        long time;
        double y;
        std::vector<double> x;
    };
    std::vector<Row> rows;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv_line(line);
        if (static_cast<long>(cells.size()) != static_cast<long>(header.size()))
            throw ParseError("row " + std::to_string(lineno) + " has " +
                                 std::to_string(cells.size()) +
                                 " fields, header has " +
                                 std::to_string(header.size()),
                             lineno, 1);
        Row r;
        r.unit = parse_integer_cell(cells[unit_idx], lineno, unit_idx + 1);
        r.time = parse_integer_cell(cells[time_idx], lineno, time_idx + 1);
        r.y = parse_numeric_cell(cells[y_idx], lineno, y_idx + 1);
        r.x.reserve(p_raw);
        for (long c : x_idx)
            r.x.push_back(parse_numeric_cell(cells[c], lineno, c + 1));
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw ParseError("no data rows in " + path, 2, 1);

    // Global time grid = sorted union of all observed times. Every unit must
    // cover it exactly once per period.
    std::vector<long> grid;
    for (const auto& r : rows) grid.push_back(r.time);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const long T = static_cast<long>(grid.size());
    std::map<long, long> time_pos;
    for (long t = 0; t < T; ++t) time_pos[grid[t]] = t;

    std::map<long, std::vector<long>> unit_times;  // sorted by unit id
    for (const auto& r : rows) unit_times[r.unit].push_back(r.time);

    std::vector<long> offending;
    for (auto& [unit, times] : unit_times) {
        std::sort(times.begin(), times.end());
        if (times != grid) offending.push_back(unit);
    }
    if (!offending.empty()) {
        std::string msg = "unbalanced panel; offending units:";
        for (long u : offending) msg += " " + std::to_string(u);
        throw BalanceError(msg, offending);
    }

    const long N = static_cast<long>(unit_times.size());
    std::map<long, long> unit_pos;
    {
        long i = 0;
        for (const auto& [unit, times] : unit_times) unit_pos[unit] = i++;
    }

    const long p = p_raw + (schema.add_intercept ? 1 : 0);
    PanelDataset data;
    data.n_sections = N;
    data.n_periods = T;
    data.n_regressors = p;
    data.y.setZero(N, T);
    data.x.assign(N, Eigen::MatrixXd::Zero(T, p));
    if (schema.add_intercept)
        for (auto& xi : data.x) xi.col(0).setOnes();

    for (const auto& r : rows) {
        const long i = unit_pos[r.unit];
        const long t = time_pos[r.time];
        data.y(i, t) = r.y;
        const long off = schema.add_intercept ? 1 : 0;
        for (long c = 0; c < p_raw; ++c) data.x[i](t, off + c) = r.x[c];
    }

    data.validate();
    return data;
}

}  // namespace xsdep
