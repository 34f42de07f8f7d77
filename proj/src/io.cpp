#include "xicor/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "xicor/errors.hpp"

namespace xicor::io {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(delim, start);
        cells.push_back(line.substr(start, end == std::string_view::npos ? end : end - start));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return cells;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

bool parse_real(std::string_view cell, double& out) {
    cell = trim(cell);
    if (cell.empty()) return false;
    if (cell.front() == '+') cell.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size();
}

template <class Int>
Int parse_integer(std::string_view cell, std::size_t line, std::size_t column) {
    cell = trim(cell);
    Int out{};
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ParseError(line, column, "expected an integer, got '" + std::string(cell) + "'");
    }
    return out;
}

double parse_real_or_throw(std::string_view cell, std::size_t line, std::size_t column) {
    double v = 0.0;
    if (!parse_real(cell, v)) {
        throw ParseError(line, column, "expected a real number, got '" + std::string(trim(cell)) + "'");
    }
    return v;
}

Json row_to_json(const StudyRow& row) {
    Json j;
    j["method"] = row.method;
    j["n"] = row.n;
    j["M"] = row.M ? Json(*row.M) : Json(nullptr);
    j["rho"] = row.rho;
    j["replicates"] = row.replicates;
    j["seed"] = row.seed;
    Json metrics = Json::object();
    for (const auto& [name, value] : row.metrics) metrics[name] = value;
    j["metrics"] = std::move(metrics);
    return j;
}

StudyRow row_from_json(const Json& j) {
    StudyRow row;
    row.method = j.at("method").get<std::string>();
    row.n = j.at("n").get<std::size_t>();
    if (!j.at("M").is_null()) row.M = j.at("M").get<std::size_t>();
    row.rho = j.at("rho").get<double>();
    row.replicates = j.at("replicates").get<std::size_t>();
    row.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [name, value] : j.at("metrics").items()) {
        row.metrics.emplace_back(name, value.get<double>());
    }
    return row;
}

} // namespace

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Sample parse_sample(std::string_view text) {
    const auto lines = lines_of(text);
    char delim = 0;
    bool header_checked = false;
    std::vector<double> x, y;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::string_view line = trim(lines[li]);
        const std::size_t line_no = li + 1;
        if (line.empty()) continue;
        if (!delim) delim = line.find('\t') != std::string_view::npos ? '\t' : ',';
        const auto cells = split(line, delim);
        if (!header_checked) {
            header_checked = true;
            double ignored = 0.0;
            bool any_numeric = false;
            for (auto cell : cells) any_numeric = any_numeric || parse_real(cell, ignored);
            if (!any_numeric) continue;
        }
        if (cells.size() != 2) {
            throw ParseError(line_no, 0, "expected 2 columns, found " + std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < 2; ++c) {
            const double v = parse_real_or_throw(cells[c], line_no, c + 1);
            if (!std::isfinite(v)) throw ParseError(line_no, c + 1, "value is not finite");
            (c == 0 ? x : y).push_back(v);
        }
    }
    if (x.size() < 2) throw ParseError(lines.size(), 0, "need at least 2 data rows");
    return make_sample(std::move(x), std::move(y));
}

Sample load_sample(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sample(buf.str());
}

std::string to_json(const TestResult& result) {
    Json j;
    j["method"] = result.method;
    j["statistic"] = result.statistic;
    j["p_value"] = result.p_value;
    j["reject"] = result.reject;
    j["n"] = result.n;
    if (result.M) j["M"] = *result.M;
    if (result.B) j["B"] = *result.B;
    j["alpha"] = result.alpha;
    if (result.seed) j["seed"] = *result.seed;
    return j.dump(2);
}

TestResult test_result_from_json(std::string_view text) {
    const Json j = Json::parse(text);
    TestResult r;
    r.method = j.at("method").get<std::string>();
    r.statistic = j.at("statistic").get<double>();
    r.p_value = j.at("p_value").get<double>();
    r.reject = j.at("reject").get<bool>();
    r.n = j.at("n").get<std::size_t>();
    if (j.contains("M")) r.M = j["M"].get<std::size_t>();
    if (j.contains("B")) r.B = j["B"].get<std::size_t>();
    r.alpha = j.at("alpha").get<double>();
    if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
    return r;
}

std::string to_json(const StudyReport& report) {
    Json j;
    j["schema_version"] = report.schema_version;
    j["study"] = report.study;
    j["master_seed"] = report.master_seed;
    Json rows = Json::array();
    for (const auto& row : report.rows) rows.push_back(row_to_json(row));
    j["rows"] = std::move(rows);
    return j.dump(2);
}

StudyReport report_from_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(0, 0, e.what());
    }
    StudyReport report;
    report.schema_version = j.at("schema_version").get<int>();
    if (report.schema_version != StudyReport::kSchemaVersion) {
        throw ParseError(0, 0, "unsupported schema_version " + std::to_string(report.schema_version));
    }
    report.study = j.at("study").get<std::string>();
    report.master_seed = j.at("master_seed").get<std::uint64_t>();
    for (const auto& row : j.at("rows")) report.rows.push_back(row_from_json(row));
    return report;
}

std::string to_csv(const StudyReport& report) {
    std::vector<std::string> names;
    for (const auto& row : report.rows) {
        for (const auto& [name, value] : row.metrics) {
            if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
        }
    }
    std::ostringstream out;
    out << "study,schema_version,master_seed,method,n,M,rho,replicates,seed";
    for (const auto& name : names) out << ',' << name;
    out << '\n';
    for (const auto& row : report.rows) {
        out << report.study << ',' << report.schema_version << ',' << report.master_seed << ','
            << row.method << ',' << row.n << ',';
        if (row.M) out << *row.M;
        out << ',' << format_real(row.rho) << ',' << row.replicates << ',' << row.seed;
        for (const auto& name : names) {
            out << ',';
            if (const auto v = row.metric(name)) out << format_real(*v);
        }
        out << '\n';
    }
    return out.str();
}

StudyReport report_from_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw ParseError(1, 0, "empty report");
    const auto header = split(trim(lines[0]), ',');
    constexpr std::size_t kFixed = 9;
    if (header.size() < kFixed || header[0] != "study") throw ParseError(1, 0, "not a study report header");

    StudyReport report;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        const auto line = trim(lines[li]);
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            throw ParseError(line_no, 0, "expected " + std::to_string(header.size()) + " columns");
        }
        report.study = std::string(cells[0]);
        report.schema_version = parse_integer<int>(cells[1], line_no, 2);
        report.master_seed = parse_integer<std::uint64_t>(cells[2], line_no, 3);
        StudyRow row;
        row.method = std::string(cells[3]);
        row.n = parse_integer<std::size_t>(cells[4], line_no, 5);
        if (!trim(cells[5]).empty()) row.M = parse_integer<std::size_t>(cells[5], line_no, 6);
        row.rho = parse_real_or_throw(cells[6], line_no, 7);
        row.replicates = parse_integer<std::size_t>(cells[7], line_no, 8);
        row.seed = parse_integer<std::uint64_t>(cells[8], line_no, 9);
        for (std::size_t c = kFixed; c < cells.size(); ++c) {
            if (trim(cells[c]).empty()) continue;
            row.metrics.emplace_back(std::string(header[c]), parse_real_or_throw(cells[c], line_no, c + 1));
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace xicor::io
