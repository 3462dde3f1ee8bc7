#include "aid/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace aid {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, std::size_t line_no, const char* what) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad " + what +
                                 " '" + text + "'");
    }
    if (consumed != text.size() || !std::isfinite(value))
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad " + what +
                                 " '" + text + "'");
    return value;
}

long parse_period(const std::string& text, std::size_t line_no) {
    const double v = parse_double(text, line_no, "period");
    if (v != std::floor(v))
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": period must be an integer, got '" + text + "'");
    return static_cast<long>(v);
}

}  // namespace

Dataset parse_dataset_csv(const std::string& path, int frequency) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");

    Dataset dataset;
    dataset.frequency = frequency;

    std::string line;
    std::size_t line_no = 0;
    // Header (skipping comment lines).
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        header = split_csv_line(line);
        break;
    }
    if (header.size() < 3 || header[0] != "series_id" || header[1] != "period" ||
        header[2] != "value")
        throw std::runtime_error(
            "header must start with 'series_id,period,value', got line " +
            std::to_string(line_no));
    dataset.exog_names.assign(header.begin() + 3, header.end());
    const std::size_t n_fields = header.size();

    struct Row {
        long period;
        double value;
        std::vector<double> exog;
    };
    std::map<std::string, std::vector<Row>> rows_by_id;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != n_fields)
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(n_fields) + " fields, got " +
                                     std::to_string(fields.size()));
        Row row;
        row.period = parse_period(fields[1], line_no);
        row.value = parse_double(fields[2], line_no, "value");
        if (row.value < 0.0)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": negative value for series '" + fields[0] + "'");
        for (std::size_t c = 3; c < n_fields; ++c)
            row.exog.push_back(parse_double(fields[c], line_no, "exogenous value"));
        rows_by_id[fields[0]].push_back(std::move(row));
    }
    if (rows_by_id.empty()) throw std::runtime_error("dataset '" + path + "' has no rows");

    for (auto& [id, rows] : rows_by_id) {
        std::sort(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return a.period < b.period; });
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].period == rows[i - 1].period)
                throw std::runtime_error("duplicate (" + id + "," +
                                         std::to_string(rows[i].period) + ")");
            if (rows[i].period != rows[i - 1].period + 1)
                throw std::runtime_error("gap in periods for series '" + id + "' between " +
                                         std::to_string(rows[i - 1].period) + " and " +
                                         std::to_string(rows[i].period));
        }
        SeriesRecord record;
        record.series.id = id;
        record.series.frequency = frequency;
        record.exog.resize(dataset.exog_names.size());
        for (const Row& row : rows) {
            record.series.values.push_back(row.value);
            for (std::size_t c = 0; c < record.exog.size(); ++c)
                record.exog[c].push_back(row.exog[c]);
        }
        dataset.records.push_back(std::move(record));
    }
    // std::map iteration already gives id order.
    return dataset;
}

void write_dataset_csv(const std::string& path, const Dataset& dataset) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset file '" + path + "'");
    out << "# schema: aid-dataset v1\n";
    out << "series_id,period,value";
    for (const auto& name : dataset.exog_names) out << ',' << name;
    out << '\n';
    char buffer[64];
    for (const auto& record : dataset.records) {
        for (std::size_t t = 0; t < record.series.values.size(); ++t) {
            std::snprintf(buffer, sizeof buffer, "%.10g", record.series.values[t]);
            out << record.series.id << ',' << (t + 1) << ',' << buffer;
            for (const auto& column : record.exog) {
                std::snprintf(buffer, sizeof buffer, "%.10g", column[t]);
                out << ',' << buffer;
            }
            out << '\n';
        }
    }
}

}  // namespace aid
