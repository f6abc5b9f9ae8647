#include "bpnm/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bpnm/errors.hpp"

namespace bpnm {

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write to '" + path + "'");
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows) {
    if (static_cast<int>(header.size()) != rows.cols() &&
        !(rows.rows() == 0 && rows.cols() == 0))
        throw RangeError("csv header width does not match the row width");
    std::ofstream out = open_for_write(path);
    for (std::size_t j = 0; j < header.size(); ++j)
        out << (j ? "," : "") << header[j];
    out << "\n";
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        for (Eigen::Index j = 0; j < rows.cols(); ++j)
            out << (j ? "," : "") << format_double(rows(i, j));
        out << "\n";
    }
    if (!out) throw Error("short write to '" + path + "'");
}

void write_samples_csv(const std::string& path,
                       const Eigen::MatrixXd& states) {
    std::ofstream out = open_for_write(path);
    out << "sample_index";
    for (Eigen::Index j = 0; j < states.cols(); ++j) out << ",u_" << j;
    out << "\n";
    for (Eigen::Index i = 0; i < states.rows(); ++i) {
        out << i;
        for (Eigen::Index j = 0; j < states.cols(); ++j)
            out << "," << format_double(states(i, j));
        out << "\n";
    }
    if (!out) throw Error("short write to '" + path + "'");
}

void write_grid_csv(const std::string& path, const Eigen::MatrixXd& points,
                    const Eigen::VectorXd& mean, const Eigen::VectorXd& std) {
    if (points.rows() != mean.size() || points.rows() != std.size())
        throw RangeError("grid columns must all have the same length");
    if (points.cols() < 1 || points.cols() > 2)
        throw RangeError("grid points must have one or two coordinates");
    std::vector<std::string> header;
    header.emplace_back("t1");
    if (points.cols() == 2) header.emplace_back("t2");
    header.emplace_back("mean");
    header.emplace_back("std");
    Eigen::MatrixXd rows(points.rows(), points.cols() + 2);
    rows.leftCols(points.cols()) = points;
    rows.col(points.cols()) = mean;
    rows.col(points.cols() + 1) = std;
    write_csv(path, header, rows);
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out = open_for_write(path);
    for (std::size_t j = 0; j < header.size(); ++j)
        out << (j ? "," : "") << header[j];
    out << "\n";
    for (const std::vector<std::string>& row : rows) {
        if (row.size() != header.size())
            throw RangeError("csv header width does not match the row width");
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? "," : "") << row[j];
        out << "\n";
    }
    if (!out) throw Error("short write to '" + path + "'");
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out = open_for_write(path);
    out << doc.dump(2) << "\n";
    if (!out) throw Error("short write to '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace bpnm
