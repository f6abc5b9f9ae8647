// Artifact writers for experiment runs. CSV numbers use 17 significant
// digits so doubles survive a text round trip; JSON summaries are printed
// with sorted keys and two-space indentation so reruns diff cleanly.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

namespace bpnm {

// Shortest-round-trip decimal rendering (printf %.17g).
std::string format_double(double value);

// Header line, then one comma-separated line per matrix row.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows);

// Coefficient ensemble with header sample_index, u_0, ..., u_N.
void write_samples_csv(const std::string& path, const Eigen::MatrixXd& states);

// Evaluation grid with header t1[, t2], mean, std; points holds one
// coordinate column per domain dimension.
void write_grid_csv(const std::string& path, const Eigen::MatrixXd& points,
                    const Eigen::VectorXd& mean, const Eigen::VectorXd& std);

// For tables mixing text and numeric columns (risk tables); cells are
// written verbatim, so numeric cells should come from format_double.
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

void write_json_file(const std::string& path, const nlohmann::json& doc);

// Reads a whole text file; throws bpnm::Error when unreadable.
std::string read_text_file(const std::string& path);

}  // namespace bpnm
