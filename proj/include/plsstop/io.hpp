#ifndef PLSSTOP_IO_HPP
#define PLSSTOP_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "plsstop/criteria.hpp"
#include "plsstop/dataset.hpp"
#include "plsstop/evaluation.hpp"
#include "plsstop/simulation.hpp"

// CSV input/output. All files are UTF-8, comma-separated, '.' decimal
// point, header row required. Floats are written with the shortest
// round-trip representation, so identical doubles always produce identical
// bytes and reruns of the same configuration are byte-identical.

namespace plsstop {

std::string format_double(double v);  // shortest round-trip; "" for NaN

// Reads a numeric CSV with a header; `response` names the y column, every
// other column is a predictor (in file order). Throws ParseError with a
// 1-based line number on malformed input; the returned dataset is already
// validated against `family`.
Dataset read_dataset_csv(const std::string& path, const std::string& response,
                         Family family);

void write_dataset_csv(const std::string& path, const Dataset& data);

// Matrix with given column names (used for the latent sidecar).
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& col_names);

void write_trace_csv(const std::string& path, const CriterionResult& result);

void write_grid_csv(const std::string& path, const std::vector<GridRow>& rows);

void write_summary_csv(const std::string& path, const GridSummary& summary);

void write_histogram_csv(const std::string& path, const KHistogram& hist);

// Flat key=value file; used to persist the fully-resolved run config.
void write_kv_file(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace plsstop

#endif
