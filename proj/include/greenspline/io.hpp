#ifndef GREENSPLINE_IO_HPP
#define GREENSPLINE_IO_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "greenspline/gp.hpp"
#include "greenspline/spline.hpp"

namespace greenspline {

// Shortest decimal text that round-trips the double exactly; independent
// of the global locale.
std::string format_double(double x);

// Strict locale-independent double parser; the whole token must be consumed.
double parse_double(std::string_view token, std::string_view context);

// Parses "start:stop:step" into an ascending grid inside [0, 1]. The stop
// value is included when (stop - start) / step is integral to 1e-9, and is
// then emitted exactly as `stop`, so boundary pins are hit without
// accumulated rounding.
Eigen::VectorXd parse_grid_spec(std::string_view spec);

// In-memory numeric CSV: one header row, comma separator, '.' decimal
// point, LF line endings (CR tolerated), UTF-8.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable read_csv(std::istream& in, std::string_view name);

// Observations under the header "t,y"; parse errors cite the file row.
DataSet read_dataset_csv(const std::filesystem::path& path);

void write_curve_csv(std::ostream& out, std::string_view value_header,
                     const Eigen::Ref<const Eigen::VectorXd>& grid,
                     const Eigen::Ref<const Eigen::VectorXd>& values);

// Header "t,path_1,...,path_k".
void write_paths_csv(std::ostream& out, const PathSet& paths);

void write_matrix_csv(std::ostream& out,
                      const Eigen::Ref<const Eigen::VectorXd>& grid,
                      const Eigen::Ref<const Eigen::MatrixXd>& m);

// Fit artifact {kernel, lambda, times[], coefficients[], jitter_applied}.
void write_fit_json(std::ostream& out, const SplineFit& f);
SplineFit read_fit_json(const std::filesystem::path& path);

// Opens for writing, throwing ValidationError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace greenspline

#endif
