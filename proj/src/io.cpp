#include "greenspline/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace greenspline {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type begin = 0;
    while (true) {
        const auto comma = line.find(',', begin);
        fields.push_back(line.substr(begin, comma - begin));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return fields;
}

std::string trimmed(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_double(double x) {
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view token, std::string_view context) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = token.data() + token.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ValidationError(std::string(context) + ": cannot parse '" +
                              std::string(token) + "' as a number");
    return value;
}

Eigen::VectorXd parse_grid_spec(std::string_view spec) {
    std::vector<std::string_view> parts;
    std::string_view rest = spec;
    while (true) {
        const auto colon = rest.find(':');
        parts.push_back(rest.substr(0, colon));
        if (colon == std::string_view::npos) break;
        rest = rest.substr(colon + 1);
    }
    if (parts.size() != 3)
        throw ValidationError("grid spec must be start:stop:step, got '" +
                              std::string(spec) + "'");

    const double start = parse_double(parts[0], "grid spec");
    const double stop = parse_double(parts[1], "grid spec");
    const double step = parse_double(parts[2], "grid spec");
    if (!(step > 0.0))
        throw ValidationError("grid spec: step must be positive");
    if (!(start <= stop))
        throw ValidationError("grid spec: start must not exceed stop");
    if (!(start >= 0.0 && stop <= 1.0))
        throw ValidationError("grid spec: grid must stay inside [0, 1]");

    const double ratio = (stop - start) / step;
    if (ratio > 1e6)
        throw ValidationError("grid spec: more than a million points requested");
    const auto count = static_cast<Eigen::Index>(std::floor(ratio + 1e-9)) + 1;
    const bool lands_on_stop = std::abs(ratio - std::round(ratio)) <= 1e-9;

    Eigen::VectorXd grid(count);
    for (Eigen::Index i = 0; i < count; ++i) grid[i] = start + i * step;
    if (lands_on_stop) grid[count - 1] = stop;
    return grid;
}

CsvTable read_csv(std::istream& in, std::string_view name) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError(std::string(name) + ": empty file, expected a CSV header");
    table.header = split_line(line);
    for (std::string& h : table.header) h = trimmed(h);

    int row = 1;  // header was row 1
    while (std::getline(in, line)) {
        ++row;
        if (trimmed(line).empty()) {
            // a trailing blank line is fine; blank lines elsewhere are not
            if (in.peek() == std::char_traits<char>::eof()) break;
            throw ValidationError(std::string(name) + ": row " + std::to_string(row) +
                                  ": blank line inside the table");
        }
        const std::vector<std::string> fields = split_line(line);
        if (fields.size() != table.header.size())
            throw ValidationError(std::string(name) + ": row " + std::to_string(row) +
                                  ": expected " + std::to_string(table.header.size()) +
                                  " fields, got " + std::to_string(fields.size()));
        std::vector<double> values(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
            values[c] = parse_double(trimmed(fields[c]),
                                     std::string(name) + ": row " + std::to_string(row));
        table.rows.push_back(std::move(values));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path.string() + "' for reading");
    return read_csv(in, path.string());
}

DataSet read_dataset_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    if (table.header != std::vector<std::string>{"t", "y"})
        throw ValidationError(path.string() + ": expected header \"t,y\"");
    const Eigen::Index m = static_cast<Eigen::Index>(table.rows.size());
    Eigen::VectorXd times(m), values(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        times[i] = table.rows[i][0];
        values[i] = table.rows[i][1];
    }
    return DataSet(std::move(times), std::move(values));
}

void write_curve_csv(std::ostream& out, std::string_view value_header,
                     const Eigen::Ref<const Eigen::VectorXd>& grid,
                     const Eigen::Ref<const Eigen::VectorXd>& values) {
    out << "t," << value_header << '\n';
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        out << format_double(grid[i]) << ',' << format_double(values[i]) << '\n';
}

void write_paths_csv(std::ostream& out, const PathSet& paths) {
    out << 't';
    for (Eigen::Index j = 0; j < paths.count(); ++j) out << ",path_" << (j + 1);
    out << '\n';
    for (Eigen::Index i = 0; i < paths.grid.size(); ++i) {
        out << format_double(paths.grid[i]);
        for (Eigen::Index j = 0; j < paths.count(); ++j)
            out << ',' << format_double(paths.values(i, j));
        out << '\n';
    }
}

void write_matrix_csv(std::ostream& out,
                      const Eigen::Ref<const Eigen::VectorXd>& grid,
                      const Eigen::Ref<const Eigen::MatrixXd>& m) {
    out << 't';
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << ",g" << (j + 1);
    out << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << format_double(grid[i]);
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << ',' << format_double(m(i, j));
        out << '\n';
    }
}

void write_fit_json(std::ostream& out, const SplineFit& f) {
    nlohmann::json j;
    j["kernel"] = std::string(f.kernel().id);
    j["lambda"] = f.lambda();
    j["times"] = std::vector<double>(f.times().begin(), f.times().end());
    j["coefficients"] =
        std::vector<double>(f.coefficients().begin(), f.coefficients().end());
    j["jitter_applied"] = f.jitter();
    out << j.dump(2) << '\n';
}

SplineFit read_fit_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path.string() + "' for reading");
    nlohmann::json j;
    try {
        in >> j;
        const Kernel& k = kernel_by_id(j.at("kernel").get<std::string>());
        const auto times = j.at("times").get<std::vector<double>>();
        const auto coeffs = j.at("coefficients").get<std::vector<double>>();
        return SplineFit::from_parts(
            k, j.at("lambda").get<double>(),
            Eigen::Map<const Eigen::VectorXd>(times.data(), times.size()),
            Eigen::Map<const Eigen::VectorXd>(coeffs.data(), coeffs.size()),
            j.at("jitter_applied").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path.string() + ": malformed fit artifact: " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out)
        throw ValidationError("failed while writing '" + path.string() + "'");
}

}  // namespace greenspline
