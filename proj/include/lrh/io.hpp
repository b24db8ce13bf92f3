// CSV ingestion and emission: signals one value per line, matrices as
// comma-separated rows. Floats are written with 12 significant digits and
// files are replaced atomically (write to a temporary, then rename).
#ifndef LRH_IO_HPP
#define LRH_IO_HPP

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lrh/types.hpp"

namespace lrh::io
{

inline std::string format_float(double value, int digits = 12)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return std::string(buf);
}

/// Round-trip a value through its 12-significant-digit representation, so
/// that statistics computed in memory match statistics recomputed from CSV.
inline double round_to_digits(double value, int digits = 12)
{
    return std::strtod(format_float(value, digits).c_str(), nullptr);
}

inline double parse_float(const std::string& token)
{
    std::size_t pos = 0;
    double value = 0.0;
    try
    {
        value = std::stod(token, &pos);
    }
    catch (const std::exception&)
    {
        throw std::runtime_error("csv: cannot parse number '" + token + "'");
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos])))
        ++pos;
    if (pos != token.size())
        throw std::runtime_error("csv: trailing characters after number '" + token + "'");
    if (!std::isfinite(value))
        throw std::runtime_error("csv: non-finite value '" + token + "'");
    return value;
}

/// One value per line, no header; blank lines are ignored.
inline VectorX<double> read_signal_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("csv: cannot open '" + path + "' for reading");
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty())
            continue;
        values.push_back(parse_float(trimmed));
    }
    if (values.empty())
        throw std::runtime_error("csv: no values in '" + path + "'");
    return Eigen::Map<const VectorX<double>>(values.data(), static_cast<Index>(values.size()));
}

inline MatrixX<double> read_matrix_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("csv: cannot open '" + path + "' for reading");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(parse_float(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("csv: ragged rows in '" + path + "'");
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw std::runtime_error("csv: no rows in '" + path + "'");
    MatrixX<double> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

/// Write `content` to `path`, replacing any existing file atomically.
inline void write_file_atomic(const std::string& path, const std::string& content)
{
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw std::runtime_error("csv: cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out)
            throw std::runtime_error("csv: write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

inline void write_signal_csv(const std::string& path, const VectorX<double>& signal)
{
    std::string body;
    for (Index i = 0; i < signal.size(); ++i)
    {
        body += format_float(signal[i]);
        body += '\n';
    }
    write_file_atomic(path, body);
}

inline void write_matrix_csv(const std::string& path, const MatrixX<double>& m)
{
    std::string body;
    for (Index i = 0; i < m.rows(); ++i)
    {
        for (Index j = 0; j < m.cols(); ++j)
        {
            if (j > 0)
                body += ',';
            body += format_float(m(i, j));
        }
        body += '\n';
    }
    write_file_atomic(path, body);
}

/// Diagnostic export of a spectrum: one singular value per line, descending.
inline void write_spectrum_csv(const std::string& path, const VectorX<double>& values)
{
    write_signal_csv(path, values);
}

} // namespace lrh::io

#endif // LRH_IO_HPP
