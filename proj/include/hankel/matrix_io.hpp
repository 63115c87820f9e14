#pragma once

#include "hankel/spectral.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hankel {

/// Binary layout: "HANKELLABMAT" + uint32 version (16 bytes), uint64 rows, uint64 cols, then
/// rows*cols (re, im) float64 pairs in row-major order. Everything little-endian.
inline constexpr char kMatrixMagic[12] = {'H', 'A', 'N', 'K', 'E', 'L', 'L', 'A', 'B', 'M', 'A', 'T'};
inline constexpr std::uint32_t kMatrixVersion = 1;

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd read_matrix(const std::filesystem::path& path);

/// One value per line, 17 significant digits.
void write_spectrum(const std::filesystem::path& path, const std::vector<double>& values);
std::vector<double> read_spectrum(const std::filesystem::path& path);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace hankel
