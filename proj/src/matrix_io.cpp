#include "hankel/matrix_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hankel {

namespace {

static_assert(std::endian::native == std::endian::little, "matrix dumps assume a little-endian host");

template <typename T>
void put(std::string& out, T value) {
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    out.append(bytes, sizeof(T));
}

template <typename T>
T take(std::istream& in) {
    T value;
    if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) throw std::runtime_error("truncated matrix file");
    return value;
}

} // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXcd& m) {
    std::string out;
    out.reserve(32 + static_cast<std::size_t>(m.size()) * 16);
    out.append(kMatrixMagic, sizeof(kMatrixMagic));
    put<std::uint32_t>(out, kMatrixVersion);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            put<double>(out, m(i, j).real());
            put<double>(out, m(i, j).imag());
        }
    write_file_atomic(path, out);
}

Eigen::MatrixXcd read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    char magic[sizeof(kMatrixMagic)];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMatrixMagic, sizeof(magic)) != 0)
        throw std::runtime_error(path.string() + " is not a matrix dump");
    if (take<std::uint32_t>(in) != kMatrixVersion) throw std::runtime_error("unsupported matrix dump version");
    const auto rows = take<std::uint64_t>(in);
    const auto cols = take<std::uint64_t>(in);
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double re = take<double>(in);
            const double im = take<double>(in);
            m(i, j) = {re, im};
        }
    return m;
}

void write_spectrum(const std::filesystem::path& path, const std::vector<double>& values) {
    std::string out;
    char buf[40];
    for (double v : values) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out += buf;
    }
    write_file_atomic(path, out);
}

std::vector<double> read_spectrum(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    return values;
}

} // namespace hankel
