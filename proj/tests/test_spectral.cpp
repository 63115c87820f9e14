#include "oracles.hpp"

#include "hankel/errors.hpp"
#include "hankel/matrix_io.hpp"
#include "hankel/nystrom.hpp"
#include "hankel/operators.hpp"
#include "hankel/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

using namespace hankel;
using std::numbers::pi;

namespace {

Eigen::MatrixXcd random_hermitian(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {gauss(rng), gauss(rng)};
    return 0.5 * (a + a.adjoint());
}

Grid grid1(int n, double alpha) {
    Grid g;
    g.n = n;
    g.alpha = alpha;
    return g;
}

const Domain unit = Domain::interval(0.0, 1.0);
const Domain sym = Domain::interval(-1.0, 1.0);

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "hankel_spectral_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("eigenvalues of small matrices") {
    Eigen::MatrixXcd a(2, 2);
    a << 2.0, 1.0, 1.0, 2.0;
    const SpectralData s = hermitian_eigen(a);
    REQUIRE(s.values.size() == 2);
    CHECK(std::abs(s.values[0] - 1.0) <= 1e-14);
    CHECK(std::abs(s.values[1] - 3.0) <= 1e-14);
    CHECK(s.kind == SpectralKind::eigen);

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
    d.diagonal() << 3.0, -1.0, 0.5, 2.0;
    CHECK(hermitian_eigen(d).values == std::vector<double>{-1.0, 0.5, 2.0, 3.0});
}

TEST_CASE("Hermitian eigenvalues against cyclic Jacobi") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const Eigen::MatrixXcd a = random_hermitian(40, seed);
        const std::vector<double> mine = hermitian_eigen(a).values;
        const std::vector<double> ref = oracle::hermitian_eigenvalues(a);
        REQUIRE(mine.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(mine[i] - ref[i]) <= 1e-9);
        const Eigen::VectorXd values_only = hermitian_eigenvalues(a);
        for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(values_only(i) - ref[i]) <= 1e-9);
    }
    // real input takes the real solver
    const Eigen::MatrixXd r = random_hermitian(30, 9).real();
    const std::vector<double> ref = oracle::jacobi_eigenvalues(r);
    const std::vector<double> mine = hermitian_eigen(Eigen::MatrixXcd(r.cast<std::complex<double>>())).values;
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(mine[i] - ref[i]) <= 1e-10);
}

TEST_CASE("eigendecomposition residuals") {
    const Eigen::MatrixXcd a = random_hermitian(25, 4);
    const EigenDecomposition e = hermitian_decomposition(a);
    for (Eigen::Index i = 0; i < 25; ++i) CHECK((a * e.vectors.col(i) - e.values(i) * e.vectors.col(i)).norm() <= 1e-10 * a.norm());
    CHECK((e.vectors.adjoint() * e.vectors - Eigen::MatrixXcd::Identity(25, 25)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("non-Hermitian and non-square input is refused") {
    Eigen::MatrixXcd a(2, 2);
    a << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(hermitian_eigen(a), InputError);
    CHECK_THROWS_AS(hermitian_eigen(Eigen::MatrixXcd::Zero(2, 3)), InputError);
}

TEST_CASE("singular values") {
    const SpectralData zero = singular_values(Eigen::MatrixXcd::Zero(5, 3));
    CHECK(zero.kind == SpectralKind::singular);
    REQUIRE(zero.values.size() == 3);
    for (double v : zero.values) CHECK(v == 0.0);

    for (double v : singular_values(oracle::dft_matrix(16)).values) CHECK(std::abs(v - 1.0) <= 1e-13);

    std::mt19937 rng(5);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd g(12, 7);
    for (auto& x : g.reshaped()) x = {gauss(rng), gauss(rng)};
    const auto s = singular_values(g).values;
    const auto s_adj = singular_values(Eigen::MatrixXcd(g.adjoint())).values;
    const auto gram = oracle::hermitian_eigenvalues(g.adjoint() * g);
    REQUIRE(s.size() == 7);
    REQUIRE(s_adj.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(std::abs(s[i] - s_adj[i]) <= 1e-12);
        CHECK(std::abs(s[i] - std::sqrt(gram[i])) <= 1e-10);
    }
}

TEST_CASE("trace of a function of the spectrum") {
    SpectralData e;
    e.values = {-1.0, 0.5, 2.0};
    CHECK(trace_of_function(e, TestFunction::monomial(2)) == 5.25);
    CHECK(trace_of_function(e, TestFunction::monomial(1)) == 1.5);
    SpectralData s;
    s.kind = SpectralKind::singular;
    s.values = {0.5, 2.0};
    s.kernel_dimension = 3;
    CHECK(trace_of_function(s, TestFunction::monomial(2)) == 8.5);
    CHECK(trace_of_function(s, TestFunction::monomial(3)) == 0.0);
    CHECK(trace_of_function(s, TestFunction::indicator_above(1.0)) == 1.0);
}

TEST_CASE("H spectrum from the Gram blocks against the full matrix") {
    for (int variant = 0; variant < 2; ++variant) {
        const Grid g = grid1(32, 5.0);
        const SeparableSymbol a = variant == 0 ? SeparableSymbol::one()
                                               : SeparableSymbol({{Factor::bump(Point(0.5, 0), 0.5), Factor::bump(Point(0.2, 0), 1.2)}});
        const Eigen::MatrixXcd h = build_composite(g, a, unit, sym, CompositeKind::h).matrix;
        const std::vector<double> full = oracle::hermitian_eigenvalues(h);
        const SpectralData s = h_spectrum(gram_blocks(g, a, unit, sym));
        CHECK(s.kind == SpectralKind::singular);
        CHECK(s.kernel_dimension + 2 * Eigen::Index(s.values.size()) == g.size());

        std::vector<double> reconstructed(static_cast<std::size_t>(s.kernel_dimension), 0.0);
        for (double v : s.values) {
            reconstructed.push_back(v);
            reconstructed.push_back(-v);
        }
        std::sort(reconstructed.begin(), reconstructed.end());
        // the Gram route fixes sigma^2 to machine precision, so tiny sigma only to about sqrt(eps)
        for (std::size_t i = 0; i < full.size(); ++i) {
            CHECK(std::abs(full[i] * full[i] - reconstructed[i] * reconstructed[i]) <= 1e-12);
            CHECK(std::abs(full[i] - reconstructed[i]) <= 1e-7);
        }

        // tr H^2p = 2 tr (G*G)^p
        for (int p = 1; p <= 3; ++p) {
            double direct = 0.0;
            for (double v : full) direct += std::pow(v, 2 * p);
            CHECK(std::abs(trace_of_function(s, TestFunction::monomial(2 * p)) - direct) <= 1e-10 * std::max(1.0, direct));
        }
    }
}

TEST_CASE("with a = 1 the singular values of G are sqrt(mu (1 - mu)) over spec T") {
    const Grid g = grid1(64, 9.0);
    const GramBlocks blocks = gram_blocks(g, SeparableSymbol::one(), unit, sym);
    const std::vector<double> mu = oracle::hermitian_eigenvalues(blocks.t);
    std::vector<double> predicted;
    for (double m : mu) predicted.push_back(std::sqrt(std::max(0.0, m * (1 - m))));
    std::vector<double> got = h_spectrum(blocks).values;
    // zeros of the square root and the kernel are not told apart; compare the non-negligible part
    std::erase_if(predicted, [](double v) { return v < 1e-6; });
    std::erase_if(got, [](double v) { return v < 1e-6; });
    CHECK(oracle::hausdorff(predicted, got) <= 1e-9);
}

TEST_CASE("h_spectrum_from_gram sizes") {
    CHECK_THROWS_AS(h_spectrum_from_gram(Eigen::MatrixXcd::Identity(5, 5), 4), InputError);
    const SpectralData s = h_spectrum_from_gram(Eigen::MatrixXcd::Identity(3, 3), 10);
    CHECK(s.values.size() == 3);
    CHECK(s.kernel_dimension == 4);
}

TEST_CASE("Schatten norms") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    d.diagonal() << 1.0, -2.0, 3.0;
    CHECK(std::abs(schatten_norm(d, SchattenP::one) - 6.0) <= 1e-13);
    CHECK(std::abs(schatten_norm(d, SchattenP::two) - std::sqrt(14.0)) <= 1e-13);
    CHECK(std::abs(schatten_norm(d, SchattenP::infinity) - 3.0) <= 1e-13);
    const Eigen::MatrixXcd a = random_hermitian(20, 11);
    CHECK(std::abs(schatten_norm(a, SchattenP::two) - a.norm()) <= 1e-11 * a.norm());
}

TEST_CASE("Nystrom discretisation of the truncated Carleman operator") {
    const DenseOperator zero = build_truncated_hankel(1.0, 100.0, HankelKernel::zero(), 64);
    CHECK(zero.kind == OperatorKind::hankel_nystrom);
    CHECK(zero.matrix.cwiseAbs().maxCoeff() == 0.0);

    double previous = 0.0;
    for (double b : {10.0, 100.0, 1e3, 1e4}) {
        const DenseOperator m = build_truncated_hankel(1.0, b, HankelKernel::carleman_kernel(), 16 * hankel_panel_count(1.0, b));
        CHECK((m.matrix - m.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        const std::vector<double> ev = hermitian_eigen(m).values;
        const double norm = std::max(std::abs(ev.front()), ev.back());
        CHECK(norm < pi);
        CHECK(norm > previous);
        previous = norm;
    }
    CHECK_THROWS_AS(build_truncated_hankel(0.0, 10.0, HankelKernel::carleman_kernel(), 64), InputError);
    CHECK_THROWS_AS(build_truncated_hankel(2.0, 1.0, HankelKernel::carleman_kernel(), 64), InputError);
    CHECK_THROWS_AS(build_truncated_hankel(1.0, 10.0, HankelKernel::carleman_kernel(), 1), InputError);
    CHECK(hankel_panel_count(1.0, 1024.0) >= 10);
    CHECK(hankel_panel_count(1.0, 1024.0) <= 11);
}

TEST_CASE("Nystrom eigenvalues converge under refinement") {
    const HankelKernel k = HankelKernel::carleman_kernel();
    const auto coarse = hermitian_eigen(build_truncated_hankel(1.0, 1000.0, k, 400)).values;
    const auto fine = hermitian_eigen(build_truncated_hankel(1.0, 1000.0, k, 800)).values;
    for (std::size_t i = 1; i <= 5; ++i) CHECK(std::abs(coarse[coarse.size() - i] - fine[fine.size() - i]) <= 1e-8);
}

TEST_CASE("Nystrom matches the integral operator on a separable kernel") {
    // k(x + y) = exp(-(x + y)) has the single eigenvalue int_a^b exp(-2x) dx
    const HankelKernel k = HankelKernel::custom([](double t) { return std::exp(-t); });
    const auto ev = hermitian_eigen(build_truncated_hankel(0.5, 4.0, k, 64)).values;
    CHECK(std::abs(ev.back() - 0.5 * (std::exp(-1.0) - std::exp(-8.0))) <= 1e-13);
    CHECK(std::abs(ev[ev.size() - 2]) <= 1e-13);
}

TEST_CASE("matrix dump round trip") {
    std::mt19937 rng(3);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd m(5, 3);
    for (auto& x : m.reshaped()) x = {gauss(rng), gauss(rng)};
    const auto path = scratch("m.bin");
    write_matrix(path, m);
    CHECK(std::filesystem::file_size(path) == 16 + 16 + 15 * 16);
    CHECK(read_matrix(path) == m);

    std::ifstream in(path, std::ios::binary);
    char magic[12];
    in.read(magic, 12);
    CHECK(std::string(magic, 12) == "HANKELLABMAT");

    const auto bad = scratch("bad.bin");
    std::ofstream(bad, std::ios::binary) << "NOTAMATRIX0000000000000000000000";
    CHECK_THROWS(read_matrix(bad));
    CHECK_THROWS(read_matrix(scratch("missing.bin")));
}

TEST_CASE("spectrum text round trip") {
    const std::vector<double> v = {-1.0 / 3.0, 0.0, 2.5e-17, pi};
    const auto path = scratch("s.txt");
    write_spectrum(path, v);
    CHECK(read_spectrum(path) == v);
}
