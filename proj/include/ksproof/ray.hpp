#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ksproof {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// A unit vector standing for a one-dimensional subspace. Global phase is irrelevant
/// for every operation that compares rays.
class Ray {
public:
    Ray() = default;

    /// Normalizes the input unless it is already unit within tol::norm, in which case
    /// the components are kept bit-for-bit. Throws InputError on zero length, non-finite
    /// components or dimension < 2.
    explicit Ray(CVector components, std::string label = {});

    std::size_t dimension() const noexcept { return v_.size(); }
    const CVector & components() const noexcept { return v_; }
    const Complex & operator[](std::size_t i) const { return v_[i]; }
    const std::string & label() const noexcept { return label_; }
    /// Euclidean length of the components as supplied, before normalization.
    double input_norm() const noexcept { return input_norm_; }

    Ray with_label(std::string label) const;

private:
    CVector v_;
    std::string label_;
    double input_norm_ = 1.0;
};

/// Row-major square complex matrix; Hermitian by construction where the library builds one.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static HermitianMatrix identity(std::size_t dim, double scale = 1.0);

    std::size_t dimension() const noexcept { return dim_; }
    Complex & operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const Complex & operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    /// this += weight * |r><r|
    void add_projector(const Ray & r, double weight = 1.0);
    /// this += weight * |a><a|b><b|
    void add_projector_product(const Ray & a, const Ray & b, double weight = 1.0);

    HermitianMatrix & operator+=(const HermitianMatrix & o);
    HermitianMatrix & operator-=(const HermitianMatrix & o);
    friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix & b) { return a -= b; }
    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix & b) { return a += b; }

    /// max |a_ij - conj(a_ji)|
    double symmetry_defect() const;
    /// max |a_ij - b_ij|
    double max_abs_diff(const HermitianMatrix & o) const;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> a_;
};

/// Dense real symmetric matrix, used for Gram moduli.
struct RealMatrix {
    std::size_t size = 0;
    std::vector<double> data;

    RealMatrix() = default;
    explicit RealMatrix(std::size_t n) : size(n), data(n * n, 0.0) {}
    double & operator()(std::size_t i, std::size_t j) { return data[i * size + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * size + j]; }
};

struct Spectrum {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::vector<double> eigenvalues; // ascending
};

Complex inner(const CVector & a, const CVector & b);
/// sum_i conj(a_i) b_i
Complex inner(const Ray & a, const Ray & b);
double overlap(const Ray & a, const Ray & b);
bool same_ray(const Ray & a, const Ray & b);
bool orthogonal(const Ray & a, const Ray & b);

/// a* x b*: orthogonal to both inputs under the Hermitian inner product. D = 3 only.
CVector conj_cross(const CVector & a, const CVector & b);
CVector conj_cross(const Ray & a, const Ray & b);
/// Normalized conj_cross; throws DegenerateError when the inputs are parallel.
Ray orthogonal_complement(const Ray & a, const Ray & b, std::string label = {});

/// |<psi_i|psi_j>| for every pair; diagonal exactly 1.
RealMatrix gram(std::span<const Ray> rays);
double max_off_diagonal(const RealMatrix & g);

HermitianMatrix projector_sum(std::span<const Ray> rays);
/// Eigenvalues of sum_j |psi_j><psi_j|, ascending.
Spectrum projector_sum_spectrum(std::span<const Ray> rays);

/// Ascending eigenvalues by cyclic complex Jacobi rotations.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix & m);
Spectrum spectrum_of(const HermitianMatrix & m);

/// Throws DimensionError unless every ray has dimension `dim` (or the first ray's when 0).
std::size_t common_dimension(std::span<const Ray> rays, std::size_t dim = 0);

} // namespace ksproof
