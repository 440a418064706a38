#include "ksproof/ray.hpp"

#include "ksproof/errors.hpp"
#include "ksproof/tolerances.hpp"

#include <algorithm>
#include <cmath>

namespace ksproof {

Ray::Ray(CVector components, std::string label) : v_(std::move(components)), label_(std::move(label))
{
    if (v_.size() < 2)
        throw InputError("ray '" + label_ + "' has dimension " + std::to_string(v_.size()) + " (need >= 2)");
    double n2 = 0.0;
    for (const auto & z : v_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InputError("ray '" + label_ + "' has a non-finite component");
        n2 += std::norm(z);
    }
    input_norm_ = std::sqrt(n2);
    if (!(input_norm_ > 0.0) || !std::isfinite(input_norm_))
        throw InputError("ray '" + label_ + "' has zero or unrepresentable length");
    if (std::abs(n2 - 1.0) > tol::norm)
        for (auto & z : v_)
            z /= input_norm_;
}

Ray Ray::with_label(std::string label) const
{
    Ray r = *this;
    r.label_ = std::move(label);
    return r;
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim, double scale)
{
    HermitianMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        m(i, i) = scale;
    return m;
}

void HermitianMatrix::add_projector(const Ray & r, double weight)
{
    if (r.dimension() != dim_)
        throw DimensionError("projector dimension " + std::to_string(r.dimension()) + " != matrix dimension " +
                             std::to_string(dim_));
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            (*this)(i, j) += weight * r[i] * std::conj(r[j]);
}

void HermitianMatrix::add_projector_product(const Ray & a, const Ray & b, double weight)
{
    if (a.dimension() != dim_ || b.dimension() != dim_)
        throw DimensionError("projector product dimension mismatch");
    const Complex ab = inner(a, b);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            (*this)(i, j) += weight * a[i] * ab * std::conj(b[j]);
}

HermitianMatrix & HermitianMatrix::operator+=(const HermitianMatrix & o)
{
    if (o.dim_ != dim_)
        throw DimensionError("matrix dimension mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k)
        a_[k] += o.a_[k];
    return *this;
}

HermitianMatrix & HermitianMatrix::operator-=(const HermitianMatrix & o)
{
    if (o.dim_ != dim_)
        throw DimensionError("matrix dimension mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k)
        a_[k] -= o.a_[k];
    return *this;
}

double HermitianMatrix::symmetry_defect() const
{
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

double HermitianMatrix::max_abs_diff(const HermitianMatrix & o) const
{
    if (o.dim_ != dim_)
        throw DimensionError("matrix dimension mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k)
        worst = std::max(worst, std::abs(a_[k] - o.a_[k]));
    return worst;
}

Complex inner(const CVector & a, const CVector & b)
{
    if (a.size() != b.size())
        throw DimensionError("inner product of dimensions " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

Complex inner(const Ray & a, const Ray & b)
{
    return inner(a.components(), b.components());
}

double overlap(const Ray & a, const Ray & b)
{
    return std::abs(inner(a, b));
}

bool same_ray(const Ray & a, const Ray & b)
{
    return overlap(a, b) >= 1.0 - tol::ray;
}

bool orthogonal(const Ray & a, const Ray & b)
{
    return overlap(a, b) < tol::orth;
}

CVector conj_cross(const CVector & a, const CVector & b)
{
    if (a.size() != 3 || b.size() != 3)
        throw DimensionError("conj_cross needs 3-dimensional inputs");
    const Complex a0 = std::conj(a[0]), a1 = std::conj(a[1]), a2 = std::conj(a[2]);
    const Complex b0 = std::conj(b[0]), b1 = std::conj(b[1]), b2 = std::conj(b[2]);
    CVector g{a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0};
    double n2 = 0.0;
    for (const auto & z : g)
        n2 += std::norm(z);
    if (std::sqrt(n2) < tol::degenerate)
        throw DegenerateError("conj_cross of parallel vectors");
    return g;
}

CVector conj_cross(const Ray & a, const Ray & b)
{
    return conj_cross(a.components(), b.components());
}

Ray orthogonal_complement(const Ray & a, const Ray & b, std::string label)
{
    return Ray(conj_cross(a, b), std::move(label));
}

std::size_t common_dimension(std::span<const Ray> rays, std::size_t dim)
{
    for (const auto & r : rays) {
        if (dim == 0)
            dim = r.dimension();
        else if (r.dimension() != dim)
            throw DimensionError("ray '" + r.label() + "' has dimension " + std::to_string(r.dimension()) +
                                 ", expected " + std::to_string(dim));
    }
    return dim;
}

RealMatrix gram(std::span<const Ray> rays)
{
    common_dimension(rays);
    RealMatrix g(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
        g(i, i) = 1.0;
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            g(i, j) = g(j, i) = overlap(rays[i], rays[j]);
    }
    return g;
}

double max_off_diagonal(const RealMatrix & g)
{
    double m = 0.0;
    for (std::size_t i = 0; i < g.size; ++i)
        for (std::size_t j = i + 1; j < g.size; ++j)
            m = std::max(m, g(i, j));
    return m;
}

HermitianMatrix projector_sum(std::span<const Ray> rays)
{
    const auto dim = common_dimension(rays);
    HermitianMatrix m(dim);
    for (const auto & r : rays)
        m.add_projector(r);
    return m;
}

namespace {

double off_diagonal_norm(const HermitianMatrix & a)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i)
        for (std::size_t j = 0; j < a.dimension(); ++j)
            if (i != j)
                s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Annihilates a(p,q) with U = diag(1, e^{-i phi}) * real rotation, A <- U^H A U.
void rotate(HermitianMatrix & a, std::size_t p, std::size_t q)
{
    const Complex apq = a(p, q);
    const double b = std::abs(apq);
    if (b == 0.0)
        return;
    const Complex phase = std::conj(apq) / b; // e^{-i phi}
    const double app = a(p, p).real(), aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * b);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex upp = c, upq = s, uqp = -s * phase, uqq = c * phase;
    const std::size_t n = a.dimension();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * upp + akq * uqp;
        a(k, q) = akp * upq + akq * uqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k), aqk = a(q, k);
        a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
        a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
    }
    a(p, q) = a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

} // namespace

std::vector<double> hermitian_eigenvalues(const HermitianMatrix & m)
{
    if (m.symmetry_defect() > tol::hermitian * std::max(1.0, off_diagonal_norm(m)))
        throw InputError("matrix is not Hermitian within tolerance");
    HermitianMatrix a = m;
    const std::size_t n = a.dimension();
    constexpr int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) >= tol::jacobi_off; ++sweep)
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                rotate(a, p, q);
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i)
        ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

Spectrum spectrum_of(const HermitianMatrix & m)
{
    Spectrum s;
    s.eigenvalues = hermitian_eigenvalues(m);
    if (!s.eigenvalues.empty()) {
        s.lambda_min = s.eigenvalues.front();
        s.lambda_max = s.eigenvalues.back();
    }
    return s;
}

Spectrum projector_sum_spectrum(std::span<const Ray> rays)
{
    if (rays.empty())
        throw InputError("projector_sum_spectrum needs at least one ray");
    return spectrum_of(projector_sum(rays));
}

} // namespace ksproof
