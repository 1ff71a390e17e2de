/// Field containers: radial scalar fields on R^n and axisymmetric vector
/// fields on R^3 in stream-function / swirl representation.
///
/// An axisymmetric field with swirl is stored as (psi, gamma, omega):
///   u_r = -psi_z / r,  u_z = psi_r / r,  u_theta = gamma / r,
///   omega = azimuthal vorticity = -(E^2 psi)/r,  E^2 = d_rr - (1/r) d_r + d_zz.
/// Velocities derived from psi are exactly divergence-free on the grid
/// because the discrete mixed derivatives commute. Regular fields have
/// definite parity in r component by component (psi, gamma even; omega, u_r,
/// u_theta odd; u_z even), so radial derivatives use the folded matrices of
/// the matching class.
#pragma once

#include <complex>
#include <memory>
#include <stdexcept>

#include "ssns/grid.hpp"

namespace ssns {

template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;

/// Checked narrowing from complex-capable results to real storage.
inline double real_part(const Complex& v, double tol = 1e-12) {
    if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v.real())))
        throw std::runtime_error("real_part: imaginary residue above tolerance");
    return v.real();
}

template <class S>
struct RadialField {
    std::shared_ptr<const RadialGrid> grid;
    VecX<S> values;
    Parity parity = Parity::even;

    RadialField() = default;
    explicit RadialField(std::shared_ptr<const RadialGrid> g, Parity p = Parity::even)
        : grid(std::move(g)), values(VecX<S>::Zero(grid->size())), parity(p) {}
    RadialField(std::shared_ptr<const RadialGrid> g, VecX<S> v, Parity p = Parity::even)
        : grid(std::move(g)), values(std::move(v)), parity(p) {
        if (values.size() != grid->size())
            throw std::invalid_argument("RadialField: size mismatch");
    }

    VecX<S> radial_derivative() const { return grid->d1(parity) * values; }

    RadialField& operator+=(const RadialField& o) { values += o.values; return *this; }
    RadialField& operator-=(const RadialField& o) { values -= o.values; return *this; }
    RadialField& operator*=(S a) { values *= a; return *this; }
};

template <class S>
RadialField<S> operator+(RadialField<S> a, const RadialField<S>& b) { a += b; return a; }
template <class S>
RadialField<S> operator-(RadialField<S> a, const RadialField<S>& b) { a -= b; return a; }
template <class S>
RadialField<S> operator*(S c, RadialField<S> a) { a *= c; return a; }
inline RadialField<Complex> to_complex(const RadialField<double>& f) {
    RadialField<Complex> out;
    out.grid = f.grid;
    out.values = f.values.template cast<Complex>();
    out.parity = f.parity;
    return out;
}

/// Axisymmetric vector field with swirl on a meridional grid.
template <class S>
struct AxiField {
    std::shared_ptr<const MeridionalGrid> grid;
    MatX<S> psi;    // Stokes stream function (meridional flow)
    MatX<S> gamma;  // swirl, r * u_theta
    MatX<S> omega;  // azimuthal vorticity, kept consistent with psi

    AxiField() = default;
    explicit AxiField(std::shared_ptr<const MeridionalGrid> g)
        : grid(std::move(g)),
          psi(MatX<S>::Zero(grid->nr(), grid->nz())),
          gamma(MatX<S>::Zero(grid->nr(), grid->nz())),
          omega(MatX<S>::Zero(grid->nr(), grid->nz())) {}

    AxiField& operator+=(const AxiField& o) {
        psi += o.psi; gamma += o.gamma; omega += o.omega; return *this;
    }
    AxiField& operator-=(const AxiField& o) {
        psi -= o.psi; gamma -= o.gamma; omega -= o.omega; return *this;
    }
    AxiField& operator*=(S a) { psi *= a; gamma *= a; omega *= a; return *this; }
};

template <class S>
AxiField<S> operator+(AxiField<S> a, const AxiField<S>& b) { a += b; return a; }
template <class S>
AxiField<S> operator-(AxiField<S> a, const AxiField<S>& b) { a -= b; return a; }
template <class S>
AxiField<S> operator*(S c, AxiField<S> a) { a *= c; return a; }

/// Azimuthal vorticity from the stream function: omega = -(E^2 psi)/r.
template <class S>
MatX<S> vorticity_of_stream(const MeridionalGrid& g, const MatX<S>& psi) {
    MatX<S> e2 = g.r.d2e * psi + psi * g.z.d2.transpose();
    MatX<S> psir = g.r.d1e * psi;
    for (int i = 0; i < g.nr(); ++i) e2.row(i) -= psir.row(i) / g.r.rho[i];
    for (int i = 0; i < g.nr(); ++i) e2.row(i) /= -g.r.rho[i];
    return e2;
}

/// Build a field from stream and swirl; vorticity is derived.
template <class S>
AxiField<S> field_from_stream(std::shared_ptr<const MeridionalGrid> grid,
                              MatX<S> psi, MatX<S> gamma) {
    AxiField<S> f;
    f.grid = std::move(grid);
    f.omega = vorticity_of_stream(*f.grid, psi);
    f.psi = std::move(psi);
    f.gamma = std::move(gamma);
    return f;
}

/// Velocity components of an axisymmetric field at the grid nodes.
template <class S>
struct AxiVelocity {
    MatX<S> ur, ut, uz;
};

template <class S>
AxiVelocity<S> velocities(const AxiField<S>& f) {
    const MeridionalGrid& g = *f.grid;
    AxiVelocity<S> v;
    v.ur = -(f.psi * g.z.d1.transpose());
    v.uz = g.r.d1e * f.psi;
    v.ut = f.gamma;
    for (int i = 0; i < g.nr(); ++i) {
        v.ur.row(i) /= g.r.rho[i];
        v.uz.row(i) /= g.r.rho[i];
        v.ut.row(i) /= g.r.rho[i];
    }
    return v;
}

/// Discrete divergence (1/r) d_r(r u_r) + d_z u_z; identically ~0 for fields
/// derived from a stream function.
template <class S>
MatX<S> divergence(const AxiField<S>& f) {
    const MeridionalGrid& g = *f.grid;
    AxiVelocity<S> v = velocities(f);
    MatX<S> rur = v.ur;
    for (int i = 0; i < g.nr(); ++i) rur.row(i) *= g.r.rho[i];
    MatX<S> div = g.r.d1e * rur;
    for (int i = 0; i < g.nr(); ++i) div.row(i) /= g.r.rho[i];
    div += v.uz * g.z.d1.transpose();
    return div;
}

/// Equatorial mirror symmetry (z -> -z with u_r, u_theta even and u_z odd):
/// gamma even, psi odd, omega odd in z. Projects onto that class.
template <class S>
void symmetrize_equatorial(AxiField<S>& f) {
    const int nz = f.grid->nz();
    auto reflect = [nz](const MatX<S>& m) {
        MatX<S> out(m.rows(), nz);
        for (int j = 0; j < nz; ++j) out.col(j) = m.col(nz - 1 - j);
        return out;
    };
    f.gamma = 0.5 * (f.gamma + reflect(f.gamma));
    f.psi = 0.5 * (f.psi - reflect(f.psi));
    f.omega = 0.5 * (f.omega - reflect(f.omega));
}

template <class S>
bool is_equatorial(const AxiField<S>& f, double tol = 1e-10) {
    AxiField<S> g = f;
    symmetrize_equatorial(g);
    double num = (g.gamma - f.gamma).cwiseAbs().maxCoeff() +
                 (g.psi - f.psi).cwiseAbs().maxCoeff() +
                 (g.omega - f.omega).cwiseAbs().maxCoeff();
    double den = 1.0 + f.gamma.cwiseAbs().maxCoeff() + f.psi.cwiseAbs().maxCoeff() +
                 f.omega.cwiseAbs().maxCoeff();
    return num <= tol * den;
}

}  // namespace ssns
