#ifndef PKS_RADIAL_HPP
#define PKS_RADIAL_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

// Radial discretization primitives shared by the whole solver stack.
// Densities live at cell centers, cumulative mass at cell faces, so that
// M(0) = 0 and mass conservation are structural rather than enforced.

namespace pks {

// Surface area of the unit sphere in R^d: 2 pi^{d/2} / Gamma(d/2).
double sphere_surface_area(int d);

struct ModelParams {
    int d = 3;               // spatial dimension, d >= 3
    double total_mass = 0.0; // L1 norm of the initial data
    double mu = 1.0;         // mass-rescaling ratio in (0,1]; 1 = original system

    // Diffusion exponent for which the system is L1-critical.
    // Always recomputed from d, never stored.
    double m() const { return 2.0 - 2.0 / static_cast<double>(d); }

    void validate() const; // throws std::invalid_argument
};

struct RadialGrid {
    int d = 3;
    double r_max = 0.0;
    int n_cells = 0;
    std::vector<double> faces;      // n_cells+1, faces[0]=0, faces[n]=r_max
    std::vector<double> centers;    // n_cells
    std::vector<double> shell_vols; // n_cells, (sigma/d)(r_{i+1}^d - r_i^d)

    // Uniform face spacing.
    static RadialGrid uniform(int d, double r_max, int n_cells);
    // Geometrically graded toward r=0. `grading` is the ratio of the widest
    // to the narrowest cell; 1 recovers the uniform grid.
    static RadialGrid graded(int d, double r_max, int n_cells, double grading);

    double sigma() const { return sphere_surface_area(d); }
    double ball_volume() const; // (sigma/d) r_max^d
    double min_spacing() const;
};

enum class CoeffKind { Constant, Table, Polynomial };

// Radial coefficient: constant, piecewise-linear table (clamped outside its
// range), or polynomial in r.
struct CoefficientSpec {
    CoeffKind kind = CoeffKind::Constant;
    double value = 1.0;
    std::vector<std::pair<double, double>> table; // (r, value), r strictly increasing
    std::vector<double> poly;                     // coefficients, lowest degree first

    double eval(double r) const;
    bool is_zero() const;

    static CoefficientSpec constant(double v);
    static CoefficientSpec from_table(std::vector<std::pair<double, double>> t);
    static CoefficientSpec polynomial(std::vector<double> coeffs);
};

struct Coefficients {
    CoefficientSpec a = CoefficientSpec::constant(1.0);
    CoefficientSpec gamma = CoefficientSpec::constant(0.0);
    bool monotone_near_origin = false;
    double delta0 = 0.0; // radius of the monotonicity neighborhood

    // Minimum of a over the grid sample points (faces and centers).
    double a_min(const RadialGrid& g) const;
    bool gamma_is_zero(const RadialGrid& g) const;
    void validate(const RadialGrid& g) const;
};

// Cumulative mass at face radii.
struct MassFunction {
    std::vector<double> values;

    double total() const { return values.empty() ? 0.0 : values.back(); }
    void validate() const; // M(0)=0, nondecreasing
    // Linear interpolation; r clamped to [0, r_max].
    double at(double r, const RadialGrid& g) const;
};

// Density at cell centers.
struct RadialDensity {
    std::vector<double> values;

    double peak() const;
    void validate() const; // nonnegative
};

MassFunction mass_from_density(const RadialDensity& u, const RadialGrid& g);
RadialDensity density_from_mass(const MassFunction& M, const RadialGrid& g);

} // namespace pks

#endif
