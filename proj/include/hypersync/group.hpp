#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace hypersync {

enum class Variant { SO2, SO3 };

inline int block_dim(Variant v) { return v == Variant::SO2 ? 2 : 3; }

struct group_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// numerical failures (degenerate projections, eigensolver breakdown)
struct numeric_error : group_error {
    using group_error::group_error;
};

// wrap into (-pi, pi]
double normalize_angle(double theta);

// An element of SO(2) (stored as an angle) or SO(3) (stored as a 3x3
// row-major rotation matrix).
struct GroupElement {
    Variant variant = Variant::SO2;
    double angle = 0.0;             // SO2 payload, in (-pi, pi]
    std::array<double, 9> mat{};    // SO3 payload

    static GroupElement identity(Variant v);
    static GroupElement so2(double theta);
    static GroupElement so3(const std::array<double, 9>& m);

    // row-major d x d matrix form (2x2 for SO2 per R_theta = [[c,s],[-s,c]])
    std::array<double, 9> matrix() const;

    bool valid(double tol = 1e-10) const;
};

GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
double distance(const GroupElement& a, const GroupElement& b);

struct GroupTuple {
    std::vector<GroupElement> elements;

    int order() const { return static_cast<int>(elements.size()); }
    Variant variant() const { return elements.empty() ? Variant::SO2 : elements.front().variant; }
    static GroupTuple identity(Variant v, int order);
};

double tuple_distance(const GroupTuple& a, const GroupTuple& b);

GroupElement haar_sample(Rng& rng, Variant v);
GroupElement perturb_gaussian(const GroupElement& g, double sigma, Rng& rng);

// Nearest special-orthogonal matrix in Frobenius norm; M is row-major d x d
// with d = 2 or 3. Throws group_error if sigma_min(M) < 1e-12.
GroupElement project_to_group(const double* M, Variant v);

// rotation about the z axis, handy for fixtures
GroupElement rot_z(double theta);

} // namespace hypersync
