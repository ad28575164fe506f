#include "hypersync/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypersync {

namespace {

constexpr double PI = std::numbers::pi;

void require(bool ok, const char* msg) {
    if (!ok) throw group_error(msg);
}

// --- small dense helpers, row-major d x d ---

void mat_mul(const double* a, const double* b, double* out, int d) {
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += a[i * d + k] * b[k * d + j];
            out[i * d + j] = s;
        }
}

double det3(const double* m) {
    return m[0] * (m[4] * m[8] - m[5] * m[7])
         - m[1] * (m[3] * m[8] - m[5] * m[6])
         + m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double determinant(const double* m, int d) {
    if (d == 2) return m[0] * m[3] - m[1] * m[2];
    return det3(m);
}

// One-sided Jacobi SVD: returns W = M*V with mutually orthogonal columns and
// the accumulated right rotations V. Then sigma_i = ||W_i||, U_i = W_i/sigma_i.
void one_sided_jacobi(const double* M, int d, double* W, double* V) {
    for (int i = 0; i < d * d; ++i) W[i] = M[i];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) V[i * d + j] = (i == j) ? 1.0 : 0.0;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < d - 1; ++p)
            for (int q = p + 1; q < d; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int k = 0; k < d; ++k) {
                    app += W[k * d + p] * W[k * d + p];
                    aqq += W[k * d + q] * W[k * d + q];
                    apq += W[k * d + p] * W[k * d + q];
                }
                off = std::max(off, std::abs(apq));
                if (std::abs(apq) < 1e-300) continue;
                double zeta = (aqq - app) / (2.0 * apq);
                double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                double c = 1.0 / std::hypot(1.0, t);
                double s = c * t;
                for (int k = 0; k < d; ++k) {
                    double wp = W[k * d + p], wq = W[k * d + q];
                    W[k * d + p] = c * wp - s * wq;
                    W[k * d + q] = s * wp + c * wq;
                    double vp = V[k * d + p], vq = V[k * d + q];
                    V[k * d + p] = c * vp - s * vq;
                    V[k * d + q] = s * vp + c * vq;
                }
            }
        if (off < 1e-15) break;
    }
}

std::array<double, 9> quat_to_matrix(double w, double x, double y, double z) {
    return {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
            2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
            2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
}

} // namespace

double normalize_angle(double theta) {
    double x = std::remainder(theta, 2.0 * PI);
    if (x <= -PI) x += 2.0 * PI;
    return x;
}

GroupElement GroupElement::identity(Variant v) {
    if (v == Variant::SO2) return so2(0.0);
    return so3({1, 0, 0, 0, 1, 0, 0, 0, 1});
}

GroupElement GroupElement::so2(double theta) {
    GroupElement g;
    g.variant = Variant::SO2;
    g.angle = normalize_angle(theta);
    return g;
}

GroupElement GroupElement::so3(const std::array<double, 9>& m) {
    GroupElement g;
    g.variant = Variant::SO3;
    g.mat = m;
    return g;
}

std::array<double, 9> GroupElement::matrix() const {
    if (variant == Variant::SO3) return mat;
    double c = std::cos(angle), s = std::sin(angle);
    return {c, s, -s, c, 0, 0, 0, 0, 0}; // first 4 entries, row-major 2x2
}

bool GroupElement::valid(double tol) const {
    if (variant == Variant::SO2)
        return angle > -PI - 1e-15 && angle <= PI + 1e-15 && std::isfinite(angle);
    // ||R^T R - I||_inf and det
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += mat[k * 3 + i] * mat[k * 3 + j];
            if (std::abs(s - (i == j ? 1.0 : 0.0)) > tol) return false;
        }
    return std::abs(det3(mat.data()) - 1.0) <= tol;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
    require(a.variant == b.variant, "compose: variant mismatch");
    if (a.variant == Variant::SO2) return GroupElement::so2(a.angle + b.angle);
    std::array<double, 9> out;
    mat_mul(a.mat.data(), b.mat.data(), out.data(), 3);
    return GroupElement::so3(out);
}

GroupElement inverse(const GroupElement& a) {
    if (a.variant == Variant::SO2) return GroupElement::so2(-a.angle);
    std::array<double, 9> t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i * 3 + j] = a.mat[j * 3 + i];
    return GroupElement::so3(t);
}

double distance(const GroupElement& a, const GroupElement& b) {
    require(a.variant == b.variant, "distance: variant mismatch");
    if (a.variant == Variant::SO2)
        return std::abs(normalize_angle(a.angle - b.angle)) / PI;
    double tr = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) tr += a.mat[i * 3 + k] * b.mat[i * 3 + k];
    double c = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
    if (c < 0.5) return std::acos(c) / PI;
    // same geodesic angle via ||R1 - R2||_F = 2*sqrt(2)*sin(theta/2), which is
    // well conditioned near theta = 0 where acos loses half the digits
    double fro2 = 0.0;
    for (int k = 0; k < 9; ++k) {
        double diff = a.mat[k] - b.mat[k];
        fro2 += diff * diff;
    }
    double s = std::clamp(std::sqrt(fro2) / (2.0 * std::sqrt(2.0)), 0.0, 1.0);
    return 2.0 * std::asin(s) / PI;
}

GroupTuple GroupTuple::identity(Variant v, int order) {
    GroupTuple t;
    t.elements.assign(order, GroupElement::identity(v));
    return t;
}

double tuple_distance(const GroupTuple& a, const GroupTuple& b) {
    require(a.order() == b.order(), "tuple_distance: order mismatch");
    double acc = 0.0;
    for (int i = 0; i < a.order(); ++i) {
        double d = distance(a.elements[i], b.elements[i]);
        acc += d * d;
    }
    return std::sqrt(acc / std::max(1, a.order()));
}

double Rng::uniform_angle() {
    // uniform() is [0,1); map so the endpoint -pi is excluded
    return PI - 2.0 * PI * uniform();
}

double Rng::normal() {
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 0.0);
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * PI * u2);
}

GroupElement haar_sample(Rng& rng, Variant v) {
    if (v == Variant::SO2) return GroupElement::so2(rng.uniform_angle());
    double q[4];
    double norm = 0.0;
    do {
        norm = 0.0;
        for (double& qi : q) {
            qi = rng.normal();
            norm += qi * qi;
        }
    } while (norm < 1e-30);
    norm = std::sqrt(norm);
    return GroupElement::so3(quat_to_matrix(q[0] / norm, q[1] / norm, q[2] / norm, q[3] / norm));
}

GroupElement perturb_gaussian(const GroupElement& g, double sigma, Rng& rng) {
    require(sigma >= 0.0, "perturb_gaussian: sigma < 0");
    if (sigma == 0.0) return g;
    int d = block_dim(g.variant);
    std::array<double, 9> m = g.matrix();
    for (int i = 0; i < d * d; ++i) m[i] += sigma * rng.normal();
    return project_to_group(m.data(), g.variant);
}

GroupElement project_to_group(const double* M, Variant v) {
    int d = block_dim(v);
    double W[9], V[9];
    one_sided_jacobi(M, d, W, V);
    double sigma[3];
    int idx[3] = {0, 1, 2};
    for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += W[k * d + j] * W[k * d + j];
        sigma[j] = std::sqrt(s);
    }
    std::sort(idx, idx + d, [&](int a, int b) { return sigma[a] > sigma[b]; });
    if (sigma[idx[d - 1]] < 1e-12) throw numeric_error("project_to_group: degenerate input");
    double U[9], Vs[9];
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            U[k * d + j] = W[k * d + idx[j]] / sigma[idx[j]];
            Vs[k * d + j] = V[k * d + idx[j]];
        }
    double s = determinant(U, d) * determinant(Vs, d) < 0.0 ? -1.0 : 1.0;
    // R = U * diag(1,...,1,s) * V^T
    double R[9];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double acc = 0.0;
            for (int k = 0; k < d; ++k)
                acc += U[i * d + k] * (k == d - 1 ? s : 1.0) * Vs[j * d + k];
            R[i * d + j] = acc;
        }
    if (v == Variant::SO2) return GroupElement::so2(std::atan2(R[1], R[0]));
    std::array<double, 9> out;
    std::copy(R, R + 9, out.begin());
    return GroupElement::so3(out);
}

GroupElement rot_z(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return GroupElement::so3({c, -s, 0, s, c, 0, 0, 0, 1});
}

} // namespace hypersync
