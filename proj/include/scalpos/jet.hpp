#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace scalpos {

/// Second-order forward-mode scalar: value, gradient and Hessian with
/// respect to a fixed set of input variables. A Jet with dim() == 0 acts
/// as a constant; binary operations broadcast constants as needed.
///
/// Arithmetic on the value component performs exactly the same double
/// operations as plain evaluation, so extracting .v from a Jet pipeline
/// is bit-identical to evaluating the map on doubles.
class Jet {
public:
    double v = 0.0;
    Eigen::VectorXd g;  // size n (or 0 for constants)
    Eigen::MatrixXd h;  // n x n, symmetric

    Jet() = default;
    Jet(double value) : v(value) {}  // NOLINT: implicit by design
    Jet(double value, Eigen::VectorXd grad, Eigen::MatrixXd hess)
        : v(value), g(std::move(grad)), h(std::move(hess)) {}

    /// Seed variable i of an n-variable computation.
    static Jet variable(double value, int i, int n) {
        Jet j;
        j.v = value;
        j.g = Eigen::VectorXd::Zero(n);
        j.g[i] = 1.0;
        j.h = Eigen::MatrixXd::Zero(n, n);
        return j;
    }

    int dim() const { return static_cast<int>(g.size()); }
    bool constant() const { return g.size() == 0; }
};

namespace detail {

inline void promote(Jet& a, int n) {
    if (a.dim() == n) return;
    a.g = Eigen::VectorXd::Zero(n);
    a.h = Eigen::MatrixXd::Zero(n, n);
}

inline int join_dim(const Jet& a, const Jet& b) {
    const int na = a.dim(), nb = b.dim();
    if (na != 0 && nb != 0 && na != nb)
        throw std::logic_error("jet dimension mismatch");
    return na != 0 ? na : nb;
}

}  // namespace detail

inline Jet operator+(const Jet& a, const Jet& b) {
    const int n = detail::join_dim(a, b);
    Jet r(a.v + b.v);
    if (n == 0) return r;
    if (a.constant()) { r.g = b.g; r.h = b.h; return r; }
    if (b.constant()) { r.g = a.g; r.h = a.h; return r; }
    r.g = a.g + b.g;
    r.h = a.h + b.h;
    return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
    const int n = detail::join_dim(a, b);
    Jet r(a.v - b.v);
    if (n == 0) return r;
    if (a.constant()) { r.g = -b.g; r.h = -b.h; return r; }
    if (b.constant()) { r.g = a.g; r.h = a.h; return r; }
    r.g = a.g - b.g;
    r.h = a.h - b.h;
    return r;
}

inline Jet operator-(const Jet& a) {
    Jet r(-a.v);
    if (!a.constant()) { r.g = -a.g; r.h = -a.h; }
    return r;
}

inline Jet operator*(const Jet& a, const Jet& b) {
    const int n = detail::join_dim(a, b);
    Jet r(a.v * b.v);
    if (n == 0) return r;
    if (a.constant()) { r.g = a.v * b.g; r.h = a.v * b.h; return r; }
    if (b.constant()) { r.g = b.v * a.g; r.h = b.v * a.h; return r; }
    r.g = a.v * b.g + b.v * a.g;
    r.h = a.v * b.h + b.v * a.h + a.g * b.g.transpose() + b.g * a.g.transpose();
    return r;
}

/// Apply a scalar function given its value and first two derivatives at a.v.
inline Jet apply_scalar(const Jet& a, double f, double fp, double fpp) {
    Jet r(f);
    if (a.constant()) return r;
    r.g = fp * a.g;
    r.h = fp * a.h + fpp * (a.g * a.g.transpose());
    return r;
}

inline Jet inv(const Jet& a) {
    const double iv = 1.0 / a.v;
    return apply_scalar(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }

inline Jet operator+(const Jet& a, double b) { return a + Jet(b); }
inline Jet operator+(double a, const Jet& b) { return Jet(a) + b; }
inline Jet operator-(const Jet& a, double b) { return a - Jet(b); }
inline Jet operator-(double a, const Jet& b) { return Jet(a) - b; }
inline Jet operator*(const Jet& a, double b) { return a * Jet(b); }
inline Jet operator*(double a, const Jet& b) { return Jet(a) * b; }
inline Jet operator/(const Jet& a, double b) { return a * Jet(1.0 / b); }
inline Jet operator/(double a, const Jet& b) { return Jet(a) * inv(b); }

inline Jet sin(const Jet& a) { return apply_scalar(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet cos(const Jet& a) { return apply_scalar(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet exp(const Jet& a) { const double e = std::exp(a.v); return apply_scalar(a, e, e, e); }
inline Jet log(const Jet& a) { return apply_scalar(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }

inline Jet sqrt(const Jet& a) {
    const double s = std::sqrt(a.v);
    return apply_scalar(a, s, 0.5 / s, -0.25 / (s * s * a.v));
}

inline Jet pow_int(const Jet& a, int k) {
    if (k == 0) return Jet(1.0);
    if (k == 1) return a;
    if (k == 2) return a * a;
    return apply_scalar(a, std::pow(a.v, k), k * std::pow(a.v, k - 1),
                        double(k) * (k - 1) * std::pow(a.v, k - 2));
}

// --- Smooth-at-zero radial helpers -----------------------------------------
//
// Charts around rotational centers need cos(|y|), sin(|y|)/|y| and
// (1 - cos|y|)/|y|^2 as smooth functions of t = |y|^2.  Each is analytic
// in t; the closed forms below degrade near t = 0, where we switch to
// truncated series (error < 1e-18 at the switch point).

namespace detail {
constexpr double kRadialSeriesCutoff = 0.25;  // t = |y|^2 below this uses series
}

/// cos(sqrt(t)) with derivatives in t.
inline Jet cos_sqrt(const Jet& t) {
    const double tv = t.v;
    double f, fp, fpp;
    if (std::abs(tv) < detail::kRadialSeriesCutoff) {
        f   = 1 - tv / 2 + tv * tv / 24 - tv * tv * tv / 720 + tv * tv * tv * tv / 40320
              - tv * tv * tv * tv * tv / 3628800;
        fp  = -0.5 + tv / 12 - tv * tv / 240 + tv * tv * tv / 10080 - tv * tv * tv * tv / 725760;
        fpp = 1.0 / 12 - tv / 120 + tv * tv / 3360 - tv * tv * tv / 181440;
    } else {
        const double x = std::sqrt(tv);
        const double sc = std::sin(x) / x;
        f   = std::cos(x);
        fp  = -0.5 * sc;
        fpp = -(std::cos(x) - sc) / (4 * tv);
    }
    return apply_scalar(t, f, fp, fpp);
}

/// sin(sqrt(t))/sqrt(t) with derivatives in t.
inline Jet sinc_sqrt(const Jet& t) {
    const double tv = t.v;
    double f, fp, fpp;
    if (std::abs(tv) < detail::kRadialSeriesCutoff) {
        f   = 1 - tv / 6 + tv * tv / 120 - tv * tv * tv / 5040 + tv * tv * tv * tv / 362880;
        fp  = -1.0 / 6 + tv / 60 - tv * tv / 1680 + tv * tv * tv / 90720;
        fpp = 1.0 / 60 - tv / 840 + tv * tv / 30240;
    } else {
        const double x = std::sqrt(tv);
        const double sc = std::sin(x) / x;
        const double c = std::cos(x);
        f   = sc;
        fp  = (c - sc) / (2 * tv);
        fpp = (-tv * sc - 3 * (c - sc)) / (4 * tv * tv);
    }
    return apply_scalar(t, f, fp, fpp);
}

/// (1 - cos(sqrt(t)))/t with derivatives in t.
inline Jet vers_sqrt(const Jet& t) {
    const double tv = t.v;
    double f, fp, fpp;
    if (std::abs(tv) < detail::kRadialSeriesCutoff) {
        f   = 0.5 - tv / 24 + tv * tv / 720 - tv * tv * tv / 40320 + tv * tv * tv * tv / 3628800;
        fp  = -1.0 / 24 + tv / 360 - tv * tv / 13440 + tv * tv * tv / 907200;
        fpp = 1.0 / 360 - tv / 6720 + tv * tv / 302400;
    } else {
        const double x = std::sqrt(tv);
        const double sc = std::sin(x) / x;
        const double c = std::cos(x);
        f   = (1 - c) / tv;
        fp  = (tv * sc / 2 - (1 - c)) / (tv * tv);
        fpp = (tv * (c - sc) / 4 - tv * sc + 2 * (1 - c)) / (tv * tv * tv);
    }
    return apply_scalar(t, f, fp, fpp);
}

/// Compose an externally differentiated scalar function (value f, df/ds,
/// d2f/ds2 at s.v) with the jet s. Used to feed interpolated profile data
/// into chart evaluations.
inline Jet compose_scalar(double f, double fp, double fpp, const Jet& s) {
    return apply_scalar(s, f, fp, fpp);
}

/// Squared Euclidean norm of a block of jets.
inline Jet squared_norm(std::span<const Jet> y) {
    Jet t(0.0);
    for (const Jet& yi : y) t = t + yi * yi;
    return t;
}

}  // namespace scalpos
