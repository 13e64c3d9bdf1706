#pragma once

#include <optional>
#include <vector>

#include "scalpos/chart.hpp"

namespace scalpos {

/// Value, Jacobian and Hessian stack of a chart at a point.
struct Jet2 {
    Eigen::VectorXd point;                 // in R^n
    Eigen::VectorXd value;                 // in R^N
    Eigen::MatrixXd jacobian;              // N x n
    std::vector<Eigen::MatrixXd> hessian;  // one symmetric n x n block per output

    int n() const { return static_cast<int>(point.size()); }
    int N() const { return static_cast<int>(value.size()); }

    /// Second-derivative vector d2 f / du_i du_j in R^N.
    Eigen::VectorXd hess_vec(int i, int j) const {
        Eigen::VectorXd v(N());
        for (int a = 0; a < N(); ++a) v[a] = hessian[a](i, j);
        return v;
    }
};

enum class JetScheme {
    Dual,              // forward-mode jets, exact to rounding
    FiniteDifference,  // central differences + one Richardson extrapolation
};

/// Orthonormal tangent frame, pullback metric and normal projector at a point.
struct FrameData {
    Eigen::MatrixXd tangent_frame;     // N x n, orthonormal columns
    Eigen::MatrixXd metric;            // n x n first fundamental form
    Eigen::MatrixXd metric_chol;       // lower-triangular L with metric = L L^T
    Eigen::MatrixXd normal_projector;  // N x N, projection onto nu_f
    double sigma_min = 0.0;            // smallest singular value of the Jacobian
};

/// Second fundamental form data in an orthonormal tangent basis.
struct CurvatureSample {
    std::vector<Eigen::VectorXd> sff;    // n*n normal vectors, row-major (i*n+j)
    Eigen::VectorXd mean_curvature;      // tr(alpha) in R^N
    std::optional<Eigen::VectorXd> xi;   // unit mean curvature direction, if defined
    double scal = 0.0;                   // |tr(alpha)|^2 - |alpha|^2
    double mean_norm = 0.0;              // |tr(alpha)|
    double sff_norm2 = 0.0;              // |alpha|^2

    const Eigen::VectorXd& alpha(int i, int j, int n) const { return sff[i * n + j]; }
};

struct JetOptions {
    double fd_step = 1e-3;
    double immersion_margin = 1e-6;
    double symmetrize_tol = 1e-9;
    double xi_threshold = 1e-12;
};

Jet2 evaluate_jet2(const ImmersionChart& chart, const Eigen::VectorXd& u,
                   JetScheme scheme = JetScheme::Dual, const JetOptions& opt = {});

FrameData frame_and_metric(const Jet2& jet);

CurvatureSample second_fundamental_form(const Jet2& jet, const FrameData& frame,
                                        const JetOptions& opt = {});

/// Convenience: jet + frame + curvature at one point (dual scheme).
CurvatureSample curvature_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                             const JetOptions& opt = {});

/// Scalar curvature of the pullback metric computed intrinsically:
/// Christoffel symbols from exact metric derivatives, their derivatives by
/// central differences of step h (convergence order 2), double trace of the
/// Riemann tensor. Independent of the Gauss-equation path above.
double intrinsic_scalar_oracle(const ImmersionChart& chart, const Eigen::VectorXd& u,
                               double h = 1e-3);

/// Uniform sampling grid over a chart domain. Points are placed strictly
/// inside the box with the given relative margin per axis.
struct GridSpec {
    std::vector<int> resolution;  // per-axis counts, each >= 2
    double margin_frac = 1e-3;

    static GridSpec uniform(int n, int res, double margin_frac = 1e-3) {
        GridSpec g;
        g.resolution.assign(n, res);
        g.margin_frac = margin_frac;
        return g;
    }

    long total() const {
        long t = 1;
        for (int r : resolution) t *= r;
        return t;
    }

    Eigen::VectorXd point(const Box& box, long index) const;
};

/// Scan result fragment; merges associatively (min / argmin / counts).
struct ScanReport {
    double min_scal = std::numeric_limits<double>::infinity();
    Eigen::VectorXd argmin_scal;
    double min_margin = std::numeric_limits<double>::infinity();
    Eigen::VectorXd argmin_margin;
    double min_mean_norm = std::numeric_limits<double>::infinity();
    long samples = 0;
    bool immersion_ok = true;
    bool scalar_positive = false;
    std::string label;

    static ScanReport merge(const ScanReport& a, const ScanReport& b);
};

ScanReport scan_scalar_positivity(const ImmersionChart& chart, const GridSpec& grid,
                                  const JetOptions& opt = {});

}  // namespace scalpos
