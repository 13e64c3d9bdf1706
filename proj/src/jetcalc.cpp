#include "scalpos/jetcalc.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>

#include "scalpos/parallel.hpp"

namespace scalpos {

namespace {

void check_inside(const ImmersionChart& chart, const Eigen::VectorXd& u) {
    if (u.size() != chart.intrinsic_dim())
        throw DomainError("evaluate_jet2: point dimension mismatch for chart '" +
                          chart.label() + "'");
    if (!chart.domain().contains(u))
        throw DomainError("evaluate_jet2: point outside domain of chart '" +
                          chart.label() + "'");
}

Jet2 jet2_dual(const ImmersionChart& chart, const Eigen::VectorXd& u) {
    const int n = chart.intrinsic_dim();
    const int N = chart.ambient_dim();
    std::vector<Jet> in(n), out(N);
    for (int i = 0; i < n; ++i) in[i] = Jet::variable(u[i], i, n);
    chart.eval(in, out);

    Jet2 jet;
    jet.point = u;
    jet.value.resize(N);
    jet.jacobian.resize(N, n);
    jet.hessian.reserve(N);
    for (int a = 0; a < N; ++a) {
        jet.value[a] = out[a].v;
        if (out[a].constant()) {
            jet.jacobian.row(a).setZero();
            jet.hessian.emplace_back(Eigen::MatrixXd::Zero(n, n));
        } else {
            jet.jacobian.row(a) = out[a].g.transpose();
            jet.hessian.push_back(std::move(out[a].h));
        }
    }
    return jet;
}

// Central differences at steps h and h/2 with one Richardson extrapolation,
// built from zero-order evaluations only.
Jet2 jet2_fd(const ImmersionChart& chart, const Eigen::VectorXd& u, double h) {
    const int n = chart.intrinsic_dim();
    const int N = chart.ambient_dim();
    auto f = [&](const Eigen::VectorXd& x) { return chart.value(x); };

    Jet2 jet;
    jet.point = u;
    jet.value = f(u);
    jet.jacobian.resize(N, n);
    jet.hessian.assign(N, Eigen::MatrixXd::Zero(n, n));

    auto richardson = [](const Eigen::VectorXd& coarse, const Eigen::VectorXd& fine) {
        return (4.0 * fine - coarse) / 3.0;
    };

    auto shift = [&](int i, double d) {
        Eigen::VectorXd x = u;
        x[i] += d;
        return x;
    };

    for (int i = 0; i < n; ++i) {
        auto d1 = [&](double step) {
            return ((f(shift(i, step)) - f(shift(i, -step))) / (2 * step)).eval();
        };
        jet.jacobian.col(i) = richardson(d1(h), d1(h / 2));

        auto d2 = [&](double step) {
            return ((f(shift(i, step)) - 2 * jet.value + f(shift(i, -step))) /
                    (step * step))
                .eval();
        };
        Eigen::VectorXd dii = richardson(d2(h), d2(h / 2));
        for (int a = 0; a < N; ++a) jet.hessian[a](i, i) = dii[a];
    }

    auto shift2 = [&](int i, double di, int j, double dj) {
        Eigen::VectorXd x = u;
        x[i] += di;
        x[j] += dj;
        return x;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            auto dij = [&](double step) {
                return ((f(shift2(i, step, j, step)) - f(shift2(i, step, j, -step)) -
                         f(shift2(i, -step, j, step)) + f(shift2(i, -step, j, -step))) /
                        (4 * step * step))
                    .eval();
            };
            Eigen::VectorXd v = richardson(dij(h), dij(h / 2));
            for (int a = 0; a < N; ++a) {
                jet.hessian[a](i, j) = v[a];
                jet.hessian[a](j, i) = v[a];
            }
        }
    }
    return jet;
}

}  // namespace

Jet2 evaluate_jet2(const ImmersionChart& chart, const Eigen::VectorXd& u,
                   JetScheme scheme, const JetOptions& opt) {
    check_inside(chart, u);
    Jet2 jet = scheme == JetScheme::Dual ? jet2_dual(chart, u) : jet2_fd(chart, u, opt.fd_step);

    if (!jet.value.allFinite() || !jet.jacobian.allFinite())
        throw NumericError("evaluate_jet2: non-finite value on chart '" + chart.label() + "'");
    for (auto& hb : jet.hessian) {
        if (!hb.allFinite())
            throw NumericError("evaluate_jet2: non-finite Hessian on chart '" +
                               chart.label() + "'");
        hb = ((hb + hb.transpose()) / 2).eval();  // enforce chart-index symmetry
    }
    return jet;
}

FrameData frame_and_metric(const Jet2& jet) {
    const int n = jet.n();
    const int N = jet.N();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jet.jacobian);
    const double sigma_min = svd.singularValues()[n - 1];
    if (sigma_min <= 1e-10)
        throw ImmersionError("frame_and_metric: rank-deficient differential (sigma_min = " +
                                 std::to_string(sigma_min) + ")",
                             sigma_min);

    FrameData frame;
    frame.sigma_min = sigma_min;
    frame.metric = jet.jacobian.transpose() * jet.jacobian;

    Eigen::LLT<Eigen::MatrixXd> llt(frame.metric);
    if (llt.info() != Eigen::Success)
        throw ImmersionError("frame_and_metric: metric not positive definite", sigma_min);
    frame.metric_chol = llt.matrixL();

    // Gram-Schmidt in fixed column order; identical span as Q = J L^{-T}.
    frame.tangent_frame.resize(N, n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd v = jet.jacobian.col(i);
        for (int j = 0; j < i; ++j)
            v -= frame.tangent_frame.col(j).dot(jet.jacobian.col(i)) * frame.tangent_frame.col(j);
        frame.tangent_frame.col(i) = v / v.norm();
    }

    frame.normal_projector =
        Eigen::MatrixXd::Identity(N, N) - frame.tangent_frame * frame.tangent_frame.transpose();
    return frame;
}

CurvatureSample second_fundamental_form(const Jet2& jet, const FrameData& frame,
                                        const JetOptions& opt) {
    const int n = jet.n();
    const int N = jet.N();

    // Basis change to the orthonormal frame e_a = sum_i B_{ia} d_i with
    // B = L^{-T}, so that scal becomes a literal double sum.
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
    frame.metric_chol.transpose()
        .triangularView<Eigen::Upper>()
        .solveInPlace(B);  // B = L^{-T}

    CurvatureSample s;
    s.sff.assign(static_cast<std::size_t>(n) * n, Eigen::VectorXd::Zero(N));

    std::vector<Eigen::VectorXd> proj_hess(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Eigen::VectorXd ph = frame.normal_projector * jet.hess_vec(i, j);
            proj_hess[i * n + j] = ph;
            proj_hess[j * n + i] = ph;
        }

    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) v += B(i, a) * B(j, b) * proj_hess[i * n + j];
            s.sff[a * n + b] = v;
            s.sff[b * n + a] = v;
        }

    s.mean_curvature = Eigen::VectorXd::Zero(N);
    for (int a = 0; a < n; ++a) s.mean_curvature += s.sff[a * n + a];

    s.sff_norm2 = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s.sff_norm2 += s.sff[a * n + b].squaredNorm();

    s.mean_norm = s.mean_curvature.norm();
    s.scal = s.mean_norm * s.mean_norm - s.sff_norm2;
    if (!std::isfinite(s.scal))
        throw NumericError("second_fundamental_form: non-finite curvature");

    if (s.mean_norm > opt.xi_threshold) s.xi = s.mean_curvature / s.mean_norm;
    return s;
}

CurvatureSample curvature_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                             const JetOptions& opt) {
    Jet2 jet = evaluate_jet2(chart, u, JetScheme::Dual, opt);
    return second_fundamental_form(jet, frame_and_metric(jet), opt);
}

namespace {

// Christoffel symbols of the second kind at u from exact (jet-level) metric
// derivatives: d_k g_ij = sum_a (H[k][i]_a J_{aj} + J_{ai} H[k][j]_a).
Eigen::MatrixXd christoffel(const ImmersionChart& chart, const Eigen::VectorXd& u,
                            int& n_out) {
    Jet2 jet = jet2_dual(chart, u);
    const int n = jet.n();
    n_out = n;

    Eigen::MatrixXd g = jet.jacobian.transpose() * jet.jacobian;
    Eigen::MatrixXd ginv = g.inverse();

    std::vector<Eigen::MatrixXd> dg(n);  // dg[k](i,j) = d_k g_ij
    for (int k = 0; k < n; ++k) {
        dg[k].resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                dg[k](i, j) = jet.hess_vec(k, i).dot(jet.jacobian.col(j)) +
                              jet.jacobian.col(i).dot(jet.hess_vec(k, j));
    }

    Eigen::MatrixXd gamma(n, n * n);  // gamma(k, i*n+j) = Gamma^k_ij
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd lower(n);
            for (int l = 0; l < n; ++l)
                lower[l] = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
            gamma.col(i * n + j) = ginv * lower;
        }
    return gamma;
}

}  // namespace

double intrinsic_scalar_oracle(const ImmersionChart& chart, const Eigen::VectorXd& u,
                               double h) {
    check_inside(chart, u);
    int n = 0;
    Eigen::MatrixXd gamma0 = christoffel(chart, u, n);

    // d_l Gamma by central differences (order 2 in h).
    std::vector<Eigen::MatrixXd> dgamma(n);
    for (int l = 0; l < n; ++l) {
        Eigen::VectorXd up = u, dn = u;
        up[l] += h;
        dn[l] -= h;
        int dummy = 0;
        dgamma[l] = (christoffel(chart, up, dummy) - christoffel(chart, dn, dummy)) / (2 * h);
    }

    Jet2 jet = jet2_dual(chart, u);
    Eigen::MatrixXd g = jet.jacobian.transpose() * jet.jacobian;
    Eigen::MatrixXd ginv = g.inverse();

    auto G = [&](int k, int i, int j) { return gamma0(k, i * n + j); };
    auto dG = [&](int l, int k, int i, int j) { return dgamma[l](k, i * n + j); };

    // Ricci: R_ij = d_k G^k_ij - d_j G^k_ik + G^k_kl G^l_ij - G^k_jl G^l_ik.
    Eigen::MatrixXd ric(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double r = 0.0;
            for (int k = 0; k < n; ++k) {
                r += dG(k, k, i, j) - dG(j, k, i, k);
                for (int l = 0; l < n; ++l)
                    r += G(k, k, l) * G(l, i, j) - G(k, j, l) * G(l, i, k);
            }
            ric(i, j) = r;
        }

    const double scal = (ginv * ric).trace();
    if (!std::isfinite(scal))
        throw NumericError("intrinsic_scalar_oracle: non-finite intermediate");
    return scal;
}

Eigen::VectorXd GridSpec::point(const Box& box, long index) const {
    const int n = static_cast<int>(resolution.size());
    Eigen::VectorXd u(n);
    long rem = index;
    for (int i = 0; i < n; ++i) {
        const int r = resolution[i];
        const int k = static_cast<int>(rem % r);
        rem /= r;
        const double pad = margin_frac * (box.hi[i] - box.lo[i]);
        const double lo = box.lo[i] + pad, hi = box.hi[i] - pad;
        u[i] = r == 1 ? (lo + hi) / 2 : lo + (hi - lo) * double(k) / double(r - 1);
    }
    return u;
}

ScanReport ScanReport::merge(const ScanReport& a, const ScanReport& b) {
    ScanReport r = a;
    if (b.min_scal < r.min_scal) {
        r.min_scal = b.min_scal;
        r.argmin_scal = b.argmin_scal;
    }
    if (b.min_margin < r.min_margin) {
        r.min_margin = b.min_margin;
        r.argmin_margin = b.argmin_margin;
    }
    r.min_mean_norm = std::min(r.min_mean_norm, b.min_mean_norm);
    r.samples += b.samples;
    r.immersion_ok = r.immersion_ok && b.immersion_ok;
    r.scalar_positive = r.scalar_positive && b.scalar_positive;
    if (r.label.empty()) r.label = b.label;
    return r;
}

ScanReport scan_scalar_positivity(const ImmersionChart& chart, const GridSpec& grid,
                                  const JetOptions& opt) {
    for (int r : grid.resolution)
        if (r < 1) throw PreconditionError("scan: grid resolution must be >= 1 per axis");
    if (static_cast<int>(grid.resolution.size()) != chart.intrinsic_dim())
        throw PreconditionError("scan: grid rank mismatch");

    const long total = grid.total();
    ScanReport init;
    init.label = chart.label();
    init.scalar_positive = true;

    ScanReport out = parallel_reduce<ScanReport>(
        static_cast<std::size_t>(total), init,
        [&](std::size_t lo, std::size_t hi) {
            ScanReport r = init;
            for (std::size_t idx = lo; idx < hi; ++idx) {
                const Eigen::VectorXd u = grid.point(chart.domain(), static_cast<long>(idx));
                Jet2 jet = evaluate_jet2(chart, u, JetScheme::Dual, opt);
                FrameData frame;
                try {
                    frame = frame_and_metric(jet);
                } catch (const ImmersionError& e) {
                    r.immersion_ok = false;
                    r.scalar_positive = false;
                    if (e.sigma_min < r.min_margin) {
                        r.min_margin = e.sigma_min;
                        r.argmin_margin = u;
                    }
                    ++r.samples;
                    continue;
                }
                if (frame.sigma_min < r.min_margin) {
                    r.min_margin = frame.sigma_min;
                    r.argmin_margin = u;
                }
                if (frame.sigma_min <= opt.immersion_margin) r.immersion_ok = false;
                CurvatureSample c = second_fundamental_form(jet, frame, opt);
                if (c.scal < r.min_scal) {
                    r.min_scal = c.scal;
                    r.argmin_scal = u;
                }
                r.min_mean_norm = std::min(r.min_mean_norm, c.mean_norm);
                if (!(c.scal > 0)) r.scalar_positive = false;
                ++r.samples;
            }
            return r;
        },
        &ScanReport::merge);

    out.scalar_positive = out.scalar_positive && out.immersion_ok;
    return out;
}

}  // namespace scalpos
