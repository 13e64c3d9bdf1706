#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>

#include "scalpos/errors.hpp"
#include "scalpos/jet.hpp"

namespace scalpos {

/// Axis-aligned open box in R^n.
struct Box {
    Eigen::VectorXd lo, hi;

    static Box cube(int n, double a, double b) {
        Box box;
        box.lo = Eigen::VectorXd::Constant(n, a);
        box.hi = Eigen::VectorXd::Constant(n, b);
        return box;
    }

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(const Eigen::VectorXd& u, double margin = 0.0) const {
        if (u.size() != lo.size()) return false;
        for (int i = 0; i < u.size(); ++i)
            if (!(u[i] > lo[i] + margin && u[i] < hi[i] - margin)) return false;
        return true;
    }
};

/// An evaluable smooth map from an open box in R^n into R^N.
///
/// Evaluation runs on jets; passing constant jets (dim 0) degenerates to
/// plain double arithmetic, so chart values are bit-reproducible across
/// the two uses.
class ImmersionChart {
public:
    using Eval = std::function<void(std::span<const Jet>, std::span<Jet>)>;

    ImmersionChart() = default;
    ImmersionChart(int n, int N, Box domain, Eval eval, std::string label)
        : n_(n), N_(N), domain_(std::move(domain)), eval_(std::move(eval)),
          label_(std::move(label)) {
        if (N_ < n_) throw PreconditionError("chart: ambient dim < intrinsic dim");
    }

    int intrinsic_dim() const { return n_; }
    int ambient_dim() const { return N_; }
    const Box& domain() const { return domain_; }
    const std::string& label() const { return label_; }

    void eval(std::span<const Jet> u, std::span<Jet> out) const { eval_(u, out); }

    /// Zero-order evaluation (bit-identical to the jet value component).
    Eigen::VectorXd value(const Eigen::VectorXd& u) const {
        std::vector<Jet> in(n_), out(N_);
        for (int i = 0; i < n_; ++i) in[i] = Jet(u[i]);
        eval_(in, out);
        Eigen::VectorXd r(N_);
        for (int a = 0; a < N_; ++a) r[a] = out[a].v;
        return r;
    }

    /// Chart precomposed with the affine map u -> A u + b.
    ImmersionChart precompose_affine(const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& b, Box new_domain,
                                     const std::string& label_suffix = "/affine") const {
        Eval base = eval_;
        const int n = n_;
        auto wrapped = [base, A, b, n](std::span<const Jet> u, std::span<Jet> out) {
            std::vector<Jet> w(n);
            for (int i = 0; i < n; ++i) {
                Jet acc(b[i]);
                for (int j = 0; j < n; ++j) acc = acc + A(i, j) * u[j];
                w[i] = acc;
            }
            base(w, out);
        };
        return ImmersionChart(n_, N_, std::move(new_domain), wrapped, label_ + label_suffix);
    }

    /// Chart postcomposed with the ambient rigid motion x -> Q x + c.
    ImmersionChart postcompose_isometry(const Eigen::MatrixXd& Q,
                                        const Eigen::VectorXd& c) const {
        Eval base = eval_;
        const int N = N_;
        auto wrapped = [base, Q, c, N](std::span<const Jet> u, std::span<Jet> out) {
            std::vector<Jet> w(N);
            base(u, w);
            for (int a = 0; a < N; ++a) {
                Jet acc(c[a]);
                for (int b2 = 0; b2 < N; ++b2) acc = acc + Q(a, b2) * w[b2];
                out[a] = acc;
            }
        };
        return ImmersionChart(n_, N_, domain_, wrapped, label_ + "/moved");
    }

    /// Chart scaled by c in the ambient space.
    ImmersionChart scale_ambient(double c) const {
        Eval base = eval_;
        const int N = N_;
        auto wrapped = [base, c, N](std::span<const Jet> u, std::span<Jet> out) {
            base(u, out);
            for (int a = 0; a < N; ++a) out[a] = c * out[a];
        };
        return ImmersionChart(n_, N_, domain_, wrapped, label_ + "/scaled");
    }

private:
    int n_ = 0, N_ = 0;
    Box domain_;
    Eval eval_;
    std::string label_;
};

}  // namespace scalpos
