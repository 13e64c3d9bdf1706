#include "scalpos/charts.hpp"

#include <vector>

#include "scalpos/rng.hpp"

namespace scalpos {

void unit_sphere_eval(int face, std::span<const Jet> w, std::span<Jet> out) {
    const int k = static_cast<int>(out.size());
    const int axis = face / 2;
    const double sign = face % 2 == 0 ? 1.0 : -1.0;

    Jet norm2(1.0);
    for (const Jet& wi : w) norm2 = norm2 + wi * wi;
    Jet inv_norm = inv(sqrt(norm2));

    int j = 0;
    for (int i = 0; i < k; ++i) {
        if (i == axis)
            out[i] = sign * inv_norm;
        else
            out[i] = w[j++] * inv_norm;
    }
}

ImmersionChart round_sphere_chart(int n, int N, double radius, int face) {
    auto eval = [n, N, radius, face](std::span<const Jet> u, std::span<Jet> out) {
        std::vector<Jet> x(n + 1);
        unit_sphere_eval(face, u, x);
        for (int a = 0; a < N; ++a) out[a] = a <= n ? radius * x[a] : Jet(0.0);
    };
    return ImmersionChart(n, N, Box::cube(n, -1.0, 1.0), eval,
                          "round-s" + std::to_string(n));
}

ImmersionChart flat_plane_chart(int N) {
    auto eval = [N](std::span<const Jet> u, std::span<Jet> out) {
        out[0] = u[0];
        out[1] = u[1];
        for (int a = 2; a < N; ++a) out[a] = Jet(0.0);
    };
    return ImmersionChart(2, N, Box::cube(2, -2.0, 2.0), eval, "flat-plane");
}

ImmersionChart clifford_torus_chart() {
    auto eval = [](std::span<const Jet> u, std::span<Jet> out) {
        out[0] = cos(u[0]);
        out[1] = sin(u[0]);
        out[2] = cos(u[1]);
        out[3] = sin(u[1]);
    };
    return ImmersionChart(2, 4, Box::cube(2, -3.0, 3.0), eval, "clifford-torus");
}

ImmersionChart tube_s1_in_s4_chart(double r, int face) {
    const double cr = std::cos(r), sr = std::sin(r);
    auto eval = [cr, sr, face](std::span<const Jet> u, std::span<Jet> out) {
        std::vector<Jet> omega(3);
        unit_sphere_eval(face, u.subspan(1, 2), omega);
        out[0] = cr * cos(u[0]);
        out[1] = cr * sin(u[0]);
        for (int i = 0; i < 3; ++i) out[2 + i] = sr * omega[i];
    };
    Box box;
    box.lo = Eigen::Vector3d(-3.0, -1.0, -1.0);
    box.hi = Eigen::Vector3d(3.0, 1.0, 1.0);
    return ImmersionChart(3, 5, box, eval, "tube-s1-in-s4");
}

ImmersionChart perturbed_sphere_chart(int n, int N, double eps, std::uint64_t seed) {
    struct Term {
        double c;
        std::vector<double> freq, phase;
    };
    Rng rng(seed);
    std::vector<Term> terms(3);
    for (auto& t : terms) {
        t.c = rng.uniform(-1.0, 1.0);
        for (int j = 0; j < n; ++j) {
            t.freq.push_back(rng.uniform(0.5, 2.0));
            t.phase.push_back(rng.uniform(0.0, 6.28));
        }
    }

    auto eval = [n, N, eps, terms](std::span<const Jet> u, std::span<Jet> out) {
        std::vector<Jet> x(n + 1);
        unit_sphere_eval(0, u, x);
        Jet bump(0.0);
        for (const auto& t : terms) {
            Jet prod(t.c);
            for (int j = 0; j < n; ++j) prod = prod * sin(t.freq[j] * u[j] + t.phase[j]);
            bump = bump + prod;
        }
        Jet factor = 1.0 + eps * bump;
        for (int a = 0; a < N; ++a) out[a] = a <= n ? x[a] * factor : Jet(0.0);
    };
    return ImmersionChart(n, N, Box::cube(n, -1.0, 1.0), eval,
                          "perturbed-s" + std::to_string(n));
}

ImmersionChart random_polynomial_chart(int n, int N, int degree, std::uint64_t seed) {
    // Monomial exponent tuples with total degree <= degree.
    std::vector<std::vector<int>> exps;
    std::vector<int> cur(n, 0);
    std::function<void(int, int)> gen = [&](int pos, int remaining) {
        if (pos == n) {
            exps.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[pos] = e;
            gen(pos + 1, remaining - e);
        }
        cur[pos] = 0;
    };
    gen(0, degree);

    Rng rng(seed);
    Eigen::MatrixXd coef(N, static_cast<int>(exps.size()));
    for (int a = 0; a < N; ++a)
        for (int m = 0; m < coef.cols(); ++m) coef(a, m) = rng.uniform(-1.0, 1.0);
    // Keep the differential nondegenerate by biasing the linear part.
    for (std::size_t m = 0; m < exps.size(); ++m) {
        int total = 0, which = -1;
        for (int j = 0; j < n; ++j) {
            total += exps[m][j];
            if (exps[m][j] == 1) which = j;
        }
        if (total == 1 && which < N) coef(which, static_cast<int>(m)) += 3.0;
    }

    auto eval = [n, N, exps, coef](std::span<const Jet> u, std::span<Jet> out) {
        std::vector<Jet> mono(exps.size());
        for (std::size_t m = 0; m < exps.size(); ++m) {
            Jet p(1.0);
            for (int j = 0; j < n; ++j)
                for (int e = 0; e < exps[m][j]; ++e) p = p * u[j];
            mono[m] = p;
        }
        for (int a = 0; a < N; ++a) {
            Jet acc(0.0);
            for (std::size_t m = 0; m < exps.size(); ++m)
                acc = acc + coef(a, static_cast<int>(m)) * mono[m];
            out[a] = acc;
        }
    };
    return ImmersionChart(n, N, Box::cube(n, -1.0, 1.0), eval, "poly-deg" + std::to_string(degree));
}

}  // namespace scalpos
