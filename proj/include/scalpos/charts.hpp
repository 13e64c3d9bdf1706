#pragma once

#include <cstdint>

#include "scalpos/chart.hpp"

namespace scalpos {

/// Evaluate the cube-face parametrization of the unit sphere S^{k-1} in R^k:
/// w in (-1,1)^{k-1} maps to normalize(insert +-1 at the face axis).
/// face in [0, 2k): axis = face / 2, sign = face % 2 == 0 ? +1 : -1.
/// out must have size k.
void unit_sphere_eval(int face, std::span<const Jet> w, std::span<Jet> out);

/// Round sphere S^n of the given radius, first n+1 coordinates of R^N,
/// one cube-face patch.
ImmersionChart round_sphere_chart(int n, int N, double radius = 1.0, int face = 0);

/// u -> (u1, u2, 0, ...) in R^N.
ImmersionChart flat_plane_chart(int N = 3);

/// (u, v) -> (cos u, sin u, cos v, sin v); flat induced metric.
ImmersionChart clifford_torus_chart();

/// Geodesic tube of radius r around the equatorial S^1 inside round S^4 in R^5:
/// (u, w) -> cos(r) (cos u, sin u, 0,0,0) + sin(r) omega(w),
/// with omega a cube-face patch of the S^2 in coordinates 3..5.
ImmersionChart tube_s1_in_s4_chart(double r, int face = 0);

/// Round sphere patch with a smooth radial perturbation:
/// x(u) * (1 + eps * sum_i c_i * prod_j sin(f_ij u_j + p_ij)), coefficients
/// drawn from the seed.
ImmersionChart perturbed_sphere_chart(int n, int N, double eps, std::uint64_t seed);

/// Random polynomial map R^n -> R^N of the given total degree, coefficients
/// drawn from the seed. Used as an exact-derivative fixture.
ImmersionChart random_polynomial_chart(int n, int N, int degree, std::uint64_t seed);

}  // namespace scalpos
