#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "galmann/curve.hpp"
#include "galmann/galilean.hpp"

namespace galmann {

// Below this curvature the frame is reported undefined rather than
// noisily normalized.
inline constexpr double curvature_floor = 1e-10;

// Moving frame and curvatures per sample. Along a canonical curve the
// tangent has x component 1 and the normal/binormal are unit vectors of
// the fibre plane, with binormal = normal rotated by +90 degrees.
struct FrenetData {
    std::vector<GalVec3> tangent, normal, binormal;
    std::vector<double> kappa, tau;

    std::size_t size() const { return kappa.size(); }
};

// kappa = hypot(y'', z''), tau = (y''z''' - z''y''')/kappa^2,
// T = (1, y', z'), N = (0, y'', z'')/kappa, B = (0, -z'', y'')/kappa.
// Throws DegenerateCurvature when kappa falls to the floor anywhere.
FrenetData frenet_apparatus(const SampledCurve& curve);

// Non-throwing variant; returns nullopt and the first degenerate sample
// index instead.
std::optional<FrenetData> try_frenet_apparatus(const SampledCurve& curve,
                                               std::size_t* degenerate_index = nullptr);

// Max residuals of the frame equations T' = kappa N, N' = tau B,
// B' = -tau N over interior samples, frame derivatives by 4th-order
// central differences, fibre-Euclidean norms.
struct FrenetResiduals {
    double tangent_eq = 0.0;
    double normal_eq = 0.0;
    double binormal_eq = 0.0;
};

FrenetResiduals frenet_residuals(const SampledCurve& curve, const FrenetData& fd);

// CSV with header `s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau`, numbers
// at 17 significant digits, '\n' line endings.
std::string frenet_csv(const SampledCurve& curve, const FrenetData& fd);

}  // namespace galmann
