#include "galmann/frenet.hpp"

#include <cmath>

#include "galmann/errors.hpp"
#include "galmann/finite_difference.hpp"
#include "galmann/numeric_format.hpp"

namespace galmann {

std::optional<FrenetData> try_frenet_apparatus(const SampledCurve& curve, std::size_t* degenerate_index) {
    const std::size_t n = curve.size();
    FrenetData fd;
    fd.tangent.resize(n);
    fd.normal.resize(n);
    fd.binormal.resize(n);
    fd.kappa.resize(n);
    fd.tau.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const Jet3& y = curve.jets[i].y;
        const Jet3& z = curve.jets[i].z;
        const double kappa = std::hypot(y.d2f, z.d2f);
        if (kappa <= curvature_floor) {
            if (degenerate_index) *degenerate_index = i;
            return std::nullopt;
        }
        fd.kappa[i] = kappa;
        fd.tau[i] = (y.d2f * z.d3f - z.d2f * y.d3f) / (kappa * kappa);
        fd.tangent[i] = {1.0, y.df, z.df};
        fd.normal[i] = {0.0, y.d2f / kappa, z.d2f / kappa};
        fd.binormal[i] = {0.0, -z.d2f / kappa, y.d2f / kappa};
    }
    return fd;
}

FrenetData frenet_apparatus(const SampledCurve& curve) {
    std::size_t index = 0;
    auto fd = try_frenet_apparatus(curve, &index);
    if (!fd) throw DegenerateCurvature(index);
    return std::move(*fd);
}

FrenetResiduals frenet_residuals(const SampledCurve& curve, const FrenetData& fd) {
    const std::size_t n = curve.size();
    if (n < 5) throw InputError("frenet_residuals: grid too small (need at least 5 samples)");

    // Per-component series for the stencil.
    std::vector<double> ty(n), tz(n), ny(n), nz(n), by(n), bz(n);
    for (std::size_t i = 0; i < n; ++i) {
        ty[i] = fd.tangent[i].y;
        tz[i] = fd.tangent[i].z;
        ny[i] = fd.normal[i].y;
        nz[i] = fd.normal[i].z;
        by[i] = fd.binormal[i].y;
        bz[i] = fd.binormal[i].z;
    }

    FrenetResiduals res;
    const double h = curve.h;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double dty = central_diff5(ty, h, i), dtz = central_diff5(tz, h, i);
        const double dny = central_diff5(ny, h, i), dnz = central_diff5(nz, h, i);
        const double dby = central_diff5(by, h, i), dbz = central_diff5(bz, h, i);
        const double k = fd.kappa[i], t = fd.tau[i];
        res.tangent_eq = std::max(res.tangent_eq, std::hypot(dty - k * ny[i], dtz - k * nz[i]));
        res.normal_eq = std::max(res.normal_eq, std::hypot(dny - t * by[i], dnz - t * bz[i]));
        res.binormal_eq = std::max(res.binormal_eq, std::hypot(dby + t * ny[i], dbz + t * nz[i]));
    }
    return res;
}

std::string frenet_csv(const SampledCurve& curve, const FrenetData& fd) {
    std::string out = "s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau\n";
    const std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        const GalVec3 &p = curve.pos[i], &T = fd.tangent[i], &N = fd.normal[i], &B = fd.binormal[i];
        out += format_g17(curve.s[i]);
        for (const double v : {p.x, p.y, p.z, T.x, T.y, T.z, N.x, N.y, N.z, B.x, B.y, B.z,
                               fd.kappa[i], fd.tau[i]}) {
            out += ',';
            out += format_g17(v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace galmann
