#include "galmann/mannheim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "galmann/errors.hpp"
#include "galmann/finite_difference.hpp"
#include "galmann/numeric_format.hpp"

namespace galmann {

namespace {

double vec_max(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double vec_min(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double vec_max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (const double x : v) m = std::max(m, std::abs(x));
    return m;
}
double vec_mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

MatePair mannheim_mate(const SampledCurve& base, const FrenetData& fd, double lambda) {
    const std::size_t n = base.size();
    const double h = base.h;

    // kappa' is exact from the jets; tau' and tau'' are not reachable from
    // order-3 jets and come from 6-point stencils on the uniform grid.
    const std::vector<double> tau_d1 = fd_derivative(fd.tau, h, 1);
    const std::vector<double> tau_d2 = fd_derivative(fd.tau, h, 2);

    MatePair pair;
    pair.base = base;
    pair.base_frenet = fd;
    pair.lambda = lambda;

    SampledCurve& mate = pair.mate;
    mate.h = h;
    mate.s = base.s;
    mate.pos.resize(n);
    mate.jets.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const Jet3& y = base.jets[i].y;
        const Jet3& z = base.jets[i].z;
        const GalVec3& N = fd.normal[i];
        const GalVec3& B = fd.binormal[i];
        const double kappa = fd.kappa[i];
        const double tau = fd.tau[i];
        const double kappa_d1 = (y.d2f * y.d3f + z.d2f * z.d3f) / kappa;

        // alpha*'   = T + lambda tau B
        // alpha*''  = (kappa - lambda tau^2) N + lambda tau' B
        // alpha*''' = (kappa' - 3 lambda tau tau') N
        //           + (kappa tau - lambda tau^3 + lambda tau'') B
        const double c1 = lambda * tau;
        const double a2 = kappa - lambda * tau * tau;
        const double b2 = lambda * tau_d1[i];
        const double a3 = kappa_d1 - 3.0 * lambda * tau * tau_d1[i];
        const double b3 = kappa * tau - lambda * tau * tau * tau + lambda * tau_d2[i];

        const double s = base.s[i];
        mate.jets[i].x = {s, 1.0, 0.0, 0.0};
        mate.jets[i].y = {y.f + lambda * N.y, y.df + c1 * B.y, a2 * N.y + b2 * B.y, a3 * N.y + b3 * B.y};
        mate.jets[i].z = {z.f + lambda * N.z, z.df + c1 * B.z, a2 * N.z + b2 * B.z, a3 * N.z + b3 * B.z};
        mate.pos[i] = {s, mate.jets[i].y.f, mate.jets[i].z.f};
    }

    std::size_t index = 0;
    pair.mate_frenet = try_frenet_apparatus(mate, &index);
    if (!pair.mate_frenet) pair.degenerate_index = index;
    return pair;
}

std::optional<PartnerDetection> detect_partner(const SampledCurve& curve, const FrenetData& fd,
                                               double relative_tolerance) {
    const std::size_t n = curve.size();
    std::vector<double> offset(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(fd.tau[i]) <= torsion_floor) throw TorsionVanishes(i);
        offset[i] = fd.kappa[i] / (fd.tau[i] * fd.tau[i]);
    }

    PartnerDetection det;
    det.lambda = vec_mean(offset);
    det.spread = vec_max(offset) - vec_min(offset);
    if (det.spread > relative_tolerance * std::max(1.0, std::abs(det.lambda))) return std::nullopt;

    // With the coincidence condition kappa = lambda tau^2 in force the mate
    // curvature is |lambda tau'|; constant tau means a straight-line mate.
    const std::vector<double> tau_d1 = fd_derivative(fd.tau, curve.h, 1);
    double max_mate_kappa = 0.0;
    for (const double d : tau_d1) max_mate_kappa = std::max(max_mate_kappa, std::abs(det.lambda * d));
    det.degenerate = max_mate_kappa <= curvature_floor;
    return det;
}

double colinearity_residual(const MatePair& pair) {
    if (pair.degenerate()) throw DegenerateMate();
    const FrenetData& mate_fd = *pair.mate_frenet;
    double residual = 0.0;
    for (std::size_t i = 0; i < pair.base.size(); ++i) {
        const double align = std::abs(fibre_dot(pair.base_frenet.normal[i], mate_fd.binormal[i]));
        residual = std::max(residual, 1.0 - align);
    }
    return residual;
}

SampledCurve synthesize_from_natural(const Expression& kappa, const Expression& tau, double s0,
                                     double s1, int n) {
    if (n < 16) throw InputError("synthesize_from_natural: n must be at least 16");
    if (!(s0 < s1)) throw InputError("synthesize_from_natural: s0 must be less than s1");

    const double h = (s1 - s0) / (n - 1);

    const auto kappa_at = [&kappa](double s) {
        const double k = eval_value(kappa, s);
        if (k <= 0.0)
            throw NumericalError("synthesize_from_natural: kappa is not positive at s = " +
                                 std::to_string(s));
        return k;
    };
    const auto tau_at = [&tau](double s) { return eval_value(tau, s); };

    // State (psi, y, y', z, z') under
    //   psi' = tau, y'' = kappa cos psi, z'' = kappa sin psi.
    struct State {
        double psi, y, py, z, pz;
    };
    const auto deriv = [&](double s, const State& v) {
        const double k = kappa_at(s);
        return State{tau_at(s), v.py, k * std::cos(v.psi), v.pz, k * std::sin(v.psi)};
    };
    const auto axpy = [](const State& v, double c, const State& d) {
        return State{v.psi + c * d.psi, v.y + c * d.y, v.py + c * d.py, v.z + c * d.z, v.pz + c * d.pz};
    };

    SampledCurve curve;
    curve.h = h;
    curve.s.resize(n);
    curve.pos.resize(n);
    curve.jets.resize(n);

    State v{0.0, 0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double s = i + 1 == n ? s1 : s0 + i * h;
        // Second and third derivatives follow from the natural equations;
        // kappa' and tau are exact jet evaluations.
        const Jet3 kj = eval_jet3(kappa, s);
        if (kj.f <= 0.0)
            throw NumericalError("synthesize_from_natural: kappa is not positive at s = " +
                                 std::to_string(s));
        const double t = eval_value(tau, s);
        const double cp = std::cos(v.psi), sp = std::sin(v.psi);

        curve.s[i] = s;
        curve.jets[i].x = {s, 1.0, 0.0, 0.0};
        curve.jets[i].y = {v.y, v.py, kj.f * cp, kj.df * cp - kj.f * t * sp};
        curve.jets[i].z = {v.z, v.pz, kj.f * sp, kj.df * sp + kj.f * t * cp};
        curve.pos[i] = {s, v.y, v.z};

        if (i + 1 == n) break;
        const State k1 = deriv(s, v);
        const State k2 = deriv(s + 0.5 * h, axpy(v, 0.5 * h, k1));
        const State k3 = deriv(s + 0.5 * h, axpy(v, 0.5 * h, k2));
        const State k4 = deriv(s + h, axpy(v, h, k3));
        v = State{v.psi + h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi),
                  v.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
                  v.py + h / 6.0 * (k1.py + 2.0 * k2.py + 2.0 * k3.py + k4.py),
                  v.z + h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
                  v.pz + h / 6.0 * (k1.pz + 2.0 * k2.pz + 2.0 * k3.pz + k4.pz)};
    }
    return curve;
}

FrameAngles angle_between_frames(const MatePair& pair) {
    const std::size_t n = pair.base.size();
    FrameAngles angles;
    angles.theta_euclidean.resize(n);
    angles.theta_galilean.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const GalVec3& T = pair.base_frenet.tangent[i];
        const GalVec3 Tm{1.0, pair.mate.jets[i].y.df, pair.mate.jets[i].z.df};
        const double dot = 1.0 + T.y * Tm.y + T.z * Tm.z;
        const double norms = std::sqrt((1.0 + T.y * T.y + T.z * T.z) * (1.0 + Tm.y * Tm.y + Tm.z * Tm.z));
        angles.theta_euclidean[i] = std::acos(std::clamp(dot / norms, -1.0, 1.0));
        angles.theta_galilean[i] = std::hypot(Tm.y - T.y, Tm.z - T.z);
    }
    return angles;
}

// ---------------------------------------------------------------------------
// Claims audit
// ---------------------------------------------------------------------------

namespace {

struct ClaimStats {
    double max = 0.0;
    double mean = 0.0;
    bool degenerate = false;
    double scale = 1.0;  // reference magnitude for the relative verdict
};

ClaimStats stats_from(const std::vector<double>& residuals, double scale) {
    ClaimStats st;
    st.scale = std::max(1.0, std::abs(scale));
    for (const double r : residuals) {
        if (!std::isfinite(r)) return ClaimStats{0.0, 0.0, true, 1.0};
        st.max = std::max(st.max, r);
    }
    st.mean = vec_mean(residuals);
    return st;
}

ClaimStats degenerate_stats() { return ClaimStats{0.0, 0.0, true, 1.0}; }

ClaimReport finish(ClaimId id, ThetaKind kind, const ClaimStats& st) {
    ClaimReport report;
    report.id = id;
    report.theta = kind;
    report.max_residual = st.max;
    report.mean_residual = st.mean;
    report.verdict = st.degenerate ? Verdict::degenerate
                                   : (st.max <= constancy_tolerance * st.scale ? Verdict::holds
                                                                               : Verdict::fails);
    return report;
}

}  // namespace

std::vector<ClaimReport> audit_claims(const MatePair& pair) {
    const std::size_t n = pair.base.size();
    if (n < 5) throw InputError("audit_claims: at least 5 samples are required");

    const FrenetData& fd = pair.base_frenet;
    const double lambda = pair.lambda;
    const bool have_mate = !pair.degenerate();
    const FrameAngles angles = angle_between_frames(pair);

    std::vector<double> distance(n);
    for (std::size_t i = 0; i < n; ++i)
        distance[i] = galilean_norm(pair.mate.pos[i] - pair.base.pos[i]);

    const double tau_mean = vec_mean(fd.tau);

    const auto evaluate = [&](ClaimId id, const std::vector<double>& theta) -> ClaimStats {
        std::vector<double> r(n);
        switch (id) {
            case ClaimId::thm3_1: {
                for (std::size_t i = 0; i < n; ++i) r[i] = std::abs(distance[i] - std::abs(lambda));
                return stats_from(r, lambda);
            }
            case ClaimId::eq3_7: {
                for (std::size_t i = 0; i < n; ++i)
                    if (std::abs(std::sin(theta[i])) < 1e-12) return degenerate_stats();
                for (std::size_t i = 0; i < n; ++i)
                    r[i] = std::abs(lambda * fd.tau[i] / std::tan(theta[i]) - 1.0);
                return stats_from(r, 1.0);
            }
            case ClaimId::thm3_2: {
                for (std::size_t i = 0; i < n; ++i) r[i] = std::abs(fd.tau[i] - tau_mean);
                return stats_from(r, tau_mean);
            }
            case ClaimId::eq3_9: {
                if (!have_mate || std::abs(lambda) < 1e-12) return degenerate_stats();
                const auto& tau_m = pair.mate_frenet->tau;
                for (std::size_t i = 0; i < n; ++i)
                    r[i] = std::abs(tau_m[i] - std::tan(theta[i]) / lambda);
                return stats_from(r, vec_max_abs(tau_m));
            }
            case ClaimId::schell_3_10: {
                if (!have_mate || std::abs(lambda) < 1e-12) return degenerate_stats();
                const auto& tau_m = pair.mate_frenet->tau;
                std::vector<double> product(n);
                for (std::size_t i = 0; i < n; ++i) product[i] = fd.tau[i] * tau_m[i];
                const double product_mean = vec_mean(product);
                for (std::size_t i = 0; i < n; ++i) {
                    const double t = std::tan(theta[i]);
                    r[i] = std::max(std::abs(product[i] - product_mean),
                                    std::abs(product[i] - t * t / (lambda * lambda)));
                }
                return stats_from(r, product_mean);
            }
            case ClaimId::thm3_4_i: {
                if (!have_mate) return degenerate_stats();
                // ds* = ds: the mate offset is isotropic, so dtheta/ds* is a
                // plain central difference on the shared grid. Interior only.
                const auto& kappa_m = pair.mate_frenet->kappa;
                std::vector<double> interior;
                interior.reserve(n - 4);
                for (std::size_t i = 2; i + 2 < n; ++i)
                    interior.push_back(std::abs(kappa_m[i] + central_diff5(theta, pair.base.h, i)));
                return stats_from(interior, vec_max(kappa_m));
            }
            case ClaimId::thm3_4_ii: {
                if (!have_mate) return degenerate_stats();
                const auto& tau_m = pair.mate_frenet->tau;
                for (std::size_t i = 0; i < n; ++i)
                    r[i] = std::abs(fd.kappa[i] - tau_m[i] * std::sin(theta[i]));
                return stats_from(r, vec_max(fd.kappa));
            }
            case ClaimId::thm3_4_iii: {
                if (!have_mate) return degenerate_stats();
                const auto& tau_m = pair.mate_frenet->tau;
                for (std::size_t i = 0; i < n; ++i)
                    r[i] = std::abs(fd.tau[i] + tau_m[i] * std::cos(theta[i]));
                return stats_from(r, vec_max_abs(fd.tau));
            }
            case ClaimId::ratio_kappa_tau: {
                for (std::size_t i = 0; i < n; ++i)
                    if (std::abs(fd.tau[i]) <= torsion_floor) return degenerate_stats();
                std::vector<double> q(n);
                for (std::size_t i = 0; i < n; ++i) q[i] = fd.kappa[i] / fd.tau[i] + std::tan(theta[i]);
                const double q_mean = vec_mean(q);
                for (std::size_t i = 0; i < n; ++i) r[i] = std::abs(q[i] - q_mean);
                return stats_from(r, q_mean);
            }
        }
        return degenerate_stats();
    };

    constexpr ClaimId order[] = {ClaimId::thm3_1,    ClaimId::eq3_7,      ClaimId::thm3_2,
                                 ClaimId::eq3_9,     ClaimId::schell_3_10, ClaimId::thm3_4_i,
                                 ClaimId::thm3_4_ii, ClaimId::thm3_4_iii, ClaimId::ratio_kappa_tau};

    std::vector<ClaimReport> reports;
    reports.reserve(18);
    for (const ClaimId id : order) {
        reports.push_back(finish(id, ThetaKind::euclidean, evaluate(id, angles.theta_euclidean)));
        reports.push_back(finish(id, ThetaKind::galilean, evaluate(id, angles.theta_galilean)));
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

const char* to_string(ClaimId id) {
    switch (id) {
        case ClaimId::thm3_1: return "thm3_1";
        case ClaimId::eq3_7: return "eq3_7";
        case ClaimId::thm3_2: return "thm3_2";
        case ClaimId::eq3_9: return "eq3_9";
        case ClaimId::schell_3_10: return "schell_3_10";
        case ClaimId::thm3_4_i: return "thm3_4_i";
        case ClaimId::thm3_4_ii: return "thm3_4_ii";
        case ClaimId::thm3_4_iii: return "thm3_4_iii";
        case ClaimId::ratio_kappa_tau: return "ratio_kappa_tau";
    }
    return "?";
}

const char* to_string(ThetaKind kind) {
    return kind == ThetaKind::euclidean ? "euclidean" : "galilean";
}

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::degenerate: return "degenerate";
    }
    return "?";
}

std::string audit_json(const MatePair& pair, const std::vector<ClaimReport>& reports) {
    std::string out = "{\n  \"pair\": {\"lambda\": " + format_g17(pair.lambda) +
                      ", \"n_samples\": " + std::to_string(pair.base.size()) + "},\n  \"claims\": [";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const ClaimReport& c = reports[i];
        out += i == 0 ? "\n" : ",\n";
        out += std::string("    {\"id\": \"") + to_string(c.id) + "\", \"theta\": \"" +
               to_string(c.theta) + "\", \"max_residual\": " + format_sci6(c.max_residual) +
               ", \"mean_residual\": " + format_sci6(c.mean_residual) + ", \"verdict\": \"" +
               to_string(c.verdict) + "\"}";
    }
    out += reports.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

std::string detect_json(const PartnerDetection& detection) {
    return "{\"lambda\": " + format_g17(detection.lambda) +
           ", \"spread\": " + format_sci6(detection.spread) +
           ", \"degenerate\": " + (detection.degenerate ? "true" : "false") + "}\n";
}

std::string mate_csv(const MatePair& pair) {
    if (pair.degenerate()) throw DegenerateMate();
    const FrenetData& fd = pair.base_frenet;
    const FrenetData& md = *pair.mate_frenet;

    std::string out =
        "s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,"
        "x_m,y_m,z_m,Tx_m,Ty_m,Tz_m,Nx_m,Ny_m,Nz_m,Bx_m,By_m,Bz_m,kappa_m,tau_m\n";
    for (std::size_t i = 0; i < pair.base.size(); ++i) {
        const GalVec3 &p = pair.base.pos[i], &T = fd.tangent[i], &N = fd.normal[i], &B = fd.binormal[i];
        const GalVec3 &q = pair.mate.pos[i], &Tm = md.tangent[i], &Nm = md.normal[i],
                      &Bm = md.binormal[i];
        out += format_g17(pair.base.s[i]);
        for (const double v :
             {p.x, p.y, p.z, T.x, T.y, T.z, N.x, N.y, N.z, B.x, B.y, B.z, fd.kappa[i], fd.tau[i],
              q.x, q.y, q.z, Tm.x, Tm.y, Tm.z, Nm.x, Nm.y, Nm.z, Bm.x, Bm.y, Bm.z, md.kappa[i],
              md.tau[i]}) {
            out += ',';
            out += format_g17(v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace galmann
