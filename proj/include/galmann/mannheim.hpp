#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "galmann/curve.hpp"
#include "galmann/expr.hpp"
#include "galmann/frenet.hpp"

namespace galmann {

// Partner detection requires |tau| above this floor at every sample.
inline constexpr double torsion_floor = 1e-10;

// Relative spread below which a pointwise quantity counts as constant on
// the exact-jet path.
inline constexpr double constancy_tolerance = 1e-6;

// A base curve with a mate offset by a constant distance lambda along the
// principal normal. The offset is isotropic, so the mate shares the
// arc-length grid (its x component equals s) and the base-to-mate Galilean
// distance is |lambda| at every sample. The mate frame is absent when the
// mate degenerates to a straight line.
struct MatePair {
    SampledCurve base;
    FrenetData base_frenet;
    double lambda = 0.0;
    SampledCurve mate;
    std::optional<FrenetData> mate_frenet;
    std::optional<std::size_t> degenerate_index;

    bool degenerate() const { return !mate_frenet.has_value(); }
};

// Builds the mate alpha + lambda*N. First derivatives follow the frame
// equations exactly (T* = T + lambda*tau*B); the second and third mate
// derivatives use the closed forms in the (N, B) basis, with kappa' exact
// from the jets and tau', tau'' from high-order finite differences on the
// uniform grid.
MatePair mannheim_mate(const SampledCurve& base, const FrenetData& fd, double lambda);

struct PartnerDetection {
    double lambda = 0.0;
    double spread = 0.0;      // max - min of the pointwise offset
    bool degenerate = false;  // tau' ~ 0: the mate would be a straight line
};

// Evaluates the coincidence offset kappa/tau^2 pointwise; a Mannheim curve
// is detected when that function is constant to the given relative
// tolerance. The default suits exact-jet curves; CSV-ingested data wants
// the looser 1e-3. Returns nullopt when not constant. Throws
// TorsionVanishes.
std::optional<PartnerDetection> detect_partner(const SampledCurve& curve, const FrenetData& fd,
                                               double relative_tolerance = constancy_tolerance);

// Max over samples of 1 - |<N, B*>| (fibre dot of unit vectors): zero iff
// the base normal and the mate binormal are colinear everywhere. Throws
// DegenerateMate.
double colinearity_residual(const MatePair& pair);

// Integrates the natural equations psi' = tau, y'' = kappa*cos(psi),
// z'' = kappa*sin(psi) with classic RK4 from zero initial data, producing
// a canonical-form curve whose recomputed kappa and tau match the inputs.
// kappa must stay positive on [s0, s1].
SampledCurve synthesize_from_natural(const Expression& kappa, const Expression& tau, double s0,
                                     double s1, int n);

// Per-sample angle between the base and mate tangents, under both
// candidate readings: theta_e is the ordinary Euclidean angle between the
// 3-vectors; theta_g is the Galilean measure, the fibre-Euclidean norm of
// T* - T (an isotropic vector).
struct FrameAngles {
    std::vector<double> theta_euclidean, theta_galilean;
};

FrameAngles angle_between_frames(const MatePair& pair);

// ---------------------------------------------------------------------------
// Claims audit
// ---------------------------------------------------------------------------

enum class ClaimId {
    thm3_1,
    eq3_7,
    thm3_2,
    eq3_9,
    schell_3_10,
    thm3_4_i,
    thm3_4_ii,
    thm3_4_iii,
    ratio_kappa_tau,
};

enum class ThetaKind { euclidean, galilean };

enum class Verdict { holds, fails, degenerate };

const char* to_string(ClaimId id);
const char* to_string(ThetaKind kind);
const char* to_string(Verdict verdict);

struct ClaimReport {
    ClaimId id;
    ThetaKind theta;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    Verdict verdict = Verdict::degenerate;
};

// Evaluates every claim under both theta readings and reports residual
// statistics with a holds/fails/degenerate verdict at the relative
// threshold 1e-6. Claims that need the mate frame come back "degenerate",
// never "fails", on a degenerate pair. The report list is ordered by claim
// id, euclidean before galilean. The auditor never asserts.
std::vector<ClaimReport> audit_claims(const MatePair& pair);

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

// {"pair": {"lambda": ..., "n_samples": ...}, "claims": [...]} with keys in
// that order and residuals in scientific notation, 6 significant digits.
std::string audit_json(const MatePair& pair, const std::vector<ClaimReport>& reports);

// {"lambda": ..., "spread": ..., "degenerate": ...}
std::string detect_json(const PartnerDetection& detection);

// Base columns as the frenet CSV plus the mate columns suffixed `_m`.
// Requires a non-degenerate mate.
std::string mate_csv(const MatePair& pair);

}  // namespace galmann
