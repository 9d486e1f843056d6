#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "galmann/expr.hpp"
#include "galmann/galilean.hpp"
#include "galmann/jet.hpp"

namespace galmann {

// Admissibility demands |x'(t)| above this floor at every probe point.
inline constexpr double admissibility_floor = 1e-12;

// Arc-length inversion: residual tolerance and iteration cap of the
// safeguarded Newton solve.
inline constexpr double inversion_tolerance = 1e-13;
inline constexpr int inversion_max_iterations = 100;

// A parametric curve t -> (x(t), y(t), z(t)) on [t0, t1]. Admissible when
// x' keeps one sign on the whole interval; `orientation` records that sign.
struct CurveSpec {
    Expression fx, fy, fz;
    double t0 = 0.0, t1 = 1.0;
    int orientation = +1;
};

struct SampleJets {
    Jet3 x, y, z;  // derivatives taken with respect to arc length s
};

// A curve in canonical arc-length form: pos[i].x == s[i] and the y, z jets
// are derivatives with respect to s. The grid is uniform with spacing h.
struct SampledCurve {
    std::vector<double> s;
    std::vector<GalVec3> pos;
    std::vector<SampleJets> jets;
    double h = 0.0;

    std::size_t size() const { return s.size(); }
};

struct AdmissibilityReport {
    bool ok = false;
    double violation_t = 0.0;  // first probe point that failed (valid when !ok)
    int sign = +1;             // sign of x' (valid when ok)
};

// Probes x' at n_probe uniform points in [t0, t1]; admissible iff all
// values share one sign and stay above the floor in magnitude.
AdmissibilityReport check_admissible(const CurveSpec& spec, int n_probe);

// Resamples the curve on a uniform arc-length grid of n_samples points.
// s runs over [0, |x(t1) - x(t0)|]; each t(s) is found by safeguarded
// Newton, and the y, z jets are pushed through the inverse-function rule
//   t' = 1/u', t'' = -u''/u'^3, t''' = (3u''^2 - u'u''')/u'^5
// with u the orientation-corrected x component. Throws AdmissibilityError
// or InversionFailure.
SampledCurve reparametrize_to_arclength(const CurveSpec& spec, int n_samples);

// Positions in sample order, optionally pushed through a similarity.
std::vector<GalVec3> sample_positions(const SampledCurve& curve,
                                      const std::optional<Similarity>& m = std::nullopt);

// The image curve under a similarity, built by composing expression trees,
// so the transformed curve keeps the exact-jet evaluation path.
CurveSpec transform(const CurveSpec& spec, const Similarity& m);

// Curve supplied as data rows (t, x, y, z), t strictly increasing.
struct CurveSamples {
    std::vector<double> t, x, y, z;
    std::size_t size() const { return t.size(); }
};

// Reads the CSV interchange format: header exactly `t,x,y,z`, one numeric
// row per sample, comma-separated, decimal points. Throws InputError.
CurveSamples read_curve_csv(std::istream& in);

// Data-backed variant: jets come from local quintic interpolation of the
// rows, so tolerances are looser than on the expression path (~1e-4).
SampledCurve reparametrize_to_arclength(const CurveSamples& data, int n_samples);

}  // namespace galmann
