#include "galmann/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <istream>
#include <sstream>
#include <string>

#include "galmann/errors.hpp"

namespace galmann {

namespace {

// Internal curve source: per-component jets with respect to the native
// parameter t. Both the expression path and the interpolated data path
// feed the same reparametrization core.
struct CurveFn {
    std::function<SampleJets(double)> at;
    double t0 = 0.0, t1 = 1.0;
};

CurveFn make_curve_fn(const CurveSpec& spec) {
    return {[&spec](double t) {
                return SampleJets{eval_jet3(spec.fx, t), eval_jet3(spec.fy, t), eval_jet3(spec.fz, t)};
            },
            spec.t0, spec.t1};
}

// Local quintic interpolation: Newton form through the 6 nodes nearest to
// t, evaluated with jet arithmetic so derivatives up to order 3 fall out.
Jet3 newton_poly_jet(std::span<const double> nodes, std::span<const double> values, double t) {
    constexpr int n = 6;
    std::array<double, n> coeff;
    std::copy(values.begin(), values.end(), coeff.begin());
    for (int level = 1; level < n; ++level)
        for (int i = n - 1; i >= level; --i)
            coeff[i] = (coeff[i] - coeff[i - 1]) / (nodes[i] - nodes[i - level]);

    Jet3 acc = Jet3::constant(coeff[n - 1]);
    const Jet3 tj = Jet3::variable(t);
    for (int i = n - 2; i >= 0; --i) acc = acc * (tj - nodes[i]) + coeff[i];
    return acc;
}

CurveFn make_curve_fn(const CurveSamples& data) {
    const auto& t = data.t;
    const std::size_t n = t.size();
    auto at = [&data, n](double ti) {
        const auto& t = data.t;
        const auto it = std::lower_bound(t.begin(), t.end(), ti);
        const std::ptrdiff_t idx = it - t.begin();
        const std::size_t start =
            static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx - 3, 0, static_cast<std::ptrdiff_t>(n) - 6));
        const std::span<const double> window(t.data() + start, 6);
        return SampleJets{newton_poly_jet(window, {data.x.data() + start, 6}, ti),
                          newton_poly_jet(window, {data.y.data() + start, 6}, ti),
                          newton_poly_jet(window, {data.z.data() + start, 6}, ti)};
    };
    return {std::move(at), t.front(), t.back()};
}

AdmissibilityReport probe_admissibility(const CurveFn& fn, int n_probe) {
    if (n_probe < 2) throw InputError("check_admissible: n_probe must be at least 2");

    AdmissibilityReport report;
    const double step = (fn.t1 - fn.t0) / (n_probe - 1);
    int sign = 0;
    for (int i = 0; i < n_probe; ++i) {
        const double t = i + 1 == n_probe ? fn.t1 : fn.t0 + i * step;
        const double dx = fn.at(t).x.df;
        const int s = dx > 0.0 ? +1 : -1;
        if (std::abs(dx) <= admissibility_floor || (sign != 0 && s != sign)) {
            report.ok = false;
            report.violation_t = t;
            return report;
        }
        sign = s;
    }
    report.ok = true;
    report.sign = sign;
    return report;
}

// Solves sigma*(x(t) - x0) = s for t in [t0, t1]. Newton with a bisection
// bracket; x is strictly monotone on the interval once admissibility holds.
double invert_arclength(const CurveFn& fn, double x0, int sigma, double s) {
    double lo = fn.t0, hi = fn.t1;
    // For curves already in canonical form this guess is the exact answer,
    // which keeps the round trip bit-identical.
    double t = std::clamp(fn.t0 + s, lo, hi);
    for (int iter = 0; iter < inversion_max_iterations; ++iter) {
        const Jet3 xj = fn.at(t).x;
        const double g = sigma * (xj.f - x0) - s;
        if (std::abs(g) <= inversion_tolerance) return t;
        if (g > 0.0)
            hi = t;
        else
            lo = t;
        const double dg = sigma * xj.df;
        double next = t - g / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        t = next;
    }
    throw InversionFailure(s);
}

SampledCurve reparametrize(const CurveFn& fn, int n_samples) {
    if (n_samples < 8) throw InputError("reparametrize_to_arclength: n_samples must be at least 8");

    const AdmissibilityReport adm = probe_admissibility(fn, n_samples);
    if (!adm.ok) throw AdmissibilityError(adm.violation_t);
    const int sigma = adm.sign;

    const double x0 = fn.at(fn.t0).x.f;
    const double length = sigma * (fn.at(fn.t1).x.f - x0);

    SampledCurve curve;
    curve.h = length / (n_samples - 1);
    curve.s.resize(n_samples);
    curve.pos.resize(n_samples);
    curve.jets.resize(n_samples);

    for (int i = 0; i < n_samples; ++i) {
        const double s = i + 1 == n_samples ? length : i * curve.h;
        const double t = invert_arclength(fn, x0, sigma, s);
        const SampleJets j = fn.at(t);

        // Inverse-function jets of t(s) with u = sigma * x.
        const double u1 = sigma * j.x.df;
        const double u2 = sigma * j.x.d2f;
        const double u3 = sigma * j.x.d3f;
        const double tp = 1.0 / u1;
        const double tpp = -u2 / (u1 * u1 * u1);
        const double tppp = (3.0 * u2 * u2 - u1 * u3) / (u1 * u1 * u1 * u1 * u1);
        const Jet3 inner{t, tp, tpp, tppp};

        curve.s[i] = s;
        curve.jets[i].x = {s, 1.0, 0.0, 0.0};
        curve.jets[i].y = compose(j.y.f, j.y.df, j.y.d2f, j.y.d3f, inner);
        curve.jets[i].z = compose(j.z.f, j.z.df, j.z.d2f, j.z.d3f, inner);
        curve.pos[i] = {s, j.y.f, j.z.f};
    }
    return curve;
}

}  // namespace

AdmissibilityReport check_admissible(const CurveSpec& spec, int n_probe) {
    return probe_admissibility(make_curve_fn(spec), n_probe);
}

SampledCurve reparametrize_to_arclength(const CurveSpec& spec, int n_samples) {
    return reparametrize(make_curve_fn(spec), n_samples);
}

SampledCurve reparametrize_to_arclength(const CurveSamples& data, int n_samples) {
    if (data.size() < 6) throw InputError("curve data: at least 6 rows are required");
    return reparametrize(make_curve_fn(data), n_samples);
}

std::vector<GalVec3> sample_positions(const SampledCurve& curve, const std::optional<Similarity>& m) {
    std::vector<GalVec3> out = curve.pos;
    if (m)
        for (GalVec3& p : out) p = apply_similarity(*m, p);
    return out;
}

CurveSpec transform(const CurveSpec& spec, const Similarity& m) {
    const double c = std::cos(m.phi), s = std::sin(m.phi);
    CurveSpec out;
    {
        const std::pair<double, Expression> terms[] = {{m.a12, spec.fx}};
        out.fx = linear_combination(m.a11, terms);
    }
    {
        const std::pair<double, Expression> terms[] = {
            {m.a22, spec.fx}, {m.a23 * c, spec.fy}, {m.a23 * s, spec.fz}};
        out.fy = linear_combination(m.a21, terms);
    }
    {
        const std::pair<double, Expression> terms[] = {
            {m.a32, spec.fx}, {-m.a23 * s, spec.fy}, {m.a23 * c, spec.fz}};
        out.fz = linear_combination(m.a31, terms);
    }
    out.t0 = spec.t0;
    out.t1 = spec.t1;
    out.orientation = m.a12 > 0.0 ? spec.orientation : -spec.orientation;
    return out;
}

CurveSamples read_curve_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("curve CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,x,y,z")
        throw InputError("curve CSV: header must be exactly 't,x,y,z', got '" + line + "'");

    CurveSamples data;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::array<double, 4> fields{};
        std::size_t pos = 0;
        for (int f = 0; f < 4; ++f) {
            const std::size_t next = f < 3 ? line.find(',', pos) : line.size();
            if (next == std::string::npos)
                throw InputError("curve CSV line " + std::to_string(lineno) + ": expected 4 fields");
            const std::string cell = line.substr(pos, next - pos);
            std::size_t consumed = 0;
            try {
                fields[f] = std::stod(cell, &consumed);
            } catch (const std::exception&) {
                throw InputError("curve CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
            if (consumed != cell.size())
                throw InputError("curve CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            pos = next + 1;
        }
        if (!data.t.empty() && fields[0] <= data.t.back())
            throw InputError("curve CSV line " + std::to_string(lineno) + ": t must be strictly increasing");
        data.t.push_back(fields[0]);
        data.x.push_back(fields[1]);
        data.y.push_back(fields[2]);
        data.z.push_back(fields[3]);
    }
    if (data.size() < 6) throw InputError("curve CSV: at least 6 data rows are required");
    return data;
}

}  // namespace galmann
