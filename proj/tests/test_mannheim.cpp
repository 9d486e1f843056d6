#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "galmann/curve.hpp"
#include "galmann/errors.hpp"
#include "galmann/frenet.hpp"
#include "galmann/mannheim.hpp"

using namespace galmann;

namespace {

SampledCurve circle_family(int n = 1001) {
    CurveSpec spec;
    spec.fx = parse_expression("t", "t");
    spec.fy = parse_expression("-cos(t)", "t");
    spec.fz = parse_expression("-sin(t)", "t");
    spec.t0 = 0;
    spec.t1 = 3;
    return reparametrize_to_arclength(spec, n);
}

SampledCurve cubic_family(int n = 1001) {
    CurveSpec spec;
    spec.fx = parse_expression("t", "t");
    spec.fy = parse_expression("t^2/2", "t");
    spec.fz = parse_expression("t^3/6", "t");
    spec.t0 = 0;
    spec.t1 = 1;
    return reparametrize_to_arclength(spec, n);
}

std::string format_lambda(double lambda) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", lambda);
    return buf;
}

// kappa = lambda * tau^2 with tau = s: a coincident pair by construction.
MatePair coincident_pair(double lambda, double mate_lambda) {
    const Expression kappa = parse_expression(format_lambda(lambda) + "*s^2", "s");
    const Expression tau = parse_expression("s", "s");
    const SampledCurve base = synthesize_from_natural(kappa, tau, 1.0, 2.0, 1001);
    return mannheim_mate(base, frenet_apparatus(base), mate_lambda);
}

}  // namespace

TEST_CASE("mate of the circular family is the opposite circle") {
    const SampledCurve base = circle_family();
    const FrenetData fd = frenet_apparatus(base);
    const MatePair pair = mannheim_mate(base, fd, 2.0);
    REQUIRE(!pair.degenerate());

    for (std::size_t i = 0; i < base.size(); ++i) {
        const double s = base.s[i];
        CHECK(pair.mate.pos[i].y == doctest::Approx(std::cos(s)).scale(1.0).epsilon(1e-12));
        CHECK(pair.mate.pos[i].z == doctest::Approx(std::sin(s)).scale(1.0).epsilon(1e-12));
        CHECK(galilean_norm(pair.mate.pos[i] - base.pos[i]) == doctest::Approx(2.0).epsilon(1e-13));
        // The mate offset is isotropic, so the mate keeps the arc-length grid.
        CHECK(pair.mate.pos[i].x == base.s[i]);
    }
    CHECK(pair.mate_frenet->kappa[500] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pair.mate_frenet->tau[500] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero offset returns the base curve") {
    const SampledCurve base = cubic_family(201);
    const MatePair pair = mannheim_mate(base, frenet_apparatus(base), 0.0);
    REQUIRE(!pair.degenerate());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(pair.mate.pos[i] == base.pos[i]);
        CHECK(pair.mate.jets[i].y.df == doctest::Approx(base.jets[i].y.df).epsilon(1e-13));
        CHECK(pair.mate.jets[i].y.d2f == doctest::Approx(base.jets[i].y.d2f).epsilon(1e-12));
    }
}

TEST_CASE("unit offset degenerates the circular family to a line") {
    const SampledCurve base = circle_family();
    const MatePair pair = mannheim_mate(base, frenet_apparatus(base), 1.0);
    CHECK(pair.degenerate());
    CHECK(pair.degenerate_index.has_value());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(std::abs(pair.mate.pos[i].y) <= 1e-12);
        CHECK(std::abs(pair.mate.pos[i].z) <= 1e-12);
    }
    CHECK_THROWS_AS(colinearity_residual(pair), DegenerateMate);
    CHECK_THROWS_AS(mate_csv(pair), DegenerateMate);
}

TEST_CASE("distance to the mate is |lambda| at every sample") {
    const SampledCurve base = cubic_family(501);
    const FrenetData fd = frenet_apparatus(base);
    for (const double lambda : {-2.0, -0.5, 0.25, 1.0}) {
        const MatePair pair = mannheim_mate(base, fd, lambda);
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(std::abs(galilean_norm(pair.mate.pos[i] - base.pos[i]) - std::abs(lambda)) <= 1e-12);
    }
}

TEST_CASE("partner detection on the synthesized coincident family") {
    const Expression kappa = parse_expression("0.5*s^2", "s");
    const Expression tau = parse_expression("s", "s");
    const SampledCurve curve = synthesize_from_natural(kappa, tau, 1.0, 2.0, 1001);
    const auto det = detect_partner(curve, frenet_apparatus(curve));
    REQUIRE(det.has_value());
    CHECK(det->lambda == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(det->spread <= 1e-8);
    CHECK(!det->degenerate);
}

TEST_CASE("the cubic family is not a Mannheim curve") {
    const SampledCurve curve = cubic_family();
    CHECK(!detect_partner(curve, frenet_apparatus(curve)).has_value());
}

TEST_CASE("constant torsion detects as degenerate") {
    const SampledCurve curve = circle_family();
    const auto det = detect_partner(curve, frenet_apparatus(curve));
    REQUIRE(det.has_value());
    CHECK(det->lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(det->degenerate);
}

TEST_CASE("detection works on data curves at the relaxed tolerance") {
    // Round-trip through the CSV interchange format: jets then come from
    // quintic interpolation, so detection needs the 1e-3 tolerance.
    const Expression kappa = parse_expression("0.5*s^2", "s");
    const Expression tau = parse_expression("s", "s");
    const SampledCurve exact = synthesize_from_natural(kappa, tau, 1.0, 2.0, 201);

    std::string csv = "t,x,y,z\n";
    for (std::size_t i = 0; i < exact.size(); ++i)
        csv += format_lambda(exact.s[i]) + "," + format_lambda(exact.pos[i].x) + "," +
               format_lambda(exact.pos[i].y) + "," + format_lambda(exact.pos[i].z) + "\n";
    std::istringstream in(csv);
    const SampledCurve data_curve = reparametrize_to_arclength(read_curve_csv(in), 101);

    const auto det = detect_partner(data_curve, frenet_apparatus(data_curve), 1e-3);
    REQUIRE(det.has_value());
    CHECK(det->lambda == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(!det->degenerate);
}

TEST_CASE("vanishing torsion is reported with its sample index") {
    CurveSpec spec;
    spec.fx = parse_expression("t", "t");
    spec.fy = parse_expression("t^2/2", "t");
    spec.fz = parse_expression("0", "t");
    spec.t1 = 1;
    const SampledCurve planar = reparametrize_to_arclength(spec, 101);
    CHECK_THROWS_AS(detect_partner(planar, frenet_apparatus(planar)), TorsionVanishes);
}

TEST_CASE("colinearity residual separates true pairs from perturbed ones") {
    const MatePair good = coincident_pair(0.5, 0.5);
    REQUIRE(!good.degenerate());
    CHECK(colinearity_residual(good) <= 1e-6);

    const MatePair off = coincident_pair(0.5, 0.3);
    REQUIRE(!off.degenerate());
    CHECK(colinearity_residual(off) > 0.1);
}

TEST_CASE("colinearity agrees with the coincidence condition kappa = lambda tau^2") {
    for (const double lambda : {0.5, 0.55, 0.3, 0.8}) {
        const MatePair pair = coincident_pair(0.5, lambda);
        REQUIRE(!pair.degenerate());
        const FrenetData& fd = pair.base_frenet;
        double worst = 0.0, kappa_max = 0.0;
        for (std::size_t i = 0; i < fd.size(); ++i) {
            worst = std::max(worst,
                             std::abs(fd.kappa[i] - lambda * fd.tau[i] * fd.tau[i]));
            kappa_max = std::max(kappa_max, fd.kappa[i]);
        }
        const bool residual_small = colinearity_residual(pair) <= 1e-6;
        const bool condition_small = worst <= 1e-6 * kappa_max;
        CHECK(residual_small == condition_small);
    }
}

TEST_CASE("synthesis quadrature cases") {
    // kappa = 1, tau = 0: the canonical parabola, exact for RK4.
    const SampledCurve parabola = synthesize_from_natural(
        parse_expression("1", "s"), parse_expression("0", "s"), 0.0, 2.0, 101);
    for (std::size_t i = 0; i < parabola.size(); ++i) {
        const double s = parabola.s[i];
        CHECK(parabola.pos[i].y == doctest::Approx(s * s / 2.0).scale(1.0).epsilon(1e-12));
        CHECK(parabola.pos[i].z == 0.0);
        CHECK(parabola.jets[i].y.d2f == 1.0);
    }

    // kappa = tau = 1: y = 1 - cos s, z = s - sin s.
    const SampledCurve helix = synthesize_from_natural(
        parse_expression("1", "s"), parse_expression("1", "s"), 0.0, 3.0, 1001);
    for (std::size_t i = 0; i < helix.size(); i += 50) {
        const double s = helix.s[i];
        CHECK(helix.pos[i].y == doctest::Approx(1.0 - std::cos(s)).scale(1.0).epsilon(1e-8));
        CHECK(helix.pos[i].z == doctest::Approx(s - std::sin(s)).scale(1.0).epsilon(1e-8));
    }
}

TEST_CASE("synthesis round trip reproduces the natural equations") {
    const Expression kappa = parse_expression("0.5*s^2", "s");
    const Expression tau = parse_expression("s", "s");
    const SampledCurve curve = synthesize_from_natural(kappa, tau, 1.0, 2.0, 1001);
    const FrenetData fd = frenet_apparatus(curve);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double s = curve.s[i];
        CHECK(std::abs(fd.kappa[i] - 0.5 * s * s) <= 1e-6);
        CHECK(std::abs(fd.tau[i] - s) <= 1e-6);
    }
}

TEST_CASE("synthesis rejects non-positive curvature and tiny grids") {
    CHECK_THROWS_AS(synthesize_from_natural(parse_expression("s-1", "s"), parse_expression("1", "s"),
                                            0.0, 2.0, 101),
                    NumericalError);
    CHECK_THROWS_AS(synthesize_from_natural(parse_expression("1", "s"), parse_expression("1", "s"),
                                            0.0, 1.0, 8),
                    InputError);
}

TEST_CASE("frame angles under both readings") {
    const SampledCurve base = circle_family(501);
    const FrenetData fd = frenet_apparatus(base);

    const MatePair same = mannheim_mate(base, fd, 0.0);
    const FrameAngles zero = angle_between_frames(same);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(zero.theta_euclidean[i] == 0.0);
        CHECK(zero.theta_galilean[i] == 0.0);
    }

    const MatePair pair = mannheim_mate(base, fd, 2.0);
    const FrameAngles angles = angle_between_frames(pair);
    for (std::size_t i = 0; i < base.size(); ++i) {
        // theta_G is the fibre norm of T* - T = lambda tau B: exactly |lambda tau|.
        CHECK(angles.theta_galilean[i] ==
              doctest::Approx(2.0 * std::abs(fd.tau[i])).epsilon(1e-12));
        CHECK(angles.theta_euclidean[i] > 0.0);
        // Both tangents have unit x component, so the Galilean product is 1.
        const GalVec3 mate_tangent{1.0, pair.mate.jets[i].y.df, pair.mate.jets[i].z.df};
        CHECK(galilean_dot(fd.tangent[i], mate_tangent) == 1.0);
    }
}

TEST_CASE("audit emits every claim under both angle readings") {
    const MatePair pair = coincident_pair(0.5, 0.5);
    REQUIRE(!pair.degenerate());
    const auto reports = audit_claims(pair);
    REQUIRE(reports.size() == 18);

    std::set<std::pair<int, int>> seen;
    for (const auto& r : reports) {
        seen.insert({static_cast<int>(r.id), static_cast<int>(r.theta)});
        CHECK(std::isfinite(r.max_residual));
        CHECK(std::isfinite(r.mean_residual));
        CHECK(r.mean_residual <= r.max_residual + 1e-300);
    }
    CHECK(seen.size() == 18);

    // Ordering: claim id major, euclidean before galilean.
    CHECK(reports[0].id == ClaimId::thm3_1);
    CHECK(reports[0].theta == ThetaKind::euclidean);
    CHECK(reports[1].id == ClaimId::thm3_1);
    CHECK(reports[1].theta == ThetaKind::galilean);
    CHECK(reports[2].id == ClaimId::eq3_7);
    CHECK(reports[17].id == ClaimId::ratio_kappa_tau);

    // Distance constancy holds; the torsion of this pair is anything but
    // constant, so that claim honestly fails.
    CHECK(reports[0].verdict == Verdict::holds);
    CHECK(reports[1].verdict == Verdict::holds);
    CHECK(reports[0].max_residual <= 1e-9);
    for (const auto& r : reports)
        if (r.id == ClaimId::thm3_2) CHECK(r.verdict == Verdict::fails);
}

TEST_CASE("degenerate pairs mark mate-frame claims degenerate, never failed") {
    const SampledCurve base = circle_family(501);
    const MatePair pair = mannheim_mate(base, frenet_apparatus(base), 1.0);
    REQUIRE(pair.degenerate());
    const auto reports = audit_claims(pair);
    REQUIRE(reports.size() == 18);
    for (const auto& r : reports) {
        if (r.id == ClaimId::eq3_9 || r.id == ClaimId::schell_3_10 || r.id == ClaimId::thm3_4_i ||
            r.id == ClaimId::thm3_4_ii || r.id == ClaimId::thm3_4_iii) {
            CHECK(r.verdict == Verdict::degenerate);
        }
        if (r.id == ClaimId::thm3_1) CHECK(r.verdict == Verdict::holds);
    }
}

TEST_CASE("zero-offset pairs make cot-theta claims degenerate") {
    const SampledCurve base = circle_family(501);
    const MatePair pair = mannheim_mate(base, frenet_apparatus(base), 0.0);
    for (const auto& r : audit_claims(pair))
        if (r.id == ClaimId::eq3_7) CHECK(r.verdict == Verdict::degenerate);
}

TEST_CASE("reciprocal offset recovers the base when the normals align") {
    // lambda tau' < 0 makes the mate binormal equal +N; then base = mate - lambda B*.
    const Expression kappa = parse_expression("0.5*(3-s)^2", "s");
    const Expression tau = parse_expression("3-s", "s");
    const SampledCurve base = synthesize_from_natural(kappa, tau, 1.0, 2.0, 1001);
    const FrenetData fd = frenet_apparatus(base);
    const MatePair pair = mannheim_mate(base, fd, 0.5);
    REQUIRE(!pair.degenerate());
    CHECK(colinearity_residual(pair) <= 1e-6);

    const FrenetData& md = *pair.mate_frenet;
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(fibre_dot(fd.normal[i], md.binormal[i]) == doctest::Approx(1.0).epsilon(1e-9));
        const GalVec3 back = pair.mate.pos[i] - 0.5 * md.binormal[i];
        CHECK(std::abs(back.y - base.pos[i].y) <= 1e-9);
        CHECK(std::abs(back.z - base.pos[i].z) <= 1e-9);
        CHECK(back.x == base.pos[i].x);
    }
}

TEST_CASE("audit JSON shape and determinism") {
    const MatePair pair = coincident_pair(0.5, 0.5);
    const auto reports = audit_claims(pair);
    const std::string json = audit_json(pair, reports);
    CHECK(json.rfind("{\n  \"pair\": {\"lambda\": 0.5, \"n_samples\": 1001},\n  \"claims\": [", 0) == 0);
    CHECK(json.find("\"id\": \"thm3_1\", \"theta\": \"euclidean\"") != std::string::npos);
    CHECK(json.find("\"verdict\": \"holds\"") != std::string::npos);
    CHECK(json == audit_json(pair, reports));
    CHECK(audit_json(pair, {}).find("\"claims\": []") != std::string::npos);

    const PartnerDetection det{1.0, 2.5e-9, true};
    CHECK(detect_json(det) == "{\"lambda\": 1, \"spread\": 2.50000e-09, \"degenerate\": true}\n");
}

TEST_CASE("mate CSV carries base and _m columns") {
    const MatePair pair = coincident_pair(0.5, 0.5);
    const std::string csv = mate_csv(pair);
    CHECK(csv.rfind("s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,"
                    "x_m,y_m,z_m,Tx_m,Ty_m,Tz_m,Nx_m,Ny_m,Nz_m,Bx_m,By_m,Bz_m,kappa_m,tau_m\n",
                    0) == 0);
    std::size_t lines = 0;
    for (const char c : csv) lines += c == '\n';
    CHECK(lines == 1002);
}
