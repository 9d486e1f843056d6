#include "galmann/galilean.hpp"

#include <numbers>
#include <random>

#include <json.hpp>

#include "galmann/errors.hpp"

namespace galmann {

GalVec3 apply_similarity(const Similarity& m, const GalVec3& p) {
    const double c = std::cos(m.phi), s = std::sin(m.phi);
    return {m.a11 + m.a12 * p.x,
            m.a21 + m.a22 * p.x + m.a23 * p.y * c + m.a23 * p.z * s,
            m.a31 + m.a32 * p.x - m.a23 * p.y * s + m.a23 * p.z * c};
}

Similarity compose(const Similarity& outer, const Similarity& inner) {
    const double c = std::cos(outer.phi), s = std::sin(outer.phi);
    Similarity r;
    r.a12 = outer.a12 * inner.a12;
    r.a11 = outer.a11 + outer.a12 * inner.a11;
    r.a23 = outer.a23 * inner.a23;
    r.phi = outer.phi + inner.phi;
    // Fibre block: rotation matrices for this parametrization multiply by
    // adding angles, shears and translations pick up the outer rotation.
    r.a22 = outer.a22 * inner.a12 + outer.a23 * (c * inner.a22 + s * inner.a32);
    r.a32 = outer.a32 * inner.a12 + outer.a23 * (-s * inner.a22 + c * inner.a32);
    r.a21 = outer.a21 + outer.a22 * inner.a11 + outer.a23 * (c * inner.a21 + s * inner.a31);
    r.a31 = outer.a31 + outer.a32 * inner.a11 + outer.a23 * (-s * inner.a21 + c * inner.a31);
    return r;
}

Similarity inverse(const Similarity& m) {
    const double c = std::cos(m.phi), s = std::sin(m.phi);
    const double k = 1.0 / m.a23;
    Similarity r;
    r.a12 = 1.0 / m.a12;
    r.a11 = -m.a11 * r.a12;
    r.a23 = k;
    r.phi = -m.phi;
    // Solve [y;z] = (1/a23) R(-phi) ([y';z'] - t - c_shear * x) with
    // x = (x' - a11)/a12 substituted.
    const double ty = m.a21 - m.a22 * m.a11 / m.a12;
    const double tz = m.a31 - m.a32 * m.a11 / m.a12;
    r.a21 = -k * (c * ty - s * tz);
    r.a31 = -k * (s * ty + c * tz);
    r.a22 = -k * (c * m.a22 - s * m.a32) * r.a12;
    r.a32 = -k * (s * m.a22 + c * m.a32) * r.a12;
    return r;
}

Similarity random_isometry(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // Portable uniform double in [0, 1): take the top 53 bits directly
    // instead of going through std::uniform_real_distribution, whose
    // output is implementation-defined.
    const auto next01 = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    const auto range = [&next01](double lo, double hi) { return lo + (hi - lo) * next01(); };

    Similarity m;
    m.a11 = range(-2.0, 2.0);
    m.a21 = range(-2.0, 2.0);
    m.a31 = range(-2.0, 2.0);
    m.a22 = range(-2.0, 2.0);
    m.a32 = range(-2.0, 2.0);
    m.phi = 2.0 * std::numbers::pi * next01();
    m.a12 = 1.0;
    m.a23 = 1.0;
    return m;
}

std::string to_json(const Similarity& m) {
    nlohmann::ordered_json j;
    j["a11"] = m.a11;
    j["a21"] = m.a21;
    j["a31"] = m.a31;
    j["a12"] = m.a12;
    j["a22"] = m.a22;
    j["a23"] = m.a23;
    j["a32"] = m.a32;
    j["phi"] = m.phi;
    return j.dump();
}

Similarity similarity_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("similarity JSON: ") + e.what());
    }
    Similarity m;
    const auto get = [&j](const char* key, double& out) {
        if (!j.contains(key) || !j[key].is_number())
            throw InputError(std::string("similarity JSON: missing numeric key '") + key + "'");
        out = j[key].get<double>();
    };
    get("a11", m.a11);
    get("a21", m.a21);
    get("a31", m.a31);
    get("a12", m.a12);
    get("a22", m.a22);
    get("a23", m.a23);
    get("a32", m.a32);
    get("phi", m.phi);
    return m;
}

}  // namespace galmann
