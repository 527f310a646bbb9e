#include "jastrow/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace jastrow::io {

using nlohmann::json;

ModelSpec model_from_json(const json& j) {
    const std::string geom = j.at("geometry").get<std::string>();
    const bool circle = geom == "circle";
    if (!circle && geom != "line")
        throw std::invalid_argument("model: geometry must be \"line\" or \"circle\"");
    const int n = j.at("n").get<int>();
    const double omega = j.value("omega", 0.0);
    const double circumference = circle ? j.at("circumference").get<double>() : 0.0;

    const json& fam = j.at("family");
    const std::string type = fam.at("type").get<std::string>();
    const double alpha = fam.at("alpha").get<double>();
    PhiFamily phi = [&]() -> PhiFamily {
        if (type == "rational") return make_rational(alpha);
        if (type == "trigonometric")
            return make_trigonometric(alpha, fam.value("period", circumference));
        if (type == "hyperbolic") return make_hyperbolic(alpha, fam.at("beta").get<double>());
        if (type == "elliptic") {
            if (fam.contains("g2") || fam.contains("g3"))
                return make_elliptic(alpha, lattice_from_invariants(fam.at("g2").get<double>(),
                                                                    fam.at("g3").get<double>()));
            return make_elliptic(
                alpha, lattice_from_periods(fam.value("l", circumference),
                                            fam.at("im_omega3").get<double>()));
        }
        throw std::invalid_argument("model: unknown family type \"" + type + "\"");
    }();
    return make_model(circle ? Geometry::Circle : Geometry::Line, n, omega, circumference,
                      std::move(phi));
}

json model_to_json(const ModelSpec& spec) {
    json j;
    const bool circle = spec.geometry == Geometry::Circle;
    j["geometry"] = circle ? "circle" : "line";
    j["n"] = spec.n;
    j["omega"] = spec.omega;
    if (circle) j["circumference"] = spec.circumference;
    json fam;
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            fam["alpha"] = f.alpha;
            if constexpr (std::is_same_v<F, RationalPhi>) {
                fam["type"] = "rational";
            } else if constexpr (std::is_same_v<F, TrigonometricPhi>) {
                fam["type"] = "trigonometric";
                fam["period"] = f.period;
            } else if constexpr (std::is_same_v<F, HyperbolicPhi>) {
                fam["type"] = "hyperbolic";
                fam["beta"] = f.beta;
            } else if constexpr (std::is_same_v<F, EllipticPhi>) {
                fam["type"] = "elliptic";
                fam["l"] = f.lat.l;
                fam["im_omega3"] = f.lat.im_omega3;
            } else {
                throw std::invalid_argument("model: custom phi has no JSON form");
            }
        },
        spec.phi);
    j["family"] = std::move(fam);
    return j;
}

json to_json(const verify::ResidualReport& r) {
    json j;
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back(p.x);
    j["points"] = std::move(pts);
    j["local_energies"] = r.local_energies;
    j["spread"] = r.spread;
    j["mean_energy"] = r.mean_energy;
    if (r.closed_form_energy) j["closed_form_energy"] = *r.closed_form_energy;
    return j;
}

json to_json(const verify::SymmetryReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"max_violation", c.max_violation},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    return json{{"checks", std::move(checks)}, {"all_pass", r.all_pass}};
}

json to_json(const verify::NormalizabilityReport& r) {
    return json{{"alpha_ok", r.alpha_ok},
                {"gaussian_bound_c", r.gaussian_bound_c},
                {"circulant_eigenvalues", r.circulant_eigenvalues},
                {"positive_definite", r.positive_definite},
                {"pass", r.pass}};
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.good()) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace jastrow::io
