#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "jastrow/serialize.hpp"

using namespace jastrow;
using nlohmann::json;

TEST_CASE("model JSON round trip is a fixed point") {
    const char* samples[] = {
        R"({"geometry":"line","n":3,"omega":1.0,"family":{"type":"rational","alpha":2.0}})",
        R"({"geometry":"line","n":4,"omega":0.75,"family":{"type":"hyperbolic","alpha":2.5,"beta":1.25}})",
        R"({"geometry":"circle","n":3,"omega":0.0,"circumference":1.0,
            "family":{"type":"trigonometric","alpha":2.0}})",
        R"({"geometry":"circle","n":5,"omega":0.0,"circumference":2.5,
            "family":{"type":"elliptic","alpha":0.75,"l":2.5,"im_omega3":0.8}})"};
    for (const char* text : samples) {
        const ModelSpec spec = io::model_from_json(json::parse(text));
        const json emitted = io::model_to_json(spec);
        const ModelSpec back = io::model_from_json(emitted);
        CHECK(io::model_to_json(back).dump() == emitted.dump());
        CHECK(back.n == spec.n);
        CHECK(back.omega == spec.omega);
        CHECK(back.circumference == spec.circumference);
    }
}

TEST_CASE("elliptic models built from invariants canonicalize to periods") {
    const json j = json::parse(
        R"({"geometry":"circle","n":3,"omega":0.0,"circumference":2.45138938198679,
            "family":{"type":"elliptic","alpha":2.0,"g2":4.0,"g3":1.0}})");
    const ModelSpec spec = io::model_from_json(j);
    const auto& fam = std::get<EllipticPhi>(spec.phi);
    CHECK(fam.lat.g2 == doctest::Approx(4.0).epsilon(1e-12));
    const json emitted = io::model_to_json(spec);
    CHECK(emitted["family"].contains("l"));
    CHECK(emitted["family"].contains("im_omega3"));
    CHECK(!emitted["family"].contains("g2"));
}

TEST_CASE("bad model JSON is rejected") {
    CHECK_THROWS(io::model_from_json(json::parse(R"({"geometry":"sphere","n":3})")));
    CHECK_THROWS(io::model_from_json(json::parse(
        R"({"geometry":"line","n":3,"omega":1.0,"family":{"type":"spline","alpha":2.0}})")));
    CHECK_THROWS_AS(
        io::model_from_json(json::parse(
            R"({"geometry":"line","n":3,"omega":1.0,"family":{"type":"rational","alpha":0.4}})")),
        std::invalid_argument);
}

TEST_CASE("format_double emits shortest round-trip decimal") {
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(std::stod(io::format_double(jastrow::pi)) == jastrow::pi);
}

TEST_CASE("atomic text writes land complete") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "jastrow_io_test";
    fs::create_directories(dir);
    const fs::path p = dir / "x.txt";
    io::write_text_atomic(p, "hello\n");
    io::write_text_atomic(p, "world\n");
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    CHECK(line == "world");
    CHECK(!fs::exists(p.string() + ".tmp"));
    fs::remove_all(dir);
}

TEST_CASE("report serialization carries the verdicts") {
    const auto spec = make_line_model(3, 1.0, make_rational(2.0));
    const auto residual = verify::residual_energy(spec, 4, 3, 1e-4);
    const json jr = io::to_json(residual);
    CHECK(jr.contains("spread"));
    CHECK(jr["local_energies"].size() == 4);
    CHECK(jr["closed_form_energy"].get<double>() == doctest::Approx(11.0));

    const auto sym = verify::check_symmetries(spec, 16, 5);
    const json js = io::to_json(sym);
    CHECK(js["all_pass"].get<bool>());

    const auto norm = verify::check_normalizability(spec);
    const json jn = io::to_json(norm);
    CHECK(jn["pass"].get<bool>());
    CHECK(jn["circulant_eigenvalues"].size() == 3);
}
