#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ntcorr/config.hpp"
#include "ntcorr/runner.hpp"

using namespace ntcorr;
namespace fs = std::filesystem;

namespace {

const char* kFullConfig = R"cfg(
[run]
experiment = schwinger_spectrum
seed = 42
output_dir = out/test

[model]
L = 4
m = 0.5
g = 0.3

[backend]
kind = trotter
order = 2
dt = 2
t_max = 8

[qite]
variant = analytic
tau_plus = 0.4
tau_minus = 0.7
steps = 3

[noise]
p = 0.01
dt = 2
n_shot = 1000
seed = 7

[processing]
window = rectangular
ca_runs = 2
peak_threshold = 0.25
omega_min = 0.4
)cfg";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("full config parses into the expected fields") {
    ExperimentConfig cfg = parse_config_text(kFullConfig);
    CHECK(cfg.experiment == ExperimentKind::schwinger_spectrum);
    CHECK(cfg.seed == 42);
    CHECK(cfg.schwinger.L == 4);
    CHECK(cfg.schwinger.m == 0.5);
    CHECK(cfg.schwinger.g == 0.3);
    CHECK(cfg.backend == BackendKind::trotter);
    CHECK(cfg.trotter_order == 2);
    CHECK(cfg.trotter_dt == 2.0);
    CHECK(cfg.t_max == 8.0);
    CHECK(cfg.qite_variant == QiteVariant::analytic);
    CHECK(cfg.tau_plus == 0.4);
    CHECK(cfg.tau_minus == 0.7);
    CHECK(cfg.qite_steps == 3);
    CHECK(cfg.noise.p == 0.01);
    CHECK(cfg.noise.n_shot == 1000);
    CHECK(cfg.noise.seed == 7);
    CHECK(cfg.window == WindowKind::rectangular);
    CHECK(cfg.ca_runs == 2);
    CHECK(cfg.peak_threshold == 0.25);
    CHECK(cfg.omega_min == 0.4);
}

TEST_CASE("serialize then parse is the identity") {
    ExperimentConfig cfg = parse_config_text(kFullConfig);
    ExperimentConfig round = parse_config_text(serialize_config(cfg));
    CHECK(round == cfg);
    CHECK(config_hash(round) == config_hash(cfg));
    // And again, to make sure serialization is itself stable.
    CHECK(serialize_config(round) == serialize_config(cfg));
}

TEST_CASE("config hash separates distinct configs") {
    ExperimentConfig a = parse_config_text(kFullConfig);
    ExperimentConfig b = a;
    b.seed = 43;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("unknown keys and sections are line-precise errors") {
    try {
        parse_config_text("[run]\nexperiment = tim_otoc\nbogus_key = 1\n");
        FAIL("expected a parse error");
    } catch (const std::exception& e) {
        std::string msg = e.what();
        CHECK(msg.find("bogus_key") != std::string::npos);
        CHECK(msg.find("3") != std::string::npos);  // line number
    }
    CHECK_THROWS(parse_config_text("[nonsense]\nx = 1\n"));
    CHECK_THROWS(parse_config_text("[run]\nexperiment = no_such_experiment\n"));
    // Duplicate key.
    CHECK_THROWS(parse_config_text("[run]\nseed = 1\nseed = 2\n"));
}

TEST_CASE("validation rejects out-of-range values") {
    ExperimentConfig cfg = parse_config_text(kFullConfig);
    CHECK_NOTHROW(validate_config(cfg));
    auto broken = cfg;
    broken.noise.p = 1.5;
    CHECK_THROWS(validate_config(broken));
    broken = cfg;
    broken.trotter_order = 3;
    CHECK_THROWS(validate_config(broken));
    broken = cfg;
    broken.trotter_dt = 0;
    CHECK_THROWS(validate_config(broken));
    broken = cfg;
    broken.peak_threshold = 1.0;
    CHECK_THROWS(validate_config(broken));
    broken = cfg;
    broken.omega_min = -0.1;
    CHECK_THROWS(validate_config(broken));
}

TEST_CASE("infinite shots spelled as inf") {
    ExperimentConfig cfg =
        parse_config_text("[run]\nexperiment = tim_otoc\n[noise]\nn_shot = inf\n");
    CHECK(cfg.noise.n_shot == kInfiniteShots);
    ExperimentConfig round = parse_config_text(serialize_config(cfg));
    CHECK(round.noise.n_shot == kInfiniteShots);
}

TEST_CASE("runs are reproducible byte for byte") {
    fs::path base = fs::temp_directory_path() / "ntcorr_determinism_test";
    fs::remove_all(base);
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::tim_otoc;
    cfg.tim_L = 4;
    cfg.backend = BackendKind::trotter;
    cfg.trotter_order = 1;
    cfg.trotter_dt = 0.4;
    cfg.t_max = 4.0;
    cfg.qite_variant = QiteVariant::analytic;
    cfg.noise.n_shot = 500;  // exercises the sampling stream
    cfg.seed = 3;

    cfg.output_dir = (base / "a").string();
    REQUIRE(run_experiment(cfg) == 0);
    cfg.output_dir = (base / "b").string();
    REQUIRE(run_experiment(cfg) == 0);
    CHECK(slurp(base / "a" / "otoc.csv") == slurp(base / "b" / "otoc.csv"));

    cfg.seed = 4;
    cfg.output_dir = (base / "c").string();
    REQUIRE(run_experiment(cfg) == 0);
    CHECK(slurp(base / "a" / "otoc.csv") != slurp(base / "c" / "otoc.csv"));
    fs::remove_all(base);
}
