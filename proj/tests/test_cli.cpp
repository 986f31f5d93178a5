#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_run.hpp"
#include "support/xml_check.hpp"

#ifndef ORDEVAL_CLI_PATH
#error "ORDEVAL_CLI_PATH must point at the built executable"
#endif

namespace fs = std::filesystem;
using ordeval::Scale;
using namespace ordeval::cli;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ordeval_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter() {
        static int n = 0;
        return n++;
    }
    fs::path file(const std::string& name) const { return path / name; }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string survey_csv() {
    std::string csv = "speed,price,sat\n";
    const int speeds[] = {1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 3, 2, 4, 1, 5, 2};
    for (int i = 0; i < 16; ++i) {
        int speed = speeds[i];
        int price = 1 + (i * 3) % 5;
        int sat = std::min(5, std::max(1, (speed + price + 1) / 2));
        csv += std::to_string(speed) + "," + std::to_string(price) + ",";
        if (i % 5 == 4)
            csv += "\n";  // leave every fifth row unlabeled
        else
            csv += std::to_string(sat) + "\n";
    }
    return csv;
}

int run_binary(const std::string& args) {
    std::string cmd = std::string(ORDEVAL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("scale arguments parse as min:max") {
    CHECK(parse_scale_arg("1:5") == Scale{1, 5});
    CHECK(parse_scale_arg("0:3") == Scale{0, 3});
    CHECK(parse_scale_arg("-2:2") == Scale{-2, 2});
    CHECK_THROWS_AS(parse_scale_arg("5"), ordeval::Error);
    CHECK_THROWS_AS(parse_scale_arg("5:1"), ordeval::Error);
    CHECK_THROWS_AS(parse_scale_arg("a:b"), ordeval::Error);
    CHECK_THROWS_AS(parse_scale_arg("1:2:3"), ordeval::Error);
}

TEST_CASE("plot filenames keep index and a safe slug") {
    CHECK(attribute_plot_filename(0, "speed") == "attribute_1_speed.svg");
    CHECK(attribute_plot_filename(2, "wait time?") == "attribute_3_wait_time_.svg");
    std::string long_name(80, 'x');
    std::string name = attribute_plot_filename(0, long_name);
    CHECK(name.size() <= std::string("attribute_1_.svg").size() + 40);
}

TEST_CASE("config json merges known keys and rejects unknown ones") {
    RunConfig cfg;
    apply_config_json(cfg, R"({
        "input": "a.csv", "response_column": "sat", "id_column": "rid",
        "default_scale": {"min": 0, "max": 10},
        "scales": {"speed": {"min": 1, "max": 7}},
        "k": 4, "resamples": 50, "alpha": 0.1, "tau": 0.5,
        "seed": 99, "output_dir": "out", "colorblind": true
    })");
    CHECK(cfg.input == "a.csv");
    CHECK(cfg.response_column == "sat");
    CHECK(cfg.id_column == "rid");
    CHECK(cfg.default_scale == Scale{0, 10});
    CHECK(cfg.scales.at("speed") == Scale{1, 7});
    CHECK(cfg.k == 4);
    CHECK(cfg.resamples == 50);
    CHECK(cfg.alpha == 0.1);
    CHECK(cfg.tau == 0.5);
    CHECK(cfg.seed == 99);
    CHECK(cfg.output_dir == "out");
    CHECK(cfg.colorblind);

    RunConfig other;
    CHECK_THROWS_AS(apply_config_json(other, R"({"respnse": "sat"})"),
                    ordeval::Error);
    CHECK_THROWS_AS(apply_config_json(other, "not json"), ordeval::Error);
    CHECK_THROWS_AS(apply_config_json(other, R"(["sat"])"), ordeval::Error);
}

TEST_CASE("validate reports diagnostics and exits by cleanliness") {
    TempDir dir;
    write_text(dir.file("clean.csv"), survey_csv());
    RunConfig cfg;
    cfg.input = dir.file("clean.csv").string();
    cfg.response_column = "sat";
    std::ostringstream out, err;
    CHECK(run_validate(cfg, out, err) == 0);
    CHECK(out.str().find("no violations") != std::string::npos);
    CHECK(out.str().find("rows: 16") != std::string::npos);

    write_text(dir.file("dirty.csv"), "a,sat\n9,2\n1,1\n");
    cfg.input = dir.file("dirty.csv").string();
    std::ostringstream out2, err2;
    CHECK(run_validate(cfg, out2, err2) == 2);
    CHECK(out2.str().find("row 1") != std::string::npos);

    cfg.input = dir.file("absent.csv").string();
    std::ostringstream out3, err3;
    CHECK(run_validate(cfg, out3, err3) == 2);
    CHECK(err3.str().find("cannot read input") != std::string::npos);
}

TEST_CASE("evaluate writes a report and plots deterministically") {
    TempDir dir;
    write_text(dir.file("s.csv"), survey_csv());
    RunConfig cfg;
    cfg.input = dir.file("s.csv").string();
    cfg.response_column = "sat";
    cfg.k = 5;
    cfg.resamples = 40;
    cfg.seed = 17;
    cfg.output_dir = dir.file("out1").string();
    std::ostringstream out, err;
    REQUIRE(run_evaluate(cfg, out, err) == 0);

    auto report_path = dir.file("out1") / "report.json";
    REQUIRE(fs::exists(report_path));
    REQUIRE(fs::exists(dir.file("out1") / "summary.svg"));
    REQUIRE(fs::exists(dir.file("out1") / "attribute_1_speed.svg"));
    REQUIRE(fs::exists(dir.file("out1") / "attribute_2_price.svg"));
    CHECK(out.str().find("report.json") != std::string::npos);

    auto xml = testsupport::check_xml(read_text(dir.file("out1") / "summary.svg"));
    INFO(xml.error);
    CHECK(xml.ok);

    cfg.output_dir = dir.file("out2").string();
    std::ostringstream out2, err2;
    REQUIRE(run_evaluate(cfg, out2, err2) == 0);
    CHECK(read_text(report_path) == read_text(dir.file("out2") / "report.json"));
    CHECK(read_text(dir.file("out1") / "summary.svg") ==
          read_text(dir.file("out2") / "summary.svg"));
}

TEST_CASE("evaluate demands a seed and sane parameters") {
    TempDir dir;
    write_text(dir.file("s.csv"), survey_csv());
    RunConfig cfg;
    cfg.input = dir.file("s.csv").string();
    cfg.response_column = "sat";
    std::ostringstream out, err;
    CHECK(run_evaluate(cfg, out, err) == 2);  // no seed
    CHECK(err.str().find("seed") != std::string::npos);

    cfg.seed = 1;
    cfg.tau = 1.5;
    std::ostringstream out2, err2;
    CHECK(run_evaluate(cfg, out2, err2) == 2);

    cfg.tau = 0.6;
    cfg.resamples = 0;
    std::ostringstream out3, err3;
    CHECK(run_evaluate(cfg, out3, err3) == 2);
}

TEST_CASE("too little data exits with the insufficiency code") {
    TempDir dir;
    write_text(dir.file("one.csv"), "a,sat\n1,2\n");
    RunConfig cfg;
    cfg.input = dir.file("one.csv").string();
    cfg.response_column = "sat";
    cfg.seed = 1;
    cfg.output_dir = dir.file("out").string();
    std::ostringstream out, err;
    CHECK(run_evaluate(cfg, out, err) == 3);

    write_text(dir.file("none.csv"), "a,sat\n1,\n2,\n3,\n4,\n");
    cfg.input = dir.file("none.csv").string();
    std::ostringstream out2, err2;
    CHECK(run_predict(cfg, out2, err2) == 3);
}

TEST_CASE("predict writes cv and ranking artifacts") {
    TempDir dir;
    write_text(dir.file("s.csv"), survey_csv());
    RunConfig cfg;
    cfg.input = dir.file("s.csv").string();
    cfg.response_column = "sat";
    cfg.seed = 23;
    cfg.output_dir = dir.file("out").string();
    std::ostringstream out, err;
    REQUIRE(run_predict(cfg, out, err) == 0);
    REQUIRE(fs::exists(dir.file("out") / "cv_report.json"));
    REQUIRE(fs::exists(dir.file("out") / "ranking.json"));
    CHECK(out.str().find("ranking uses") != std::string::npos);

    std::string ranking = read_text(dir.file("out") / "ranking.json");
    CHECK(ranking.find("\"row_id\"") != std::string::npos);

    cfg.output_dir = dir.file("out_b").string();
    std::ostringstream out2, err2;
    REQUIRE(run_predict(cfg, out2, err2) == 0);
    CHECK(read_text(dir.file("out") / "cv_report.json") ==
          read_text(dir.file("out_b") / "cv_report.json"));
    CHECK(read_text(dir.file("out") / "ranking.json") ==
          read_text(dir.file("out_b") / "ranking.json"));
}

TEST_CASE("binary: help and argument errors") {
    CHECK(run_binary("--help") == 0);
    CHECK(run_binary("evaluate --help") == 0);
    CHECK(run_binary("") == 2);             // a subcommand is required
    CHECK(run_binary("frobnicate") == 2);   // unknown subcommand
    CHECK(run_binary("evaluate --no-such-flag") == 2);
}

TEST_CASE("binary: full evaluate and predict runs") {
    TempDir dir;
    write_text(dir.file("s.csv"), survey_csv());
    std::string base = "-i " + dir.file("s.csv").string() + " -r sat";

    CHECK(run_binary("validate " + base) == 0);
    CHECK(run_binary("evaluate " + base + " --seed 5 -k 4 -B 30 -o " +
                     dir.file("ev").string()) == 0);
    CHECK(fs::exists(dir.file("ev") / "report.json"));
    CHECK(run_binary("evaluate " + base + " -o " + dir.file("ev2").string()) == 2);
    CHECK(run_binary("predict " + base + " --seed 5 -o " +
                     dir.file("pr").string()) == 0);
    CHECK(fs::exists(dir.file("pr") / "ranking.json"));
}

TEST_CASE("binary: config file values with flag overrides") {
    TempDir dir;
    write_text(dir.file("s.csv"), survey_csv());
    write_text(dir.file("cfg.json"),
               std::string(R"({"input": ")") + dir.file("s.csv").string() +
                   R"(", "response_column": "sat", "k": 4,
                      "resamples": 30, "seed": 5, "output_dir": ")" +
                   dir.file("from_cfg").string() + R"("})");

    CHECK(run_binary("evaluate -c " + dir.file("cfg.json").string()) == 0);
    CHECK(fs::exists(dir.file("from_cfg") / "report.json"));

    // the flag wins over the file
    CHECK(run_binary("evaluate -c " + dir.file("cfg.json").string() + " -o " +
                     dir.file("flag_out").string()) == 0);
    CHECK(fs::exists(dir.file("flag_out") / "report.json"));

    // same settings, same bytes, whether they came from file or flags
    CHECK(run_binary("evaluate -i " + dir.file("s.csv").string() +
                     " -r sat -k 4 -B 30 --seed 5 -o " +
                     dir.file("flags_only").string()) == 0);
    CHECK(read_text(dir.file("from_cfg") / "report.json") ==
          read_text(dir.file("flags_only") / "report.json"));

    CHECK(run_binary("evaluate -c " + dir.file("absent.json").string()) == 2);
}

TEST_CASE("binary: per-column scale flags reach the parser") {
    TempDir dir;
    write_text(dir.file("wide.csv"), "a,b,sat\n1,7,3\n0,1,4\n2,3,1\n1,5,2\n3,6,5\n");
    std::string base = "-i " + dir.file("wide.csv").string() + " -r sat";
    // default 1:5 rejects both columns; explicit scales accept them
    CHECK(run_binary("validate " + base) == 2);
    CHECK(run_binary("validate " + base + " --scale a=0:3 --scale b=1:7") == 0);
    CHECK(run_binary("validate " + base + " --scale a=bogus") == 2);
}
