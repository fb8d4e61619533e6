#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string tmp = std::string("/tmp/cuphom_cli_") + std::to_string(counter++) + ".out";
    std::string cmd = std::string(CUPHOM_BIN) + " " + args + " > " + tmp + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::remove(tmp.c_str());
    return r;
}

std::string data(const std::string& name) { return std::string(CUPHOM_DATA_DIR) + "/" + name; }

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

} // namespace

TEST_CASE("cup command values and exit codes") {
    CliResult r = run_cli("cup " + data("cup_l3.json"));
    CHECK(r.exit_code == 0);
    nlohmann::json j = parse(r.out);
    CHECK(j["rank_f2"] == 6);
    CHECK(j["rank_q"] == 6);
    CHECK(j["two_torsion"] == false);

    r = run_cli("cup " + data("cup_l2.json"));
    CHECK(r.exit_code == 0);
    CHECK(parse(r.out)["rank_f2"] == 4);

    r = run_cli("cup " + data("cup_l3_m2.json"));
    CHECK(r.exit_code == 0);
    j = parse(r.out);
    CHECK(j["rank_f2"] == 8);
    CHECK(j["rank_q"] == 6);
    CHECK(j["two_torsion"] == true);

    CHECK(run_cli("cup " + data("cup_malformed.json")).exit_code == 2);
    CHECK(run_cli("cup " + data("cup_badfield.json")).exit_code == 2);
    CHECK(run_cli("cup " + data("cup_nonsplit.json")).exit_code == 3);
    CHECK(run_cli("cup /nonexistent.json").exit_code == 2);
}

TEST_CASE("cup command ring selection and text format") {
    CliResult r = run_cli("cup --ring f2 " + data("cup_l3.json"));
    CHECK(r.exit_code == 0);
    nlohmann::json j = parse(r.out);
    CHECK(j["rank_f2"] == 6);
    CHECK(j["rank_q"].is_null());
    CHECK(j["two_torsion"].is_null());

    r = run_cli("cup --format text " + data("cup_l3.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("rank_f2 6") != std::string::npos);
}

TEST_CASE("surgery-knot command") {
    CliResult r = run_cli("surgery-knot -n 0 " + data("unknot.json"));
    CHECK(r.exit_code == 0);
    nlohmann::json j = parse(r.out);
    CHECK(j["truncation_stable"] == true);
    bool found = false;
    for (const auto& cls : j["classes"])
        if (cls["class"] == 0) {
            CHECK(cls["rank"] == 2);
            found = true;
        }
    CHECK(found);

    r = run_cli("surgery-knot -n 5 " + data("unknot.json"));
    CHECK(r.exit_code == 0);
    j = parse(r.out);
    CHECK(j["classes"].size() == 5);
    for (const auto& cls : j["classes"]) CHECK(cls["rank"] == 1);

    r = run_cli("surgery-knot -n 1 " + data("trefoil.json"));
    CHECK(r.exit_code == 0);
    j = parse(r.out);
    REQUIRE(j["classes"].size() == 1);
    CHECK(j["classes"][0]["rank"] == 1);

    CHECK(run_cli("surgery-knot -n 1 " + data("knot_bad.json")).exit_code == 3);

    // explicit truncation override, and rejection below the required window
    r = run_cli("surgery-knot -n 1 --truncation 9 " + data("trefoil.json"));
    CHECK(r.exit_code == 0);
    j = parse(r.out);
    CHECK(j["truncation"] == 9);
    CHECK(j["classes"][0]["rank"] == 1);
    CHECK(run_cli("surgery-knot -n 1 --truncation 1 " + data("trefoil.json")).exit_code == 3);
}

TEST_CASE("hypercube command") {
    CliResult r = run_cli("hypercube " + data("cube_l3.json"));
    CHECK(r.exit_code == 0);
    nlohmann::json j = parse(r.out);
    CHECK(j["relations_ok"] == true);
    CHECK(j["collapse_page"] == 4);
    CHECK(j["e_infinity_total"] == 6);
    CHECK(j["total_homology"] == 6);
    CHECK(j["page_dims"]["1"] == nlohmann::json({1, 3, 3, 1}));
    CHECK(j["page_dims"]["4"] == nlohmann::json({0, 3, 3, 0}));

    r = run_cli("hypercube " + data("cube_broken.json"));
    CHECK(r.exit_code == 4);
    j = parse(r.out);
    CHECK(j["relations_ok"] == false);
    REQUIRE(j["violations"].size() >= 1);
    CHECK(j["violations"][0][0] == "00");
    CHECK(j["violations"][0][1] == "11");

    r = run_cli("hypercube --check " + data("cube_l3.json"));
    CHECK(r.exit_code == 0);
    CHECK_FALSE(parse(r.out).contains("page_dims"));

    r = run_cli("hypercube --pages 2 " + data("cube_l3.json"));
    CHECK(r.exit_code == 0);
    j = parse(r.out);
    CHECK(j["page_dims"].contains("2"));
    CHECK_FALSE(j["page_dims"].contains("3"));
    CHECK(j["collapse_page"] == 4); // collapse detection is not limited by --pages
}

TEST_CASE("reduce command") {
    CliResult r = run_cli("reduce " + data("cup_l3.json"));
    CHECK(r.exit_code == 0);
    nlohmann::json j = parse(r.out);
    CHECK(j["trace"]["kind"] == "leaf");
    CHECK(j["all_leaves_c_le_1"] == true);

    r = run_cli("reduce " + data("reduce_two.json"));
    CHECK(r.exit_code == 0);
    j = parse(r.out);
    CHECK(j["trace"]["kind"] == "knot_split");
    CHECK(j["leaves"] == 2);
    CHECK(j["all_checks_pass"] == true);

    r = run_cli("reduce " + data("reduce_three.json"));
    CHECK(r.exit_code == 0);
    j = parse(r.out);
    CHECK(j["all_checks_pass"] == true);
    CHECK(j["all_leaves_c_le_1"] == true);
}

TEST_CASE("properties command is byte-stable under a fixed seed") {
    CliResult a = run_cli("properties --seed 5 --count 8");
    CliResult b = run_cli("properties --seed 5 --count 8");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    nlohmann::json j = parse(a.out);
    CHECK(j["d_squared_zero"] == "pass");
    CHECK(j["psi_calculus"] == "pass");
}
