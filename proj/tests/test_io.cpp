#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "doctest.h"
#include "helpers.hpp"
#include "invdef/fingerprint.hpp"
#include "invdef/problem_io.hpp"

using namespace invdef;
using namespace testing_util;

namespace {

Json fat_point() {
    return Json::parse(R"({
        "ring": {"variables": ["x", "y"], "gm_weights": [1, 1]},
        "group": {"variables": ["x", "y"]},
        "ideal": ["x^2", "x*y", "y^2"],
        "n1_decomposition": [{"multiplicity": 3, "hilbert_value": 3}],
        "invariants": ["x", "y"]
    })");
}

int cli(const std::string& args) {
    const std::string cmd = std::string(INVDEF_CLI) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string tmp_file(const std::string& name, const std::string& body) {
    const std::string path = std::string(INVDEF_TMP_DIR) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_CASE("fingerprint of a principal ideal") {
    // P/(f) with f of weight d has numerator 1 - u^d
    auto r = make_ring(VariableSet({"u", "v"}, {1, 2}));
    auto fp = fingerprint(r, Ps({"u^2*v"}, r), {1, 2});
    CHECK(fp.dimension == 1);
    CHECK(fp.numerator.to_string() == fingerprint(r, Ps({"v^2"}, r), {1, 2}).numerator.to_string());
    CHECK(fp.weights == std::vector<long>{1, 2});
}

TEST_CASE("fingerprint search over weight assignments") {
    auto ours = make_ring(VariableSet({"u", "v"}, {1, 2}));
    auto target = fingerprint(ours, Ps({"u^2*v"}, ours), {1, 2});
    auto printed = ring_of({"a", "b"});
    // a*b^2 has weight 4 only when b gets the smaller weight
    auto w = match_fingerprint(printed, Ps({"a*b^2"}, printed), {1, 2}, target);
    REQUIRE(w.has_value());
    CHECK(*w == std::vector<long>{2, 1});
    CHECK_FALSE(match_fingerprint(printed, Ps({"a"}, printed), {1, 2}, target).has_value());
    CHECK_FALSE(match_fingerprint(printed, Ps({"a*b^2"}, printed), {1, 3}, target).has_value());
    // a - b^2 is homogeneous only for (2, 1)
    auto lin = fingerprint(ours, Ps({"v-u^2"}, ours), {1, 2});
    auto w2 = match_fingerprint(printed, Ps({"a-b^2"}, printed), {1, 2}, lin);
    REQUIRE(w2.has_value());
    CHECK(*w2 == std::vector<long>{2, 1});
}

TEST_CASE("problem parsing rejects malformed input") {
    auto j = fat_point();
    j.erase("ring");
    CHECK_THROWS_AS(parse_problem(j), ValidationError);
    j = fat_point();
    j["ideal"] = Json::array({"x^2", "w*y"});
    CHECK_THROWS(parse_problem(j));
    j = fat_point();
    j["n1_decomposition"] = Json::array({Json{{"multiplicity", 0}, {"hilbert_value", 3}}});
    CHECK_THROWS_AS(parse_problem(j).spec.validate(), ValidationError);
}

TEST_CASE("result files round-trip and stay byte-stable") {
    auto pf = parse_problem(fat_point());
    pf.spec.validate();
    auto res = run(pf.spec);
    CHECK(res.t_ring->nvars() == 6);
    CHECK(res.K.empty());
    const auto first = result_to_json(res).dump(2);
    CHECK(result_to_json(run(pf.spec)).dump(2) == first);
    auto back = result_from_json(Json::parse(first), pf.spec);
    CHECK(result_to_json(back).dump(2) == first);
    CHECK(verify(back, pf.spec).ok());

    // a perturbed coefficient in U no longer gives a flat family
    auto j = Json::parse(first);
    bool changed = false;
    for (auto& row : j["U"])
        for (auto& e : row)
            if (!changed && e.get<std::string>() != "0") {
                e = e.get<std::string>() + "+x";
                changed = true;
            }
    REQUIRE(changed);
    CHECK_FALSE(verify(result_from_json(j, pf.spec), pf.spec).ok());
}

TEST_CASE("command line exit codes") {
    const auto problem = tmp_file("fat_point.json", fat_point().dump());
    const auto result = std::string(INVDEF_TMP_DIR) + "/fat_point_result.json";
    CHECK(cli("tangent " + problem) == 0);
    CHECK(cli("deform " + problem + " --out " + result) == 0);
    CHECK(cli("verify " + result + " " + problem) == 0);

    auto j = read_json(result);
    j["K"] = Json::array({"t1^2+t1"});
    const auto bad = tmp_file("fat_point_bad.json", j.dump());
    CHECK(cli("verify " + bad + " " + problem) == 4);

    const auto broken = tmp_file("broken.json", "{\"ring\": 3}");
    CHECK(cli("tangent " + broken) == 2);
    CHECK(cli("tangent --no-such-flag " + problem) == 2);

    auto capped = fat_point();
    capped["options"] = {{"max_covariant_degree", 0}};
    const auto cap = tmp_file("capped.json", capped.dump());
    CHECK(cli("tangent " + cap) == 3);
}
