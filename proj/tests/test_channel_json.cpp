#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "incoh/channel_json.hpp"
#include "support/test_helpers.hpp"

using namespace incoh;
using testsupport::random_general_channel;

TEST_CASE("channel JSON: schema shape") {
    const Channel c = permutation_lower_bound_channel(2);
    const nlohmann::json j = channel_to_json(c);
    CHECK(j.at("dim") == 2);
    REQUIRE(j.at("kraus").size() == 4);
    REQUIRE(j["kraus"][0].size() == 2);        // rows
    REQUIRE(j["kraus"][0][0].size() == 2);     // entries per row
    REQUIRE(j["kraus"][0][0][0].size() == 2);  // [re, im]
    const double amp = j["kraus"][0][0][0][0].get<double>();
    CHECK(amp == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("channel JSON: round trip is exact well below 1e-15") {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 5; ++rep) {
        const Channel c = random_general_channel(2 + rep % 2, 3, rng);
        const Channel back = channel_from_json(channel_to_json(c));
        REQUIRE(back.dim == c.dim);
        REQUIRE(back.kraus.size() == c.kraus.size());
        for (std::size_t i = 0; i < c.kraus.size(); ++i)
            CHECK(frob_distance(c.kraus[i], back.kraus[i]) < 1e-15);
    }
}

TEST_CASE("channel JSON: malformed documents are rejected") {
    CHECK_THROWS_AS(channel_from_json(nlohmann::json::array()), std::invalid_argument);
    CHECK_THROWS_AS(channel_from_json(nlohmann::json{{"dim", 2}}), std::invalid_argument);
    CHECK_THROWS_AS(channel_from_json(nlohmann::json::parse(
                        R"({"dim": 2, "kraus": [[[ [1,0] ]]]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(channel_from_json(nlohmann::json::parse(
                        R"({"dim": 2, "kraus": [[[ [1,0],[0,0] ],[ [0,0],[1] ]]]})")),
                    std::invalid_argument);
}

TEST_CASE("channel file save/load round trip") {
    std::mt19937_64 rng(72);
    const Channel c = random_general_channel(3, 4, rng);
    const std::string path = "/tmp/incoh_test_channel.json";
    save_channel_file(path, c);
    const Channel back = load_channel_file(path);
    CHECK(channels_equal(c, back, 1e-14));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_channel_file("/tmp/does_not_exist_incoh.json"), std::runtime_error);
}
