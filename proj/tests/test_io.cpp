#include <doctest.h>

#include "kzero/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

using namespace kzero;

TEST_CASE("fixture files match the built-in fixtures") {
    for (const auto& name : fixtures::names()) {
        std::string file = name;
        std::transform(file.begin(), file.end(), file.begin(), [](unsigned char c) { return std::tolower(c); });
        std::ifstream in(std::string(KZERO_FIXTURE_DIR) + "/" + file + ".json");
        REQUIRE_MESSAGE(in, file);
        std::stringstream text;
        text << in.rdbuf();
        RootDatum parsed = parse_datum(text.str());
        RootDatum built = *fixtures::by_name(name);
        CHECK(parsed.name() == built.name());
        CHECK(parsed.simple_roots() == built.simple_roots());
        CHECK(parsed.simple_coroots() == built.simple_coroots());
        CHECK(dump(datum_to_json(built)) == text.str());
    }
}

TEST_CASE("datum JSON errors carry positions") {
    try {
        parse_datum("{\n  \"rank\": 1,\n  \"simple_roots\": [[2]]\n}");
        FAIL("missing coroots accepted");
    } catch (const InputError& e) {
        CHECK(e.line() >= 1);
    }
    CHECK_THROWS_AS(parse_datum("{\"rank\": 1,\n \"simple_roots\": [[2]]\n \"x\": 1}"), InputError);
    CHECK_THROWS_AS(parse_datum("{\"rank\": -1, \"simple_roots\": [], \"simple_coroots\": []}"), InputError);
}
