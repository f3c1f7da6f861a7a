#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "cheese/generators.hpp"
#include "cheese/objects.hpp"
#include "fixtures.hpp"

using namespace cheese;

TEST_CASE("validate accepts a clean instance") {
    Instance inst{fixtures::k4(), 0, fixtures::singletons({0, 3})};
    REQUIRE(validate(inst).ok());
}

TEST_CASE("validate flags a disconnected object") {
    // vertices {1, 3} of the path 0-1-2-3... use K4 but omit the edge
    Instance inst{fixtures::k4(), 0, {GraphObject{0, {0, 1}, {}}}};
    auto rep = validate(inst);
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.violations[0].code == "disconnected-object");
}

TEST_CASE("validate flags out-of-range vertices") {
    Instance inst{fixtures::k4(), 0, {GraphObject{0, {5}, {}}}};
    auto rep = validate(inst);
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.violations[0].code == "out-of-range");
}

TEST_CASE("generated 3x3 grid with two singletons") {
    Instance inst = generate_grid(3, 3, "rect:1x1:2", 1);
    REQUIRE(inst.num_objects() == 2);
    REQUIRE(validate(inst).ok());
    REQUIRE(objects_disjoint(inst.objects[0], inst.objects[1]));
}

TEST_CASE("one object covering a 2x2 grid") {
    Instance inst = generate_grid(2, 2, "all", 0);
    REQUIRE(inst.num_objects() == 1);
    REQUIRE(inst.objects[0].vertices.size() == 4);
    REQUIRE(validate(inst).ok());
}

TEST_CASE("oversized blobs raise a generation error") {
    REQUIRE_THROWS_AS(generate_grid(3, 3, "rect:4x4:1", 0), Error);
    REQUIRE_THROWS_AS(generate_grid(3, 3, "rect:1x1:10", 0), Error);
}

TEST_CASE("generators are deterministic") {
    Instance a = generate_grid(4, 4, "rect:2x2:6", 7);
    Instance b = generate_grid(4, 4, "rect:2x2:6", 7);
    REQUIRE(instance_to_json(a) == instance_to_json(b));
    Instance c = generate_grid(4, 4, "rect:2x2:6", 8);
    REQUIRE(instance_to_json(a) != instance_to_json(c));
}

TEST_CASE("every generated instance validates cleanly") {
    for (const Instance& inst : fixtures::small_corpus()) {
        REQUIRE(validate(inst).ok());
        REQUIRE(inst.num_objects() >= 1);
    }
}

TEST_CASE("instance JSON round-trips bit-exactly") {
    for (const Instance& inst : fixtures::small_corpus()) {
        nlohmann::json j = instance_to_json(inst);
        std::string s = j.dump();
        Instance back = instance_from_json(nlohmann::json::parse(s));
        REQUIRE(instance_to_json(back).dump() == s);
    }
}

TEST_CASE("intersection graph matches pairwise set intersection") {
    Instance inst = generate_grid(4, 4, "rect:2x2:6", 7);
    IntersectionGraph ig = intersection_graph(inst);
    for (std::size_t a = 0; a < inst.num_objects(); ++a)
        for (std::size_t b = 0; b < inst.num_objects(); ++b) {
            if (a == b) continue;
            REQUIRE(ig.adjacent(a, b) == !objects_disjoint(inst.objects[a], inst.objects[b]));
        }
}

TEST_CASE("two disjoint and two sharing objects") {
    Instance inst{fixtures::k4(), 0,
                  {GraphObject{0, {0, 1}, {{0, 1}}}, GraphObject{1, {1, 2}, {{1, 2}}},
                   GraphObject{2, {3}, {}}}};
    IntersectionGraph ig = intersection_graph(inst);
    REQUIRE(ig.adjacent(0, 1));
    REQUIRE_FALSE(ig.adjacent(0, 2));
    REQUIRE_FALSE(ig.adjacent(1, 2));
}

TEST_CASE("object spanning tree is canonical BFS from the minimum vertex") {
    GraphObject p{0, {2, 3, 5}, {{2, 3}, {3, 5}, {2, 5}}};
    auto parent = object_spanning_tree(p);
    REQUIRE(parent.at(2) == kNone);
    REQUIRE(parent.at(3) == 2);
    REQUIRE(parent.at(5) == 2);
}
