#include "doctest.h"

#include <string>

#include "emg/grammar.hpp"
#include "util.hpp"

using namespace emg;

namespace {

const char* kToy = R"(# toy clause
@start C
@agr T { per, num }
@agr D { per, num }
@param memory fifo

_ :: C +D =T
Maria :: D { per.3, num.s }
ha :: T { per.3, num.s } +D =V
cantato :: V =D
)";

} // namespace

TEST_CASE("loading the toy clause grammar") {
    Grammar g = load_grammar(kToy);

    CHECK(g.items.size() == 4);
    CHECK(g.params.start == Category("C"));
    CHECK(g.params.memory == MemoryPolicy::Fifo);
    CHECK(g.params.agr.size() == 2);
    CHECK(g.warnings.empty());

    const LexicalItem& silent = g.items[0];
    CHECK(silent.is_empty());
    CHECK(silent.form() == "_");
    CHECK(silent.label() == Category("C"));
    REQUIRE(silent.expect.size() == 2);
    CHECK(silent.expect[0].pol == Polarity::License);
    CHECK(silent.expect[0].cat == Category("D"));
    CHECK(silent.expect[1].pol == Polarity::Select);

    const LexicalItem& maria = g.items[1];
    CHECK(maria.phon == "Maria");
    CHECK(maria.agr.find("per")->value == "3");
    CHECK(maria.agr.find("num")->value == "s");
    CHECK(maria.expect.empty());

    CHECK(g.lookup("Maria") == std::vector<int>{1});
    CHECK(g.lookup("nowhere").empty());
    CHECK(g.empties() == std::vector<int>{0});
    CHECK(g.start_items() == std::vector<int>{0});
}

TEST_CASE("homophones keep declaration order in lookup") {
    Grammar g = load_grammar("@start X\na :: X\na :: X =Y\nb :: Y\n");
    CHECK(g.lookup("a") == std::vector<int>{0, 1});
}

TEST_CASE("items may expect several categories") {
    Grammar g = load_grammar("@start C\nche :: C.rel, D\n");
    REQUIRE(g.items.size() == 1);
    REQUIRE(g.items[0].expected.size() == 2);
    CHECK(g.items[0].label() == Category("C.rel"));
    CHECK(g.items[0].expected[1] == Category("D"));
    // start resolution honours refinement: C.rel is a C
    CHECK(g.start_items() == std::vector<int>{0});
}

TEST_CASE("agr directives accept category lists and the memory flag") {
    Grammar g = load_grammar(
        "@start D\n@agr D,A { num, gen }\n@agr V.pp ^M { gen }\n"
        "la :: D { num.s } =A\nbella :: A\nvista :: V.pp { gen.f }\n");
    REQUIRE(g.params.agr.size() == 3);
    CHECK(g.params.agr[0].cat == Category("D"));
    CHECK_FALSE(g.params.agr[0].moved_only);
    CHECK(g.params.agr[1].cat == Category("A"));
    CHECK(g.params.agr[1].attrs == std::set<std::string>{"gen", "num"});
    CHECK(g.params.agr[2].cat == Category("V.pp"));
    CHECK(g.params.agr[2].moved_only);
}

TEST_CASE("the most refined agr declaration wins") {
    Grammar g = load_grammar(
        "@start V\n@agr V { per }\n@agr V.pp { gen }\nvisto :: V.pp\nvede :: V\nvisto_da :: V.pp.agent\n");
    const AgrEntry* e = g.params.resolve_agr(Category("V.pp"));
    REQUIRE(e != nullptr);
    CHECK(e->attrs == std::set<std::string>{"gen"});
    e = g.params.resolve_agr(Category("V"));
    REQUIRE(e != nullptr);
    CHECK(e->attrs == std::set<std::string>{"per"});
    // V.pp.agent has no entry of its own; the closest ancestor applies
    e = g.params.resolve_agr(Category("V.pp.agent"));
    REQUIRE(e != nullptr);
    CHECK(e->attrs == std::set<std::string>{"gen"});
    CHECK(g.params.resolve_agr(Category("D")) == nullptr);
}

TEST_CASE("loader rejects malformed input with the offending line") {
    auto line_of = [](const std::string& text) {
        try {
            load_grammar(text);
        } catch (const GrammarError& e) {
            return e.line();
        }
        return -1;
    };

    CHECK_THROWS_AS(load_grammar("Maria :: D\n"), GrammarError); // no @start
    CHECK(line_of("@start C\n@start D\n") == 2);              // duplicate
    CHECK(line_of("@start C\nx ::\n") == 2);                  // no expected categories
    CHECK(line_of("@start C\nx :: C ~D\n") == 2);             // bad polarity mark
    CHECK(line_of("@start C\nx :: C =D.\n") == 2);            // bad category
    CHECK(line_of("@start C\nx :: C { num.s\n") == 2);        // unterminated block
    CHECK(line_of("@start C\nx :: C { num.s, num.p }\n") == 2); // two values, one attribute
    CHECK(line_of("@start C\n@agr D { }\n") == 2);            // no attributes
    CHECK(line_of("@start C\n@agr D { num.s }\n") == 2);      // value in @agr
    CHECK(line_of("@start C\n@agr D { num }\n@agr D { gen }\n") == 3);
    CHECK(line_of("@start C\n@param memory stack\n") == 2);
    CHECK(line_of("@start C\n@param flavour mint\n") == 2);   // unknown key
    CHECK(line_of("@start C\n@param memory fifo\n@param memory fifo\n") == 3);
    CHECK(line_of("@start C\nx = C\n") == 2);                 // not an entry
}

TEST_CASE("ungoverned agreement attributes are warned about") {
    Grammar g = load_grammar("@start D\nla :: D { num.s }\n");
    REQUIRE(g.warnings.size() == 1);
    CHECK(g.warnings[0].find("num") != std::string::npos);

    Grammar ok = load_grammar("@start D\n@agr D { num }\nla :: D { num.s }\n");
    CHECK(ok.warnings.empty());
}

TEST_CASE("serialization round-trips") {
    Grammar g = load_grammar(kToy);
    Grammar again = load_grammar(serialize_grammar(g));
    CHECK(again.items == g.items);
    CHECK(again.params == g.params);
    // and the serializer is a fixed point
    CHECK(serialize_grammar(again) == serialize_grammar(g));
}

TEST_CASE("every shipped fixture loads cleanly") {
    for (const char* name :
         {"g24.emg", "g22.emg", "g25.emg", "g25_uncond.emg", "g26.emg",
          "g27.emg", "g27_off.emg", "g28.emg", "g28_off.emg", "g11.emg",
          "g11_hm.emg", "g_amb.emg", "g_island.emg", "g_pro.emg", "g_att.emg",
          "gdn.emg"}) {
        INFO(name);
        Grammar g = emg::test::fixture(name);
        CHECK(!g.items.empty());
        CHECK(g.warnings.empty());
        CHECK(!g.start_items().empty());
        Grammar again = load_grammar(serialize_grammar(g));
        CHECK(again.items == g.items);
        CHECK(again.params == g.params);
    }
}
