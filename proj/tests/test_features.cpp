#include "doctest.h"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emg/features.hpp"

using namespace emg;

namespace {

AgrFeature feat(const std::string& spec) {
    auto dot = spec.find('.');
    if (dot == std::string::npos)
        return {spec, std::nullopt};
    return {spec.substr(0, dot), spec.substr(dot + 1)};
}

AgrSet agr(const std::vector<std::string>& specs) {
    AgrSet s;
    for (const auto& sp : specs)
        s.put(feat(sp));
    return s;
}

// Reference implementation, written independently of AgrSet's internals:
// collect per-attribute values into a map and reject any attribute that
// ends up with two distinct values.
std::optional<AgrSet> naive_unify(const AgrSet& a, const AgrSet& b) {
    std::map<std::string, std::optional<std::string>> merged;
    for (const AgrSet* side : {&a, &b}) {
        for (const auto& f : side->items()) {
            auto it = merged.find(f.attr);
            if (it == merged.end()) {
                merged[f.attr] = f.value;
            } else if (!it->second) {
                it->second = f.value;
            } else if (f.value && *f.value != *it->second) {
                return std::nullopt;
            }
        }
    }
    AgrSet out;
    for (const auto& [attr, value] : merged)
        out.put({attr, value});
    return out;
}

} // namespace

TEST_CASE("agreement sets keep one feature per attribute, most specific") {
    AgrSet s;
    s.put(feat("num"));
    CHECK(s.size() == 1);
    s.put(feat("num.pl"));
    CHECK(s.size() == 1);
    CHECK(s.find("num")->value == "pl");
    s.put(feat("num")); // bare never downgrades a valued feature
    CHECK(s.find("num")->value == "pl");
    s.put(feat("gen.f"));
    CHECK(s.size() == 2);
    CHECK(s.str() == "{gen.f, num.pl}"); // sorted by attribute
}

TEST_CASE("unification of bare and valued attributes") {
    auto r = unify(agr({"num"}), agr({"num.pl"}));
    REQUIRE(r.has_value());
    CHECK(*r == agr({"num.pl"}));
}

TEST_CASE("unification with an empty side") {
    auto r = unify(agr({}), agr({"num.pl"}));
    REQUIRE(r.has_value());
    CHECK(*r == agr({"num.pl"}));
}

TEST_CASE("unification unions disjoint attributes") {
    auto r = unify(agr({"gen.f"}), agr({"num.pl"}));
    REQUIRE(r.has_value());
    CHECK(*r == agr({"gen.f", "num.pl"}));
}

TEST_CASE("unification fails on a value clash") {
    auto r = unify(agr({"gen.f", "num.sg"}), agr({"num.pl"}));
    CHECK_FALSE(r.has_value());
}

TEST_CASE("unify agrees with the reference implementation everywhere") {
    // exhaustive over two attributes with three states each
    // (absent, bare, one of two values)
    const std::vector<std::optional<std::string>> states = {
        std::nullopt, std::make_optional<std::string>(""),
        std::make_optional<std::string>("1"), std::make_optional<std::string>("2")};
    auto build = [&](int a_state, int b_state) {
        AgrSet s;
        if (states[a_state]) {
            if (states[a_state]->empty())
                s.put({"a", std::nullopt});
            else
                s.put({"a", states[a_state]});
        }
        if (states[b_state]) {
            if (states[b_state]->empty())
                s.put({"b", std::nullopt});
            else
                s.put({"b", states[b_state]});
        }
        return s;
    };
    int clashes = 0;
    for (int i = 0; i < 16; i++) {
        for (int j = 0; j < 16; j++) {
            AgrSet x = build(i / 4, i % 4);
            AgrSet y = build(j / 4, j % 4);
            auto got = unify(x, y);
            auto want = naive_unify(x, y);
            CHECK(got.has_value() == want.has_value());
            if (got && want)
                CHECK(*got == *want);
            if (!want)
                clashes++;
        }
    }
    CHECK(clashes > 0); // the sweep exercised the failure side too
}

TEST_CASE("unification is commutative and idempotent") {
    const std::vector<AgrSet> sets = {
        agr({}), agr({"num"}), agr({"num.pl"}), agr({"num.sg"}),
        agr({"gen.f"}), agr({"gen.f", "num.pl"})};
    for (const auto& x : sets) {
        auto self = unify(x, x);
        REQUIRE(self.has_value());
        CHECK(*self == x);
        for (const auto& y : sets) {
            auto xy = unify(x, y);
            auto yx = unify(y, x);
            CHECK(xy.has_value() == yx.has_value());
            if (xy && yx)
                CHECK(*xy == *yx);
        }
    }
}

TEST_CASE("restricted unification only touches governed attributes") {
    AgrSet a = agr({"num.sg", "gen.f"});
    AgrSet b = agr({"num", "gen.m"});

    SUBCASE("governed attribute flows to both sides") {
        auto r = unify_restricted(a, b, {"num"});
        REQUIRE(r.has_value());
        CHECK(r->first.find("num")->value == "sg");
        CHECK(r->second.find("num")->value == "sg"); // written back
        CHECK(r->first.find("gen")->value == "f");   // untouched clash
        CHECK(r->second.find("gen")->value == "m");
    }

    SUBCASE("clash outside the governed set is invisible") {
        auto r = unify_restricted(a, b, {"num"});
        CHECK(r.has_value());
    }

    SUBCASE("clash inside the governed set fails") {
        auto r = unify_restricted(a, b, {"gen"});
        CHECK_FALSE(r.has_value());
    }

    SUBCASE("attribute absent from one side is copied over") {
        auto r = unify_restricted(agr({"per.3"}), agr({}), {"per"});
        REQUIRE(r.has_value());
        CHECK(r->second.find("per")->value == "3");
    }
}

TEST_CASE("expect feature spelling") {
    ExpectFeature sel{Polarity::Select, Category("V.pp"), 0};
    ExpectFeature lic{Polarity::License, Category("D"), 0};
    CHECK(sel.str() == "=V.pp");
    CHECK(lic.str() == "+D");
    CHECK(sel == ExpectFeature{Polarity::Select, Category("V.pp"), 3});
    CHECK_FALSE(sel == lic);
}
