#include "fundmob/country.hpp"
#include "fundmob/text.hpp"

#include <doctest.h>

#include <sstream>

using namespace fundmob;

TEST_CASE("normalize folds case, strips diacritics and collapses whitespace") {
    CHECK(text::normalize("  Müller,\t  JOSÉ ") == "muller, jose");
    CHECK(text::normalize("Zhi‐Chao") == "zhi-chao");
    CHECK(text::normalize("O’Brien") == "o'brien");
    CHECK(text::normalize("") == "");
    CHECK(text::normalize("ﬁeld") == "field");  // ligature decomposes under NFKD
}

TEST_CASE("normalize is idempotent") {
    for (const char* s : {"Ångström  Lab", "Peoples R China", "X.-H. Li", "Straße", "ČEŠKÝ Krumlov"}) {
        const std::string once = text::normalize(s);
        CHECK(text::normalize(once) == once);
    }
}

TEST_CASE("comparison tokens strip edge punctuation and possessives") {
    CHECK(text::comparison_tokens("Long Chen's scholarship (CSC).") ==
          std::vector<std::string>{"long", "chen", "scholarship", "csc"});
    CHECK(text::comparison_tokens("C.L. and Li, X.-H.") == std::vector<std::string>{"c.l", "and", "li", "x.-h"});
    CHECK(text::comparison_tokens("").empty());
}

TEST_CASE("token runs match whole tokens only") {
    const auto hay = text::comparison_tokens("Dr. Clark and CL thank the council");
    CHECK(text::contains_token_run(hay, {"cl"}));
    CHECK(text::contains_token_run(hay, {"thank", "the"}));
    CHECK_FALSE(text::contains_token_run(hay, {"cla"}));
    CHECK_FALSE(text::contains_token_run(hay, {"the", "thank"}));
    CHECK_FALSE(text::contains_token_run(hay, {}));
}

TEST_CASE("split keeps empty fields") {
    CHECK(text::split("a\t\tb", '\t') == std::vector<std::string>{"a", "", "b"});
    CHECK(text::split("", '\t') == std::vector<std::string>{""});
}

TEST_CASE("country table keeps Hong Kong, Macau and Taiwan apart from mainland China") {
    std::istringstream in("# raw\tcode\nPeoples R China\tCN\nHong Kong\tHK\nTaiwan\tTW\nMacau\tMO\nUSA\tUS\n");
    const CountryTable t = CountryTable::load(in);
    CHECK(t.normalize("peoples r  china").is_mainland_china());
    CHECK(t.normalize("Hong Kong").code() == "HK");
    CHECK_FALSE(t.normalize("Hong Kong").is_mainland_china());
    CHECK(t.normalize("Taiwan").code() == "TW");
    CHECK(t.normalize("Macau").code() == "MO");
    CHECK(t.normalize("US").code() == "US");
    CHECK(t.normalize("Atlantis").is_unknown());
    CHECK(t.normalize("").is_unknown());
}

TEST_CASE("builtin country table resolves common aliases") {
    const CountryTable t = CountryTable::builtin();
    CHECK(t.normalize("Peoples R China").is_mainland_china());
    CHECK(t.normalize("Germany").code() == "DE");
}
