#pragma once

#include <compare>
#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace fundmob {

/// Normalized country code. An empty code is the Unknown country.
class Country {
public:
    Country() = default;
    explicit Country(std::string code) : code_(std::move(code)) {}

    static Country unknown() { return Country{}; }
    static Country mainland_china() { return Country{"CN"}; }

    bool is_unknown() const { return code_.empty(); }
    bool is_mainland_china() const { return code_ == "CN"; }
    const std::string& code() const { return code_; }

    auto operator<=>(const Country&) const = default;

private:
    std::string code_;
};

/// Closed country vocabulary plus raw-name aliases ("Peoples R China" -> CN).
/// Hong Kong, Macau and Taiwan keep their own codes.
class CountryTable {
public:
    /// Reads "raw_name<TAB>code" lines; blank lines and '#' comments ignored.
    static CountryTable load(std::istream& in);
    static CountryTable load_file(const std::filesystem::path& path);
    /// Small built-in table used when no alias file is given.
    static CountryTable builtin();

    void add(std::string_view raw_name, std::string_view code);

    /// Maps a raw country string (alias or bare code) to its code; anything
    /// outside the vocabulary is Unknown.
    Country normalize(std::string_view raw) const;

    bool contains_code(std::string_view code) const { return codes_.count(std::string(code)) > 0; }
    const std::set<std::string>& codes() const { return codes_; }

private:
    std::map<std::string, std::string> aliases_;  // folded raw name -> code
    std::set<std::string> codes_;
};

}  // namespace fundmob
