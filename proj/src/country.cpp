#include "fundmob/country.hpp"

#include "fundmob/text.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fundmob {

namespace {

std::string alias_key(std::string_view raw) { return text::normalize(raw); }

}  // namespace

void CountryTable::add(std::string_view raw_name, std::string_view code) {
    std::string c = text::trim(code);
    if (c.empty()) throw std::invalid_argument("country alias with empty code");
    codes_.insert(c);
    aliases_[alias_key(raw_name)] = c;
    aliases_[alias_key(c)] = c;
}

CountryTable CountryTable::load(std::istream& in) {
    CountryTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = text::trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = text::split(t, '\t');
        if (fields.size() != 2 || text::trim(fields[0]).empty()) {
            throw std::runtime_error("country alias line " + std::to_string(lineno) +
                                     ": expected raw_name<TAB>code");
        }
        table.add(text::trim(fields[0]), fields[1]);
    }
    return table;
}

CountryTable CountryTable::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open country alias file: " + path.string());
    return load(in);
}

CountryTable CountryTable::builtin() {
    static const char* const kTable =
        "Peoples R China\tCN\n"
        "China\tCN\n"
        "Hong Kong\tHK\n"
        "Macau\tMO\n"
        "Macao\tMO\n"
        "Taiwan\tTW\n"
        "USA\tUS\n"
        "United States\tUS\n"
        "England\tGB\n"
        "Scotland\tGB\n"
        "Wales\tGB\n"
        "North Ireland\tGB\n"
        "United Kingdom\tGB\n"
        "Germany\tDE\n"
        "France\tFR\n"
        "Netherlands\tNL\n"
        "Australia\tAU\n"
        "Canada\tCA\n"
        "Japan\tJP\n"
        "Sweden\tSE\n"
        "Belgium\tBE\n"
        "Italy\tIT\n"
        "Spain\tES\n"
        "Switzerland\tCH\n"
        "Denmark\tDK\n"
        "Singapore\tSG\n"
        "South Korea\tKR\n";
    std::istringstream in(kTable);
    return load(in);
}

Country CountryTable::normalize(std::string_view raw) const {
    auto it = aliases_.find(alias_key(raw));
    if (it == aliases_.end()) return Country::unknown();
    return Country{it->second};
}

}  // namespace fundmob
