#include <string>

#include "sle/coefficients.hpp"
#include "sle/errors.hpp"

namespace sle {

nlohmann::ordered_json to_json(const CoefficientTable& table) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (int i = 1; i <= table.K(); ++i) {
    for (int j = table.j_min(); j <= table.j_max(i); ++j) {
      const Rational& c = table.at(i, j);
      entries.push_back({{"i", i},
                         {"j", j},
                         {"num", c.numerator().get_str(10)},
                         {"den", c.denominator().get_str(10)}});
    }
  }
  return {{"K", table.K()}, {"N", table.N()}, {"entries", std::move(entries)}};
}

CoefficientTable table_from_json(const nlohmann::ordered_json& doc) {
  try {
    CoefficientTable table(doc.at("K").get<int>(), doc.at("N").get<int>());
    for (const auto& entry : doc.at("entries")) {
      const int i = entry.at("i").get<int>();
      const int j = entry.at("j").get<int>();
      if (!table.in_bounds(i, j)) {
        throw DomainError("coefficient entry (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") outside index bounds");
      }
      table.set(i, j,
                Rational::from_strings(entry.at("num").get<std::string>(),
                                       entry.at("den").get<std::string>()));
    }
    return table;
  } catch (const nlohmann::ordered_json::exception& e) {
    throw DomainError(std::string("malformed coefficient JSON: ") + e.what());
  }
}

}  // namespace sle
