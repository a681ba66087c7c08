#include "tradeport/sitc.hpp"

#include "tradeport/errors.hpp"

namespace tradeport::sitc {

SitcCode SitcCode::parse(std::string_view text) {
  if (text.empty()) {
    throw ParseError("SITC code is empty");
  }
  if (text.size() > 5) {
    throw ParseError("SITC code '" + std::string(text) +
                     "' is longer than 5 digits");
  }
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw ParseError("SITC code '" + std::string(text) +
                       "' contains non-digit character '" +
                       std::string(1, ch) + "'");
    }
  }
  return SitcCode(std::string(text));
}

SitcCode SitcCode::truncated(int level) const {
  if (level < 1 || level > this->level()) {
    throw ConfigError("cannot truncate SITC code '" + digits_ + "' to level " +
                      std::to_string(level));
  }
  return SitcCode(digits_.substr(0, static_cast<std::size_t>(level)));
}

SitcCode parse_sitc(std::string_view text) { return SitcCode::parse(text); }

SitcCode truncate(const SitcCode& code, int level) {
  return code.truncated(level);
}

const std::array<std::string_view, 10>& level1_names() {
  static const std::array<std::string_view, 10> names = {
      "Food and live animals",
      "Beverages and tobacco",
      "Crude materials",
      "Mineral fuels",
      "Animal and vegetable oils, fats and waxes",
      "Chemicals",
      "Manufactured goods classified by materials",
      "Machinery and transport equipment",
      "Miscellaneous manufactured articles",
      "etc",
  };
  return names;
}

const SectorPartition& SectorPartition::standard() {
  static const SectorPartition partition = [] {
    SectorPartition p;
    for (int digit = 0; digit <= 4; ++digit) {
      p.in_primary[static_cast<std::size_t>(digit)] = true;
    }
    return p;
  }();
  return partition;
}

bool SectorPartition::contains(Sector sector, char level1_digit) const {
  if (level1_digit < '0' || level1_digit > '9') {
    throw ConfigError("sector lookup needs a level-1 digit, got '" +
                      std::string(1, level1_digit) + "'");
  }
  const bool primary = in_primary[static_cast<std::size_t>(level1_digit - '0')];
  return sector == Sector::primary ? primary : !primary;
}

}  // namespace tradeport::sitc
