#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>

namespace tradeport::sitc {

// A validated SITC Rev. 2 commodity code: one to five decimal digits, kept
// as a digit string so that leading zeros stay significant ("07" != "7").
class SitcCode {
 public:
  static SitcCode parse(std::string_view text);

  const std::string& digits() const { return digits_; }
  int level() const { return static_cast<int>(digits_.size()); }
  char first_digit() const { return digits_.front(); }

  // Prefix of the given length; truncating to the own level is the identity.
  SitcCode truncated(int level) const;

  auto operator<=>(const SitcCode&) const = default;

 private:
  explicit SitcCode(std::string digits) : digits_(std::move(digits)) {}
  std::string digits_;
};

SitcCode parse_sitc(std::string_view text);
SitcCode truncate(const SitcCode& code, int level);

// Descriptions of the ten level-1 categories, indexed by digit value.
const std::array<std::string_view, 10>& level1_names();

enum class Sector { primary, manufacturing };

// Partition of the ten level-1 categories into the primary sector (digits
// 0-4, raw materials) and the manufacturing sector (digits 5-9, including
// the residual category 9). Stored as a membership mask so the two sets are
// disjoint and cover all ten digits by construction.
struct SectorPartition {
  std::array<bool, 10> in_primary{};

  static const SectorPartition& standard();
  bool contains(Sector sector, char level1_digit) const;
};

}  // namespace tradeport::sitc
