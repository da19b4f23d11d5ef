#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewgim/dates.hpp"

namespace skewgim {

enum class DayCount {
  Act365,  // per-day rate = annualized percent / 365 (default)
  Act360,  // per-day rate = annualized percent / 360
  None,    // rates are already per-day percentages
};

const char* day_count_name(DayCount dc);
DayCount day_count_from_name(const std::string& name);

struct ColumnSchema {
  std::string date_column = "date";
  std::string value_column = "value";
};

// Strictly positive index/price levels on strictly increasing dates.
struct PriceSeries {
  std::vector<Date> dates;
  std::vector<double> values;

  void validate() const;  // throws std::invalid_argument
};

// Annualized percentage rates (or per-day when DayCount::None is used).
struct RiskFreeSeries {
  std::vector<Date> dates;
  std::vector<double> annualized_rates;

  void validate() const;

  // last quote at or before `when` (last observation carried forward);
  // empty when `when` precedes the first quote
  std::optional<double> rate_at(Date when) const;
};

struct SeriesMeta {
  std::string price_source;
  std::string riskfree_source;  // empty when r* = 0
  std::string day_count;
};

// Daily excess returns in percentage points, y_j = 100 ln(x_j/x_{j-1}) - r*_j.
struct ExcessReturnSeries {
  std::vector<Date> dates;
  std::vector<double> values;
  SeriesMeta meta;

  void validate() const;
};

// CSV ingestion. Any malformed row (unparseable date or value), non-positive
// price, or out-of-order date is rejected with its 1-based row number.
PriceSeries load_price_series(const std::string& path,
                              const ColumnSchema& schema = {});
RiskFreeSeries load_riskfree_series(const std::string& path,
                                    const ColumnSchema& schema = {});

// y_j = 100 ln(x_j/x_{j-1}) - r*_j with r*_j the per-day rate implied by the
// convention; riskfree == nullptr is the r* = 0 case. The risk-free quote
// applied at return date j is the most recent one at or before j; a return
// date before the first quote is a date-alignment error.
ExcessReturnSeries compute_excess_returns(const PriceSeries& prices,
                                          const RiskFreeSeries* riskfree,
                                          DayCount convention);

// (date, excess_return) CSV round trip for result artifacts.
void write_excess_returns_csv(const std::string& path,
                              const ExcessReturnSeries& series,
                              const std::vector<std::string>& comments = {});
ExcessReturnSeries load_excess_returns_csv(const std::string& path);

}  // namespace skewgim
