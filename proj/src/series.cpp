#include "skewgim/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skewgim/csv.hpp"

namespace skewgim {

namespace {

double parse_value(const std::string& s, std::size_t row,
                   const std::string& path) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(path + ": row " + std::to_string(row) +
                             ": unparseable value '" + s + "'");
  }
}

Date parse_date(const std::string& s, std::size_t row,
                const std::string& path) {
  try {
    return Date::parse(s);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": row " + std::to_string(row) + ": " +
                             e.what());
  }
}

template <typename Push>
void load_two_columns(const std::string& path, const ColumnSchema& schema,
                      Push&& push) {
  const CsvTable t = read_csv(path);
  const std::size_t ci_date = [&] {
    try {
      return t.column(schema.date_column);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ": missing column '" +
                               schema.date_column + "'");
    }
  }();
  const std::size_t ci_val = [&] {
    try {
      return t.column(schema.value_column);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ": missing column '" +
                               schema.value_column + "'");
    }
  }();
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const std::size_t row = i + 2;  // 1-based, after the header
    const auto& r = t.rows[i];
    if (r.size() <= std::max(ci_date, ci_val)) {
      throw std::runtime_error(path + ": row " + std::to_string(row) +
                               ": too few fields");
    }
    push(parse_date(r[ci_date], row, path), parse_value(r[ci_val], row, path),
         row);
  }
}

}  // namespace

const char* day_count_name(DayCount dc) {
  switch (dc) {
    case DayCount::Act365: return "act365";
    case DayCount::Act360: return "act360";
    case DayCount::None: return "none";
  }
  return "?";
}

DayCount day_count_from_name(const std::string& name) {
  if (name == "act365") return DayCount::Act365;
  if (name == "act360") return DayCount::Act360;
  if (name == "none") return DayCount::None;
  throw std::invalid_argument("unknown day-count convention: " + name);
}

void PriceSeries::validate() const {
  if (dates.size() != values.size()) {
    throw std::invalid_argument("price series: dates/values length mismatch");
  }
  if (dates.size() < 2) {
    throw std::invalid_argument("price series: needs at least 2 observations");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw std::invalid_argument("price series: non-positive price at " +
                                  dates[i].to_string());
    }
    if (i > 0 && !(dates[i - 1] < dates[i])) {
      throw std::invalid_argument("price series: dates not increasing at " +
                                  dates[i].to_string());
    }
  }
}

void RiskFreeSeries::validate() const {
  if (dates.size() != annualized_rates.size()) {
    throw std::invalid_argument(
        "risk-free series: dates/rates length mismatch");
  }
  if (dates.empty()) {
    throw std::invalid_argument("risk-free series: empty");
  }
  for (std::size_t i = 0; i < annualized_rates.size(); ++i) {
    if (!std::isfinite(annualized_rates[i])) {
      throw std::invalid_argument("risk-free series: non-finite rate at " +
                                  dates[i].to_string());
    }
    if (i > 0 && !(dates[i - 1] < dates[i])) {
      throw std::invalid_argument(
          "risk-free series: dates not increasing at " +
          dates[i].to_string());
    }
  }
}

std::optional<double> RiskFreeSeries::rate_at(Date when) const {
  auto it = std::upper_bound(dates.begin(), dates.end(), when);
  if (it == dates.begin()) return std::nullopt;
  return annualized_rates[static_cast<std::size_t>(it - dates.begin()) - 1];
}

void ExcessReturnSeries::validate() const {
  if (dates.size() != values.size()) {
    throw std::invalid_argument(
        "excess-return series: dates/values length mismatch");
  }
  if (values.empty()) {
    throw std::invalid_argument("excess-return series: empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("excess-return series: non-finite value at " +
                                  dates[i].to_string());
    }
    if (i > 0 && !(dates[i - 1] < dates[i])) {
      throw std::invalid_argument(
          "excess-return series: dates not increasing at " +
          dates[i].to_string());
    }
  }
}

PriceSeries load_price_series(const std::string& path,
                              const ColumnSchema& schema) {
  PriceSeries s;
  load_two_columns(path, schema,
                   [&](Date d, double v, std::size_t row) {
                     if (!(v > 0.0)) {
                       throw std::runtime_error(
                           path + ": row " + std::to_string(row) +
                           ": non-positive price " + format_double(v));
                     }
                     if (!s.dates.empty() && !(s.dates.back() < d)) {
                       throw std::runtime_error(
                           path + ": row " + std::to_string(row) +
                           ": dates not strictly increasing");
                     }
                     s.dates.push_back(d);
                     s.values.push_back(v);
                   });
  s.validate();
  return s;
}

RiskFreeSeries load_riskfree_series(const std::string& path,
                                    const ColumnSchema& schema) {
  RiskFreeSeries s;
  load_two_columns(path, schema,
                   [&](Date d, double v, std::size_t row) {
                     if (!s.dates.empty() && !(s.dates.back() < d)) {
                       throw std::runtime_error(
                           path + ": row " + std::to_string(row) +
                           ": dates not strictly increasing");
                     }
                     s.dates.push_back(d);
                     s.annualized_rates.push_back(v);
                   });
  s.validate();
  return s;
}

ExcessReturnSeries compute_excess_returns(const PriceSeries& prices,
                                          const RiskFreeSeries* riskfree,
                                          DayCount convention) {
  prices.validate();
  if (riskfree) riskfree->validate();

  double denom = 1.0;
  switch (convention) {
    case DayCount::Act365: denom = 365.0; break;
    case DayCount::Act360: denom = 360.0; break;
    case DayCount::None: denom = 1.0; break;
  }

  ExcessReturnSeries out;
  const std::size_t n = prices.values.size();
  out.dates.reserve(n - 1);
  out.values.reserve(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    const Date d = prices.dates[j];
    const double r = 100.0 * std::log(prices.values[j] / prices.values[j - 1]);
    double rstar = 0.0;
    if (riskfree) {
      const auto quote = riskfree->rate_at(d);
      if (!quote) {
        throw std::runtime_error(
            "excess returns: no risk-free quote at or before " +
            d.to_string());
      }
      rstar = *quote / denom;
    }
    out.dates.push_back(d);
    out.values.push_back(r - rstar);
  }
  out.meta.day_count = riskfree ? day_count_name(convention) : "none";
  out.validate();
  return out;
}

void write_excess_returns_csv(const std::string& path,
                              const ExcessReturnSeries& series,
                              const std::vector<std::string>& comments) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(series.values.size());
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    rows.push_back(
        {series.dates[i].to_string(), format_double(series.values[i])});
  }
  write_csv(path, {"date", "excess_return"}, rows, comments);
}

ExcessReturnSeries load_excess_returns_csv(const std::string& path) {
  ExcessReturnSeries s;
  load_two_columns(path, ColumnSchema{"date", "excess_return"},
                   [&](Date d, double v, std::size_t) {
                     s.dates.push_back(d);
                     s.values.push_back(v);
                   });
  s.validate();
  return s;
}

}  // namespace skewgim
