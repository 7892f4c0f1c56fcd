#include "npi/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "npi/errors.hpp"

namespace npi {
namespace {

bool leap_year(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap_year(y)) return 29;
    return d[m - 1];
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

Date Date::parse(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3 ||
        m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) {
        throw DataError("invalid ISO-8601 date: '" + text + "'");
    }
    return Date{y, m, d};
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

Date Date::next_day() const {
    Date d = *this;
    if (++d.day > days_in_month(d.year, d.month)) {
        d.day = 1;
        if (++d.month > 12) {
            d.month = 1;
            ++d.year;
        }
    }
    return d;
}

PriceSeries::PriceSeries(std::vector<Observation> observations)
    : observations_(std::move(observations)) {
    if (observations_.size() < 2) {
        throw DataError("price series needs at least 2 observations, got " +
                        std::to_string(observations_.size()));
    }
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        if (!(observations_[i].price > 0.0)) {
            throw DataError("non-positive price " + std::to_string(observations_[i].price) +
                            " at " + observations_[i].date.to_string());
        }
        if (i > 0 && !(observations_[i - 1].date < observations_[i].date)) {
            throw DataError("dates not strictly increasing at " +
                            observations_[i].date.to_string());
        }
    }
}

PriceSeries PriceSeries::slice(const Date& first, const Date& last) const {
    std::vector<Observation> out;
    for (const auto& obs : observations_) {
        if (first <= obs.date && obs.date <= last) out.push_back(obs);
    }
    if (out.size() < 2) {
        throw DataError("window [" + first.to_string() + ", " + last.to_string() +
                        "] selects fewer than 2 observations");
    }
    return PriceSeries(std::move(out));
}

PriceSeries load_price_series(std::istream& source, const ColumnMap& columns) {
    std::string line;
    if (!std::getline(source, line)) throw DataError("empty CSV: missing header row");
    const auto header = split_csv_row(line);

    auto find_column = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (trim(header[i]) == name) return i;
        }
        throw DataError("CSV header has no column '" + name + "'");
    };
    const std::size_t date_col = find_column(columns.date);
    const std::size_t price_col = find_column(columns.price);

    std::vector<Observation> rows;
    std::size_t row_number = 1; // header is row 1
    while (std::getline(source, line)) {
        ++row_number;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() <= std::max(date_col, price_col)) {
            throw DataError("row " + std::to_string(row_number) + ": too few fields");
        }
        Observation obs;
        try {
            obs.date = Date::parse(trim(fields[date_col]));
        } catch (const DataError& e) {
            throw DataError("row " + std::to_string(row_number) + ": " + e.what());
        }
        const std::string price_text = trim(fields[price_col]);
        char* end = nullptr;
        obs.price = std::strtod(price_text.c_str(), &end);
        if (end == price_text.c_str() || *end != '\0' || !std::isfinite(obs.price)) {
            throw DataError("row " + std::to_string(row_number) + ": unparsable price '" +
                            price_text + "'");
        }
        if (!(obs.price > 0.0)) {
            throw DataError("row " + std::to_string(row_number) + ": non-positive price " +
                            price_text);
        }
        rows.push_back(obs);
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Observation& a, const Observation& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i - 1].date == rows[i].date) {
            throw DataError("duplicate date " + rows[i].date.to_string());
        }
    }
    return PriceSeries(std::move(rows));
}

PriceSeries load_price_series_file(const std::string& path, const ColumnMap& columns) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open CSV file: " + path);
    return load_price_series(in, columns);
}

std::vector<double> log_returns(const PriceSeries& series) {
    const auto& obs = series.observations();
    std::vector<double> out;
    out.reserve(obs.size() - 1);
    for (std::size_t t = 0; t + 1 < obs.size(); ++t) {
        out.push_back(std::log(obs[t + 1].price / obs[t].price));
    }
    return out;
}

ReturnLadder::ReturnLadder(std::vector<double> sorted_returns, double lower_boundary,
                           double upper_boundary)
    : sorted_returns_(std::move(sorted_returns)),
      lower_boundary_(lower_boundary),
      upper_boundary_(upper_boundary) {
    if (sorted_returns_.empty()) throw DataError("ladder needs at least one observed return");
    if (!std::is_sorted(sorted_returns_.begin(), sorted_returns_.end())) {
        throw DataError("ladder returns are not sorted");
    }
    if (lower_boundary_ > sorted_returns_.front() || sorted_returns_.back() > upper_boundary_) {
        throw DataError("boundary bracket violated: [" + std::to_string(lower_boundary_) + ", " +
                        std::to_string(upper_boundary_) + "] does not contain returns [" +
                        std::to_string(sorted_returns_.front()) + ", " +
                        std::to_string(sorted_returns_.back()) + "]");
    }
}

double ReturnLadder::endpoint(std::size_t j) const {
    if (j == 0) return lower_boundary_;
    if (j == sorted_returns_.size() + 1) return upper_boundary_;
    return sorted_returns_.at(j - 1);
}

ReturnLadder build_ladder(const PriceSeries& series, const WindowPolicy& policy) {
    const PriceSeries sampled = policy.sampling_window
        ? series.slice(policy.sampling_window->start, policy.sampling_window->end)
        : series;
    std::vector<double> rungs = log_returns(sampled);
    std::sort(rungs.begin(), rungs.end());

    double lo, hi;
    if (policy.boundary_override) {
        lo = policy.boundary_override->first;
        hi = policy.boundary_override->second;
    } else {
        const PriceSeries boundary_series = policy.boundary_window
            ? series.slice(policy.boundary_window->start, policy.boundary_window->end)
            : series;
        const auto boundary_returns = log_returns(boundary_series);
        const auto [mn, mx] = std::minmax_element(boundary_returns.begin(), boundary_returns.end());
        lo = *mn;
        hi = *mx;
    }
    return ReturnLadder(std::move(rungs), lo, hi);
}

void export_ladder_csv(const ReturnLadder& ladder, std::ostream& out) {
    char buf[64];
    auto row = [&](const char* tag, double value) {
        std::snprintf(buf, sizeof(buf), "%s,%.9g\n", tag, value);
        out << buf;
    };
    out << "tag,return\n";
    row("r0", ladder.lower_boundary());
    for (std::size_t i = 0; i < ladder.rung_count(); ++i) {
        std::snprintf(buf, sizeof(buf), "r%zu,%.9g\n", i + 1, ladder.sorted_returns()[i]);
        out << buf;
    }
    row("rn1", ladder.upper_boundary());
}

} // namespace npi
