#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "overrank/qseries.hpp"

namespace overrank {

enum class Status { pass, fail, pole_skipped };

std::string to_string(Status s);

struct Discrepancy {
  Exp exponent = 0;
  std::string lhs;
  std::string rhs;
};

using ParamValue = std::variant<long, std::string>;

/// Outcome of one identity check. status is pass iff lhs - rhs vanishes on the compared window.
struct VerificationReport {
  std::string identity_id;
  std::vector<std::pair<std::string, ParamValue>> parameters;
  Status status = Status::fail;
  std::optional<Discrepancy> first_discrepancy;
  double elapsed_ms = 0.0;
  Exp order = 0;
  /// Free-form detail for humans (pole reason, rationality failure). Not serialized.
  std::string detail;

  bool passed() const noexcept { return status == Status::pass; }
};

/// Compares lhs and rhs coefficientwise below `order`. Fails if either side is known
/// to less than `order`.
VerificationReport compare_series(std::string id, const QSeries& lhs, const QSeries& rhs, Exp order);

/// Runs `body` (which returns a report), fills elapsed_ms, and converts PoleError into
/// pole_skipped and any other library Error into fail.
template <class Body>
VerificationReport timed_report(std::string id, Exp order, std::vector<std::pair<std::string, ParamValue>> params,
                                Body&& body);

/// Single-line human summary: "PASS id  verified to order N (12.3 ms)".
std::string summary_line(const VerificationReport& r);

/// JSON document: array of {identity_id, parameters, status, first_discrepancy, elapsed_ms, order}.
std::string reports_to_json(const std::vector<VerificationReport>& reports, int indent = 2);

}  // namespace overrank

#include "overrank/report_impl.hpp"
