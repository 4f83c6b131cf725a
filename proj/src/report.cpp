#include "overrank/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace overrank {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::pole_skipped:
      return "pole_skipped";
  }
  return "fail";
}

VerificationReport compare_series(std::string id, const QSeries& lhs, const QSeries& rhs, Exp order) {
  VerificationReport r;
  r.identity_id = std::move(id);
  r.order = order;
  const Exp window = std::min(lhs.prec(), rhs.prec());
  if (window < order) {
    r.status = Status::fail;
    r.first_discrepancy = Discrepancy{window, "O(q^" + std::to_string(lhs.prec()) + ")",
                                      "O(q^" + std::to_string(rhs.prec()) + ")"};
    r.detail = "insufficient precision";
    return r;
  }
  if (auto e = first_difference(lhs, rhs, order)) {
    r.status = Status::fail;
    r.first_discrepancy = Discrepancy{*e, lhs.coeff(*e).str(), rhs.coeff(*e).str()};
  } else {
    r.status = Status::pass;
  }
  return r;
}

std::string summary_line(const VerificationReport& r) {
  std::string s;
  switch (r.status) {
    case Status::pass:
      s = "PASS ";
      break;
    case Status::fail:
      s = "FAIL ";
      break;
    case Status::pole_skipped:
      s = "SKIP ";
      break;
  }
  s += r.identity_id;
  for (const auto& [k, v] : r.parameters) {
    s += " " + k + "=";
    s += std::holds_alternative<long>(v) ? std::to_string(std::get<long>(v)) : std::get<std::string>(v);
  }
  if (r.status == Status::pass) {
    s += "  verified to order " + std::to_string(r.order);
  } else if (r.first_discrepancy) {
    const auto& d = *r.first_discrepancy;
    s += "  first discrepancy at q^" + std::to_string(d.exponent) + ": lhs " + d.lhs + ", rhs " + d.rhs;
  }
  if (!r.detail.empty()) s += "  [" + r.detail + "]";
  char buf[32];
  std::snprintf(buf, sizeof buf, " (%.1f ms)", r.elapsed_ms);
  return s + buf;
}

std::string reports_to_json(const std::vector<VerificationReport>& reports, int indent) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.parameters) {
      if (std::holds_alternative<long>(v)) params[k] = std::get<long>(v);
      else params[k] = std::get<std::string>(v);
    }
    nlohmann::ordered_json item;
    item["identity_id"] = r.identity_id;
    item["parameters"] = params;
    item["status"] = to_string(r.status);
    if (r.first_discrepancy) {
      item["first_discrepancy"] = {{"exponent", r.first_discrepancy->exponent},
                                   {"lhs", r.first_discrepancy->lhs},
                                   {"rhs", r.first_discrepancy->rhs}};
    } else {
      item["first_discrepancy"] = nullptr;
    }
    item["elapsed_ms"] = r.elapsed_ms;
    item["order"] = r.order;
    doc.push_back(std::move(item));
  }
  return doc.dump(indent);
}

}  // namespace overrank
