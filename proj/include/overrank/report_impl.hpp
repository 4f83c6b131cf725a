#pragma once

#include "overrank/errors.hpp"

namespace overrank {

template <class Body>
VerificationReport timed_report(std::string id, Exp order, std::vector<std::pair<std::string, ParamValue>> params,
                                Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  try {
    r = body();
  } catch (const PoleError& e) {
    r = VerificationReport{};
    r.status = Status::pole_skipped;
    r.detail = e.what();
  } catch (const Error& e) {
    r = VerificationReport{};
    r.status = Status::fail;
    r.detail = e.what();
  }
  r.identity_id = std::move(id);
  r.order = order;
  r.parameters = std::move(params);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace overrank
