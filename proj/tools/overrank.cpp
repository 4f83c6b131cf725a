#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "overrank/errors.hpp"
#include "overrank/expr.hpp"
#include "overrank/oracle.hpp"
#include "overrank/theorems.hpp"

using namespace overrank;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, evaluation = 3 };

nlohmann::ordered_json series_json(const QSeries& s) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (Exp e = s.min_exp(); e < s.prec(); ++e) {
    const CycloNum c = s.coeff(e);
    if (!c.is_zero()) terms.push_back({{"exponent", e}, {"coefficient", c.str()}});
  }
  return {{"series", s.str()}, {"precision", s.prec()}, {"terms", terms}};
}

void report_error(const Error& e, std::string_view input = {}) {
  std::cerr << "error: " << e.what();
  if (!e.context().empty()) std::cerr << "\n  while evaluating " << e.context();
  std::cerr << '\n';
  if (const auto* se = dynamic_cast<const SyntaxError*>(&e); se && !input.empty()) {
    std::size_t begin = 0;
    for (int l = 1; l < se->line(); ++l) begin = input.find('\n', begin) + 1;
    const std::size_t end = input.find('\n', begin);
    std::cerr << "  " << input.substr(begin, end == std::string_view::npos ? end : end - begin) << "\n  "
              << std::string(static_cast<std::size_t>(se->column() - 1), ' ') << "^\n";
  }
}

int run_verify(const std::string& target, std::optional<long> M, std::optional<long> a, std::optional<long> order,
               bool json, int threads) {
  std::vector<ReportJob> jobs;
  auto add = [&](std::vector<ReportJob> more) {
    jobs.insert(jobs.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  const Exp theorem_order = order.value_or(60);
  if (target == "thm1" || target == "all") add(theorem_jobs(RankKind::rank, M, a, theorem_order));
  if (target == "thm2" || target == "all") add(theorem_jobs(RankKind::m2, M, a, theorem_order));
  if (target == "section4" || target == "all")
    add(section4_jobs(order ? Section4Orders::uniform(*order) : Section4Orders{}));
  if (target == "lemmas" || target == "all") add(lemma_jobs(order ? LemmaOrders::uniform(*order) : LemmaOrders{}));

  const auto reports = run_jobs(jobs, threads);
  std::size_t passed = 0, skipped = 0, fails = 0;
  for (const auto& r : reports) {
    if (r.status == Status::pass) ++passed;
    else if (r.status == Status::pole_skipped) ++skipped;
    else ++fails;
    if (!json) std::cout << summary_line(r) << '\n';
    if (r.status == Status::fail) std::cerr << summary_line(r) << '\n';
  }
  if (json) std::cout << reports_to_json(reports) << '\n';
  else std::cout << passed << " passed, " << fails << " failed, " << skipped << " skipped at a pole\n";
  return fails == 0 ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-series and overpartition rank deviation identities"};
  app.require_subcommand(1);

  std::string text;
  long order = 60;
  bool json = false;
  auto* expand = app.add_subcommand("expand", "Expand an expression as a q-series");
  expand->add_option("expr", text, "Expression, e.g. \"J(2)^4/(J(1)^2*J(6))\"")->required();
  expand->add_option("--order", order, "Truncation order")->check(CLI::NonNegativeNumber);
  expand->add_flag("--json", json, "JSON output");

  long a = 0, M = 0;
  bool m2 = false;
  auto* dev = app.add_subcommand("dev", "Rank deviation D(a,M) or its M2-rank analogue");
  dev->add_option("--a", a, "Residue")->required();
  dev->add_option("--M", M, "Modulus")->required()->check(CLI::Range(2L, 1000L));
  dev->add_flag("--m2", m2, "Use the M2-rank");
  dev->add_option("--order", order, "Truncation order")->check(CLI::NonNegativeNumber);
  dev->add_flag("--json", json, "JSON output");

  std::string target;
  std::optional<long> vM, va, vorder;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* verify = app.add_subcommand("verify", "Check identities; exit status 0 iff none fails");
  verify->add_option("target", target, "What to verify")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "section4", "lemmas", "all"}));
  verify->add_option("--M", vM, "Restrict theorem checks to one modulus");
  verify->add_option("--a", va, "Restrict theorem checks to one residue");
  verify->add_option("--order", vorder, "Order for every check (defaults differ per identity)");
  verify->add_flag("--json", json, "JSON report");
  verify->add_option("--jobs", threads, "Worker threads")->check(CLI::PositiveNumber);

  int nmax = 0;
  auto* oracle = app.add_subcommand("oracle", "Dump the rank table built by enumeration");
  oracle->add_option("--nmax", nmax, "Largest n")->required()->check(CLI::Range(0, 60));
  oracle->add_flag("--m2", m2, "Use the M2-rank");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*expand) {
      const ExprPtr e = parse(text);
      const QSeries s = eval(*e, order);
      if (json) {
        nlohmann::ordered_json doc = {{"expression", print(*e)}, {"order", order}};
        doc.update(series_json(s));
        std::cout << doc.dump(2) << '\n';
      } else {
        std::cout << s.str() << '\n';
      }
      return ok;
    }
    if (*dev) {
      const QSeries s = deviation(a, M, m2 ? RankKind::m2 : RankKind::rank, order);
      if (json) {
        nlohmann::ordered_json doc = {{"a", a}, {"M", M}, {"rank", m2 ? "m2" : "rank"}, {"order", order}};
        doc.update(series_json(s));
        std::cout << doc.dump(2) << '\n';
      } else {
        std::cout << s.str() << '\n';
      }
      return ok;
    }
    if (*verify) return run_verify(target, vM, va, vorder, json, threads);
    if (*oracle) {
      std::cout << RankTable::by_counting(m2 ? RankKind::m2 : RankKind::rank, nmax).to_json() << '\n';
      return ok;
    }
  } catch (const SyntaxError& e) {
    report_error(e, text);
    return usage;
  } catch (const RangeError& e) {
    report_error(e);
    return usage;
  } catch (const Error& e) {
    report_error(e);
    return evaluation;
  }
  return ok;
}
