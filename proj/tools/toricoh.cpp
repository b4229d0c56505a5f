// Command-line front end: exact sheaf cohomology on rational ruled toric
// surfaces and monodromy invariants of cyclic branched coverings.
//
// Exit codes: 0 success, 2 invalid input, 3 internal cross-check failure.

#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <toricoh/toricoh.hpp>

namespace {

using namespace toricoh;
namespace tio = toricoh::io;

struct SurfaceOpts {
  std::string d1, d2, n1, n2, r;
};

void add_surface_opts(CLI::App* sub, SurfaceOpts& s) {
  sub->add_option("--d1", s.d1, "order of the first marked fiber's singularities")->required();
  sub->add_option("--d2", s.d2, "order of the second marked fiber's singularities")->required();
  sub->add_option("--n1", s.n1, "first fiber weight n1 (0 <= n1 < d1, coprime to d1)")->required();
  sub->add_option("--n2", s.n2, "second fiber weight n2 (0 <= n2 < d2, coprime to d2)")->required();
  sub->add_option("--r", s.r, "section self-intersection parameter r as \"num/den\"")->required();
}

RuledToricSurface build_surface(const SurfaceOpts& s) {
  return make_surface(parse_int(s.d1), parse_int(s.d2), parse_int(s.n1), parse_int(s.n2),
                      parse_rational(s.r));
}

std::array<Int, 4> parse_divisor_arg(const std::string& s, const std::string& what) {
  std::array<Int, 4> v;
  size_t pos = 0, idx = 0;
  while (idx < 4) {
    size_t comma = s.find(',', pos);
    std::string tok =
        (comma == std::string::npos) ? s.substr(pos) : s.substr(pos, comma - pos);
    if (idx == 3 && comma != std::string::npos) break;  // too many fields
    if (idx < 3 && comma == std::string::npos) break;   // too few fields
    v[idx++] = parse_int(tok);
    pos = (comma == std::string::npos) ? s.size() : comma + 1;
  }
  if (idx != 4)
    throw std::invalid_argument(what + ": expected a comma-separated 4-tuple a,b,alpha,beta, got '" +
                                s + "'");
  return v;
}

std::pair<Int, std::array<Int, 4>> parse_component_arg(const std::string& s) {
  size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("--component: expected M:a,b,alpha,beta, got '" + s + "'");
  Int m = parse_int(s.substr(0, colon));
  return {m, parse_divisor_arg(s.substr(colon + 1), "--component")};
}

int run_batch(const std::string& file, tio::Format fmt, unsigned jobs_flag) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::invalid_argument("batch: cannot open file '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  tio::json doc = tio::json::parse(buf.str());
  std::vector<tio::Job> jobs = tio::parse_batch(doc, fmt);

  unsigned workers = jobs_flag < 1 ? 1 : jobs_flag;
  std::vector<std::string> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        results[i] = tio::run_job(jobs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (size_t i = 0; i < jobs.size(); ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);

  std::string out;
  for (size_t i = 0; i < jobs.size(); ++i) {
    out += results[i];
    if (jobs[i].format == tio::Format::tsv) out += "\n";  // blank line between tsv blocks
  }
  std::cout << out;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);

  CLI::App app{
      "toricoh: exact sheaf cohomology of Weil divisors on rational ruled toric surfaces,\n"
      "with first Betti numbers and monodromy eigenvalue spectra of cyclic branched covers"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->capture_default_str();

  auto* delta_sub = app.add_subcommand(
      "delta", "Riemann-Roch correction term of a cyclic quotient singularity 1/d(1,p) at k");
  delta_sub->fallthrough();
  std::string dstr, pstr, kstr;
  delta_sub->add_option("--d", dstr, "singularity order d >= 1")->required();
  delta_sub->add_option("--p", pstr, "weight p, coprime to d")->required();
  delta_sub->add_option("--k", kstr, "local divisor class k (reduced mod d)")->required();

  auto* surface_sub =
      app.add_subcommand("surface", "divisor-class bookkeeping of a surface (generators, "
                                    "relations, torsion, K, intersection matrix)");
  surface_sub->fallthrough();
  SurfaceOpts surf_s;
  add_surface_opts(surface_sub, surf_s);

  auto* coh_sub = app.add_subcommand("coh", "h0, h1, h2 and chi of O_S(D)");
  coh_sub->fallthrough();
  SurfaceOpts coh_s;
  add_surface_opts(coh_sub, coh_s);
  std::string divisor_str, method = "auto";
  coh_sub->add_option("--divisor", divisor_str, "divisor class as a,b,alpha,beta")->required();
  coh_sub->add_option("--method", method, "computation method")
      ->check(CLI::IsMember({"auto", "enum", "closed"}))
      ->capture_default_str();

  auto* cover_sub = app.add_subcommand(
      "cover", "eigensheaf table, betti1, eigenvalue multiset and splitting of an "
               "n-cyclic cover branched at sum(m_i D_i) ~ n H");
  cover_sub->fallthrough();
  SurfaceOpts cover_s;
  add_surface_opts(cover_sub, cover_s);
  std::string nstr, hstr;
  std::vector<std::string> comp_strs;
  cover_sub->add_option("--n", nstr, "covering degree n >= 2")->required();
  cover_sub->add_option("--H", hstr, "divisor H as a,b,alpha,beta")->required();
  cover_sub->add_option("--component", comp_strs,
                        "ramification component as M:a,b,alpha,beta (repeatable)");

  auto* batch_sub =
      app.add_subcommand("batch", "run a JSON job file {\"jobs\":[...]} deterministically");
  batch_sub->fallthrough();
  std::string batch_file;
  unsigned jobs_flag = 1;
  batch_sub->add_option("file", batch_file, "path to the job file")->required();
  batch_sub->add_option("--jobs", jobs_flag, "worker threads (output order is unaffected)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    tio::Format fmt = tio::parse_format(format, "--format");
    tio::Job job;
    job.format = fmt;
    if (delta_sub->parsed()) {
      job.task = tio::Task::delta;
      job.d = parse_int(dstr);
      job.p = parse_int(pstr);
      job.k = parse_int(kstr);
    } else if (surface_sub->parsed()) {
      job.task = tio::Task::surface_info;
      job.S = build_surface(surf_s);
    } else if (coh_sub->parsed()) {
      job.task = tio::Task::cohomology;
      job.S = build_surface(coh_s);
      job.divisor = canonical_form(*job.S, parse_divisor_arg(divisor_str, "--divisor"));
      job.method = tio::parse_method(method, "--method");
    } else if (cover_sub->parsed()) {
      job.task = tio::Task::covering;
      job.S = build_surface(cover_s);
      std::vector<std::pair<Int, std::array<Int, 4>>> comps;
      comps.reserve(comp_strs.size());
      for (const auto& cs : comp_strs) comps.push_back(parse_component_arg(cs));
      job.cover = make_covering(*job.S, comps, parse_divisor_arg(hstr, "--H"), parse_int(nstr));
    } else if (batch_sub->parsed()) {
      return run_batch(batch_file, fmt, jobs_flag);
    }
    std::cout << tio::run_job(job);
    return 0;
  } catch (const internal_error& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const tio::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
