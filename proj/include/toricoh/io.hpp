#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "toricoh/arith.hpp"
#include "toricoh/cohomology.hpp"
#include "toricoh/covering.hpp"
#include "toricoh/delta.hpp"
#include "toricoh/surface.hpp"

namespace toricoh::io {

using json = nlohmann::ordered_json;

enum class Format { json_fmt, tsv };
enum class Task { delta, surface_info, cohomology, covering };

// Integers round-trip as JSON numbers while they fit the double-exact window
// |x| <= 2^53 - 1, and as decimal strings beyond it.
inline json json_int(const Int& x) {
  static const Int kWindow = (Int(1) << 53) - 1;
  if (x >= -kWindow && x <= kWindow) return json(static_cast<std::int64_t>(x));
  return json(to_string(x));
}

inline json json_divisor(const DivisorClass& D) {
  return json::array({json_int(D.a), json_int(D.b), json_int(D.alpha), json_int(D.beta)});
}

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument(path + ": " + msg);
}

inline const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing required field \"" + std::string(key) + "\"");
  return *it;
}

}  // namespace detail

inline Int get_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (!toricoh::detail::valid_int_token(s))
      detail::fail(path, "malformed integer string '" + s + "'");
    return parse_int(s);
  }
  detail::fail(path, "expected an integer (JSON number or decimal string)");
}

inline Rational get_rational(const json& j, const std::string& path) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(get_int(j, path));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      detail::fail(path, e.what());
    }
  }
  detail::fail(path, "expected a rational (\"num/den\" string or integer)");
}

inline std::array<Int, 4> get_divisor(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4)
    detail::fail(path, "expected a divisor as a 4-element array [a,b,alpha,beta]");
  std::array<Int, 4> v;
  for (size_t i = 0; i < 4; ++i) v[i] = get_int(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

inline RuledToricSurface surface_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) detail::fail(path, "expected a surface object {d1,d2,n1,n2,r}");
  Int d1 = get_int(detail::require(j, "d1", path), path + ".d1");
  Int d2 = get_int(detail::require(j, "d2", path), path + ".d2");
  Int n1 = get_int(detail::require(j, "n1", path), path + ".n1");
  Int n2 = get_int(detail::require(j, "n2", path), path + ".n2");
  Rational r = get_rational(detail::require(j, "r", path), path + ".r");
  try {
    return make_surface(d1, d2, n1, n2, r);
  } catch (const std::invalid_argument& e) {
    detail::fail(path, e.what());
  }
}

struct Job {
  Task task = Task::delta;
  Format format = Format::json_fmt;
  // delta payload
  Int d, p, k;
  // surface-bearing payloads
  std::optional<RuledToricSurface> S;
  DivisorClass divisor;  // cohomology (already canonical)
  MethodChoice method = MethodChoice::automatic;
  std::optional<Covering> cover;
};

inline Format parse_format(const std::string& s, const std::string& path) {
  if (s == "json") return Format::json_fmt;
  if (s == "tsv") return Format::tsv;
  detail::fail(path, "unknown format '" + s + "' (expected json or tsv)");
}

inline MethodChoice parse_method(const std::string& s, const std::string& path) {
  if (s == "auto") return MethodChoice::automatic;
  if (s == "enum") return MethodChoice::enumeration;
  if (s == "closed") return MethodChoice::closed;
  detail::fail(path, "unknown method '" + s + "' (expected auto, enum or closed)");
}

// Parses and fully validates one job object; all input-dependent
// preconditions (surface constraints, D ~ nH, coprimality, closed-method
// range) are checked here so malformed batches fail before any output.
inline Job parse_job(const json& j, Format default_fmt, const std::string& path) {
  if (!j.is_object()) detail::fail(path, "expected a job object");
  Job job;
  job.format = default_fmt;
  if (auto it = j.find("format"); it != j.end())
    job.format = parse_format(it->is_string() ? it->get<std::string>() : std::string(),
                              path + ".format");

  const json& tj = detail::require(j, "task", path);
  if (!tj.is_string()) detail::fail(path, "field \"task\" must be a string");
  const std::string task = tj.get<std::string>();
  if (task != "delta" && task != "surface-info" && task != "cohomology" && task != "covering")
    detail::fail(path, "unknown task '" + task +
                           "' (expected delta, surface-info, cohomology or covering)");

  if (task == "delta") {
    job.task = Task::delta;
    job.d = get_int(detail::require(j, "d", path), path + ".d");
    job.p = get_int(detail::require(j, "p", path), path + ".p");
    job.k = get_int(detail::require(j, "k", path), path + ".k");
    try {
      (void)delta(job.d, job.p, job.k);  // validation only; recomputed on run
    } catch (const std::domain_error& e) {
      detail::fail(path, e.what());
    } catch (const std::invalid_argument& e) {
      detail::fail(path, e.what());
    }
    return job;
  }

  RuledToricSurface S = surface_from_json(detail::require(j, "surface", path),
                                          path + ".surface");

  if (task == "surface-info") {
    job.task = Task::surface_info;
    job.S = std::move(S);
    return job;
  }
  if (task == "cohomology") {
    job.task = Task::cohomology;
    auto D = get_divisor(detail::require(j, "divisor", path), path + ".divisor");
    job.divisor = canonical_form(S, D);
    if (auto it = j.find("method"); it != j.end())
      job.method = parse_method(it->is_string() ? it->get<std::string>() : std::string(),
                                path + ".method");
    if (job.method == MethodChoice::closed && !S.biruled &&
        !(S.r > 0 && S.k == 0 && job.divisor.a >= 0 && job.divisor.b >= -1))
      detail::fail(path,
                   "closed method on a uniruled surface requires k = 0, a >= 0 and b >= -1");
    job.S = std::move(S);
    return job;
  }
  if (task == "covering") {
    job.task = Task::covering;
    Int n = get_int(detail::require(j, "n", path), path + ".n");
    auto H = get_divisor(detail::require(j, "H", path), path + ".H");
    const json& cj = detail::require(j, "components", path);
    if (!cj.is_array()) detail::fail(path, "field \"components\" must be an array");
    std::vector<std::pair<Int, std::array<Int, 4>>> comps;
    for (size_t i = 0; i < cj.size(); ++i) {
      const std::string cpath = path + ".components[" + std::to_string(i) + "]";
      Int m = get_int(detail::require(cj[i], "mult", cpath), cpath + ".mult");
      auto cls = get_divisor(detail::require(cj[i], "class", cpath), cpath + ".class");
      comps.emplace_back(m, cls);
    }
    try {
      job.cover = make_covering(S, comps, H, n);
    } catch (const std::invalid_argument& e) {
      detail::fail(path, e.what());
    }
    job.S = std::move(S);
    return job;
  }
  detail::fail(path, "unknown task '" + task +
                         "' (expected delta, surface-info, cohomology or covering)");
}

inline std::vector<Job> parse_batch(const json& j, Format default_fmt) {
  const json& jobs = detail::require(j, "jobs", "batch");
  if (!jobs.is_array()) detail::fail("batch.jobs", "expected an array of jobs");
  std::vector<Job> out;
  out.reserve(jobs.size());
  for (size_t i = 0; i < jobs.size(); ++i)
    out.push_back(parse_job(jobs[i], default_fmt, "jobs[" + std::to_string(i) + "]"));
  return out;
}

namespace detail {

inline std::string join_flags(const std::vector<std::string>& flags) {
  if (flags.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < flags.size(); ++i) {
    if (i) out += ",";
    out += flags[i];
  }
  return out;
}

inline std::string tsv_divisor(const DivisorClass& D) {
  return to_string(D.a) + "," + to_string(D.b) + "," + to_string(D.alpha) + "," +
         to_string(D.beta);
}

inline json surface_info_json(const RuledToricSurface& S) {
  json o = json::object();
  o["d1"] = json_int(S.d1);
  o["d2"] = json_int(S.d2);
  o["n1"] = json_int(S.n1);
  o["n2"] = json_int(S.n2);
  o["r"] = to_string(S.r);
  o["k"] = json_int(S.k);
  o["p1"] = json_int(S.p1);
  o["q1"] = json_int(S.q1);
  o["p2"] = json_int(S.p2);
  o["q2"] = json_int(S.q2);
  o["biruled"] = S.biruled;
  o["generators"] = json::array({"Z", "F", "E_X", "E_Y"});
  o["relations"] = json::array({to_string(S.d1) + "*E_X ~ F", to_string(S.d2) + "*E_Y ~ F"});
  o["torsion_order"] = json_int(S.d);
  o["torsion_generator"] = json_divisor(torsion_generator(S));
  o["K"] = json_divisor(S.K);
  QDivisor zk = canonical_cycle(S);
  o["Z_K"] = json::array(
      {to_string(zk.z), to_string(zk.f), to_string(zk.ex), to_string(zk.ey)});
  const QDivisor gens[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  json m = json::array();
  for (const auto& gi : gens) {
    json row = json::array();
    for (const auto& gj : gens) row.push_back(to_string(intersect(S, gi, gj)));
    m.push_back(std::move(row));
  }
  o["M_S"] = std::move(m);
  return o;
}

inline std::string surface_info_tsv(const RuledToricSurface& S) {
  std::string out = "field\tvalue\n";
  auto row = [&](const char* k, const std::string& v) {
    out += k;
    out += "\t";
    out += v;
    out += "\n";
  };
  row("d1", to_string(S.d1));
  row("d2", to_string(S.d2));
  row("n1", to_string(S.n1));
  row("n2", to_string(S.n2));
  row("r", to_string(S.r));
  row("k", to_string(S.k));
  row("p1", to_string(S.p1));
  row("q1", to_string(S.q1));
  row("p2", to_string(S.p2));
  row("q2", to_string(S.q2));
  row("biruled", S.biruled ? "true" : "false");
  row("torsion_order", to_string(S.d));
  row("torsion_generator", tsv_divisor(torsion_generator(S)));
  row("K", tsv_divisor(S.K));
  QDivisor zk = canonical_cycle(S);
  row("Z_K", to_string(zk.z) + "," + to_string(zk.f) + "," + to_string(zk.ex) + "," +
                 to_string(zk.ey));
  return out;
}

inline json covering_json(const Covering& c) {
  auto table = eigensheaf_table(c);
  json o = json::object();
  json rows = json::array();
  for (const auto& row : table) {
    json r = json::object();
    r["k"] = json_int(row.k);
    r["L"] = json_divisor(row.cls);
    r["uvw"] = json::array({json_int(row.u), json_int(row.v), json_int(row.w)});
    r["h1"] = json_int(row.h1);
    rows.push_back(std::move(r));
  }
  o["table"] = std::move(rows);
  o["betti1"] = json_int(2 * h1_total(table));
  json ev = json::object();
  for (const auto& [k, m] : eigenvalue_multiset(c)) ev[to_string(k)] = json_int(m);
  o["eigenvalues"] = std::move(ev);
  Splitting s = splitting(c);
  json sp = json::object();
  sp["n1"] = json_int(s.n1);
  sp["n2"] = json_int(s.n2);
  json i1 = json::array(), i2 = json::array();
  for (size_t i : s.I1) i1.push_back(i);
  for (size_t i : s.I2) i2.push_back(i);
  sp["I1"] = std::move(i1);
  sp["I2"] = std::move(i2);
  o["splitting"] = std::move(sp);
  o["factorization"] = charpoly_factorization_check(c);
  o["charpoly"] = charpoly_string(c);
  o["distinct_H_choices"] = json_int(boost::multiprecision::gcd(c.n, c.S.d));
  if (auto t = torsion_index(c.S, c.H_cls)) o["H_torsion_index"] = json_int(*t);
  o["flags"] = c.flags;
  return o;
}

inline std::string covering_tsv(const Covering& c) {
  auto table = eigensheaf_table(c);
  std::string out = "k\tu\tv\tw\th1\n";
  for (const auto& row : table)
    out += to_string(row.k) + "\t" + to_string(row.u) + "\t" + to_string(row.v) + "\t" +
           to_string(row.w) + "\t" + to_string(row.h1) + "\n";
  out += "# betti1\t" + to_string(2 * h1_total(table)) + "\n";
  Splitting s = splitting(c);
  out += "# splitting\t" + to_string(s.n1) + "\t" + to_string(s.n2) + "\n";
  for (const auto& [k, m] : eigenvalue_multiset(c))
    out += "# eigenvalue\t" + to_string(k) + "\t" + to_string(m) + "\n";
  out += std::string("# factorization\t") +
         (charpoly_factorization_check(c) ? "true" : "false") + "\n";
  if (!c.flags.empty()) out += "# flags\t" + join_flags(c.flags) + "\n";
  return out;
}

}  // namespace detail

// Runs one validated job and renders its complete output, including the
// trailing newline. Pure function of the job; thread-safe.
inline std::string run_job(const Job& job) {
  switch (job.task) {
    case Task::delta: {
      Rational v = delta(job.d, job.p, job.k);
      if (job.format == Format::tsv)
        return "d\tp\tk\tdelta\n" + to_string(job.d) + "\t" + to_string(job.p) + "\t" +
               to_string(job.k) + "\t" + to_string(v) + "\n";
      json o = json::object();
      o["delta"] = to_string(v);
      return o.dump() + "\n";
    }
    case Task::surface_info: {
      if (job.format == Format::tsv) return detail::surface_info_tsv(*job.S);
      return detail::surface_info_json(*job.S).dump() + "\n";
    }
    case Task::cohomology: {
      HVector hv = h_vector(*job.S, job.divisor, job.method);
      if (job.format == Format::tsv) {
        return "a\tb\talpha\tbeta\th0\th1\th2\tchi\tmethod\tflags\n" +
               to_string(job.divisor.a) + "\t" + to_string(job.divisor.b) + "\t" +
               to_string(job.divisor.alpha) + "\t" + to_string(job.divisor.beta) + "\t" +
               to_string(hv.h0) + "\t" + to_string(hv.h1) + "\t" + to_string(hv.h2) + "\t" +
               to_string(hv.chi) + "\t" + method_name(hv.method) + "\t" +
               detail::join_flags(hv.flags) + "\n";
      }
      json o = json::object();
      o["h"] = json::array({json_int(hv.h0), json_int(hv.h1), json_int(hv.h2)});
      o["chi"] = json_int(hv.chi);
      o["divisor"] = json_divisor(job.divisor);
      o["method"] = method_name(hv.method);
      o["flags"] = hv.flags;
      o["checks"] = checks_enabled() ? "strict" : "off";
      return o.dump() + "\n";
    }
    case Task::covering: {
      if (job.format == Format::tsv) return detail::covering_tsv(*job.cover);
      return detail::covering_json(*job.cover).dump() + "\n";
    }
  }
  throw internal_error("run_job: unreachable task");
}

}  // namespace toricoh::io
