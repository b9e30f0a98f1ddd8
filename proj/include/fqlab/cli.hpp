#pragma once

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "fqlab/io.hpp"
#include "fqlab/setgen.hpp"
#include "fqlab/sweep.hpp"

namespace fqlab::cli {

// Exit codes: 0 success/pass, 1 check failure, 2 hypothesis-unmet or
// config/parse error.

inline int cmd_verify_all(const SweepConfig& config, std::ostream& out,
                          std::ostream& err) {
  try {
    const SweepResult result = run_verify_all(config);
    if (!config.out_path.empty())
      write_json_atomic(config.out_path, result.document);
    const Json& s = result.document["summary"];
    out << "records " << s["records"] << "  pass " << s["pass"] << "  fail "
        << s["fail"] << "  hypothesis_unmet " << s["hypothesis_unmet"]
        << "  info " << s["info"] << "  residual_error "
        << s["residual_error"] << "\n";
    return result.failures == 0 ? 0 : 1;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
}

inline int cmd_theorem_check(const std::string& path_e,
                             const std::string& path_f,
                             const std::string& theorem, std::ostream& out,
                             std::ostream& err) {
  try {
    auto [fe, e] = load_pointset(path_e);
    auto [ff, g] = load_pointset(path_f);
    if (!fe.same_field(ff) || e.d() != g.d())
      fail(ErrorCode::DimensionMismatch,
           "point sets live over different fields or dimensions");
    const BoundReport r = verify_bound(fe, e, g, theorem_from_name(theorem));
    out << bound_report_to_json(r).dump(1) << "\n";
    if (!r.hypotheses_met) return 2;
    return r.pass ? 0 : 1;
  } catch (const Error& e2) {
    err << e2.what() << "\n";
    return 2;
  }
}

inline int cmd_example(const std::string& kind, uint32_t p, uint32_t k,
                       uint32_t d, const std::vector<Elem>& factor,
                       const std::string& out_path, std::ostream& out,
                       std::ostream& err) {
  try {
    const Field f = make_field(p, k);
    if (kind == "isotropic") {
      const PointSet e = isotropic_set(f, d);
      if (!out_path.empty()) write_json_atomic(out_path, pointset_to_json(f, e));
      out << "card=" << e.cardinality()
          << " delta=" << distance_set(f, e, e).size() << "\n";
      return 0;
    }
    if (kind == "product") {
      const PointSet e = product_set(f, d, factor);
      if (!out_path.empty()) write_json_atomic(out_path, pointset_to_json(f, e));
      out << "card=" << e.cardinality() << "\n";
      return 0;
    }
    fail(ErrorCode::ConfigError, "unknown example kind: " + kind);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
}

// Writes <prefix>.json (best set) and <prefix>.csv (trajectory, header
// "iter,delta_card", one row per iteration including the start).
inline int cmd_search(uint32_t p, uint32_t k, uint32_t d, uint64_t n,
                      uint64_t iters, uint64_t seed,
                      const std::string& out_prefix, std::ostream& out,
                      std::ostream& err) {
  try {
    const Field f = make_field(p, k);
    const SearchResult r = minimize_distance_search(f, d, n, iters, seed);
    if (!out_prefix.empty()) {
      write_json_atomic(out_prefix + ".json", pointset_to_json(f, r.best));
      std::ostringstream csv;
      csv << "iter,delta_card\n";
      for (size_t i = 0; i < r.trajectory.size(); ++i)
        csv << i << "," << r.trajectory[i] << "\n";
      write_text_atomic(out_prefix + ".csv", csv.str());
    }
    out << "card=" << r.best.cardinality() << " delta=" << r.delta << "\n";
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
}

}  // namespace fqlab::cli
