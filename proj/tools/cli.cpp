#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <boost/version.hpp>

#include "records.hpp"
#include "skewsds/constructions.hpp"
#include "skewsds/doptimal.hpp"
#include "skewsds/errors.hpp"
#include "skewsds/group.hpp"
#include "skewsds/matrices.hpp"
#include "skewsds/search.hpp"

#ifndef SKEWSDS_VERSION
#define SKEWSDS_VERSION "dev"
#endif

namespace skewsds::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json };

// Certification failures carry the name of the violated identity.
class CertificationFailure : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

struct CommonOptions {
  Format format = Format::Text;
  std::string fixtures;
};

struct SearchFlags {
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultBudget;
  std::string cache;
  std::string manifest;

  SearchOptions options() const {
    SearchOptions o;
    o.jobs = std::max(jobs, 1u);
    o.budget = budget;
    if (!cache.empty()) {
      o.backend = JoinBackend::SortMerge;
      o.cache_dir = cache;
    }
    return o;
  }
};

std::string params_text(const SdsParams& p) {
  std::ostringstream os;
  os << '(' << std::setw(2) << p.v << ", " << std::setw(2) << p.r << ", " << std::setw(2) << p.k
     << ", " << std::setw(2) << p.lambda << ')';
  return os.str();
}

Json params_json(const SdsParams& p) {
  return Json{{"v", p.v},           {"r", p.r},        {"k", p.k},
              {"lambda", p.lambda}, {"alpha", p.alpha()}, {"beta", p.beta()}};
}

std::string pair_text(const SdsPair& p) {
  return "A = " + p.a.to_string() + "  B = " + (p.b.empty() ? std::string("{}") : p.b.to_string());
}

Json stats_json(const std::vector<StageStats>& stats) {
  Json out = Json::array();
  for (const auto& s : stats) {
    out.push_back(Json{{"stage", s.stage},
                       {"candidates", s.candidates},
                       {"visited", s.visited},
                       {"survivors", s.survivors}});
  }
  return out;
}

Json result_json(const ClassificationResult& r) {
  Json reps = Json::array();
  for (const auto& p : r.representatives) reps.push_back(to_json(p));
  Json out{{"params", params_json(r.params)},
           {"status", to_string(r.status)},
           {"count", r.status == RunStatus::Completed ? Json(r.count) : Json(nullptr)},
           {"estimated_leaves", r.estimated_leaves},
           {"representatives", reps},
           {"stages", stats_json(r.stats)}};
  return out;
}

void write_manifest(const std::string& command, const Json& arguments, const SearchFlags& flags,
                    const std::string& status, double wall_seconds, std::ostream& err) {
  Json m{{"tool", "skewsds"},
         {"version", SKEWSDS_VERSION},
         {"command", command},
         {"arguments", arguments},
         {"budget", flags.budget},
         {"jobs", flags.jobs},
         {"backend", flags.cache.empty() ? "hash" : "sort-merge"},
         {"status", status},
         {"wall_seconds", wall_seconds},
         {"boost_version", BOOST_LIB_VERSION},
         {"compiler", __VERSION__}};
  if (flags.manifest.empty()) {
    err << "manifest: " << m.dump() << '\n';
    return;
  }
  std::ofstream f(flags.manifest);
  if (!f) throw MalformedInput("cannot write manifest " + flags.manifest);
  f << m.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

int cmd_params(int max_v, const CommonOptions& common, std::ostream& out) {
  const auto rows = feasible_params(max_v);
  if (common.format == Format::Json) {
    Json arr = Json::array();
    for (const auto& p : rows) arr.push_back(params_json(p));
    out << Json{{"max_v", max_v}, {"rows", arr}}.dump(2) << '\n';
    return kExitOk;
  }
  out << "(v, r, k, lambda)   alpha  beta\n";
  for (const auto& p : rows) {
    out << params_text(p) << "  " << std::setw(5) << p.alpha() << ' ' << std::setw(5) << p.beta() << '\n';
  }
  return kExitOk;
}

SdsParams params_or_throw(int v, int k) {
  const auto p = derive_params(v, k);
  if (!p) {
    const int r = (v - 1) / 2;
    throw Infeasible("no feasible lambda for (v, k) = (" + std::to_string(v) + ", " + std::to_string(k) +
                     "): r(r-1) + k(k-1) = " + std::to_string(r * (r - 1) + k * (k - 1)) +
                     " over v - 1 = " + std::to_string(v - 1) + " is not an admissible lambda");
  }
  return *p;
}

void print_result_text(const ClassificationResult& r, std::ostream& out) {
  out << "parameters: " << params_text(r.params) << "  alpha=" << r.params.alpha()
      << " beta=" << r.params.beta() << '\n';
  out << "status: " << to_string(r.status) << '\n';
  out << "estimated leaves: " << r.estimated_leaves << '\n';
  if (r.status != RunStatus::Completed) {
    out << "classes: ?\n";
    return;
  }
  out << "classes: " << r.count << '\n';
  for (const auto& p : r.representatives) out << "  " << pair_text(p) << '\n';
  out << "stage         candidates      visited    survivors\n";
  for (const auto& s : r.stats) {
    out << std::left << std::setw(12) << s.stage << std::right << std::setw(12) << s.candidates
        << ' ' << std::setw(12) << s.visited << ' ' << std::setw(12) << s.survivors << '\n';
  }
}

int exit_for(RunStatus s) { return s == RunStatus::Completed ? kExitOk : kExitBudget; }

int cmd_classify(int v, int k, const SearchFlags& flags, const CommonOptions& common,
                 std::ostream& out, std::ostream& err) {
  const auto params = params_or_throw(v, k);
  const auto r = classify(params, flags.options());
  if (common.format == Format::Json) {
    out << result_json(r).dump(2) << '\n';
  } else {
    print_result_text(r, out);
  }
  write_manifest("classify", Json{{"v", v}, {"k", k}}, flags, to_string(r.status), r.wall_seconds, err);
  if (r.status != RunStatus::Completed) {
    err << "error: " << params.to_string() << " " << to_string(r.status) << " under budget "
        << flags.budget << " (estimated leaves " << r.estimated_leaves << ")\n";
  }
  return exit_for(r.status);
}

int cmd_classify_all(int max_v, const SearchFlags& flags, const CommonOptions& common,
                     std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  const auto results = classify_all(max_v, flags.options());
  if (common.format == Format::Json) {
    Json rows = Json::array();
    for (const auto& r : results) rows.push_back(result_json(r));
    out << Json{{"max_v", max_v}, {"rows", rows}}.dump(2) << '\n';
  } else {
    out << "(v, r, k, lambda)   N\n";
    for (const auto& r : results) {
      out << params_text(r.params) << "   "
          << (r.status == RunStatus::Completed ? std::to_string(r.count) : std::string("?")) << '\n';
    }
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_manifest("classify-all", Json{{"max_v", max_v}}, flags, "completed", wall, err);
  return kExitOk;
}

int cmd_dparams(int n_max, const CommonOptions& common, std::ostream& out) {
  const auto rows = feasible_dopt_params(n_max);
  if (common.format == Format::Json) {
    Json arr = Json::array();
    for (const auto& p : rows) {
      Json row{{"n", p.n}, {"r", p.r}, {"k", p.k}, {"bound", p.bound.str()}};
      if (auto w = sum_two_squares(2LL * p.n - 2)) {
        row["two_squares"] = Json::array({w->first, w->second});
      } else {
        row["two_squares"] = nullptr;
      }
      arr.push_back(row);
    }
    out << Json{{"n_max", n_max}, {"rows", arr}}.dump(2) << '\n';
    return kExitOk;
  }
  out << "(n, r, k)          2n-2 = a^2 + b^2   Ehlich bound\n";
  for (const auto& p : rows) {
    std::ostringstream t;
    t << '(' << std::setw(4) << p.n << ", " << std::setw(3) << p.r << ", " << std::setw(3) << p.k << ')';
    std::ostringstream sq;
    if (auto w = sum_two_squares(2LL * p.n - 2)) {
      sq << (2 * p.n - 2) << " = " << w->first << "^2 + " << w->second << "^2";
    } else {
      sq << "none";
    }
    out << std::left << std::setw(19) << t.str() << std::setw(19) << sq.str() << std::right
        << p.bound.str() << '\n';
  }
  return kExitOk;
}

Json design_json(const CertifiedDesign& d) {
  return Json{{"order", d.design.order()},
              {"source", to_json(d.pair)},
              {"gram", {{"holds", d.gram.holds}, {"alpha", d.gram.alpha}, {"beta", d.gram.beta}}},
              {"skew", design_is_skew(d.design)},
              {"determinant", d.determinant.str()},
              {"abs_determinant", BigInt(abs(d.determinant)).str()},
              {"ehlich_bound", d.bound.str()},
              {"meets_ehlich_bound", d.meets_bound}};
}

void print_design_text(const CertifiedDesign& d, std::ostream& out) {
  out << "order: " << d.design.order() << '\n';
  out << "source: " << params_text(d.pair.params) << "  " << pair_text(d.pair) << '\n';
  out << "gram: R1 R1^T + R2 R2^T = " << d.gram.alpha << " I + " << d.gram.beta << " J\n";
  out << "skew-symmetric: " << (design_is_skew(d.design) ? "true" : "false") << '\n';
  out << "|det D_" << d.design.order() << "|: " << BigInt(abs(d.determinant)).str() << '\n';
  out << "Ehlich bound: " << d.bound.str() << '\n';
  out << "meets Ehlich bound: " << (d.meets_bound ? "true" : "false") << '\n';
}

int cmd_dclassify(int n, const SearchFlags& flags, const CommonOptions& common, std::ostream& out,
                  std::ostream& err) {
  const auto feasible = feasible_dopt_params(std::max(n, 0));
  if (std::none_of(feasible.begin(), feasible.end(), [&](const auto& p) { return p.n == n; })) {
    throw Infeasible("n = " + std::to_string(n) + " is not a feasible skew circulant D-optimal order");
  }
  const auto r = classify_dopt(n, flags.options());
  if (common.format == Format::Json) {
    Json designs = Json::array();
    for (const auto& d : r.designs) designs.push_back(design_json(d));
    out << Json{{"n", n},
                {"r", r.params.r},
                {"k", r.params.k},
                {"status", to_string(r.sds.status)},
                {"count", r.sds.status == RunStatus::Completed ? Json(r.sds.count) : Json(nullptr)},
                {"designs", designs}}
               .dump(2)
        << '\n';
  } else {
    out << "(n, r, k) = (" << n << ", " << r.params.r << ", " << r.params.k << ")\n";
    out << "status: " << to_string(r.sds.status) << '\n';
    out << "N: " << (r.sds.status == RunStatus::Completed ? std::to_string(r.sds.count) : "?") << '\n';
    for (const auto& d : r.designs) {
      out << '\n';
      print_design_text(d, out);
    }
  }
  write_manifest("dclassify", Json{{"n", n}}, flags, to_string(r.sds.status), r.sds.wall_seconds, err);
  for (const auto& d : r.designs) {
    if (!d.meets_bound) throw CertificationFailure("|det| != Ehlich bound for D_" + std::to_string(n));
  }
  return exit_for(r.sds.status);
}

std::vector<SdsPair> fixtures_for(int v, const CommonOptions& common) {
  std::vector<SdsPair> out;
  for (auto& p : load_table3(common.fixtures)) {
    if (p.params.v == v) out.push_back(std::move(p));
  }
  if (out.empty()) throw Infeasible("no Table-3 fixture with v = " + std::to_string(v));
  return out;
}

Json certify_record(const SdsPair& p) {
  Json report{{"record", to_json(p)}};
  const bool sds = is_sds(p);
  report["is_sds"] = sds;
  if (!sds) throw CertificationFailure("P_A + P_B != (lambda, ..., lambda) for " + p.params.to_string());
  const bool skew = is_skew(p);
  report["is_skew"] = skew;
  if (!skew) throw CertificationFailure("A is not skew: need 0 not in A and -i not in A for i in A");
  const auto gram = verify_gram_pair(p.a, p.b, p.params);
  report["gram"] = Json{{"holds", gram.holds}, {"alpha", gram.alpha}, {"beta", gram.beta}};
  if (!gram.holds) throw CertificationFailure(gram.failure);
  const auto c = verify_c1c3(build_design(p.a, p.b));
  report["c1c3"] = Json{{"holds", c.holds}, {"alpha", c.alpha}, {"beta", c.beta}};
  if (!c.holds) throw CertificationFailure(c.failure);
  if (c.alpha != p.params.alpha() || c.beta != p.params.beta()) {
    throw CertificationFailure("C3 constants differ from (4(r+k-lambda), 2(v-2(r+k-lambda)))");
  }
  report["alpha_plus_beta_is_2v"] = c.alpha + c.beta == 2LL * p.params.v;
  return report;
}

int cmd_verify(const std::string& file, std::optional<int> table3_v, const CommonOptions& common,
               std::ostream& out) {
  const auto pairs = table3_v ? fixtures_for(*table3_v, common) : pairs_from_json(read_json_file(file));
  Json reports = Json::array();
  for (const auto& p : pairs) {
    auto report = certify_record(p);
    if (common.format == Format::Text) {
      out << params_text(p.params) << "  " << pair_text(p) << '\n'
          << "  is_sds: true  is_skew: true  gram: alpha=" << report["gram"]["alpha"]
          << " beta=" << report["gram"]["beta"] << "  C1-C3: holds\n";
    }
    reports.push_back(std::move(report));
  }
  if (common.format == Format::Json) out << reports.dump(2) << '\n';
  return kExitOk;
}

int cmd_design(const std::string& file, std::optional<int> table3_v, const std::string& output,
               const CommonOptions& common, std::ostream& out) {
  SdsPair pair;
  if (table3_v) {
    const auto candidates = fixtures_for(*table3_v, common);
    const auto it = std::find_if(candidates.begin(), candidates.end(), [](const SdsPair& p) {
      return p.params.lambda == p.params.r + p.params.k - (p.params.v - 1) / 2;
    });
    if (it == candidates.end()) {
      throw Infeasible("no Table-3 fixture with v = " + std::to_string(*table3_v) +
                       " has lambda = r + k - (v-1)/2");
    }
    pair = *it;
  } else {
    const auto pairs = pairs_from_json(read_json_file(file));
    if (pairs.size() != 1) throw MalformedInput("design expects a single SDS record");
    pair = pairs.front();
  }
  if (!is_sds(pair)) throw CertificationFailure("P_A + P_B != (lambda, ..., lambda)");
  CertifiedDesign d = [&] {
    try {
      return sds_to_dopt(pair);
    } catch (const DomainError& e) {
      throw Infeasible(e.what());
    } catch (const ParameterError& e) {
      throw CertificationFailure(e.what());
    }
  }();
  if (!output.empty()) {
    std::ofstream f(output);
    if (!f) throw MalformedInput("cannot write " + output);
    write_matrix(f, d.design.dense());
  }
  if (common.format == Format::Json) {
    out << design_json(d).dump(2) << '\n';
  } else {
    print_design_text(d, out);
  }
  if (!d.meets_bound) throw CertificationFailure("|det| != (2n-2)(n-2)^((n-2)/2)");
  return kExitOk;
}

int cmd_det(const std::string& file, const CommonOptions& common, std::ostream& out) {
  std::ifstream in(file);
  if (!in) throw MalformedInput("cannot open " + file);
  const auto m = read_matrix(in);
  const auto det = exact_determinant(m);
  if (common.format == Format::Json) {
    out << Json{{"order", m.rows()}, {"determinant", det.str()}}.dump(2) << '\n';
  } else {
    out << det.str() << '\n';
  }
  return kExitOk;
}

int cmd_construct_qr(int p, int k01, std::ostream& out) {
  out << to_json(qr_skew_sds(p, k01)).dump() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify skew-symmetric supplementary difference sets and certify the "
               "circulant D-optimal designs they induce.",
               "skewsds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SKEWSDS_VERSION);

  CommonOptions common;
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  app.add_option("--fixtures", common.fixtures, "Table-3 fixtures file (default: built-in copy)");

  SearchFlags search;
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--jobs", search.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--budget", search.budget, "Leaf budget; larger searches are not attempted");
    sub->add_option("--cache", search.cache, "Cache directory; selects the on-disk sort-merge join");
    sub->add_option("--manifest", search.manifest, "Write the run manifest here instead of stderr");
  };

  int max_v = 0;
  auto* params = app.add_subcommand("params", "List feasible (v, r, k, lambda) with alpha, beta");
  params->add_option("--max-v", max_v, "Largest v")->required();
  add_format(params);

  int v = 0, k = 0;
  auto* classify_cmd = app.add_subcommand("classify", "Classify one parameter set up to equivalence");
  classify_cmd->add_option("--v", v, "Modulus v")->required();
  classify_cmd->add_option("--k", k, "Size of B")->required();
  add_format(classify_cmd);
  add_search(classify_cmd);

  auto* classify_all_cmd = app.add_subcommand("classify-all", "Classify every feasible set with v <= max-v");
  classify_all_cmd->add_option("--max-v", max_v, "Largest v")->required();
  add_format(classify_all_cmd);
  add_search(classify_all_cmd);

  int n_max = 0;
  auto* dparams = app.add_subcommand("dparams", "List feasible (n, r, k) for skew circulant D-optimal designs");
  auto* n_pos = dparams->add_option("n_max", n_max, "Largest order n");
  dparams->add_option("--max-n", n_max, "Largest order n")->excludes(n_pos);
  add_format(dparams);

  int n = 0;
  auto* dclassify = app.add_subcommand("dclassify", "Classify skew circulant D-optimal designs of order n");
  dclassify->add_option("--n", n, "Order n = 2 mod 4")->required();
  add_format(dclassify);
  add_search(dclassify);

  std::string file;
  std::optional<int> table3_v;
  auto* verify = app.add_subcommand("verify", "Certify SDS records: is_sds, skewness, Gram identity, C1-C3");
  auto* verify_file = verify->add_option("file", file, "JSON record or array of records");
  verify->add_option("--from-table3", table3_v, "Verify the built-in Table-3 records with this v")
      ->excludes(verify_file);
  add_format(verify);

  std::string output;
  auto* design = app.add_subcommand("design", "Build and certify the D-optimal design of an SDS record");
  auto* design_file = design->add_option("file", file, "JSON record");
  design->add_option("--from-table3", table3_v, "Use the Table-3 record with this v")->excludes(design_file);
  design->add_option("--output", output, "Also write the matrix in text format");
  add_format(design);

  auto* det = app.add_subcommand("det", "Exact determinant of a matrix file");
  det->add_option("file", file, "Matrix text file")->required();
  add_format(det);

  int p = 0, k01 = 0;
  auto* construct = app.add_subcommand("construct", "Emit SDS records from known constructions");
  construct->require_subcommand(1);
  auto* qr = construct->add_subcommand("qr", "Quadratic non-residues mod a prime p = 3 mod 4");
  qr->add_option("--p", p, "Prime p = 3 mod 4")->required();
  qr->add_option("--k", k01, "0 for B = {}, 1 for B = {0}")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << SKEWSDS_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto* sub = app.get_subcommands().front();
  if ((sub == verify || sub == design) && file.empty() && !table3_v) {
    err << "usage error: " << sub->get_name() << " needs a file or --from-table3\n";
    return kExitUsage;
  }

  try {
    if (sub == params) return cmd_params(max_v, common, out);
    if (sub == classify_cmd) return cmd_classify(v, k, search, common, out, err);
    if (sub == classify_all_cmd) return cmd_classify_all(max_v, search, common, out, err);
    if (sub == dparams) return cmd_dparams(n_max, common, out);
    if (sub == dclassify) return cmd_dclassify(n, search, common, out, err);
    if (sub == verify) return cmd_verify(file, table3_v, common, out);
    if (sub == design) return cmd_design(file, table3_v, output, common, out);
    if (sub == det) return cmd_det(file, common, out);
    if (sub == construct) return cmd_construct_qr(p, k01, out);
  } catch (const CertificationFailure& e) {
    err << "certification failed: " << e.what() << '\n';
    return kExitCertificationFailure;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const NormalizationError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const DomainError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const MalformedInput& e) {
    err << "malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCertificationFailure;
  }
  err << "usage error: unknown command\n";
  return kExitUsage;
}

}  // namespace skewsds::cli
