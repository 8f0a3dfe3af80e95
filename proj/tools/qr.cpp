// Batch front door for the library: example corpus generation, multiplicity
// tables, brute-force oracle tables, quasi-polynomial fitting over the cone
// where the multiplicity function is quasi-polynomial, and reduced-side
// verification certificates.
//
// Exit codes: 0 pass, 2 verification failed, 3 input error, 4 search
// exhausted (no admissible shift vector or no fit within bounds).
//
// Determinism contract: identical invocations (including seeds) produce
// byte-identical output. Timing is reported as null unless --timing is given,
// precisely so that default reports stay reproducible.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qr/examples.hpp"
#include "qr/model_io.hpp"
#include "qr/moment_geometry.hpp"
#include "qr/quasipoly.hpp"
#include "qr/reduction.hpp"

namespace {

using namespace qr;

// QR_THREADS caps worker parallelism. Evaluation is currently single-threaded
// (the partition-count memo is not shared across threads), so the effective
// count is min(cap, 1); the variable is still validated so misconfiguration
// fails loudly.
int effective_threads() {
  const char* env = std::getenv("QR_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  std::string s(env);
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw InputError("QR_THREADS must be a positive integer, got '" + s + "'");
  }
  if (pos != s.size() || v <= 0)
    throw InputError("QR_THREADS must be a positive integer, got '" + s + "'");
  return std::min(v, 1);
}

bool file_exists(const std::string& path) {
  std::ifstream f(path);
  return f.good();
}

ExampleModel load_model(const std::string& arg) {
  if (file_exists(arg)) {
    std::ifstream in(arg);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw InputError("cannot parse '" + arg + "' as JSON: " + e.what());
    }
    return parse_model_document(doc);
  }
  const auto& names = example_names();
  if (std::find(names.begin(), names.end(), arg) != names.end()) return make_example(arg);
  throw InputError("'" + arg + "' is neither a readable file nor an example name; run 'qr examples list'");
}

std::pair<long long, long long> parse_k_range(const std::string& s) {
  auto dots = s.find("..");
  std::string a = s, b = s;
  if (dots != std::string::npos) {
    a = s.substr(0, dots);
    b = s.substr(dots + 2);
  } else if (auto colon = s.find(':'); colon != std::string::npos) {
    a = s.substr(0, colon);
    b = s.substr(colon + 1);
  }
  try {
    long long lo = std::stoll(a), hi = std::stoll(b);
    if (lo > hi) throw InputError("empty k range '" + s + "'");
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw InputError("cannot parse k range '" + s + "'");
  } catch (const std::out_of_range&) {
    throw InputError("k range '" + s + "' out of range");
  }
}

VecQ parse_rational_vector(const std::string& s) {
  VecQ out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InputError("empty coordinate in '" + s + "'");
    out.push_back(rat_from_string(item));
  }
  if (out.empty()) throw InputError("empty vector '" + s + "'");
  return out;
}

VecZ parse_integer_vector(const std::string& s) {
  VecZ out;
  for (const auto& c : parse_rational_vector(s)) {
    if (!is_integer(c)) throw InputError("expected integers in '" + s + "'");
    out.push_back(num(c));
  }
  return out;
}

Box parse_box(const std::string& s, size_t rank) {
  auto colon = s.find(':');
  if (colon == std::string::npos)
    throw InputError("box must look like 'lo1,lo2:hi1,hi2', got '" + s + "'");
  Box b{parse_integer_vector(s.substr(0, colon)), parse_integer_vector(s.substr(colon + 1))};
  if (b.first.size() != rank || b.second.size() != rank)
    throw InputError("box dimension does not match lattice rank " + std::to_string(rank));
  for (size_t i = 0; i < rank; ++i)
    if (b.first[i] > b.second[i]) throw InputError("box is empty in coordinate " + std::to_string(i));
  return b;
}

// Bounding box of k * hull(mu_p), one unit of slack, then padded so the
// support of m(k, .) (which lives in the root-subset-sum fattening of k*Delta)
// is covered.
Box default_box(const FixedPointModel& model, const RootSystem& rs, long long k) {
  size_t r = model.lattice.rank;
  VecZ lo(r), hi(r);
  for (size_t i = 0; i < r; ++i) {
    Rat mn = model.points[0].mu[i], mx = mn;
    for (const auto& p : model.points) {
      mn = std::min(mn, p.mu[i]);
      mx = std::max(mx, p.mu[i]);
    }
    lo[i] = floor_rat(Rat(k) * mn) - 1;
    hi[i] = ceil_rat(Rat(k) * mx) + 1;
  }
  return pad_box_for_roots(Box{lo, hi}, rs);
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

json make_report(const std::string& command_echo, const json& canonical_inputs, json payload,
                 bool timing, long long ms) {
  json r{{"command", command_echo},
         {"input_hash", hash_hex(canonical_inputs.dump())},
         {"threads", effective_threads()},
         {"payload", std::move(payload)}};
  r["timing_ms"] = timing ? json(ms) : json(nullptr);
  return r;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

void emit_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  for (size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << header[i];
  std::cout << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
    std::cout << "\n";
  }
}

std::vector<std::string> lambda_header(size_t rank) {
  std::vector<std::string> h{"k"};
  for (size_t i = 0; i < rank; ++i) h.push_back("lambda_" + std::to_string(i + 1));
  return h;
}

struct TableEntry {
  long long k;
  VecZ lambda;
  Int value;
};

json entries_json(const std::vector<TableEntry>& entries, const char* value_key) {
  json a = json::array();
  for (const auto& e : entries)
    a.push_back(json{{"k", e.k}, {"lambda", vecz_json(e.lambda)}, {value_key, int_json(e.value)}});
  return a;
}

std::vector<std::vector<std::string>> entries_rows(const std::vector<TableEntry>& entries) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : entries) {
    std::vector<std::string> row{std::to_string(e.k)};
    for (const auto& c : e.lambda) row.push_back(c.str());
    row.push_back(e.value.str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json halfspace_json(const HalfSpace& h) {
  return json{{"normal", weight_json(h.normal)}, {"offset", rat_json(h.offset)}};
}

json geometry_json(const MomentGeometry& geom) {
  json delta_v = json::array();
  for (const auto& v : geom.delta.vertices()) delta_v.push_back(weight_json(v));
  json p_v = json::array();
  for (const auto& v : geom.region.p.vertices()) p_v.push_back(weight_json(v));
  json cuts = json::array();
  for (size_t idx : geom.region.certificate_indices) {
    const auto& c = geom.components[idx];
    json vs = json::array();
    for (int v : c.vertex_set) vs.push_back(v);
    cuts.push_back(json{{"component_vertices", vs},
                        {"halfspace", halfspace_json(*c.halfspace)},
                        {"tau", weight_json(c.tau_c)},
                        {"sigma", weight_json(c.sigma_c)},
                        {"gamma_c", weight_json(c.gamma_c)}});
  }
  return json{{"delta_vertices", delta_v},
              {"gamma", weight_json(geom.gamma.gamma)},
              {"gamma_candidates_tried", geom.gamma.candidates_tried},
              {"p_vertices", p_v},
              {"halfspace_certificates", cuts},
              {"component_count", geom.components.size()}};
}

int cmd_examples(const std::string& name) {
  if (name == "list") {
    json a = json::array();
    for (const auto& n : example_names()) a.push_back(n);
    emit(a);
    return 0;
  }
  emit(model_document(make_example(name)));
  return 0;
}

struct CommonArgs {
  std::string model;
  std::string format = "json";
  unsigned long long seed = 1;
  bool timing = false;
  std::string echo;
};

int cmd_mult_table(const CommonArgs& common, const std::string& k_range, const std::string& box_arg,
                   bool dominant) {
  auto t0 = std::chrono::steady_clock::now();
  ExampleModel ex = load_model(common.model);
  RootSystem rs = example_root_system(ex);
  auto [klo, khi] = parse_k_range(k_range);
  if (klo < 0) throw InputError("k must be nonnegative");
  ModelEvaluator ev(ex.model, rs, draw_polarization(ex.model, rs, common.seed));

  std::vector<TableEntry> entries;
  for (long long k = klo; k <= khi; ++k) {
    Box box = box_arg.empty() ? default_box(ex.model, rs, k)
                              : parse_box(box_arg, ex.model.lattice.rank);
    for_each_box_point(box, [&](const VecZ& lz) {
      Weight lambda = weight_from_int(lz);
      if (dominant && !rs.is_dominant(lambda)) return;
      Int m = dominant ? ev.dominant_multiplicity(k, lambda) : ev.multiplicity(k, lambda);
      if (m != 0) entries.push_back({k, lz, m});
    });
  }

  bool antisymmetry_ok = true;
  if (!rs.is_torus()) {
    for (const auto& e : entries) {
      Weight lambda = weight_from_int(e.lambda);
      for (const auto& w : rs.elements) {
        Weight image = shifted_action(rs, w, lambda);
        if (ev.multiplicity(e.k, image) != Int(w.sign()) * ev.multiplicity(e.k, lambda)) {
          antisymmetry_ok = false;
          break;
        }
      }
      if (!antisymmetry_ok) break;
    }
  }

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  if (common.format == "csv") {
    auto header = lambda_header(ex.model.lattice.rank);
    header.push_back("m");
    emit_csv(header, entries_rows(entries));
    return 0;
  }
  json inputs{{"model", model_document(ex)}, {"k", k_range}, {"box", box_arg},
              {"dominant", dominant}, {"seed", common.seed}};
  json payload{{"model", ex.name},
               {"dominant", dominant},
               {"polarization_seed", common.seed},
               {"entries", entries_json(entries, "m")},
               {"antisymmetry_ok", antisymmetry_ok}};
  emit(make_report(common.echo, inputs, payload, common.timing, ms));
  return 0;
}

int cmd_oracle(const CommonArgs& common, long long k, const std::string& box_arg) {
  auto t0 = std::chrono::steady_clock::now();
  ExampleModel ex = load_model(common.model);
  RootSystem rs = example_root_system(ex);
  if (k < 0) throw InputError("k must be nonnegative");
  Box box = box_arg.empty() ? default_box(ex.model, rs, k) : parse_box(box_arg, ex.model.lattice.rank);
  FormalCharacter ch = truncated_series_oracle(ex.model, k, box);

  std::vector<TableEntry> entries;
  for (const auto& [lambda, coeff] : ch.terms())
    if (coeff != 0) entries.push_back({k, lambda, coeff});

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  if (common.format == "csv") {
    auto header = lambda_header(ex.model.lattice.rank);
    header.push_back("coeff");
    emit_csv(header, entries_rows(entries));
    return 0;
  }
  json inputs{{"model", model_document(ex)}, {"k", k}, {"box", box_arg}};
  json payload{{"model", ex.name}, {"k", k}, {"entries", entries_json(entries, "coeff")}};
  emit(make_report(common.echo, inputs, payload, common.timing, ms));
  return 0;
}

int cmd_fit_qp(const CommonArgs& common, int degree, int period, const std::string& gamma_arg) {
  auto t0 = std::chrono::steady_clock::now();
  ExampleModel ex = load_model(common.model);
  RootSystem rs = example_root_system(ex);
  std::optional<VecQ> gamma_override;
  if (!gamma_arg.empty()) gamma_override = parse_rational_vector(gamma_arg);

  MomentGeometry geom;
  try {
    geom = analyze_moment_geometry(ex.model, rs, gamma_override);
  } catch (const ZeroNotInDelta& e) {
    throw ZeroNotInDelta(std::string(e.what()) +
                         "; hint: when 0 is outside the moment polytope the multiplicity table at "
                         "lambda=0 vanishes instead; certify it with 'qr qr-check --mode vanishing'");
  }

  ModelEvaluator ev(ex.model, rs, draw_polarization(ex.model, rs, common.seed));
  int degree_bound = degree >= 0 ? degree : int(ex.model.half_dim()) + 1;
  auto sampler = [&](const VecZ& x) {
    VecZ lambda(x.begin() + 1, x.end());
    return ev.multiplicity(x[0].convert_to<long long>(), weight_from_int(lambda));
  };
  QuasiPolynomial fit = fit_on_cone(sampler, geom.region.cone, degree_bound, period);

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  json inputs{{"model", model_document(ex)}, {"degree", degree}, {"period", period},
              {"gamma", gamma_arg}, {"seed", common.seed}};
  json payload{{"model", ex.name},
               {"polarization_seed", common.seed},
               {"geometry", geometry_json(geom)},
               {"fit", quasipoly_json(fit)}};
  emit(make_report(common.echo, inputs, payload, common.timing, ms));
  return 0;
}

int cmd_qr_check(const CommonArgs& common, const std::string& mode_arg, const std::string& xi_arg,
                 long long kmax, const std::string& gamma_arg) {
  auto t0 = std::chrono::steady_clock::now();
  ExampleModel ex = load_model(common.model);
  RootSystem rs = example_root_system(ex);

  QRMode mode;
  if (mode_arg == "point-case")
    mode = QRMode::PointCase;
  else if (mode_arg == "fit-case")
    mode = QRMode::FitCase;
  else if (mode_arg == "vanishing")
    mode = QRMode::Vanishing;
  else
    throw InputError("--mode must be point-case, fit-case, or vanishing, got '" + mode_arg + "'");

  std::optional<VecQ> xi;
  if (!xi_arg.empty())
    xi = parse_rational_vector(xi_arg);
  else if (mode != QRMode::Vanishing && ex.suggested_xi)
    xi = ex.suggested_xi;

  QRCheckOptions opts;
  opts.k_max = kmax;
  opts.seed = common.seed;
  if (!gamma_arg.empty()) opts.gamma_override = parse_rational_vector(gamma_arg);
  if (ex.reduced_data && xi && ex.reduced_data->xi == *xi) opts.explicit_data = ex.reduced_data;

  QRCertificate cert = qr_check(ex.model, rs, ex.name, mode, xi, opts);

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  json inputs{{"model", model_document(ex)}, {"mode", mode_arg}, {"xi", xi_arg},
              {"kmax", kmax}, {"gamma", gamma_arg}, {"seed", common.seed}};
  emit(make_report(common.echo, inputs, certificate_json(cert), common.timing, ms));
  return cert.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact equivariant index multiplicities, cones of quasi-polynomial behaviour, "
               "and reduced-side verification certificates for fixed-point models"};
  app.require_subcommand(1);

  std::string example_name = "list";
  auto* sub_examples = app.add_subcommand("examples", "Print an example model document, or list all names");
  sub_examples->add_option("name", example_name, "Example name, or 'list'");

  CommonArgs common;
  std::string k_range, box_arg, xi_arg, gamma_arg, mode_arg;
  long long k_single = 0, kmax = 20;
  int degree = -1, period = 12;
  bool dominant = false;

  auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--model", common.model, "Model document file, or an example name")->required();
    sub->add_option("--seed", common.seed, "Polarization seed");
    sub->add_flag("--timing", common.timing, "Report wall time instead of null");
    if (with_format)
      sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* sub_mult = app.add_subcommand("mult-table", "Table of nonzero multiplicities m(k, lambda)");
  add_common(sub_mult, true);
  sub_mult->add_option("--k", k_range, "Level k, or a range 'a..b'")->required();
  sub_mult->add_option("--box", box_arg, "Weight box 'lo1,lo2:hi1,hi2' (default: support box)");
  sub_mult->add_flag("--dominant", dominant, "Restrict to dominant weights");

  auto* sub_oracle = app.add_subcommand("oracle", "Brute-force index character by truncated series");
  add_common(sub_oracle, true);
  sub_oracle->add_option("--k", k_single, "Level k")->required();
  sub_oracle->add_option("--box", box_arg, "Weight box 'lo1,lo2:hi1,hi2' (default: support box)");

  auto* sub_fit = app.add_subcommand("fit-qp", "Fit the multiplicity quasi-polynomial on its cone");
  add_common(sub_fit, false);
  sub_fit->add_option("--degree", degree, "Degree bound (default: half dimension + 1)");
  sub_fit->add_option("--period", period, "Scalar period bound");
  sub_fit->add_option("--gamma", gamma_arg, "Override the shift vector, e.g. '1/4,1/4'");

  auto* sub_check = app.add_subcommand("qr-check", "Verify quantization commutes with reduction");
  add_common(sub_check, false);
  sub_check->add_option("--mode", mode_arg, "point-case | fit-case | vanishing")->required();
  sub_check->add_option("--xi", xi_arg, "Level in the moment polytope, e.g. '1/2,1/2'");
  sub_check->add_option("--kmax", kmax, "Largest level to compare");
  sub_check->add_option("--gamma", gamma_arg, "Override the shift vector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  common.echo = join_args(argc, argv);
  try {
    effective_threads();  // validate QR_THREADS up front
    if (sub_examples->parsed()) return cmd_examples(example_name);
    if (sub_mult->parsed()) return cmd_mult_table(common, k_range, box_arg, dominant);
    if (sub_oracle->parsed()) return cmd_oracle(common, k_single, box_arg);
    if (sub_fit->parsed()) return cmd_fit_qp(common, degree, period, gamma_arg);
    if (sub_check->parsed()) return cmd_qr_check(common, mode_arg, xi_arg, kmax, gamma_arg);
    return 3;
  } catch (const CheckFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GammaSearchExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NotQuasiPolynomial& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const DegeneratePolarization& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qr::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
