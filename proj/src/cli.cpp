#include "skewrad/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "skewrad/error.hpp"
#include "skewrad/harness.hpp"
#include "skewrad/identities.hpp"
#include "skewrad/parse.hpp"
#include "skewrad/radical.hpp"

namespace skewrad {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "skewrad.report/1";
constexpr const char* kSLabel = "S (via Theorem 1)";
constexpr const char* kSNote =
    "S is computed as the largest D-stable ideal inside the nilradical; it equals "
    "J(R[x;D]) intersected with R";

struct Settings {
  std::uint64_t cap = 4096;
  std::size_t max_degree = 8;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool timing = false;

  HarnessOptions options() const {
    HarnessOptions o;
    o.caps.enumeration = cap;
    o.max_degree = max_degree;
    o.seed = seed;
    return o;
  }
};

/// What a command produced: a JSON payload, its text rendering and a status.
struct Outcome {
  int code = kExitPass;
  Json result = Json::object();
  std::string text;
  std::vector<std::string> notes;
};

/// Input problems that are not library errors (missing files and the like).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CertificateFailure:
    case ErrorCode::QuasiInverseFailure:
    case ErrorCode::InternalInconsistency:
      return kExitFail;
    default:
      return kExitInput;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Error messages start with "<Code>: "; drop it before re-wrapping.
std::string strip_code(const Error& e) {
  const std::string what = e.what();
  const std::string prefix = std::string(to_string(e.code())) + ": ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

LoadedRing load(const std::string& path, const Settings& settings, RingFile* spec_out = nullptr) {
  const std::string text = read_file(path);
  try {
    RingFile spec = parse_ringfile(text);
    Caps caps;
    caps.enumeration = settings.cap;
    LoadedRing loaded = load_ringfile(spec, caps);
    if (spec_out) *spec_out = std::move(spec);
    return loaded;
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + strip_code(e));
  }
}

std::string generator_name(const FiniteRing& ring, std::size_t i) {
  return i < ring.labels().size() ? ring.labels()[i] : "g" + std::to_string(i + 1);
}

Json elements_json(const FiniteRing& ring, const ElementSet& set) {
  Json out = Json::array();
  for (const Element& e : set) out.push_back(format_element(ring, e));
  return out;
}

Json ideal_json(const FiniteRing& ring, const IdealSet& ideal) {
  Json gens = Json::array();
  for (const Element& g : ideal.generators) gens.push_back(format_element(ring, g));
  return Json{{"size", ideal.size()}, {"elements", elements_json(ring, ideal.elements)}, {"generators", gens}};
}

std::string set_text(const FiniteRing& ring, const ElementSet& set, std::size_t limit = 16) {
  std::string out = "{";
  std::size_t shown = 0;
  for (const Element& e : set) {
    if (shown == limit) {
      out += ", ... (" + std::to_string(set.size()) + " elements)";
      break;
    }
    if (shown++) out += ", ";
    out += format_element(ring, e);
  }
  return out + "}";
}

const char* mark(bool ok) { return ok ? "ok" : "FAILED"; }

Outcome cmd_ring_info(const std::string& path, const Settings& settings) {
  RingFile spec;
  const LoadedRing loaded = load(path, settings, &spec);
  const FiniteRing& r = *loaded.ring;
  Outcome o;
  Json products = Json::array();
  for (std::size_t i = 0; i < r.rank(); ++i) {
    for (std::size_t j = 0; j < r.rank(); ++j) {
      const Element& p = r.generator_product(i, j);
      if (p.is_zero()) continue;
      products.push_back("g" + std::to_string(i + 1) + "*g" + std::to_string(j + 1) + " = " + format_element(r, p));
    }
  }
  Json labels = Json::array();
  for (std::size_t i = 0; i < r.labels().size(); ++i) labels.push_back(r.labels()[i]);
  o.result = Json{{"file", path},
                  {"kind", spec.ring.kind},
                  {"order", r.order()},
                  {"rank", r.rank()},
                  {"moduli", r.moduli()},
                  {"exponent", r.exponent()},
                  {"commutative", r.is_commutative()},
                  {"unit", r.unit() ? Json(format_element(r, *r.unit())) : Json(nullptr)},
                  {"labels", labels},
                  {"products", products},
                  {"derivation", format_derivation(*loaded.derivation)},
                  {"derivation_zero", loaded.derivation->is_zero()}};
  std::ostringstream t;
  t << "ring " << path << " (" << spec.ring.kind << ")\n";
  t << "order: " << r.order() << "\nmoduli:";
  for (Int m : r.moduli()) t << ' ' << m;
  t << "\ncommutative: " << (r.is_commutative() ? "yes" : "no") << "\n";
  t << "unit: " << (r.unit() ? format_element(r, *r.unit()) : std::string("none")) << "\n";
  if (!r.labels().empty()) {
    t << "labels:";
    for (std::size_t i = 0; i < r.labels().size(); ++i) t << " g" << i + 1 << "=" << r.labels()[i];
    t << "\n";
  }
  t << "products:\n";
  for (const auto& p : products) t << "  " << p.get<std::string>() << "\n";
  t << "derivation: " << format_derivation(*loaded.derivation) << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_radical(const std::string& path, const Settings& settings) {
  const LoadedRing loaded = load(path, settings);
  const FiniteRing& r = *loaded.ring;
  const RadicalReport rep = radical_report(r, settings.options().caps);
  Outcome o;
  Json witnesses = Json::array();
  for (const auto& [e, why] : rep.witnesses) {
    witnesses.push_back(Json{{"element", format_element(r, e)}, {"reason", why}});
  }
  o.result = Json{{"file", path},
                  {"jacobson", ideal_json(r, rep.jacobson)},
                  {"nilradical", ideal_json(r, rep.nilradical)},
                  {"nilpotence_index", rep.nilpotence_index},
                  {"excluded", witnesses}};
  std::ostringstream t;
  t << "J(R) = " << set_text(r, rep.jacobson.elements) << "\n";
  t << "N(R) = " << set_text(r, rep.nilradical.elements) << "\n";
  t << "nilpotence index of J: " << rep.nilpotence_index << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_dstable_core(const std::string& path, const Settings& settings) {
  const LoadedRing loaded = load(path, settings);
  const FiniteRing& r = *loaded.ring;
  const Caps caps = settings.options().caps;
  const IdealSet n = nilradical(r, caps);
  const IdealSet s = d_stable_core(r, *loaded.derivation, n, caps);
  Outcome o;
  o.result = Json{{"file", path},
                  {"derivation", format_derivation(*loaded.derivation)},
                  {"nilradical", ideal_json(r, n)},
                  {"nilradical_d_stable", s == n},
                  {"S", ideal_json(r, s)},
                  {"S_label", kSLabel}};
  o.notes.push_back(kSNote);
  std::ostringstream t;
  t << "N(R) = " << set_text(r, n.elements) << (s == n ? " (D-stable)" : " (not D-stable)") << "\n";
  t << kSLabel << " = " << set_text(r, s.elements) << "\n";
  o.text = t.str();
  return o;
}

SkewPoly poly_argument(const std::string& text, const DerivationPtr& d, const std::string& what) {
  try {
    return parse_poly(text, d);
  } catch (const ParseError& e) {
    throw InputError(what + " '" + text + "': " + e.what());
  }
}

Outcome cmd_skew_mul(const std::string& path, const std::string& ps, const std::string& qs,
                     const Settings& settings) {
  const LoadedRing loaded = load(path, settings);
  const SkewPoly p = poly_argument(ps, loaded.derivation, "first polynomial");
  const SkewPoly q = poly_argument(qs, loaded.derivation, "second polynomial");
  const SkewPoly pq = p * q;
  Outcome o;
  o.result = Json{{"file", path}, {"p", format_poly(p)}, {"q", format_poly(q)}, {"product", format_poly(pq)}};
  o.text = format_poly(pq) + "\n";
  return o;
}

Outcome cmd_skew_qinv(const std::string& path, const std::string& ps, const Settings& settings) {
  const LoadedRing loaded = load(path, settings);
  const SkewPoly p = poly_argument(ps, loaded.derivation, "polynomial");
  const QuasiInverseSearch search = quasi_inverse_search(p, settings.max_degree, settings.options().caps);
  Outcome o;
  o.result = Json{{"file", path},
                  {"p", format_poly(p)},
                  {"bound", search.bound},
                  {"found", search.found()},
                  {"quasi_inverse", search.inverse ? Json(format_poly(*search.inverse)) : Json(nullptr)}};
  o.text = search.inverse ? format_poly(*search.inverse) + "\n"
                          : "NotFound(" + std::to_string(search.bound) + ")\n";
  return o;
}

Outcome cmd_identity_check(const std::string& path, const std::string& literal, std::size_t standard,
                           const Settings& settings) {
  const LoadedRing loaded = load(path, settings);
  const FiniteRing& r = *loaded.ring;
  MultilinearIdentity f;
  if (standard != 0) {
    if (!literal.empty()) throw InputError("give either an identity or --standard, not both");
    f = standard_identity(standard);
  } else {
    if (literal.empty()) throw InputError("identity check needs an identity or --standard d");
    try {
      f = parse_identity(literal);
    } catch (const ParseError& e) {
      throw InputError("identity '" + literal + "': " + e.what());
    }
  }
  const IdentityCheck check = holds_on(r, f);
  Outcome o;
  Json witness = nullptr;
  std::string witness_text;
  if (check.witness) {
    witness = Json::array();
    for (std::size_t g : *check.witness) {
      witness.push_back(generator_name(r, g));
      witness_text += (witness_text.empty() ? "" : ", ") + generator_name(r, g);
    }
  }
  o.code = check.holds ? kExitPass : kExitFail;
  o.result = Json{{"file", path},
                  {"identity", format_identity(f)},
                  {"arity", f.arity},
                  {"holds", check.holds},
                  {"witness", witness}};
  o.text = format_identity(f) + (check.holds ? " holds\n" : " fails at (" + witness_text + ")\n");
  return o;
}

Json theorem_json(const FiniteRing& r, const TheoremCertificate& c) {
  Json replay = Json::array();
  for (const ReplayRecord& rec : c.replay_results) {
    Json checks = Json::object();
    for (const auto& [name, ok] : rec.checks) checks[name] = ok;
    replay.push_back(Json{{"a", format_element(r, rec.a)},
                          {"f", rec.f ? Json(format_poly(*rec.f)) : Json(nullptr)},
                          {"n", rec.n},
                          {"checks", checks},
                          {"passed", rec.passed()}});
  }
  Json evidence = Json::array();
  for (const NonMembershipEvidence& e : c.nonqr_evidence) {
    evidence.push_back(Json{{"a", format_element(r, e.a)},
                            {"bound", e.bound},
                            {"found", e.found},
                            {"direct", e.direct},
                            {"witness", e.found ? Json(e.multiple) : Json(nullptr)}});
  }
  Json skew = c.skew_nilpotence_checked
                  ? Json{{"passed", true},
                         {"nilpotence_index", c.skew.nilpotence_index},
                         {"monomials", c.skew.monomials},
                         {"products_checked", c.skew.products_checked},
                         {"exhaustive", c.skew.exhaustive},
                         {"quasi_inverses_checked", c.skew.quasi_inverses_checked}}
                  : Json{{"passed", false}, {"failure", c.skew_failure}};
  return Json{{"ring", c.ring_id},
              {"derivation", c.derivation_id},
              {"nilradical", ideal_json(r, c.nilradical)},
              {"S", ideal_json(r, c.s)},
              {"S_label", kSLabel},
              {"S_nilpotence_index", c.s_nilpotence_index},
              {"S_is_ideal", c.s_is_ideal},
              {"S_d_stable", c.s_d_stable},
              {"S_nil", c.s_nil},
              {"skew_nilpotence", skew},
              {"replay_exhaustive", c.replay_exhaustive},
              {"replay", replay},
              {"non_membership", evidence},
              {"passed", c.passed()}};
}

std::string theorem_text(const FiniteRing& r, const TheoremCertificate& c) {
  std::ostringstream t;
  t << "ring: " << c.ring_id << "\n";
  t << "derivation: " << c.derivation_id << "\n";
  t << "N(R) = " << set_text(r, c.nilradical.elements) << "\n";
  t << kSLabel << " = " << set_text(r, c.s.elements) << ", nilpotence index " << c.s_nilpotence_index << "\n";
  t << "ideal: " << mark(c.s_is_ideal) << ", D-stable: " << mark(c.s_d_stable) << ", nil: " << mark(c.s_nil)
    << "\n";
  if (c.skew_nilpotence_checked) {
    t << "S[x;D] nilpotent: ok (" << c.skew.products_checked << " products, "
      << (c.skew.exhaustive ? "exhaustive" : "sampled") << ")\n";
  } else {
    t << "S[x;D] nilpotent: FAILED " << c.skew_failure << "\n";
  }
  std::size_t replay_ok = 0;
  for (const ReplayRecord& rec : c.replay_results) replay_ok += rec.passed();
  t << "replay: " << replay_ok << "/" << c.replay_results.size() << " elements pass"
    << (c.replay_exhaustive ? " (exhaustive)" : " (sampled)") << "\n";
  for (const ReplayRecord& rec : c.replay_results) {
    for (const auto& [name, ok] : rec.checks) {
      if (!ok) t << "  a = " << format_element(r, rec.a) << ": " << name << " FAILED\n";
    }
  }
  std::size_t found = 0;
  for (const NonMembershipEvidence& e : c.nonqr_evidence) found += e.found;
  t << "elements outside S with bounded non-membership evidence: " << found << "/" << c.nonqr_evidence.size()
    << "\n";
  t << "result: " << (c.passed() ? "PASS" : "FAIL") << "\n";
  return t.str();
}

Outcome theorem_outcome(const std::string& path, const Settings& settings) {
  const LoadedRing loaded = load(path, settings);
  const TheoremCertificate c = certify_theorem1(loaded.derivation, settings.options(), path,
                                                format_derivation(*loaded.derivation));
  Outcome o;
  o.code = c.passed() ? kExitPass : kExitFail;
  o.result = theorem_json(*loaded.ring, c);
  o.text = theorem_text(*loaded.ring, c);
  o.notes.push_back(kSNote);
  return o;
}

Outcome cmd_verify_corollary(const std::string& path, const Settings& settings) {
  const LoadedRing loaded = load(path, settings);
  const FiniteRing& r = *loaded.ring;
  const SemiprimitivityCertificate c = semiprimitivity_certificate(loaded.derivation, settings.options());
  Outcome o;
  o.code = c.passed() ? kExitPass : kExitFail;
  Json direct = Json::array();
  for (const Element& a : c.direct_quasi_regular) direct.push_back(format_element(r, a));
  Json evidence = Json::array();
  for (const NonMembershipEvidence& e : c.evidence) {
    evidence.push_back(Json{{"a", format_element(r, e.a)},
                            {"found", e.found},
                            {"direct", e.direct},
                            {"witness", e.found ? Json(e.multiple) : Json(nullptr)}});
  }
  o.result = Json{{"file", path},
                  {"derivation", format_derivation(*loaded.derivation)},
                  {"S_is_zero", c.s_is_zero},
                  {"S_label", kSLabel},
                  {"sampled", c.sampled},
                  {"bound", settings.max_degree},
                  {"x_times_a_quasi_regular", direct},
                  {"evidence", evidence},
                  {"passed", c.passed()}};
  o.notes.push_back(kSNote);
  if (!c.direct_quasi_regular.empty()) {
    o.notes.push_back(
        "x*a is quasi-regular for some nonzero a (e.g. nilpotent a with D(a) = 0); evidence for those "
        "comes from a multiple of x*a with no quasi-inverse within the bound");
  }
  std::size_t found = 0;
  for (const NonMembershipEvidence& e : c.evidence) found += e.found;
  std::ostringstream t;
  t << kSLabel << " = {0}: " << mark(c.s_is_zero) << "\n";
  t << "nonzero elements with NotFound(" << settings.max_degree << ") evidence: " << found << "/" << c.sampled
    << "\n";
  t << "x*a itself quasi-regular for " << c.direct_quasi_regular.size() << " element(s)";
  if (!c.direct_quasi_regular.empty()) {
    t << ": " << set_text(r, ElementSet(c.direct_quasi_regular));
  }
  t << "\nresult: " << (c.passed() ? "PASS" : "FAIL") << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_verify_centre(const std::string& path, const Settings& settings) {
  const LoadedRing loaded = load(path, settings);
  const FiniteRing& r = *loaded.ring;
  const Caps caps = settings.options().caps;
  const CentreIntersectionReport c = centre_intersection_check(r, caps);
  Outcome o;
  o.code = c.passed() ? kExitPass : kExitFail;
  Json violations = Json::array();
  for (const Element& a : c.violations) violations.push_back(format_element(r, a));
  o.result = Json{{"file", path},
                  {"centre", elements_json(r, centre(r, caps))},
                  {"principal_ideals_checked", c.checked},
                  {"violations", violations},
                  {"passed", c.passed()}};
  std::ostringstream t;
  t << "Z(R) = " << set_text(r, centre(r, caps)) << "\n";
  t << "nonzero principal ideals meeting Z(R) nontrivially: " << c.checked - c.violations.size() << "/"
    << c.checked << "\n";
  t << "result: " << (c.passed() ? "PASS" : "FAIL") << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_verify_transfer(const std::string& path, const Settings& settings) {
  const LoadedRing loaded = load(path, settings);
  const FiniteRing& r = *loaded.ring;
  const TransferCertificate c = quotient_transfer_check(loaded.derivation, settings.options().caps);
  Outcome o;
  const bool consistent = c.descends ? c.projection_commutes : c.obstruction.has_value();
  o.code = consistent ? kExitPass : kExitFail;
  Json images = Json::array();
  for (const Element& e : c.quotient_images) images.push_back("g" + std::to_string(images.size() + 1) + " -> " +
                                                               format_element(*loaded.ring, e));
  o.result = Json{{"file", path},
                  {"nilradical", ideal_json(r, c.nilradical)},
                  {"quotient_order", c.quotient_order},
                  {"descends", c.descends},
                  {"obstruction", c.obstruction ? Json(format_element(r, *c.obstruction)) : Json(nullptr)},
                  {"obstruction_image",
                   c.obstruction_image ? Json(format_element(r, *c.obstruction_image)) : Json(nullptr)},
                  {"quotient_derivation_zero", c.quotient_derivation_zero},
                  {"projection_commutes", c.projection_commutes},
                  {"passed", consistent}};
  std::ostringstream t;
  t << "N(R) = " << set_text(r, c.nilradical.elements) << ", |R/N| = " << c.quotient_order << "\n";
  if (c.descends) {
    t << "D descends to R/N" << (c.quotient_derivation_zero ? " as the zero derivation" : "")
      << "; projection commutes: " << mark(c.projection_commutes) << "\n";
  } else {
    t << "D does not descend: D(" << format_element(r, *c.obstruction) << ") = "
      << format_element(r, *c.obstruction_image) << " is not in N(R)\n";
  }
  o.text = t.str();
  return o;
}

std::vector<std::string> corpus_files(const std::vector<std::string>& inputs) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const std::string& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ring") found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(in);
    }
  }
  return files;
}

Outcome cmd_corpus_run(const std::vector<std::string>& inputs, std::size_t jobs, const Settings& settings) {
  const std::vector<std::string> files = corpus_files(inputs);
  std::vector<Json> results(files.size());
  std::vector<std::string> lines(files.size());
  std::vector<int> codes(files.size(), kExitPass);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        const Outcome o = theorem_outcome(files[i], settings);
        codes[i] = o.code;
        const Json& res = o.result;
        results[i] = Json{{"file", files[i]}, {"status", o.code == kExitPass ? "pass" : "fail"}, {"report", res}};
        lines[i] = std::string(o.code == kExitPass ? "PASS " : "FAIL ") + files[i] +
                   ": |N| = " + std::to_string(res["nilradical"]["size"].get<std::size_t>()) +
                   ", |S| = " + std::to_string(res["S"]["size"].get<std::size_t>()) +
                   ", replayed " + std::to_string(res["replay"].size());
      } catch (const Error& e) {
        codes[i] = exit_code_for(e.code());
        results[i] = Json{{"file", files[i]}, {"status", "error"}, {"error", e.what()}};
        lines[i] = "ERROR " + files[i] + ": " + e.what();
      } catch (const std::exception& e) {
        codes[i] = kExitInput;
        results[i] = Json{{"file", files[i]}, {"status", "error"}, {"error", e.what()}};
        lines[i] = "ERROR " + files[i] + ": " + e.what();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(files.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Outcome o;
  std::size_t passed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    passed += codes[i] == kExitPass;
    o.code = std::max(o.code, codes[i]);
    o.text += lines[i] + "\n";
  }
  if (files.empty()) throw InputError("corpus run: no .ring files found");
  o.result = Json{{"files", results}, {"passed", passed}, {"total", files.size()}};
  o.text += std::to_string(passed) + "/" + std::to_string(files.size()) + " passed\n";
  o.notes.push_back(kSNote);
  return o;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string out;
  for (const std::string& a : args) {
    if (!out.empty()) out += ' ';
    const bool quote = a.empty() || a.find_first_of(" \t\"'") != std::string::npos;
    out += quote ? "'" + a + "'" : a;
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings settings;
  CLI::App app{"Finite rings, derivations and radicals of differential polynomial rings", "skewrad"};
  app.fallthrough();
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--cap", settings.cap, "element enumeration cap")->check(CLI::PositiveNumber);
  app.add_option("--max-degree", settings.max_degree, "degree bound for quasi-inverse searches")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", settings.seed, "seed for sampled checks");
  app.add_option("--format", settings.format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", settings.timing, "include elapsed time in the report");

  std::string file, p, q, identity;
  std::size_t standard = 0, jobs = 0;
  std::vector<std::string> inputs;
  std::function<Outcome()> action;

  auto ring = app.add_subcommand("ring", "ring inspection")->require_subcommand(1);
  auto info = ring->add_subcommand("info", "order, generators, products and derivation");
  info->add_option("file", file)->required();
  info->callback([&] { action = [&] { return cmd_ring_info(file, settings); }; });

  auto radical = app.add_subcommand("radical", "Jacobson radical and nilradical");
  radical->add_option("file", file)->required();
  radical->callback([&] { action = [&] { return cmd_radical(file, settings); }; });

  auto core = app.add_subcommand("dstable-core", "largest D-stable ideal inside the nilradical");
  core->add_option("file", file)->required();
  core->callback([&] { action = [&] { return cmd_dstable_core(file, settings); }; });

  auto skew = app.add_subcommand("skew", "arithmetic in R[x;D]")->require_subcommand(1);
  auto mul = skew->add_subcommand("mul", "product of two polynomials");
  mul->add_option("file", file)->required();
  mul->add_option("p", p)->required();
  mul->add_option("q", q)->required();
  mul->callback([&] { action = [&] { return cmd_skew_mul(file, p, q, settings); }; });
  auto qinv = skew->add_subcommand("qinv", "bounded quasi-inverse search");
  qinv->add_option("file", file)->required();
  qinv->add_option("p", p)->required();
  qinv->callback([&] { action = [&] { return cmd_skew_qinv(file, p, settings); }; });

  auto ident = app.add_subcommand("identity", "polynomial identities")->require_subcommand(1);
  auto check = ident->add_subcommand("check", "does a multilinear identity hold");
  check->add_option("file", file)->required();
  check->add_option("identity", identity, "e.g. \"x1*x2 - x2*x1\"");
  check->add_option("--standard", standard, "use the standard identity S_d")->check(CLI::Range(2, 12));
  check->callback([&] { action = [&] { return cmd_identity_check(file, identity, standard, settings); }; });

  auto verify = app.add_subcommand("verify", "certificates")->require_subcommand(1);
  auto theorem = verify->add_subcommand("theorem1", "S is a nil D-ideal and S[x;D] is quasi-regular");
  theorem->add_option("file", file)->required();
  theorem->callback([&] { action = [&] { return theorem_outcome(file, settings); }; });
  auto corollary = verify->add_subcommand("corollary", "R[x;D] is semiprimitive when N(R) = 0");
  corollary->add_option("file", file)->required();
  corollary->callback([&] { action = [&] { return cmd_verify_corollary(file, settings); }; });
  auto centre_cmd = verify->add_subcommand("centre", "nonzero ideals meet the centre when N(R) = 0");
  centre_cmd->add_option("file", file)->required();
  centre_cmd->callback([&] { action = [&] { return cmd_verify_centre(file, settings); }; });
  auto transfer = verify->add_subcommand("transfer", "does D descend to R/N(R)");
  transfer->add_option("file", file)->required();
  transfer->callback([&] { action = [&] { return cmd_verify_transfer(file, settings); }; });

  auto corpus = app.add_subcommand("corpus", "batch runs")->require_subcommand(1);
  auto run = corpus->add_subcommand("run", "theorem certificates for every ring file, in parallel");
  run->add_option("inputs", inputs, "ring files or directories")->required();
  run->add_option("--jobs", jobs, "worker threads (0 = hardware concurrency)");
  run->callback([&] { action = [&] { return cmd_corpus_run(inputs, jobs, settings); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  Json report;
  report["schema"] = kSchema;
  report["command"] = join_args(args);
  report["settings"] = Json{{"cap", settings.cap}, {"max_degree", settings.max_degree}, {"seed", settings.seed}};

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  std::string error;
  try {
    outcome = action();
  } catch (const InputError& e) {
    outcome.code = kExitInput;
    error = e.what();
  } catch (const Error& e) {
    outcome.code = exit_code_for(e.code());
    error = e.what();
  } catch (const std::exception& e) {
    outcome.code = kExitFail;
    error = std::string("unexpected failure: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const char* status = !error.empty() ? "error" : outcome.code == kExitPass ? "pass" : "fail";
  if (!error.empty()) err << "skewrad: " << error << "\n";

  if (settings.format == "json") {
    report["status"] = status;
    report["exit_code"] = outcome.code;
    if (!error.empty()) {
      report["error"] = error;
    } else {
      report["result"] = std::move(outcome.result);
    }
    report["notes"] = outcome.notes;
    if (settings.timing) report["elapsed_ms"] = elapsed;
    out << report.dump(2) << "\n";
  } else if (error.empty()) {
    out << outcome.text;
    for (const std::string& n : outcome.notes) out << "note: " << n << "\n";
    if (settings.timing) out << "elapsed: " << elapsed << " ms\n";
  }
  return outcome.code;
}

}  // namespace skewrad
