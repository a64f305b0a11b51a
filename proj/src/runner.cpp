#include "hlink/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "hlink/catalogue.hpp"
#include "hlink/error.hpp"
#include "hlink/homology.hpp"
#include "hlink/morse.hpp"
#include "hlink/regions.hpp"
#include "hlink/scalar_field.hpp"

namespace hlink {

using nlohmann::json;

namespace {

const std::set<std::string> kModes = {"link", "catalogue", "certify", "band", "multiplicity", "morse-check"};
const std::set<std::string> kTopLevelKeys = {
    "name",   "description", "mode",      "domain",       "prime",        "budget", "regions",
    "function", "degree",    "band",      "bands",        "catalogue",    "multiplicity",
    "printed_band", "expect", "window",
};
const char* const kRegionKeys[] = {"B", "A", "Q", "P"};

[[noreturn]] void schema_error(const std::string& msg) {
  throw ValidationError(msg, ErrorCode::schema_invalid);
}

template <class T>
T field(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) schema_error(std::string(where) + " is missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    schema_error(std::string(where) + " field \"" + key + "\" has the wrong type");
  }
}

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::budget_exceeded: return 3;
    case ErrorCode::internal_inconsistency: return 4;
    default: return 2;
  }
}

json vertex_json(const CriticalVertex& c) {
  return {{"vertex", c.vertex},
          {"coordinates", c.coordinates},
          {"value", c.raw_value},
          {"critical_groups", c.critical_group_dims},
          {"pl_nondegenerate", c.is_pl_nondegenerate()},
          {"boundary", c.boundary}};
}

json linking_json(const LinkingReport& r) {
  json j = {{"prime", r.prime},
            {"q_max", r.q_max},
            {"inclusion_ok", r.inclusion_ok},
            {"links", r.links()}};
  if (r.inclusion_ok) {
    j["ranks"] = r.ranks;
    j["source_dims"] = r.source_dims;
    j["target_dims"] = r.target_dims;
  } else {
    j["inclusion_failure"] = r.inclusion_failure;
  }
  return j;
}

json certificate_json(const CertifyOutcome& o) {
  json j = {{"verdict", to_string(o.verdict)}};
  if (!o.message.empty()) j["message"] = o.message;
  if (o.linking.q_max > 0 || o.linking.inclusion_ok) j["linking"] = linking_json(o.linking);
  if (o.certificate) {
    const auto& c = *o.certificate;
    json w = json::array(), bc = json::array();
    for (const auto& v : c.witnesses) w.push_back(vertex_json(v));
    for (const auto& v : c.boundary_candidates) bc.push_back(vertex_json(v));
    j["degree"] = c.degree;
    j["rank"] = c.rank;
    j["band"] = {c.lo, c.hi};
    j["regular_values"] = {c.a, c.b};
    j["witnesses"] = w;
    j["boundary_candidates"] = bc;
    j["multiplicity_claim"] = c.multiplicity_claim ? json(*c.multiplicity_claim) : json(nullptr);
  }
  return j;
}

struct Context {
  json config;
  GridDomain domain;
  std::uint32_t prime = 2;
  EngineOptions engine;
};

GridDomain parse_domain(const json& j) {
  if (!j.is_object()) schema_error("\"domain\" must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "dimension" && key != "extent" && key != "resolution") {
      schema_error("unknown domain field \"" + key + "\"");
    }
  }
  GridDomain d;
  d.dimension = field<int>(j, "dimension", "domain");
  d.extent = field<double>(j, "extent", "domain");
  d.resolution = field<double>(j, "resolution", "domain");
  d.validate();
  return d;
}

RegionSpec region_spec(const json& regions, const char* key) {
  if (!regions.contains(key)) return RegionSpec::make_empty();
  return RegionSpec::from_json(regions.at(key));
}

Regions parse_regions(const Context& ctx, const GridComplex& x, bool need_b_q) {
  if (!ctx.config.contains("regions")) schema_error("config is missing \"regions\"");
  const json& r = ctx.config.at("regions");
  if (!r.is_object()) schema_error("\"regions\" must be an object");
  for (const auto& [key, _] : r.items()) {
    if (std::find(std::begin(kRegionKeys), std::end(kRegionKeys), key) == std::end(kRegionKeys)) {
      schema_error("unknown region name \"" + key + "\" (expected B, A, Q, P)");
    }
  }
  if (need_b_q && (!r.contains("B") || !r.contains("Q"))) {
    schema_error("regions B and Q are required");
  }
  Regions out{rasterize(region_spec(r, "B"), x, "B"), rasterize(region_spec(r, "A"), x, "A"),
              rasterize(region_spec(r, "Q"), x, "Q"), rasterize(region_spec(r, "P"), x, "P")};
  if (!out.a.vertices().is_subset_of(out.b.vertices())) {
    throw ValidationError("pair (B, A) is malformed: A is not contained in B");
  }
  if (!out.p.vertices().is_subset_of(out.q.vertices())) {
    throw ValidationError("pair (Q, P) is malformed: P is not contained in Q");
  }
  return out;
}

Polynomial parse_function(const Context& ctx) {
  if (!ctx.config.contains("function")) schema_error("config is missing \"function\"");
  return Polynomial::from_json(ctx.config.at("function"), ctx.domain.dimension);
}

std::pair<double, double> parse_band(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    schema_error("a band must be an array [a, b] of two numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json field_json(const ScalarField& f) {
  return {{"min_gap", f.min_gap()}, {"epsilon", f.epsilon()}};
}

struct ModeResult {
  Verdict verdict = Verdict::error;
  std::string message;
  ErrorCode code = ErrorCode::validation;  // when verdict == error
};

std::string ranks_text(const std::vector<std::size_t>& ranks) {
  std::ostringstream os;
  os << "ranks=[";
  for (std::size_t i = 0; i < ranks.size(); ++i) os << (i ? "," : "") << ranks[i];
  os << "]";
  return os.str();
}

void check_linking_expectation(json& report, const json& expect, const LinkingReport& r) {
  if (!expect.is_object()) schema_error("\"expect\" must be an object");
  if (expect.contains("verdict") && !expect.contains("degree")) return;  // verdict-only form
  const int q = field<int>(expect, "degree", "expect");
  const auto beta = field<std::size_t>(expect, "rank", "expect");
  bool pass = r.inclusion_ok;
  for (std::size_t d = 0; pass && d < r.ranks.size(); ++d) {
    pass = r.ranks[d] == (static_cast<int>(d) == q ? beta : 0);
  }
  pass = pass && q >= 0 && q <= r.q_max;
  std::ostringstream exp;
  exp << "q=" << q << ",rank=" << beta;
  report["check"] = {{"expected", exp.str()},
                     {"observed", r.inclusion_ok ? ranks_text(r.ranks) : "inclusion failed"},
                     {"pass", pass}};
}

ModeResult run_link(const Context& ctx, json& report) {
  GridComplex x(ctx.domain);
  Regions r = parse_regions(ctx, x, true);
  LinkingReport lr = link_rank(x, r.b, r.a, r.q, r.p, ctx.prime, ctx.engine);
  report["linking"] = linking_json(lr);
  if (ctx.config.contains("window")) {
    RegionSpec w = RegionSpec::from_json(ctx.config.at("window"));
    w.clipped = true;
    FullSubcomplex window = rasterize(w, x, "window");
    LocalityResult loc = locality_reports(x, window, r.b, r.a, r.q, r.p, ctx.prime, ctx.engine);
    report["locality"] = {{"equal", loc.equal},
                          {"q_interior", loc.q_interior},
                          {"windowed", linking_json(loc.windowed)}};
  }
  if (ctx.config.contains("expect")) check_linking_expectation(report, ctx.config.at("expect"), lr);
  if (!lr.inclusion_ok) return {Verdict::error, lr.inclusion_failure, ErrorCode::inclusion_violated};
  return {lr.links() ? Verdict::certified : Verdict::no_linking, ""};
}

ModeResult run_catalogue(Context& ctx, json& report) {
  const json& c = ctx.config.at("catalogue");
  if (!c.is_object()) schema_error("\"catalogue\" must be an object");
  const auto name = field<std::string>(c, "name", "catalogue");
  const int k = c.contains("k") ? field<int>(c, "k", "catalogue") : 1;
  const int m = c.contains("m") ? field<int>(c, "m", "catalogue") : 1;
  double extent = 4.0, resolution = 0.5;
  if (ctx.config.contains("domain")) {
    const json& d = ctx.config.at("domain");
    extent = field<double>(d, "extent", "domain");
    resolution = field<double>(d, "resolution", "domain");
  }
  CatalogueScenario s = catalogue(name, k, m, resolution, extent);
  if (ctx.config.contains("domain") && ctx.config.at("domain").contains("dimension") &&
      ctx.config.at("domain").at("dimension") != s.domain.dimension) {
    throw ValidationError("catalogue scenario dimension differs from the configured domain");
  }
  ctx.domain = s.domain;
  report["scenario"] = {{"name", s.name},
                        {"statement", s.statement},
                        {"k", s.k},
                        {"m", s.m},
                        {"domain", {{"dimension", s.domain.dimension},
                                    {"extent", s.domain.extent},
                                    {"resolution", s.domain.resolution}}},
                        {"expected_degree", s.expected_degree},
                        {"expected_rank", s.expected_rank},
                        {"regions", {{"B", s.b.to_json()}, {"A", s.a.to_json()},
                                     {"Q", s.q.to_json()}, {"P", s.p.to_json()}}}};
  GridComplex x(s.domain);
  Regions r{rasterize(s.b, x, "B"), rasterize(s.a, x, "A"), rasterize(s.q, x, "Q"), rasterize(s.p, x, "P")};
  if (r.b.vertices().intersects(r.p.vertices()) || r.a.vertices().intersects(r.q.vertices())) {
    throw InconsistencyError("catalogue scenario " + name + " violates its disjointness hypotheses");
  }
  LinkingReport lr = link_rank(x, r.b, r.a, r.q, r.p, ctx.prime, ctx.engine);
  report["linking"] = linking_json(lr);
  json expect = ctx.config.contains("expect")
                    ? ctx.config.at("expect")
                    : json{{"degree", s.expected_degree}, {"rank", s.expected_rank}};
  check_linking_expectation(report, expect, lr);
  if (!lr.inclusion_ok) return {Verdict::error, lr.inclusion_failure, ErrorCode::inclusion_violated};
  return {lr.links() ? Verdict::certified : Verdict::no_linking, ""};
}

void check_morse_expectation(json& report, const json& expect, const std::string& verdict,
                             const std::vector<const CertifyOutcome*>& outcomes) {
  bool pass = true;
  std::ostringstream exp, obs;
  obs << verdict;
  if (expect.contains("verdict")) {
    auto want = field<std::string>(expect, "verdict", "expect");
    exp << want;
    pass = pass && want == verdict;
  }
  for (const CertifyOutcome* o : outcomes) {
    if (!o->certificate) continue;
    for (const auto& w : o->certificate->witnesses) {
      obs << " (";
      for (std::size_t i = 0; i < w.coordinates.size(); ++i) obs << (i ? "," : "") << w.coordinates[i];
      obs << ")";
    }
  }
  if (expect.contains("witnesses")) {
    auto want = field<std::vector<std::vector<double>>>(expect, "witnesses", "expect");
    for (std::size_t i = 0; i < want.size(); ++i) {
      exp << " (";
      for (std::size_t t = 0; t < want[i].size(); ++t) exp << (t ? "," : "") << want[i][t];
      exp << ")";
      // witness i must appear in certificate i (or in the only certificate)
      const CertifyOutcome* o = outcomes.size() == 1 ? outcomes[0] : (i < outcomes.size() ? outcomes[i] : nullptr);
      bool found = false;
      if (o && o->certificate) {
        for (const auto& w : o->certificate->witnesses) found = found || w.coordinates == want[i];
      }
      pass = pass && found;
    }
  }
  report["check"] = {{"expected", exp.str()}, {"observed", obs.str()}, {"pass", pass}};
}

ModeResult from_outcome(const CertifyOutcome& o) {
  return {o.verdict, o.message};
}

ModeResult run_certify(const Context& ctx, json& report, bool band_mode) {
  GridComplex x(ctx.domain);
  Regions r = parse_regions(ctx, x, true);
  ScalarField f(x, parse_function(ctx));
  report["field"] = field_json(f);
  const int q = field<int>(ctx.config, "degree", "config");
  CertifyOutcome o;
  if (band_mode) {
    o = certify_band(r, f, q, ctx.prime, ctx.engine);
  } else {
    auto [a, b] = parse_band(ctx.config.contains("band") ? ctx.config.at("band") : json());
    o = certify_linking_principle(r, f, a, b, q, ctx.prime, ctx.engine);
  }
  report["certificates"] = json::array({certificate_json(o)});
  if (band_mode && ctx.config.contains("printed_band")) {
    // Compare with a band [inf f(lower), sup f(upper)] stated elsewhere.
    const json& pb = ctx.config.at("printed_band");
    const auto lower = field<std::string>(pb, "lower", "printed_band");
    const auto upper = field<std::string>(pb, "upper", "printed_band");
    auto pick = [&](const std::string& n) -> const FullSubcomplex& {
      if (n == "B") return r.b;
      if (n == "A") return r.a;
      if (n == "Q") return r.q;
      if (n == "P") return r.p;
      schema_error("printed_band names an unknown region \"" + n + "\"");
    };
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    pick(lower).vertices().for_each([&](std::size_t v) { lo = std::min(lo, f.raw(static_cast<VertexId>(v))); });
    pick(upper).vertices().for_each([&](std::size_t v) { hi = std::max(hi, f.raw(static_cast<VertexId>(v))); });
    bool contains = false;
    if (o.certificate) {
      for (const auto& w : o.certificate->witnesses) contains = contains || (lo <= w.raw_value && w.raw_value <= hi);
    }
    json interval = json::array({std::isfinite(lo) ? json(lo) : json(nullptr), std::isfinite(hi) ? json(hi) : json(nullptr)});
    std::string note = lo > hi ? "the printed band is empty on this field"
                       : contains ? "the printed band contains a certified witness"
                                  : "no certified witness lies in the printed band";
    report["printed_band"] = {{"lower", "inf f(" + lower + ")"},
                              {"upper", "sup f(" + upper + ")"},
                              {"interval", interval},
                              {"contains_witness", contains},
                              {"note", note}};
  }
  if (ctx.config.contains("expect")) {
    check_morse_expectation(report, ctx.config.at("expect"), to_string(o.verdict), {&o});
  }
  return from_outcome(o);
}

ModeResult run_multiplicity(const Context& ctx, json& report) {
  const json& m = ctx.config.at("multiplicity");
  if (!m.is_object()) schema_error("\"multiplicity\" must be an object");
  const auto scenario = field<std::string>(m, "scenario", "multiplicity");
  const int k = m.contains("k") ? field<int>(m, "k", "multiplicity") : 1;
  GridComplex x(ctx.domain);
  ScalarField f(x, parse_function(ctx));
  report["field"] = field_json(f);
  MultiplicityOutcome o = certify_multiplicity(scenario, f, k, ctx.prime, ctx.engine);
  report["multiplicity"] = {{"scenario", o.scenario}, {"k", o.k}, {"expected_degrees", o.expected_degrees}};
  report["certificates"] = json::array({certificate_json(o.lower), certificate_json(o.upper)});
  if (ctx.config.contains("expect")) {
    check_morse_expectation(report, ctx.config.at("expect"), to_string(o.verdict), {&o.lower, &o.upper});
  }
  return {o.verdict, o.message};
}

ModeResult run_morse_check(const Context& ctx, json& report) {
  GridComplex x(ctx.domain);
  ScalarField f(x, parse_function(ctx));
  report["field"] = field_json(f);
  std::vector<std::pair<double, double>> bands;
  if (ctx.config.contains("band")) bands.push_back(parse_band(ctx.config.at("band")));
  if (ctx.config.contains("bands")) {
    const json& bs = ctx.config.at("bands");
    if (!bs.is_array()) schema_error("\"bands\" must be an array of [a, b] pairs");
    for (const auto& b : bs) bands.push_back(parse_band(b));
  }
  if (bands.empty()) schema_error("morse-check needs \"band\" or \"bands\"");
  json rows = json::array();
  bool all = true;
  for (auto [a, b] : bands) {
    WeakMorseResult w = weak_morse(f, a, b, ctx.prime);
    all = all && w.holds;
    rows.push_back({{"band", {a, b}}, {"mu", w.mu}, {"homology", w.homology}, {"holds", w.holds}});
  }
  report["weak_morse"] = rows;
  const Verdict v = all ? Verdict::certified : Verdict::inconsistency;
  if (ctx.config.contains("expect")) check_morse_expectation(report, ctx.config.at("expect"), to_string(v), {});
  return {v, all ? "" : "weak Morse inequality violated"};
}

void validate_top_level(const json& config) {
  if (!config.is_object()) schema_error("config must be a JSON object");
  for (const auto& [key, _] : config.items()) {
    if (!kTopLevelKeys.count(key)) schema_error("unknown config field \"" + key + "\"");
  }
  const auto mode = field<std::string>(config, "mode", "config");
  if (!kModes.count(mode)) {
    schema_error("unknown mode \"" + mode +
                 "\" (expected link, catalogue, certify, band, multiplicity or morse-check)");
  }
  if (mode == "catalogue" && !config.contains("catalogue")) schema_error("catalogue mode needs \"catalogue\"");
  if (mode == "multiplicity" && !config.contains("multiplicity")) {
    schema_error("multiplicity mode needs \"multiplicity\"");
  }
  if (mode != "catalogue" && !config.contains("domain")) schema_error("config is missing \"domain\"");
}

}  // namespace

std::string config_hash(const json& config) {
  const std::string text = config.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return "fnv1a64:" + hex64(h);
}

std::string report_text(const json& report) { return report.dump(2) + "\n"; }

RunResult run(const json& input, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  json config = input;
  if (config.is_object()) {
    if (options.prime) config["prime"] = *options.prime;
    if (options.simplex_budget) config["budget"] = *options.simplex_budget;
  }
  json report = {{"schema", kReportSchema}, {"tool_version", kToolVersion}};
  report["config_hash"] = config_hash(config);
  report["config"] = config;

  RunResult result;
  ModeResult mode_result;
  try {
    validate_top_level(config);
    Context ctx;
    ctx.config = config;
    ctx.prime = config.contains("prime") ? field<std::uint32_t>(config, "prime", "config") : 2;
    PrimeField check(ctx.prime);
    if (config.contains("budget")) ctx.engine.simplex_budget = field<std::size_t>(config, "budget", "config");
    if (config.contains("domain") && config.at("mode") != "catalogue") ctx.domain = parse_domain(config.at("domain"));
    const auto mode = config.at("mode").get<std::string>();
    report["mode"] = mode;
    report["prime"] = ctx.prime;
    if (mode == "link") {
      mode_result = run_link(ctx, report);
    } else if (mode == "catalogue") {
      mode_result = run_catalogue(ctx, report);
    } else if (mode == "certify") {
      mode_result = run_certify(ctx, report, false);
    } else if (mode == "band") {
      mode_result = run_certify(ctx, report, true);
    } else if (mode == "multiplicity") {
      mode_result = run_multiplicity(ctx, report);
    } else {
      mode_result = run_morse_check(ctx, report);
    }
  } catch (const Error& e) {
    mode_result = {Verdict::error, e.what(), e.code()};
  } catch (const json::exception& e) {
    mode_result = {Verdict::error, std::string("malformed config: ") + e.what(), ErrorCode::schema_invalid};
  } catch (const std::bad_alloc&) {
    mode_result = {Verdict::error, "out of memory", ErrorCode::budget_exceeded};
  }

  report["verdict"] = to_string(mode_result.verdict);
  if (mode_result.verdict == Verdict::error) {
    report["error"] = {{"code", to_string(mode_result.code)}, {"message", mode_result.message}};
    result.exit_code = exit_code_for(mode_result.code);
    if (config.is_object() && config.contains("expect") && config["expect"].is_object()) {
      // Scenarios may expect a specific error.
      const json& e = config["expect"];
      const bool pass = e.value("verdict", "") == "error" &&
                        (!e.contains("error_code") || e["error_code"] == to_string(mode_result.code));
      std::string expected = e.value("verdict", "");
      if (e.contains("error_code") && e["error_code"].is_string()) expected += " " + e["error_code"].get<std::string>();
      report["check"] = {{"expected", expected},
                         {"observed", "error " + std::string(to_string(mode_result.code))},
                         {"pass", pass}};
    }
  } else {
    if (!mode_result.message.empty()) report["message"] = mode_result.message;
    if (!report.contains("check") && config.contains("expect") && config["expect"].is_object() &&
        config["expect"].contains("verdict")) {
      const json& e = config["expect"];
      const std::string want = e["verdict"].is_string() ? e["verdict"].get<std::string>() : "?";
      report["check"] = {{"expected", want},
                         {"observed", report["verdict"]},
                         {"pass", want == report["verdict"].get<std::string>()}};
    }
    result.exit_code = mode_result.verdict == Verdict::inconsistency ? 4 : 0;
  }
  if (options.timing) {
    report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  }
  result.report = std::move(report);
  return result;
}

RunResult run_file(const std::filesystem::path& path, const RunOptions& options) {
  std::ifstream in(path);
  if (!in) {
    RunResult r;
    r.report = {{"schema", kReportSchema},
                {"tool_version", kToolVersion},
                {"verdict", "error"},
                {"error", {{"code", "validation"}, {"message", "cannot read " + path.string()}}}};
    r.exit_code = 2;
    return r;
  }
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& e) {
    RunResult r;
    r.report = {{"schema", kReportSchema},
                {"tool_version", kToolVersion},
                {"verdict", "error"},
                {"error", {{"code", "schema-invalid"}, {"message", std::string("invalid JSON: ") + e.what()}}}};
    r.exit_code = 2;
    return r;
  }
  return run(config, options);
}

std::string SuiteResult::table() const {
  std::vector<std::array<std::string, 5>> cells;
  cells.push_back({"file", "name", "expected", "observed", "result"});
  for (const auto& r : rows) {
    cells.push_back({r.file, r.name, r.expected, r.observed,
                     r.pass ? "pass" : "FAIL" + (r.reason.empty() ? "" : " (" + r.reason + ")")});
  }
  std::array<std::size_t, 5> width{};
  for (const auto& c : cells) {
    for (std::size_t i = 0; i < 4; ++i) width[i] = std::max(width[i], c[i].size());
  }
  std::ostringstream os;
  for (const auto& c : cells) {
    for (std::size_t i = 0; i < 5; ++i) {
      os << c[i];
      if (i < 4) os << std::string(width[i] - c[i].size() + 2, ' ');
    }
    os << '\n';
  }
  std::size_t passed = std::count_if(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.pass; });
  os << passed << "/" << rows.size() << " pass\n";
  return os.str();
}

json SuiteResult::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"file", r.file},
                         {"name", r.name},
                         {"expected", r.expected},
                         {"observed", r.observed},
                         {"pass", r.pass},
                         {"reason", r.reason}});
  }
  return {{"rows", rows_json}, {"exit_code", exit_code}};
}

SuiteResult run_suite(const std::filesystem::path& directory, const RunOptions& options,
                      unsigned threads) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    throw ValidationError("suite directory " + directory.string() + " does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  SuiteResult suite;
  suite.rows.resize(files.size());
  suite.reports.resize(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < files.size();) {
      SuiteRow& row = suite.rows[i];
      row.file = files[i].filename().string();
      RunResult r = run_file(files[i], options);
      const json& rep = r.report;
      row.name = rep.contains("config") && rep["config"].is_object() && rep["config"].contains("name") &&
                         rep["config"]["name"].is_string()
                     ? rep["config"]["name"].get<std::string>()
                     : files[i].stem().string();
      const std::string verdict = rep.value("verdict", "error");
      if (rep.contains("check")) {
        row.expected = rep["check"]["expected"].get<std::string>();
        row.observed = rep["check"]["observed"].get<std::string>();
        row.pass = rep["check"]["pass"].get<bool>();
      } else {
        row.expected = "-";
        row.observed = verdict;
        row.pass = r.exit_code == 0;
      }
      if (!row.pass) {
        row.reason = rep.contains("error")
                         ? rep["error"]["code"].get<std::string>() + ": " + rep["error"]["message"].get<std::string>()
                         : (r.exit_code != 0 ? verdict : "mismatch");
      }
      suite.reports[i] = rep;
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  suite.exit_code = std::all_of(suite.rows.begin(), suite.rows.end(), [](const SuiteRow& r) { return r.pass; }) ? 0 : 1;
  return suite;
}

}  // namespace hlink
