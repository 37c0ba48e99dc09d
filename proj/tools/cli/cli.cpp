#include "cli.hpp"

#include "schottky/a2_link.hpp"
#include "schottky/cat0_config.hpp"
#include "schottky/errors.hpp"
#include "schottky/json_io.hpp"
#include "schottky/tree_pingpong.hpp"
#include "schottky/version.hpp"
#include "schottky/word_oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace schottky::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxWordLength = 14;
constexpr std::size_t kMaxDisplacementLength = 8;

struct RunConfig {
  std::string command;
  std::string demo;
  std::string file;
  std::string matrix;
  std::string json_out;
  std::uint32_t prime = 0;
  std::size_t order = 0;
  std::size_t k = 2;
  std::size_t max_len = 0;  // 0: command default
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  bool oracle = false;
};

// Verdict of a single run: exit code plus the JSON report.
struct Outcome {
  int code;
  json report;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

// "[[1,2],[0,1]]" (JSON, entries as integers or "n/d" strings) or "1 2; 0 1".
Matrix parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    try {
      return io::matrix_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw InputError(std::string("malformed matrix: ") + e.what());
    }
  }
  std::vector<Rational> entries;
  std::size_t rows = 0;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::stringstream es(row);
    std::string tok;
    std::size_t cols = 0;
    while (es >> tok) {
      entries.push_back(Rational::parse(tok));
      ++cols;
    }
    if (cols > 0) ++rows;
  }
  if (rows * rows != entries.size()) throw InputError("matrix must be square: '" + text + "'");
  return Matrix(static_cast<int>(rows), std::move(entries));
}

std::string subscript(std::uint32_t n) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  const std::string s = std::to_string(n);
  std::string out;
  for (char c : s) out += digits[c - '0'];
  return out;
}

json header(const RunConfig& cfg) {
  json options{{"seed", cfg.seed}};
  if (cfg.max_len) options["max_len"] = cfg.max_len;
  if (cfg.command == "verify") {
    options["oracle"] = cfg.oracle;
    options["samples"] = cfg.samples;
  }
  return {{"tool", {{"name", "schottky"}, {"version", kVersion}}}, {"command", cfg.command}, {"options", options}};
}

std::string classification_line(const tree::TreeIsometry& g) {
  const auto c = tree::classify(g);
  const std::string v = "v" + subscript(g.prime().value()) + "(tr)=" +
                        (c.trace_valuation.is_infinite() ? std::string("inf") : std::to_string(c.trace_valuation.value()));
  if (c.kind == tree::IsometryKind::Elliptic) return "elliptic (" + v + ")";
  return "hyperbolic, ℓ = " + std::to_string(c.translation_length) + " (" + v + ")";
}

json classification_json(const tree::TreeIsometry& g) {
  const auto c = tree::classify(g);
  json j{{"kind", c.kind == tree::IsometryKind::Elliptic ? "elliptic" : "hyperbolic"},
         {"translation_length", c.translation_length},
         {"determinant_shift", c.determinant_shift},
         {"matrix", io::to_json(g.matrix())},
         {"prime", g.prime().value()}};
  j["trace_valuation"] = c.trace_valuation.is_infinite() ? json("inf") : json(c.trace_valuation.value());
  return j;
}

// ---------------------------------------------------------------------------

Outcome cmd_classify(const RunConfig& cfg, std::ostream& out) {
  json report = header(cfg);
  json items = json::array();
  std::vector<std::pair<std::string, tree::TreeIsometry>> gens;
  if (!cfg.matrix.empty()) {
    if (cfg.prime == 0) throw InputError("--matrix needs --prime");
    const Matrix m = parse_matrix(cfg.matrix);
    if (m.dim() != 2) throw InputError("classify needs a 2x2 matrix");
    report["input"] = {{"matrix", io::to_json(m)}, {"prime", cfg.prime}};
    gens.emplace_back("g", tree::TreeIsometry(m, Prime(cfg.prime)));
  } else if (!cfg.file.empty()) {
    const json in = read_json_file(cfg.file);
    const auto f = io::parse_generator_file(in);
    report["input"] = io::to_json(f);
    const auto isos = f.isometries();
    for (std::size_t i = 0; i < isos.size(); ++i) gens.emplace_back(f.generators[i].name, isos[i]);
  } else {
    throw InputError("classify needs --matrix or --file");
  }
  for (const auto& [name, g] : gens) {
    const std::string line = classification_line(g);
    out << (gens.size() > 1 ? name + ": " : std::string()) << line << "\n";
    json j = classification_json(g);
    j["name"] = name;
    j["summary"] = line;
    items.push_back(std::move(j));
  }
  report["classifications"] = items;
  return {kCertified, report};
}

// Oracle cross-check of a certificate: no relation to length L and no
// nontrivial word fixing the standard vertex to length min(L, 8).
struct OracleStage {
  json report;
  bool consistent = true;
  std::vector<std::string> problems;
};

OracleStage run_oracle(const std::vector<tree::TreeIsometry>& gens, std::size_t max_len) {
  std::vector<Matrix> mats;
  for (const auto& g : gens) mats.push_back(g.matrix());
  OracleStage s;
  const auto free = oracle::freeness_check(mats, max_len);
  const std::size_t dl = std::min(max_len, kMaxDisplacementLength);
  const auto disp = oracle::displacement_scan(gens, dl, tree::TreeVertex::standard(gens.front().prime()));
  if (free.first_trivial_word) {
    s.problems.push_back("trivial word " + free.first_trivial_word->to_string());
  } else if (free.first_scalar_word) {
    s.problems.push_back("scalar word " + free.first_scalar_word->to_string());
  }
  if (disp.zero_displacement_count > 0) {
    s.problems.push_back(std::to_string(disp.zero_displacement_count) + " nontrivial words fix the standard vertex");
  }
  s.consistent = s.problems.empty();
  s.report = {{"freeness", io::to_json(free)}, {"displacement", io::to_json(disp)}, {"consistent", s.consistent}};
  return s;
}

Outcome cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.file.empty()) throw InputError("verify needs --file");
  const json in = read_json_file(cfg.file);
  const auto f = io::parse_generator_file(in);
  std::vector<std::string> names;
  for (const auto& g : f.generators) names.push_back(g.name);
  const auto gens = f.isometries();

  json report = header(cfg);
  report["input"] = io::to_json(f);
  const auto verdict = tree::schottky_check(gens);
  report["certificate"] = io::to_json(verdict, names);

  int code = verdict.certified() ? kCertified : kNotCertified;
  if (verdict.certified()) {
    out << "certified: " << verdict.reason << "\n";
    for (std::size_t i = 0; i < gens.size(); ++i) {
      out << "  " << names[i] << ": ℓ = " << verdict.generators[i].translation_length << ", D = ("
          << verdict.domains[i].lo.to_string() << ", " << verdict.domains[i].hi.to_string() << ")\n";
    }
    const auto universe = tree::tree_universe(gens, *verdict.sets);
    const auto family = tree::tree_family(*verdict.sets);
    pingpong::SamplingOptions opt;
    opt.sample_count = cfg.samples;
    opt.seed = cfg.seed;
    opt.workers = worker_count();
    const auto hyp = pingpong::verify_hypotheses(universe, family, opt);
    std::size_t traced = 0, passed = 0;
    oracle::ReducedWordEnumerator words(gens.size(), 3);
    json example;
    while (auto w = words.next()) {
      const auto t = pingpong::trace_word(universe, family, *w, universe.basepoint);
      ++traced;
      passed += t.pass() ? 1 : 0;
      if (example.is_null() && w->length() == 3) example = io::to_json(t);
    }
    report["pingpong"] = {{"hypotheses", io::to_json(hyp)},
                          {"discreteness", io::to_json(pingpong::discreteness_rationale(universe, family))},
                          {"traces", {{"words", traced}, {"passed", passed}, {"example", example}}}};
    out << "  ping-pong sampling: " << hyp.summary() << "\n";
    out << "  traces: " << passed << "/" << traced << " reduced words of length <= 3 end in Y\n";
    if (!hyp.clean() || passed != traced) {
      code = kInconsistent;
      out << "INCONSISTENT: sampled ping-pong hypotheses fail on certified sets\n";
    }
  } else {
    out << "inconclusive: " << verdict.reason << "\n";
  }

  if (cfg.oracle) {
    const std::size_t L = cfg.max_len ? cfg.max_len : 10;
    auto stage = run_oracle(gens, L);
    out << "  oracle: " << (stage.consistent ? "no relation up to length " + std::to_string(L) +
                                                   ", no fixed vertex up to length " +
                                                   std::to_string(std::min(L, kMaxDisplacementLength))
                                             : stage.problems.front())
        << "\n";
    if (verdict.certified() && !stage.consistent) {
      code = kInconsistent;
      out << "INCONSISTENT: certificate contradicted by the word oracle\n";
    }
    report["oracle"] = std::move(stage.report);
  }
  return {code, report};
}

Outcome cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  if (cfg.file.empty()) throw InputError("oracle needs --file");
  const auto f = io::parse_generator_file(read_json_file(cfg.file));
  const std::size_t L = cfg.max_len ? cfg.max_len : 8;
  json report = header(cfg);
  report["input"] = io::to_json(f);
  std::vector<Matrix> mats;
  for (const auto& g : f.generators) mats.push_back(g.matrix);
  const auto free = oracle::freeness_check(mats, L);
  const auto gens = f.isometries();
  const auto disp = oracle::displacement_scan(gens, L, tree::TreeVertex::standard(Prime(f.prime)));
  report["freeness"] = io::to_json(free);
  report["displacement"] = io::to_json(disp);
  out << "words checked: " << free.words_checked << " (lengths 1.." << L << ")\n";
  if (free.first_trivial_word) {
    out << "first trivial word: " << free.first_trivial_word->to_string() << "\n";
  } else {
    out << "no trivial reduced word up to length " << L << "\n";
  }
  if (free.first_scalar_word && free.first_scalar_word != free.first_trivial_word) {
    out << "first scalar word: " << free.first_scalar_word->to_string() << "\n";
  }
  out << "min displacement per length:";
  for (const auto& d : disp.min_displacement_per_length) out << " " << (d ? std::to_string(*d) : "-");
  out << "\n";
  return {free.first_trivial_word ? kNotCertified : kCertified, report};
}

Outcome cmd_config(const RunConfig& cfg, std::ostream& out) {
  if (cfg.file.empty()) throw InputError("config needs --file");
  const json in = read_json_file(cfg.file);
  json report = header(cfg);
  report["input"] = in;
  if (in.contains("translation_lengths")) {
    const auto input = io::parse_opposite_axes_input(in);
    const auto v = a2::check_opposite_axes(input);
    report["mode"] = "pairwise_opposite";
    report["result"] = io::to_json(v);
    const char* status = v.status == a2::OppositeAxesStatus::Certified  ? "certified"
                         : v.status == a2::OppositeAxesStatus::Rejected ? "rejected"
                                                                      : "inconclusive";
    out << status << ": " << v.reason << "\n";
    if (!v.conclusion.empty()) out << "  conclusion: " << v.conclusion << "\n";
    out << "  note: " << v.realizability_note << "\n";
    return {v.status == a2::OppositeAxesStatus::Certified ? kCertified : kNotCertified, report};
  }
  const auto c = io::parse_config_file(in);
  const auto v = cat0::check_configuration(c.axes, c.relations);
  report["mode"] = "axes";
  report["result"] = io::to_json(v);
  out << (v.certified() ? "certified: " : "rejected: ") << v.reason << "\n";
  for (const auto& w : v.warnings) out << "  warning: " << w << "\n";
  return {v.certified() ? kCertified : kNotCertified, report};
}

Outcome cmd_plane(const RunConfig& cfg, std::ostream& out) {
  if (cfg.order == 0) throw InputError("plane needs --order");
  if (cfg.order > 1000) throw InputError("order too large");
  const auto plane = a2::ProjPlane::classical(static_cast<std::uint32_t>(cfg.order));
  json report = header(cfg);
  report["input"] = {{"order", cfg.order}};
  report["plane"] = io::to_json(plane);
  out << "PG(2," << cfg.order << "): " << plane.point_count() << " points, " << plane.line_count() << " lines, "
      << cfg.order + 1 << " points per line\n";
  return {kCertified, report};
}

Outcome demo_sanov(const RunConfig& cfg, std::ostream& out) {
  const Prime two(2);
  const Matrix a{{1, 2}, {0, 1}};
  const Matrix b{{1, 0}, {2, 1}};
  const std::vector<tree::TreeIsometry> gens{tree::TreeIsometry(a, two), tree::TreeIsometry(b, two)};
  const std::size_t L = cfg.max_len ? cfg.max_len : 10;
  const std::size_t dl = std::min<std::size_t>(L, 6);

  json report = header(cfg);
  report["input"] = {{"prime", 2}, {"generators", {{{"name", "A"}, {"matrix", io::to_json(a)}},
                                                   {{"name", "B"}, {"matrix", io::to_json(b)}}}}};
  const auto free = oracle::freeness_check({a, b}, L);
  const auto disp = oracle::displacement_scan(gens, dl, tree::TreeVertex::standard(two));
  const bool elliptic = std::all_of(gens.begin(), gens.end(), [](const auto& g) {
    return tree::classify(g).kind == tree::IsometryKind::Elliptic;
  });
  const bool is_free = !free.first_trivial_word;
  const bool all_fixed = disp.zero_displacement_count == disp.words_checked;

  out << "A = [[1,2],[0,1]]: " << classification_line(gens[0]) << "\n";
  out << "B = [[1,0],[2,1]]: " << classification_line(gens[1]) << "\n";
  std::vector<std::string> chain;
  chain.push_back(is_free ? "no trivial reduced word up to length " + std::to_string(L) + " (" +
                                std::to_string(free.words_checked) + " words)"
                          : "trivial word found: " + free.first_trivial_word->to_string());
  chain.push_back(all_fixed ? "all words fix the standard vertex (" + std::to_string(disp.words_checked) +
                                  " words up to length " + std::to_string(dl) + ")"
                            : "some word moves the standard vertex");
  if (is_free && all_fixed && elliptic) {
    chain.push_back("free of rank two (up to length " + std::to_string(L) + ")");
    chain.push_back("an infinite group fixing a vertex of a locally finite tree: not discrete");
  }
  for (const auto& c : chain) out << c << "\n";
  report["classifications"] = {classification_json(gens[0]), classification_json(gens[1])};
  report["freeness"] = io::to_json(free);
  report["displacement"] = io::to_json(disp);
  report["conclusion"] = chain;
  return {is_free && all_fixed && elliptic ? kCertified : kInconsistent, report};
}

Outcome demo_a2(const RunConfig& cfg, std::ostream& out) {
  const std::uint32_t q = 3;
  const std::size_t k = cfg.k;
  const auto plane = a2::ProjPlane::classical(q);
  const auto pairs = a2::opposite_chamber_pairs(plane, k);
  json report = header(cfg);
  report["input"] = {{"order", q}, {"k", k}};

  std::vector<a2::Chamber> chambers;
  json pj = json::array();
  for (const auto& [c, d] : pairs) {
    chambers.push_back(c);
    chambers.push_back(d);
    pj.push_back({{"attracting", io::to_json(c)}, {"repelling", io::to_json(d)}});
  }
  std::size_t opposite_pairs = 0, total_pairs = 0;
  for (std::size_t i = 0; i < chambers.size(); ++i) {
    for (std::size_t j = i + 1; j < chambers.size(); ++j) {
      ++total_pairs;
      opposite_pairs += a2::opposite(plane, chambers[i], chambers[j]) ? 1 : 0;
    }
  }
  out << "PG(2,3): " << plane.point_count() << " points, " << plane.line_count() << " lines\n";
  out << "configuration k = " << k << ": " << chambers.size() << " chambers, " << opposite_pairs << "/" << total_pairs
      << " pairs opposite\n";

  // Isometry i has the chamber pair i at the ends of its axis through the
  // base vertex; two isometries are opposite iff all their chambers are.
  a2::OppositeAxesInput in;
  in.translation_lengths.assign(k, Rational(2));
  in.opposite.assign(k, std::vector<std::optional<bool>>(k, true));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      bool all = true;
      for (const auto& c : {pairs[i].first, pairs[i].second}) {
        for (const auto& d : {pairs[j].first, pairs[j].second}) all = all && a2::opposite(plane, c, d);
      }
      in.opposite[i][j] = all;
    }
  }
  in.distances = {{Rational(0)}};
  in.locally_compact = true;
  const auto v = a2::check_opposite_axes(in);
  out << "descriptor: " << k << " isometries of translation length 2 (supplied), axes through the base vertex\n";
  out << (v.status == a2::OppositeAxesStatus::Certified ? "certified: " : "not certified: ") << v.reason << "\n";
  if (!v.conclusion.empty()) out << "  conclusion: " << v.conclusion << "\n";
  out << "  note: " << v.realizability_note << "\n";
  report["chamber_pairs"] = pj;
  report["opposite_pairs"] = opposite_pairs;
  report["total_pairs"] = total_pairs;
  report["descriptor"] = io::to_json(in);
  report["result"] = io::to_json(v);
  const bool ok = opposite_pairs == total_pairs && v.status == a2::OppositeAxesStatus::Certified;
  return {ok ? kCertified : kInconsistent, report};
}

Outcome dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.max_len > kMaxWordLength) {
    throw InputError("--max-len " + std::to_string(cfg.max_len) + " exceeds " + std::to_string(kMaxWordLength));
  }
  if (cfg.command == "classify") return cmd_classify(cfg, out);
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  if (cfg.command == "oracle") return cmd_oracle(cfg, out);
  if (cfg.command == "config") return cmd_config(cfg, out);
  if (cfg.command == "plane") return cmd_plane(cfg, out);
  if (cfg.command == "demo") {
    if (cfg.demo == "sanov") return demo_sanov(cfg, out);
    if (cfg.demo == "a2") return demo_a2(cfg, out);
    throw InputError("unknown demo '" + cfg.demo + "'");
  }
  throw InputError("no command given");
}

void write_report(const std::string& path, json report, int code) {
  report["exit_code"] = code;
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << report.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact Schottky-group verifier on the Bruhat-Tits tree", "schottky"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.add_option("--json", cfg.json_out, "Write the JSON report to this path");
  app.add_option("--seed", cfg.seed, "Sampling seed");

  auto* classify = app.add_subcommand("classify", "Classify a matrix acting on the tree");
  classify->add_option("--matrix", cfg.matrix, "Matrix as JSON rows or 'a b; c d'");
  classify->add_option("--prime", cfg.prime, "Prime p");
  classify->add_option("--file", cfg.file, "Generators file");

  auto* verify = app.add_subcommand("verify", "Certify a generating set as free and discrete");
  verify->add_option("--file", cfg.file, "Generators file")->required();
  verify->add_flag("--oracle", cfg.oracle, "Cross-check with the word oracle");
  verify->add_option("--max-len", cfg.max_len, "Oracle word length (default 10)");
  verify->add_option("--samples", cfg.samples, "Ping-pong samples")->check(CLI::PositiveNumber);

  auto* orc = app.add_subcommand("oracle", "Enumerate reduced words");
  orc->add_option("--file", cfg.file, "Generators file")->required();
  orc->add_option("--max-len", cfg.max_len, "Word length (default 8)");

  auto* config = app.add_subcommand("config", "Check an abstract axis configuration");
  config->add_option("--file", cfg.file, "Configuration file")->required();

  auto* plane = app.add_subcommand("plane", "Export PG(2,q)");
  plane->add_option("--order", cfg.order, "Plane order q (prime)")->required();

  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->add_option("name", cfg.demo, "sanov | a2")->required()->check(CLI::IsMember({"sanov", "a2"}));
  demo->add_option("--max-len", cfg.max_len, "Word length for sanov (default 10)");
  demo->add_option("--k", cfg.k, "Number of chamber pairs for a2 (default 2)");

  for (auto* sub : {classify, verify, orc, config, plane, demo}) {
    sub->add_option("--json", cfg.json_out, "Write the JSON report to this path");
    sub->add_option("--seed", cfg.seed, "Sampling seed");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    Outcome o = dispatch(cfg, out);
    if (!cfg.json_out.empty()) write_report(cfg.json_out, std::move(o.report), o.code);
    return o.code;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInconsistent;
  }
}

}  // namespace schottky::cli
