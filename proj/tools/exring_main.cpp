// Batch front door: load rings (presets or spec files), classify them, run
// the diagonalization pipeline on matrix files, replay certificate bundles,
// drive corpora with expected verdicts, and dump projective class tables.
//
// Exit codes: 0 success, 1 mathematical failure or counterexample, 2 input
// error. Same arguments and seed always produce byte-identical output.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>

#include "exring/exchange.hpp"
#include "exring/io.hpp"

namespace fs = std::filesystem;
using namespace exring;

namespace {

int exit_code_for(const Error& e) {
  static const std::set<std::string> input_kinds = {
      "ParseError",       "BadCoordinates", "AssociativityViolation",
      "UnitLawViolation", "CapExceeded",    "DimensionMismatch",
      "BadIndex",         "MixedRings"};
  return input_kinds.count(e.kind()) ? 2 : 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("ParseError", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spew(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("ParseError", "cannot write '" + path + "'");
  out << content;
}

// preset name, or a ring spec file path
Ring resolve_ring_argument(const std::string& arg, io::CachingResolver& resolver, i64 cap) {
  if (presets::preset_spec(arg)) {
    Ring r = Ring::load(*presets::preset_spec(arg), cap);
    resolver.install(arg, r);
    if (r.name() != arg) resolver.install(r.name(), r);
    return r;
  }
  if (fs::exists(arg)) {
    RingSpec spec = io::parse_ring_spec(slurp(arg));
    Ring r = Ring::load(spec, cap);
    resolver.install(spec.name, r);
    return r;
  }
  fail("ParseError", "'" + arg + "' is neither a ring preset nor a readable file");
}

struct JobConfig {
  std::string ring_arg;
  int bound = 2;
  i64 cap = kDefaultRingCap;
  i64 iso_budget = kDefaultIsoBudget;
  i64 search_budget = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
};

int cmd_classify(const JobConfig& cfg, const std::string& report_path) {
  io::CachingResolver resolver;
  Ring ring = resolve_ring_argument(cfg.ring_arg, resolver, cfg.cap);

  std::vector<PropertyVerdict> verdicts;
  ExchangeVerdict ex = check_exchange(ring);
  verdicts.push_back(PropertyVerdict{ring.name(), "exchange", 0, ex.exchange, true,
                                     ex.failing ? "no idempotent splits a = " + show(*ex.failing)
                                                : ""});
  verdicts.push_back(check_stable_rank_one(ring));
  MonoidTable table = enumerate_projective_classes(ring, cfg.bound, 4'000'000, cfg.iso_budget);
  verdicts.push_back(check_separative(table));

  std::string report;
  for (const auto& v : verdicts) report += io::write_verdict(v) + "\n";
  std::cout << report;
  if (!report_path.empty()) spew(report_path, report);
  for (const auto& v : verdicts)
    if (!v.holds) return 1;
  return 0;
}

int cmd_diagonalize(const JobConfig& cfg, const std::string& matrix_path, std::string out_path,
                    bool regular) {
  io::CachingResolver resolver;
  Ring ring = resolve_ring_argument(cfg.ring_arg, resolver, cfg.cap);
  Mat a = io::parse_matrix(slurp(matrix_path), resolver);
  if (a.rd != ring.data())
    fail("ParseError", "matrix file is over a different ring than the one requested");
  if (out_path.empty()) out_path = matrix_path + ".cert";

  std::string bundle;
  if (regular) {
    RegularSearchOptions opts;
    opts.random_budget = cfg.search_budget;
    opts.seed = cfg.seed;
    auto d = diagonalize_regular(ring, a, opts);
    if (!d) {
      std::cout << "no diagonalizing pair found within the search budget\n";
      return 1;
    }
    bundle = io::write_regular_certificate(a, *d, ring.name());
    std::cout << "diagonalized (regular): " << d->left.ops.size() << " row ops, "
              << d->right.ops.size() << " column ops\n";
  } else {
    GEDecomposition g = ge_diagonalize(ring, a);
    bundle = io::write_ge_certificate(g, ring.name());
    std::cout << "diagonalized: " << g.left.ops.size() << " row ops, " << g.right.ops.size()
              << " column ops\n";
  }
  spew(out_path, bundle);
  std::cout << "certificate written to " << out_path << "\n";
  return 0;
}

int cmd_verify(const std::string& cert_path, const std::string& ring_file,
               const std::string& expect_ring, i64 cap) {
  io::CachingResolver resolver([cap](const std::string& name) {
    auto r = presets::resolve_preset(name, cap);
    if (!r) fail("ParseError", "unknown ring preset '" + name + "'");
    return *r;
  });
  if (!ring_file.empty()) {
    RingSpec spec = io::parse_ring_spec(slurp(ring_file));
    resolver.install(spec.name, Ring::load(spec, cap));
  }
  auto cert = io::parse_certificate(slurp(cert_path), resolver);
  if (!expect_ring.empty() && cert.ring_name != expect_ring) {
    std::cout << "fail: ring mismatch, certificate is over " << cert.ring_name << "\n";
    return 1;
  }
  ReplayReport rep = io::check_certificate(cert);
  if (rep.ok) {
    std::cout << "ok: " << cert.kind << " certificate over " << cert.ring_name << " replays\n";
    return 0;
  }
  std::cout << "fail: " << rep.detail << "\n";
  return 1;
}

struct CorpusEntry {
  std::string file, mode, expectation;
};

int cmd_corpus(const JobConfig& cfg, const std::string& manifest_path) {
  std::string text = slurp(manifest_path);
  fs::path base = fs::path(manifest_path).parent_path();
  std::vector<CorpusEntry> entries;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    CorpusEntry e;
    if (!(ls >> e.file)) continue;
    if (e.file[0] == '#') continue;
    if (!(ls >> e.mode >> e.expectation) || (e.mode != "ge" && e.mode != "regular") ||
        (e.expectation != "pass" && e.expectation != "fail"))
      fail("ParseError", "bad manifest line: " + line);
    entries.push_back(e);
  }

  auto run_entry = [&](const CorpusEntry& e) -> std::pair<bool, std::string> {
    std::string outcome;
    try {
      io::CachingResolver resolver;
      Mat a = io::parse_matrix(slurp((base / e.file).string()), resolver);
      Ring ring = resolver(a.rd->name);
      std::string bundle;
      if (e.mode == "regular") {
        RegularSearchOptions opts;
        opts.random_budget = cfg.search_budget;
        opts.seed = cfg.seed;
        auto d = diagonalize_regular(ring, a, opts);
        if (!d) throw Error("NoUnit", "search budget exhausted");
        bundle = io::write_regular_certificate(a, *d, ring.name());
      } else {
        bundle = io::write_ge_certificate(ge_diagonalize(ring, a), ring.name());
      }
      // round trip through the serialized form before trusting it
      io::CachingResolver fresh;
      outcome = io::verify_certificate_text(bundle, fresh).ok ? "pass" : "fail";
    } catch (const Error& err) {
      if (exit_code_for(err) == 2) throw;
      outcome = "fail";
    }
    bool matched = outcome == e.expectation;
    return {matched, e.file + " " + e.mode + " expected " + e.expectation + " got " + outcome +
                         (matched ? "" : "  MISMATCH")};
  };

  std::vector<std::pair<bool, std::string>> results(entries.size());
  int workers = std::max(1, cfg.threads);
  std::vector<std::future<void>> futs;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w)
    futs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1))
        results[i] = run_entry(entries[i]);
    }));
  for (auto& f : futs) f.get();

  bool all = true;
  for (const auto& [matched, text_line] : results) {
    std::cout << text_line << "\n";
    all = all && matched;
  }
  std::cout << (all ? "corpus ok\n" : "corpus mismatches\n");
  return all ? 0 : 1;
}

int cmd_enumerate(const JobConfig& cfg) {
  io::CachingResolver resolver;
  Ring ring = resolve_ring_argument(cfg.ring_arg, resolver, cfg.cap);
  MonoidTable table = enumerate_projective_classes(ring, cfg.bound, 4'000'000, cfg.iso_budget);
  std::cout << "ring " << ring.name() << "\nbound " << cfg.bound << "\nclasses "
            << table.base_count << "\n";
  for (std::size_t c = 0; c < table.base_count; ++c) {
    const Mat& rep = table.classes[c].idem;
    std::cout << "class " << c << " size " << table.sizes[c] << " rep " << rep.rows << "x"
              << rep.cols << "\n";
    std::ostringstream row;
    for (int i = 0; i < rep.rows; ++i) {
      row.str("");
      for (int j = 0; j < rep.cols; ++j) io::write_element(row, rep.at(i, j));
      std::cout << " " << row.str() << "\n";
    }
  }
  std::cout << "add-table\n";
  for (std::size_t i = 0; i < table.base_count; ++i) {
    for (std::size_t j = 0; j < table.base_count; ++j)
      std::cout << (j ? " " : "") << table.add(i, j);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact diagonalization and cancellation oracles for finite rings"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::string matrix_path, out_path, cert_path, ring_file, expect_ring, manifest_path,
      report_path;
  bool regular = false;

  auto add_common = [&](CLI::App* sub, bool ring_positional) {
    if (ring_positional)
      sub->add_option("ring", cfg.ring_arg, "ring preset name or ring spec file")->required();
    sub->add_option("--cap", cfg.cap, "maximum ring order")->check(CLI::PositiveNumber);
    sub->add_option("--iso-budget", cfg.iso_budget, "isomorphism search budget")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* classify = app.add_subcommand("classify", "exchange / stable rank / separativity");
  add_common(classify, true);
  classify->add_option("--bound", cfg.bound, "projective enumeration bound")
      ->check(CLI::PositiveNumber);
  classify->add_option("--report", report_path, "also write the verdicts to a file");

  CLI::App* diag = app.add_subcommand("diagonalize", "reduce a matrix, emit a certificate");
  add_common(diag, true);
  diag->add_option("matrix", matrix_path, "matrix file")->required();
  diag->add_option("-o,--output", out_path, "certificate output path");
  diag->add_flag("--regular", regular, "two-sided search for regular matrices");
  diag->add_option("--seed", cfg.seed, "seed for randomized searches");
  diag->add_option("--budget", cfg.search_budget, "random search budget")
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "replay a certificate bundle");
  verify->add_option("certificate", cert_path, "certificate file")->required();
  verify->add_option("--ring-file", ring_file, "ring spec file for non-preset rings");
  verify->add_option("--ring", expect_ring, "require the certificate to be over this ring");
  verify->add_option("--cap", cfg.cap, "maximum ring order");

  CLI::App* corpus = app.add_subcommand("corpus", "run a manifest of expected verdicts");
  corpus->add_option("manifest", manifest_path, "manifest file")->required();
  corpus->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  corpus->add_option("--seed", cfg.seed, "seed for randomized searches");
  corpus->add_option("--budget", cfg.search_budget, "random search budget")
      ->check(CLI::PositiveNumber);

  CLI::App* enumerate = app.add_subcommand("enumerate-projectives", "projective class table");
  add_common(enumerate, true);
  enumerate->add_option("--bound", cfg.bound, "projective enumeration bound")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(cfg, report_path);
    if (diag->parsed()) return cmd_diagonalize(cfg, matrix_path, out_path, regular);
    if (verify->parsed()) return cmd_verify(cert_path, ring_file, expect_ring, cfg.cap);
    if (corpus->parsed()) return cmd_corpus(cfg, manifest_path);
    if (enumerate->parsed()) return cmd_enumerate(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
