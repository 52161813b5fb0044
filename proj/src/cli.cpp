#include "ddr/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ddr/bench.hpp"
#include "ddr/dataset.hpp"
#include "ddr/errors.hpp"
#include "ddr/extract.hpp"
#include "ddr/generator.hpp"
#include "ddr/index.hpp"
#include "ddr/index_io.hpp"
#include "ddr/json_io.hpp"
#include "ddr/library.hpp"
#include "ddr/metrics.hpp"
#include "ddr/service.hpp"
#include "ddr/synthetic.hpp"
#include "ddr/text.hpp"

namespace ddr {

using nlohmann::json;

namespace {

// "-" means the process stream; anything else is a file.
std::istream& open_input(const std::string& path, std::istream& stdin_stream,
                         std::ifstream& file) {
  if (path == "-") return stdin_stream;
  file.open(path, std::ios::binary);
  if (!file) raise(ErrorCode::IoError, "cannot open for reading: " + path);
  return file;
}

std::ostream& open_output(const std::string& path, std::ostream& stdout_stream,
                          std::ofstream& file) {
  if (path == "-") return stdout_stream;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) raise(ErrorCode::IoError, "cannot open for writing: " + path);
  return file;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::string t(text::trim(line));
    if (!t.empty()) lines.push_back(std::move(t));
  }
  return lines;
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

KeywordList keywords_or_default(const std::string& path) {
  return path.empty() ? KeywordList::defaults() : KeywordList::load_file(path);
}

std::vector<LibraryItem> load_library_any(const std::string& path, bool plain,
                                          std::istream& stdin_stream) {
  if (path == "-") {
    return plain ? load_library_plain(stdin_stream) : load_library_jsonl(stdin_stream);
  }
  if (plain) {
    std::ifstream file(path, std::ios::binary);
    if (!file) raise(ErrorCode::IoError, "cannot open library file: " + path);
    return load_library_plain(file);
  }
  return load_library_file(path);
}

void print_match_table(const std::vector<MatchResult>& results, std::ostream& out) {
  for (const auto& r : results) {
    out << r.query << "  " << match_status_name(r.status);
    if (!r.error.empty()) out << "  error=" << r.error;
    if (!r.resolved.empty()) {
      out << "  resolved=";
      for (std::size_t i = 0; i < r.resolved.size(); ++i)
        out << (i ? "," : "") << r.resolved[i];
    }
    if (!r.partial_hits.empty()) {
      out << "  partial=";
      for (std::size_t i = 0; i < r.partial_hits.size(); ++i)
        out << (i ? "," : "") << r.partial_hits[i];
    }
    out << "\n";
  }
}

void print_stats_table(const DatasetStats& stats, std::ostream& out) {
  out << "difficulty        num  depend_rate  depend_length\n";
  for (int level = 0; level < 10; ++level) {
    const auto& ls = stats.levels[level];
    out << std::left << std::setw(12) << level << std::right << std::setw(9) << ls.num
        << std::setw(13) << std::fixed << std::setprecision(4) << ls.depend_rate
        << std::setw(15) << std::setprecision(4) << ls.depend_length
        << (ls.empty ? "  (empty)" : "") << "\n";
  }
  out.unsetf(std::ios::fixed);
}

void print_eval_table(const AggregateScore& agg, const std::string& predictor,
                      std::ostream& out) {
  out << "n = " << agg.n << "  predictor = " << predictor << "\n";
  out << "metric          mean       std\n";
  auto row = [&](const char* name, double m, double s) {
    out << std::left << std::setw(12) << name << std::right << std::fixed
        << std::setprecision(4) << std::setw(10) << m << std::setw(10) << s << "\n";
  };
  row("precision", agg.mean.precision, agg.std.precision);
  row("recall", agg.mean.recall, agg.std.recall);
  row("f1", agg.mean.f1, agg.std.f1);
  out.unsetf(std::ios::fixed);
}

struct CliStreams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

void cmd_index_build(const std::string& library_path, const std::string& out_path, bool plain,
                     CliStreams& io) {
  auto items = load_library_any(library_path, plain, io.in);
  std::vector<std::string> warnings;
  DependencyIndex index = DependencyIndex::build(std::move(items), &warnings);
  for (const auto& w : warnings) io.err << "warning: " << w << "\n";
  save_index_file(index, out_path);
  json summary = to_json(index.info());
  summary["out"] = out_path;
  io.out << summary.dump() << "\n";
}

void cmd_verify(const std::string& index_path, const std::string& candidates_path, bool pretty,
                CliStreams& io) {
  DependencyIndex index = load_index_file(index_path);
  std::ifstream file;
  auto queries = read_lines(open_input(candidates_path, io.in, file));
  auto results = index.verify_batch(queries);
  if (pretty)
    print_match_table(results, io.out);
  else
    io.out << to_json(results).dump() << "\n";
}

void cmd_extract(const std::string& code_path, const std::string& index_path,
                 const std::string& keywords_path, bool pretty, CliStreams& io) {
  std::ifstream file;
  std::string code = read_all(open_input(code_path, io.in, file));
  CandidateSet cs = extract_candidates(code, keywords_or_default(keywords_path));
  json out_json{{"candidates", cs.candidates}};
  if (!index_path.empty()) {
    DependencyIndex index = load_index_file(index_path);
    DependencyList dl = resolve_dependencies(index, cs);
    out_json = to_json(dl);
    out_json["candidates"] = cs.candidates;
  }
  if (pretty) {
    io.out << "candidates:";
    for (const auto& c : cs.candidates) io.out << " " << c;
    io.out << "\n";
    if (out_json.contains("dependencies")) {
      io.out << "dependencies:";
      for (const auto& d : out_json["dependencies"]) io.out << " " << d.get<std::string>();
      io.out << "\n";
      for (const auto& d : out_json["dropped"])
        io.out << "dropped: " << d["candidate"].get<std::string>() << " ("
               << d["reason"].get<std::string>() << ")\n";
    }
  } else {
    io.out << out_json.dump() << "\n";
  }
}

void cmd_dataset_build(const std::string& index_path, const std::string& corpus_path,
                       const std::string& out_path, const std::string& report_path,
                       const std::string& keywords_path, unsigned jobs, bool keep_formal,
                       bool strict, CliStreams& io) {
  DependencyIndex index = load_index_file(index_path);
  KeywordList keywords = keywords_or_default(keywords_path);
  std::ifstream corpus_file;
  std::istream& corpus = open_input(corpus_path, io.in, corpus_file);
  std::ofstream out_file;
  std::ostream& out = open_output(out_path, io.out, out_file);

  BuildDatasetOptions options;
  options.jobs = jobs;
  options.keep_formal = keep_formal;
  options.strict = strict;
  RunReport report = build_dataset(index, keywords, corpus, out, options);
  out.flush();

  json report_json = to_json(report);
  if (!report_path.empty()) {
    std::ofstream rf(report_path, std::ios::trunc);
    if (!rf) raise(ErrorCode::IoError, "cannot open for writing: " + report_path);
    rf << report_json.dump() << "\n";
  }
  // Keep the report off stdout when the labeled rows are going there.
  (out_path == "-" ? io.err : io.out) << report_json.dump() << "\n";
  if (report.errored > 0)
    io.err << "warning: " << report.errored << " malformed corpus line(s) skipped\n";
}

void cmd_dataset_stats(const std::string& labeled_path, bool pretty, CliStreams& io) {
  std::ifstream file;
  auto samples = read_labeled(open_input(labeled_path, io.in, file));
  DatasetStats stats = compute_stats(samples);
  if (pretty)
    print_stats_table(stats, io.out);
  else
    io.out << to_json(stats).dump() << "\n";
}

void cmd_dataset_split(const std::string& labeled_path, const std::string& out_dir,
                       std::uint64_t seed, const std::string& prefix, CliStreams& io) {
  std::ifstream file;
  auto samples = read_labeled(open_input(labeled_path, io.in, file));
  SplitResult split = split_corpus(samples, seed);
  for (const auto& w : split.warnings) io.err << "warning: " << w << "\n";

  auto write_set = [&](const std::string& name, const std::vector<LabeledSample>& set) {
    std::string path = out_dir + "/" + prefix + name + ".jsonl";
    std::ofstream out(path, std::ios::trunc);
    if (!out) raise(ErrorCode::IoError, "cannot open for writing: " + path);
    for (const auto& s : set)
      out << labeled_to_jsonl_line(s, !s.formal_statement.empty()) << "\n";
    return path;
  };

  json summary;
  summary["train"] = {{"path", write_set("train", split.train)}, {"num", split.train.size()}};
  for (int t = 0; t < 5; ++t)
    summary[kTestSetNames[t]] = {{"path", write_set(kTestSetNames[t], split.tests[t])},
                                 {"num", split.tests[t].size()}};
  io.out << summary.dump() << "\n";
}

void cmd_eval(const std::string& pred_path, const std::string& gold_path,
              const std::string& lexical_library, std::size_t k, const std::string& csv_path,
              bool pretty, CliStreams& io) {
  std::ifstream gold_file;
  auto gold = read_labeled(open_input(gold_path, io.in, gold_file));

  std::map<std::string, std::vector<std::string>> predictions;
  std::string predictor;
  if (!lexical_library.empty()) {
    predictor = "lexical";
    auto items = load_library_file(lexical_library);
    for (const auto& g : gold) {
      std::vector<std::string> ranked;
      for (auto& ri : lexical_retrieve(items, g.informal_statement, k))
        ranked.push_back(std::move(ri.fqn));
      predictions[g.id] = std::move(ranked);
    }
  } else {
    predictor = "file";
    std::ifstream pred_file;
    std::istream& pin = open_input(pred_path, io.in, pred_file);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(pin, line)) {
      ++line_no;
      if (text::trim(line).empty()) continue;
      json obj = json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object() || !obj.contains("id") ||
          !obj["id"].is_string() || !obj.contains("dependencies") ||
          !obj["dependencies"].is_array())
        raise(ErrorCode::MalformedLine,
              "line " + std::to_string(line_no) + ": expected {id, dependencies}");
      std::vector<std::string> deps;
      for (const auto& d : obj["dependencies"]) {
        if (!d.is_string())
          raise(ErrorCode::MalformedLine,
                "line " + std::to_string(line_no) + ": non-string dependency");
        deps.push_back(d.get<std::string>());
      }
      predictions[obj["id"].get<std::string>()] = std::move(deps);
    }
  }

  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
  json per_sample = json::array();
  pairs.reserve(gold.size());
  for (const auto& g : gold) {
    auto it = predictions.find(g.id);
    std::vector<std::string> pred = it != predictions.end() ? it->second
                                                            : std::vector<std::string>{};
    RetrievalScore s = score_sample(pred, g.dependencies);
    per_sample.push_back({{"id", g.id},
                          {"precision", s.precision},
                          {"recall", s.recall},
                          {"f1", s.f1}});
    pairs.emplace_back(std::move(pred), g.dependencies);
  }
  AggregateScore agg = score_corpus(pairs);

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::trunc);
    if (!csv) raise(ErrorCode::IoError, "cannot open for writing: " + csv_path);
    csv << "id,precision,recall,f1\n";
    csv << std::setprecision(17);
    for (const auto& row : per_sample)
      csv << row["id"].get<std::string>() << "," << row["precision"].get<double>() << ","
          << row["recall"].get<double>() << "," << row["f1"].get<double>() << "\n";
  }

  if (pretty) {
    print_eval_table(agg, predictor, io.out);
  } else {
    json report = to_json(agg);
    report["per_sample"] = per_sample;
    report["predictor"] = predictor;
    io.out << report.dump() << "\n";
  }
}

void cmd_bench(const std::string& library_path, std::size_t synthetic_n, std::size_t queries,
               std::uint64_t seed, bool compare, std::size_t naive_sample, bool pretty,
               CliStreams& io) {
  std::vector<LibraryItem> items;
  if (!library_path.empty())
    items = load_library_file(library_path);
  else
    items = synthetic_library(synthetic_n, seed);

  BenchmarkOptions options;
  options.queries = queries;
  options.seed = seed + 1;  // query stream independent of the library stream
  options.compare = compare;
  options.naive_sample = naive_sample;
  BenchmarkReport report = run_benchmark(std::move(items), options);

  if (pretty) {
    io.out << "N=" << report.N << " M=" << report.M << " d=" << report.d << " s=" << report.s
           << "\nbuild_seconds=" << report.build_seconds
           << "\nqueries_per_second=" << report.queries_per_second << "\n";
    if (report.brute_force_queries_per_second)
      io.out << "brute_force_queries_per_second=" << *report.brute_force_queries_per_second
             << " (timed on " << report.brute_force_sample << " queries)"
             << "\nspeedup=" << *report.speedup << "x\n";
  } else {
    io.out << to_json(report).dump() << "\n";
  }
}

void cmd_serve(ServiceConfig config, CliStreams& io) {
  if (config.index_path.empty())
    raise(ErrorCode::IoError, "no index: pass --index or set DDR_INDEX_PATH");
  VerifyService service(std::move(config));
  io.err << "listening on " << service.config().host << ":" << service.config().port << "\n";
  service.listen();
}

}  // namespace

int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CliStreams io{in, out, err};
  CLI::App app{"dependency verification engine for formal-math libraries"};
  app.require_subcommand(1);

  // index build
  auto* index_cmd = app.add_subcommand("index", "build and inspect indexes");
  index_cmd->require_subcommand(1);
  auto* index_build = index_cmd->add_subcommand("build", "build an index from a library file");
  std::string ib_library, ib_out;
  bool ib_plain = false;
  index_build->add_option("--library", ib_library, "library file (JSONL or plain), - for stdin")
      ->required();
  index_build->add_option("--out", ib_out, "output index path")->required();
  index_build->add_flag("--plain", ib_plain, "force one-identifier-per-line input");
  index_build->callback([&]() { cmd_index_build(ib_library, ib_out, ib_plain, io); });

  // verify
  auto* verify = app.add_subcommand("verify", "verify candidate names against an index");
  std::string v_index, v_candidates = "-";
  bool v_pretty = false;
  verify->add_option("--index", v_index, "index file")->required();
  verify->add_option("--candidates", v_candidates, "one name per line, - for stdin");
  verify->add_flag("--pretty", v_pretty, "table output");
  verify->callback([&]() { cmd_verify(v_index, v_candidates, v_pretty, io); });

  // extract
  auto* extract = app.add_subcommand("extract", "extract candidates from formal code");
  std::string e_code = "-", e_index, e_keywords;
  bool e_pretty = false;
  extract->add_option("--code", e_code, "formal code file, - for stdin");
  extract->add_option("--index", e_index, "resolve against this index");
  extract->add_option("--keywords", e_keywords, "keyword blacklist file");
  extract->add_flag("--pretty", e_pretty, "table output");
  extract->callback([&]() { cmd_extract(e_code, e_index, e_keywords, e_pretty, io); });

  // dataset build | stats | split
  auto* dataset = app.add_subcommand("dataset", "corpus labeling, statistics and splits");
  dataset->require_subcommand(1);

  auto* ds_build = dataset->add_subcommand("build", "label a corpus with verified dependencies");
  std::string db_index, db_corpus = "-", db_out = "-", db_report, db_keywords;
  unsigned db_jobs = 1;
  bool db_keep_formal = false, db_strict = false;
  ds_build->add_option("--index", db_index, "index file")->required();
  ds_build->add_option("--corpus", db_corpus, "corpus JSONL, - for stdin");
  ds_build->add_option("--out", db_out, "labeled JSONL output, - for stdout");
  ds_build->add_option("--report", db_report, "also write the run report here");
  ds_build->add_option("--keywords", db_keywords, "keyword blacklist file");
  ds_build->add_option("--jobs", db_jobs, "parallel labeling workers")->check(CLI::Range(1u, 256u));
  ds_build->add_flag("--keep-formal", db_keep_formal, "retain formal_statement in output rows");
  ds_build->add_flag("--strict", db_strict, "fail on the first malformed corpus line");
  ds_build->callback([&]() {
    cmd_dataset_build(db_index, db_corpus, db_out, db_report, db_keywords, db_jobs,
                      db_keep_formal, db_strict, io);
  });

  auto* ds_stats = dataset->add_subcommand("stats", "per-difficulty dependency statistics");
  std::string dst_labeled = "-";
  bool dst_pretty = false;
  ds_stats->add_option("--labeled", dst_labeled, "labeled JSONL, - for stdin");
  ds_stats->add_flag("--pretty", dst_pretty, "table output");
  ds_stats->callback([&]() { cmd_dataset_stats(dst_labeled, dst_pretty, io); });

  auto* ds_split = dataset->add_subcommand("split", "difficulty-based train/test splits");
  std::string dsp_labeled = "-", dsp_out_dir = ".", dsp_prefix;
  std::uint64_t dsp_seed = 0;
  ds_split->add_option("--labeled", dsp_labeled, "labeled JSONL, - for stdin");
  ds_split->add_option("--out-dir", dsp_out_dir, "output directory");
  ds_split->add_option("--seed", dsp_seed, "sampling seed")->required();
  ds_split->add_option("--prefix", dsp_prefix, "output filename prefix");
  ds_split->callback([&]() {
    cmd_dataset_split(dsp_labeled, dsp_out_dir, dsp_seed, dsp_prefix, io);
  });

  // eval
  auto* eval = app.add_subcommand("eval", "precision/recall/F1 against gold labels");
  std::string ev_pred, ev_gold, ev_lexical, ev_csv;
  std::size_t ev_k = 5;
  bool ev_pretty = false;
  eval->add_option("--pred", ev_pred, "predictions JSONL {id, dependencies}");
  eval->add_option("--gold", ev_gold, "gold labeled JSONL, - for stdin")->required();
  eval->add_option("--lexical-from-library", ev_lexical,
                   "skip --pred; rank top-k library items by lexical similarity");
  eval->add_option("--k", ev_k, "top-k cutoff for the lexical baseline");
  eval->add_option("--csv", ev_csv, "write per-sample scores as CSV");
  eval->add_flag("--pretty", ev_pretty, "table output");
  eval->callback([&]() {
    if (ev_pred.empty() && ev_lexical.empty())
      throw CLI::RequiredError("--pred or --lexical-from-library");
    cmd_eval(ev_pred, ev_gold, ev_lexical, ev_k, ev_csv, ev_pretty, io);
  });

  // bench
  auto* bench = app.add_subcommand("bench", "index build/query throughput");
  std::string b_library;
  std::size_t b_synthetic = 0, b_queries = 10000, b_naive_sample = 0;
  std::uint64_t b_seed = 1;
  bool b_compare = false, b_pretty = false;
  bench->add_option("--library", b_library, "library file");
  bench->add_option("--synthetic", b_synthetic, "generate a synthetic library of this size");
  bench->add_option("--queries", b_queries, "query count")->check(CLI::PositiveNumber);
  bench->add_option("--seed", b_seed, "generator seed");
  bench->add_flag("--compare", b_compare, "also time the naive linear-scan matcher");
  bench->add_option("--naive-sample", b_naive_sample,
                    "time the naive matcher on this many queries (0 = all)");
  bench->add_flag("--pretty", b_pretty, "text output");
  bench->callback([&]() {
    if (b_library.empty() && b_synthetic == 0)
      throw CLI::RequiredError("--library or --synthetic");
    cmd_bench(b_library, b_synthetic, b_queries, b_seed, b_compare, b_naive_sample, b_pretty,
              io);
  });

  // serve
  auto* serve = app.add_subcommand("serve", "run the verification HTTP service");
  ServiceConfig s_cfg = service_config_from_env();
  std::string s_bind, s_stub, s_gen_url, s_key_env, s_token, s_keywords;
  int s_timeout_ms = 0, s_concurrency = 0;
  serve->add_option("--index", s_cfg.index_path, "index file (env DDR_INDEX_PATH)");
  serve->add_option("--bind", s_bind, "host:port (env DDR_BIND_ADDR)");
  serve->add_option("--generator-url", s_gen_url, "external generator endpoint");
  serve->add_option("--generator-stub", s_stub, "file-stub generator mapping JSON");
  serve->add_option("--api-key-env", s_key_env, "env var holding the generator bearer token");
  serve->add_option("--timeout-ms", s_timeout_ms, "generator timeout (env DDR_TIMEOUT_MS)");
  serve->add_option("--token", s_token, "require this bearer token on requests");
  serve->add_option("--keywords", s_keywords, "keyword blacklist file");
  serve->add_option("--concurrency", s_concurrency, "max concurrent generator calls");
  serve->callback([&]() {
    if (!s_bind.empty()) {
      auto colon = s_bind.rfind(':');
      if (colon == std::string::npos) {
        s_cfg.host = s_bind;
      } else {
        s_cfg.host = s_bind.substr(0, colon);
        s_cfg.port = std::atoi(s_bind.c_str() + colon + 1);
      }
    }
    if (!s_gen_url.empty()) {
      GeneratorConfig gen = s_cfg.generator.value_or(GeneratorConfig{});
      gen.kind = GeneratorKind::ExternalHttp;
      gen.endpoint = s_gen_url;
      s_cfg.generator = std::move(gen);
    }
    if (!s_stub.empty()) {
      GeneratorConfig gen;
      gen.kind = GeneratorKind::FileStub;
      gen.mapping_path = s_stub;
      if (s_cfg.generator) gen.timeout_ms = s_cfg.generator->timeout_ms;
      s_cfg.generator = std::move(gen);
    }
    if (!s_key_env.empty() && s_cfg.generator) s_cfg.generator->api_key_env = s_key_env;
    if (s_timeout_ms > 0 && s_cfg.generator) s_cfg.generator->timeout_ms = s_timeout_ms;
    if (!s_token.empty()) s_cfg.auth_token = s_token;
    if (!s_keywords.empty()) s_cfg.keywords_path = s_keywords;
    if (s_concurrency > 0) s_cfg.generator_concurrency = s_concurrency;
    cmd_serve(std::move(s_cfg), io);
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ddr
