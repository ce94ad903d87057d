// Copyright 2026 The Disfix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// disfix: correct transcripts, generate and score synthetic corpora, serve
// the HTTP API.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <pthread.h>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "disfix/engine.hpp"
#include "disfix/error.hpp"
#include "disfix/json_io.hpp"
#include "disfix/lexicon.hpp"
#include "disfix/service.hpp"
#include "disfix/synthetic.hpp"

namespace {

using namespace disfix;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string lexicon_root(const std::string& flag, bool adversarial = false) {
  if (!flag.empty()) return flag;
  return (default_data_dir() /
          (adversarial ? "lexicons-adversarial" : "lexicons"))
      .string();
}

// Opens `path` for reading, or stdin for "-".
std::unique_ptr<std::istream, void (*)(std::istream*)> open_input(
    const std::string& path) {
  if (path == "-") return {&std::cin, [](std::istream*) {}};
  auto* in = new std::ifstream(path, std::ios::binary);
  if (!*in) {
    delete in;
    throw ConfigError("cannot open " + path);
  }
  return {in, [](std::istream* p) { delete p; }};
}

struct CorrectArgs {
  std::string lang = "en";
  std::string in = "-";
  bool json = false;
  bool text = false;
  std::string lexicons;
  unsigned jobs = 1;
};

int cmd_correct(const CorrectArgs& args) {
  const Language lang = parse_language(args.lang);
  const DetectorConfig cfg = load_detector_config(lexicon_root(args.lexicons));
  if (!cfg.supports(lang)) {
    throw ConfigError("no lexicon for language '" + args.lang + "'");
  }
  auto in = open_input(args.in);

  const std::size_t jobs = std::max(1u, args.jobs);
  const std::size_t batch = 512 * jobs;
  std::vector<std::string> lines;
  std::vector<std::string> out;
  std::vector<std::string> errors;
  std::size_t line_no = 0;
  bool failed = false;

  const auto process = [&](std::size_t k) {
    const auto& line = lines[k];
    if (!utf8::is_valid(line)) {
      errors[k] = "invalid UTF-8";
      return;
    }
    try {
      auto result = correct(tokenize(line, lang), cfg);
      out[k] = args.json ? to_json(result).dump() : detokenize(result.fluent);
    } catch (const Error& e) {
      errors[k] = e.what();
    }
  };

  const auto flush = [&] {
    out.assign(lines.size(), {});
    errors.assign(lines.size(), {});
    if (jobs == 1 || lines.size() < 2) {
      for (std::size_t k = 0; k < lines.size(); ++k) process(k);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t k = w; k < lines.size(); k += jobs) process(k);
        });
      }
      for (auto& t : pool) t.join();
    }
    const std::size_t first = line_no - lines.size() + 1;
    for (std::size_t k = 0; k < lines.size(); ++k) {
      if (!errors[k].empty()) {
        failed = true;
        std::cerr << "line " << first + k << ": " << errors[k] << '\n';
        continue;
      }
      std::cout << out[k] << '\n';
    }
    lines.clear();
  };

  std::string line;
  while (std::getline(*in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (lines.size() == batch) flush();
  }
  flush();
  std::cout.flush();
  return failed ? kExitData : kExitOk;
}

struct SynthArgs {
  std::string seeds;
  std::size_t n = 0;
  std::string mix;
  std::uint64_t seed = 42;
  std::string out = "-";
  std::string lang = "en";
  std::string lexicons;
  bool adversarial = false;
};

int cmd_synth(const SynthArgs& args) {
  CorpusOptions options;
  options.lang = parse_language(args.lang);
  options.count = args.n;
  options.rng_seed = args.seed;
  if (!args.mix.empty()) options.mix = Mix::parse(args.mix);
  options.mix.validate();

  const DetectorConfig cfg =
      load_detector_config(lexicon_root(args.lexicons, args.adversarial));
  const std::string seeds_path =
      args.seeds.empty() ? (default_data_dir() / "corpus" /
                            ("seeds_" + args.lang + ".txt"))
                               .string()
                         : args.seeds;
  std::vector<std::string> seeds;
  {
    auto in = open_input(seeds_path);
    std::string line;
    while (std::getline(*in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      if (!utf8::is_valid(line)) {
        throw ParseError("seed sentence is not valid UTF-8", seeds.size() + 1);
      }
      seeds.push_back(std::move(line));
    }
  }
  if (seeds.empty()) throw ConfigError("seeds file " + seeds_path + " is empty");

  const auto corpus = generate_corpus(seeds, options, cfg);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (args.out != "-") {
    file.open(args.out, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot write " + args.out);
    out = &file;
  }
  for (const auto& u : corpus) *out << to_json(u).dump() << '\n';
  out->flush();
  if (!*out) throw ConfigError("write to " + args.out + " failed");
  return kExitOk;
}

struct EvalArgs {
  std::string corpus = "-";
  bool json = false;
  std::string lexicons;
};

void print_table(const EvalReport& report) {
  std::printf("%-12s %6s %7s %7s %7s %7s %9s %9s %9s\n", "type", "utts",
              "tokens", "tp", "fp", "fn", "precision", "recall", "f1");
  const auto row = [](const std::string& name, const Prf& p) {
    std::printf("%-12s %6zu %7zu %7zu %7zu %7zu %9.4f %9.4f %9.4f\n",
                name.c_str(), p.utterances, p.tokens, p.tp, p.fp, p.fn,
                p.precision(), p.recall(), p.f1());
  };
  for (auto t : kAllTypes) {
    auto it = report.per_type.find(t);
    if (it != report.per_type.end()) row(std::string(type_name(t)), it->second);
  }
  row("overall", report.overall);
  std::printf("utterance type accuracy: %.4f (%zu/%zu)\n",
              report.utterance_type_accuracy(), report.type_matches,
              report.corpus_size);
}

int cmd_eval(const EvalArgs& args) {
  const DetectorConfig cfg = load_detector_config(lexicon_root(args.lexicons));
  const Labeler labeler = engine_labeler(cfg);
  auto in = open_input(args.corpus);
  EvalReport report;
  read_corpus(*in, [&](AnnotatedUtterance u) {
    if (!cfg.supports(u.lang)) {
      throw ConfigError("no lexicon for language '" +
                        std::string(language_code(u.lang)) + "'");
    }
    report.merge(evaluate(std::span<const AnnotatedUtterance>(&u, 1), labeler));
  });
  if (report.corpus_size == 0) throw ConfigError("empty corpus");
  if (args.json) {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    print_table(report);
  }
  return kExitOk;
}

struct ServeArgs {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::string backend_mode = "mock";
  std::string asr_url;
  std::string tts_url;
  int backend_timeout_ms = 10000;
  std::string lexicons;
  std::string prompts;
  std::string asr_fixtures;
  int audio_ttl = 15 * 60;
  std::size_t max_upload = 16 * 1024 * 1024;
  std::vector<std::string> languages;
  std::string cors_origin = "*";
  bool print_config = false;
};

ServiceConfig service_config(const ServeArgs& args) {
  ServiceConfig c = ServiceConfig::defaults();
  c.host = args.host;
  c.port = args.port;
  c.backend_mode = parse_backend_mode(args.backend_mode);
  c.asr_url = args.asr_url;
  c.tts_url = args.tts_url;
  c.backend_timeout_ms = args.backend_timeout_ms;
  if (!args.lexicons.empty()) c.lexicon_dir = args.lexicons;
  if (!args.prompts.empty()) c.prompt_bank_path = args.prompts;
  c.asr_fixtures = args.asr_fixtures;
  c.audio_ttl_seconds = args.audio_ttl;
  c.max_upload_bytes = args.max_upload;
  if (!args.languages.empty()) {
    c.languages.clear();
    for (const auto& code : args.languages) {
      c.languages.push_back(parse_language(code));
    }
  }
  c.cors_origin = args.cors_origin;
  c.validate();
  return c;
}

int cmd_serve(const ServeArgs& args) {
  const ServiceConfig config = service_config(args);
  if (args.print_config) {
    std::cout << config.to_json().dump(2) << '\n';
    return kExitOk;
  }

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Service service(config);
  std::thread([&service, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.stop();
  }).detach();

  std::cerr << "disfix: serving on " << config.host << ':' << config.port
            << " (" << backend_mode_name(config.backend_mode)
            << " backends)\n";
  if (!service.listen()) {
    throw ConfigError("cannot listen on " + config.host + ":" +
                      std::to_string(config.port));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disfluency correction for English and Hindi transcripts."};
  app.require_subcommand(1);
  app.set_version_flag("--version", DISFIX_VERSION);

  CorrectArgs correct_args;
  auto* correct_cmd =
      app.add_subcommand("correct", "Remove disfluencies, one utterance per "
                                    "line. Lines that fail are reported on "
                                    "stderr and produce no output.");
  correct_cmd->add_option("--lang", correct_args.lang, "en or hi")
      ->capture_default_str();
  correct_cmd->add_option("--in", correct_args.in, "input file, - for stdin")
      ->capture_default_str();
  auto* json_flag =
      correct_cmd->add_flag("--json", correct_args.json, "full JSON per line");
  correct_cmd->add_flag("--text", correct_args.text, "fluent text per line")
      ->excludes(json_flag);
  correct_cmd->add_option("--lexicons", correct_args.lexicons,
                          "lexicon root with en/ and hi/");
  correct_cmd->add_option("--jobs", correct_args.jobs, "worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  SynthArgs synth_args;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate an annotated synthetic corpus.");
  synth_cmd->add_option("--seeds", synth_args.seeds,
                        "fluent sentences, one per line");
  synth_cmd->add_option("--n", synth_args.n,
                        "utterances to generate (default one per seed)");
  synth_cmd->add_option("--mix", synth_args.mix,
                        "shares, e.g. Filler=0.5,Repetition=0.5");
  synth_cmd->add_option("--seed", synth_args.seed, "rng seed")
      ->capture_default_str();
  synth_cmd->add_option("--out", synth_args.out, "output file, - for stdout")
      ->capture_default_str();
  synth_cmd->add_option("--lang", synth_args.lang, "en or hi")
      ->capture_default_str();
  synth_cmd->add_option("--lexicons", synth_args.lexicons,
                        "lexicon root with en/ and hi/");
  synth_cmd->add_flag("--adversarial", synth_args.adversarial,
                      "draw from the disjoint lexicon set");

  EvalArgs eval_args;
  auto* eval_cmd =
      app.add_subcommand("eval", "Score the engine against a gold corpus.");
  eval_cmd->add_option("--corpus", eval_args.corpus, "JSONL, - for stdin")
      ->capture_default_str();
  eval_cmd->add_flag("--json", eval_args.json, "print the report as JSON");
  eval_cmd->add_option("--lexicons", eval_args.lexicons,
                       "lexicon root with en/ and hi/");

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service.");
  serve_cmd->add_option("--host", serve_args.host)
      ->envname("DISFIX_HOST")
      ->capture_default_str();
  serve_cmd->add_option("--port", serve_args.port)
      ->envname("DISFIX_PORT")
      ->capture_default_str();
  serve_cmd->add_option("--backend-mode", serve_args.backend_mode,
                        "mock or remote")
      ->envname("DISFIX_BACKEND_MODE")
      ->capture_default_str();
  serve_cmd->add_option("--asr-url", serve_args.asr_url)
      ->envname("DISFIX_ASR_URL");
  serve_cmd->add_option("--tts-url", serve_args.tts_url)
      ->envname("DISFIX_TTS_URL");
  serve_cmd->add_option("--backend-timeout", serve_args.backend_timeout_ms,
                        "milliseconds")
      ->envname("DISFIX_BACKEND_TIMEOUT_MS")
      ->capture_default_str();
  serve_cmd->add_option("--lexicons", serve_args.lexicons)
      ->envname("DISFIX_LEXICONS");
  serve_cmd->add_option("--prompts", serve_args.prompts)
      ->envname("DISFIX_PROMPTS");
  serve_cmd->add_option("--asr-fixtures", serve_args.asr_fixtures,
                        "mock transcript table (JSONL)")
      ->envname("DISFIX_ASR_FIXTURES");
  serve_cmd->add_option("--audio-ttl", serve_args.audio_ttl, "seconds")
      ->envname("DISFIX_AUDIO_TTL")
      ->capture_default_str();
  serve_cmd->add_option("--max-upload", serve_args.max_upload, "bytes")
      ->envname("DISFIX_MAX_UPLOAD")
      ->capture_default_str();
  serve_cmd->add_option("--languages", serve_args.languages,
                        "served language codes")
      ->delimiter(',')
      ->envname("DISFIX_LANGUAGES");
  serve_cmd->add_option("--cors-origin", serve_args.cors_origin,
                        "empty disables CORS headers")
      ->envname("DISFIX_CORS_ORIGIN")
      ->capture_default_str();
  serve_cmd->add_flag("--print-config", serve_args.print_config,
                      "print the effective configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*correct_cmd) return cmd_correct(correct_args);
    if (*synth_cmd) return cmd_synth(synth_args);
    if (*eval_cmd) return cmd_eval(eval_args);
    if (*serve_cmd) return cmd_serve(serve_args);
  } catch (const ParseError& e) {
    std::cerr << "disfix: " << e.what() << '\n';
    return kExitData;
  } catch (const ContractViolation& e) {
    std::cerr << "disfix: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "disfix: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
