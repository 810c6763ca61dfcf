// Copyright 2026 The HQA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "hqa/tools/cli.hpp"

#include <cstdint>
#include <exception>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "hqa/errors.hpp"
#include "hqa/ink_io.hpp"
#include "hqa/pipeline.hpp"
#include "hqa/tools/service.hpp"

namespace hqa::tools {
namespace {

namespace fs = std::filesystem;

struct Args {
  std::string sample, templates, report, corpus, out, host = "127.0.0.1", cors = "*";
  std::uint64_t seed = 0;
  int port = 8080;
};

int cmd_analyze(const Args& a, std::ostream& out) {
  const TemplateSet set = TemplateSet::load(a.templates);
  const std::string report = report_json(analyze(load_sample(a.sample), set));
  if (a.report.empty()) {
    out << report;
  } else {
    write_text_file(a.report, report);
  }
  return kExitOk;
}

int cmd_fit(const Args& a, std::ostream& out) {
  const Corpus corpus = load_corpus(a.corpus);
  std::vector<FitReport> reports;
  const TemplateSet set(fit_templates(corpus, PipelineConfig{}, &reports));
  set.save(a.out);
  for (const auto& r : reports) {
    out << r.target;
    for (Criterion c : kAllCriteria) {
      out << ' ' << to_string(c) << '=' << r.validation_counts[static_cast<std::size_t>(c)];
    }
    out << '\n';
  }
  out << "wrote " << set.size() << " templates to " << a.out << '\n';
  return kExitOk;
}

int cmd_synth(const Args& a, std::ostream& out) {
  const Corpus corpus = build_corpus(starter_specs(), CorpusSizes{}, a.seed);
  write_corpus(corpus, a.out);
  out << "wrote " << corpus.entries.size() << " samples to " << a.out << '\n';
  return kExitOk;
}

int cmd_serve(const Args& a, std::ostream& out) {
  const TemplateSet set = TemplateSet::load(a.templates);
  Service service(set, {a.host, a.port, a.cors});
  const int port = service.bind();
  out << "serving " << set.size() << " templates on http://" << a.host << ':' << port << '\n'
      << std::flush;
  service.run();
  return kExitOk;
}

int cmd_eval(const Args& a, std::ostream& out) {
  const Corpus corpus = load_corpus(a.corpus);
  out << format_eval(evaluate(corpus, TemplateSet::load(a.templates)));
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Handwriting quality analysis"};
  app.require_subcommand(1);
  Args a;

  auto* analyze_cmd = app.add_subcommand("analyze", "Score one ink sample");
  analyze_cmd->add_option("--sample", a.sample, "Ink sample JSON")->required();
  analyze_cmd->add_option("--templates", a.templates, "Template directory")->required();
  analyze_cmd->add_option("--report", a.report, "Write the report here instead of stdout");

  auto* fit_cmd = app.add_subcommand("fit", "Build templates from a corpus");
  fit_cmd->add_option("--corpus", a.corpus, "Corpus manifest")->required();
  fit_cmd->add_option("--out", a.out, "Output template directory")->required();

  auto* synth_cmd = app.add_subcommand("synth", "Write the synthetic starter corpus");
  synth_cmd->add_option("--out", a.out, "Output directory")->required();
  synth_cmd->add_option("--seed", a.seed, "Corpus seed")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--templates", a.templates, "Template directory")->required();
  serve_cmd->add_option("--port", a.port, "Listen port (0 picks one)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", a.host, "Listen address");
  serve_cmd->add_option("--cors-origin", a.cors, "Allowed browser origin");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate templates on a corpus test split");
  eval_cmd->add_option("--corpus", a.corpus, "Corpus manifest")->required();
  eval_cmd->add_option("--templates", a.templates, "Template directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(a, out);
    if (*fit_cmd) return cmd_fit(a, out);
    if (*synth_cmd) return cmd_synth(a, out);
    if (*serve_cmd) return cmd_serve(a, out);
    return cmd_eval(a, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace hqa::tools
