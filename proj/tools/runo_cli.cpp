// runo: learn era profiles, evolve poems, frame them, and judge liking.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "runo/aesthetics.hpp"
#include "runo/corpus.hpp"
#include "runo/framing.hpp"
#include "runo/master.hpp"

namespace fs = std::filesystem;
using namespace runo;

namespace {

// Input problems that should exit with status 2 rather than 1.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string config;
  std::size_t threads = 0;
  std::string resources = "data/toy";
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
}

Resources resources_of(const Globals& g) {
  if (!fs::is_directory(g.resources)) throw DataError("resource directory not found: " + g.resources);
  return load_resources(ResourcePaths::in_directory(g.resources));
}

RunConfig config_of(const Globals& g) {
  RunConfig cfg = g.config.empty() ? RunConfig{} : RunConfig::load(g.config);
  if (g.seed_opt->count()) cfg.rng_seed = g.seed;
  if (g.threads_opt->count()) cfg.threads = g.threads;
  cfg.validate();
  return cfg;
}

std::vector<Poem> stanza_poems(const fs::path& path) {
  auto poems = stanza_corpus(load_corpus(path));
  if (poems.empty()) throw DataError("corpus " + path.string() + " has no poems");
  return poems;
}

/// CoNLL-U when any line has a tab, plain text otherwise.
std::vector<Poem> load_poems(const fs::path& path, const Resources& res) {
  const auto content = read_file(path);
  if (content.find('\t') != std::string::npos) return parse_corpus(content);
  const auto* table = dynamic_cast<const TableMorphology*>(res.morphology.get());
  if (!table) throw DataError("plain-text poems need a table morphology");
  return annotate_plain_text(content, *table);
}

const Poem& pick_poem(const std::vector<Poem>& poems, const std::string& id, Rng& rng) {
  if (id.empty()) return poems[rng.index(poems.size())];
  for (const auto& p : poems) {
    if (p.id == id) return p;
  }
  throw DataError("no poem with id '" + id + "'");
}

std::string pick_theme(const std::string& theme, const Resources& res, Rng& rng) {
  if (!theme.empty()) return theme;
  std::vector<std::string> words;
  for (const auto& w : res.embeddings.words()) {
    const auto pos = res.morphology->parts_of_speech(w);
    if (std::any_of(pos.begin(), pos.end(), [](const auto& p) { return is_open_class(p); })) words.push_back(w);
  }
  if (words.empty()) words = res.embeddings.words();
  if (words.empty()) throw DataError("embedding vocabulary is empty");
  return words[rng.index(words.size())];
}

nlohmann::ordered_json fitness_json(const FitnessVector& f) {
  return {{"sonic", f.sonic}, {"semantic", f.semantic}, {"imagerial", f.imagerial}, {"metaphorical", f.metaphorical}};
}

// ---------------------------------------------------------------- learn

struct LearnArgs {
  std::string corpus, era, out;
  std::size_t trees = 100;
};

int cmd_learn(const Globals& g, const LearnArgs& a) {
  const auto res = resources_of(g);
  const auto poems = stanza_poems(a.corpus);
  std::vector<LabeledReport> samples;
  std::size_t unlabeled = 0;
  for (const auto& p : poems) {
    if (!p.era) {
      ++unlabeled;
      continue;
    }
    samples.push_back({evaluate(p, res), *p.era == a.era});
  }
  const auto targets = std::count_if(samples.begin(), samples.end(), [](const auto& s) { return s.target; });
  if (targets == 0) throw DataError("no poems of era '" + a.era + "' in the corpus");
  if (targets == static_cast<std::ptrdiff_t>(samples.size())) throw DataError("corpus has no poems of other eras");
  ForestOptions opts;
  opts.n_trees = a.trees;
  opts.seed = g.seed;
  AestheticProfile profile;
  try {
    profile = learn_profile(samples, a.era, opts);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  profile.save(a.out);
  std::cout << "learned profile for era " << a.era << " from " << targets << " target and "
            << samples.size() - static_cast<std::size_t>(targets) << " other poems";
  if (unlabeled) std::cout << " (" << unlabeled << " without era skipped)";
  std::cout << "\n";
  for (std::size_t gi = 0; gi < kGroupCount; ++gi) {
    const auto group = static_cast<FitnessGroup>(gi);
    std::cout << "  " << name(group) << ":";
    for (auto ae : members(group)) {
      std::cout << ' ' << name(ae) << '=' << std::fixed << std::setprecision(3) << profile[ae].weight;
    }
    std::cout << '\n';
  }
  std::cout << "wrote " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string corpus, profile, theme, poem_id, out, out_corpus;
  std::size_t generations = 0, population = 0;
  CLI::Option* generations_opt = nullptr;
  CLI::Option* population_opt = nullptr;
};

void apply_overrides(RunConfig& cfg, const GenerateArgs& a) {
  if (a.generations_opt && a.generations_opt->count()) cfg.generations = a.generations;
  if (a.population_opt && a.population_opt->count()) {
    cfg.population_size = a.population;
    cfg.offspring_size = a.population;
  }
  cfg.validate();
}

int cmd_generate(const Globals& g, const GenerateArgs& a) {
  auto cfg = config_of(g);
  apply_overrides(cfg, a);
  const auto res = resources_of(g);
  const auto profile = AestheticProfile::load(a.profile);
  const auto poems = stanza_poems(a.corpus);
  Rng rng(cfg.rng_seed);
  const Poem& seed = pick_poem(poems, a.poem_id, rng);
  const auto theme = pick_theme(a.theme, res, rng);
  RunResult result;
  try {
    result = run(seed, theme, cfg, profile, res, rng);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  const auto& chosen = choose_output(result, rng);

  std::size_t liked = 0;
  for (const auto& s : result.population) liked += s.liked;
  std::cout << "seed poem " << seed.id << ", theme " << theme << ", " << result.generations << " generations\n";
  std::cout << liked << "/" << result.population.size() << " individuals liked by the " << profile.era
            << " master\n\n";
  std::cout << poem_text(chosen.individual.poem) << "\n\n";
  std::cout << "fitness " << fitness_json(chosen.fitness).dump() << (chosen.liked ? " (liked)" : "") << "\n";

  if (!a.out.empty()) {
    nlohmann::ordered_json j;
    auto cfg_json = cfg.to_json();
    cfg_json.erase("threads");
    j["config"] = cfg_json;
    j["seed_poem"] = seed.id;
    j["theme"] = theme;
    j["era"] = profile.era;
    j["generations"] = result.generations;
    j["mutations"] = result.mutations;
    j["noop_mutations"] = result.noop_mutations;
    j["chosen"] = poem_text(chosen.individual.poem);
    auto pop = nlohmann::ordered_json::array();
    for (const auto& s : result.population) {
      pop.push_back({{"theme", s.individual.theme},
                     {"text", poem_text(s.individual.poem)},
                     {"fitness", fitness_json(s.fitness)},
                     {"liked", s.liked},
                     {"aesthetics", s.report.to_json()}});
    }
    j["population"] = pop;
    write_file(a.out, j.dump(2) + "\n");
  }
  if (!a.out_corpus.empty()) {
    std::vector<Poem> out;
    for (std::size_t i = 0; i < result.population.size(); ++i) {
      Poem p = result.population[i].individual.poem;
      p.id = seed.id + "_g" + std::to_string(i + 1);
      p.era = profile.era;
      out.push_back(std::move(p));
    }
    write_file(a.out_corpus, serialize_corpus(out));
  }
  return 0;
}

// ---------------------------------------------------------------- frame

struct FrameArgs {
  std::string poems, poem_id, out, json, judgments;
  bool finnish = false;
};

int cmd_frame(const Globals& g, const FrameArgs& a) {
  const auto res = resources_of(g);
  auto poems = load_poems(a.poems, res);
  if (!a.poem_id.empty()) {
    std::erase_if(poems, [&](const Poem& p) { return p.id != a.poem_id; });
    if (poems.empty()) throw DataError("no poem with id '" + a.poem_id + "'");
  }
  if (poems.empty()) throw DataError("no poems in " + a.poems);
  Rng rng(g.seed);
  std::string rendered;
  auto docs = nlohmann::ordered_json::array();
  std::vector<framing::FramingDocument> kept;
  for (const auto& p : poems) {
    const auto analysis = analyze(p, res);
    auto doc = framing::generate_framing(p, analysis, rng);
    if (!rendered.empty()) rendered += "\n";
    rendered += "# " + p.id + "\n" + framing::render(p, doc, a.finnish);
    docs.push_back(doc.to_json());
    kept.push_back(std::move(doc));
  }
  if (a.out.empty()) {
    std::cout << rendered;
  } else {
    write_file(a.out, rendered);
  }
  if (!a.json.empty()) write_file(a.json, docs.dump(2) + "\n");

  if (!a.judgments.empty()) {
    if (kept.size() != 1) throw DataError("--judgments needs exactly one framed poem");
    std::ifstream in(a.judgments);
    if (!in) throw DataError("cannot open " + a.judgments);
    const auto tallies = framing::read_tallies(in);
    const auto agreement = framing::score_agreement(kept.front(), tallies);
    std::cout << "accuracy "
              << (agreement.accuracy ? std::to_string(*agreement.accuracy) : std::string("n/a"))
              << ", ties " << agreement.tie_rate << ", don't know " << agreement.dont_know_rate << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- like

struct LikeArgs {
  std::vector<std::string> poems, profiles;
  std::string json;
};

int cmd_like(const Globals& g, const LikeArgs& a) {
  const auto res = resources_of(g);
  std::vector<AestheticProfile> profiles;
  for (const auto& p : a.profiles) profiles.push_back(AestheticProfile::load(p));

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> matrix;
  for (const auto& path : a.poems) {
    const auto poems = load_poems(path, res);
    std::vector<AestheticReport> reports;
    for (const auto& p : poems) reports.push_back(evaluate(p, res));
    auto& row = matrix.emplace_back();
    for (const auto& profile : profiles) {
      std::size_t liked = 0;
      for (const auto& r : reports) liked += likes(fitness(r, profile));
      row.emplace_back(liked, reports.size());
    }
  }

  auto cell = [](std::pair<std::size_t, std::size_t> c) {
    if (c.second == 0) return std::string("n/a");
    std::ostringstream s;
    s << c.first << "/" << c.second << " (" << std::fixed << std::setprecision(1)
      << 100.0 * static_cast<double>(c.first) / static_cast<double>(c.second) << "%)";
    return s.str();
  };
  std::size_t label_w = 5;
  for (const auto& p : a.poems) label_w = std::max(label_w, p.size());
  std::cout << std::left << std::setw(static_cast<int>(label_w)) << "poems";
  for (const auto& p : profiles) std::cout << "  " << std::setw(20) << ("master " + p.era);
  std::cout << "\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    std::cout << std::setw(static_cast<int>(label_w)) << a.poems[i];
    for (const auto& c : matrix[i]) std::cout << "  " << std::setw(20) << cell(c);
    std::cout << "\n";
  }

  if (!a.json.empty()) {
    nlohmann::ordered_json j;
    auto cols = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < profiles.size(); ++k) cols.push_back({{"profile", a.profiles[k]}, {"era", profiles[k].era}});
    j["masters"] = cols;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      auto cells = nlohmann::ordered_json::array();
      for (const auto& c : matrix[i]) {
        nlohmann::ordered_json e{{"liked", c.first}, {"total", c.second}};
        e["rate"] = c.second ? nlohmann::ordered_json(static_cast<double>(c.first) / static_cast<double>(c.second))
                             : nlohmann::ordered_json(nullptr);
        cells.push_back(e);
      }
      rows.push_back({{"poems", a.poems[i]}, {"cells", cells}});
    }
    j["rows"] = rows;
    write_file(a.json, j.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------- export-pairs

struct ExportArgs {
  GenerateArgs gen;
  std::size_t runs = 1;
};

int cmd_export_pairs(const Globals& g, const ExportArgs& a) {
  auto cfg = config_of(g);
  apply_overrides(cfg, a.gen);
  const auto res = resources_of(g);
  const auto profile = AestheticProfile::load(a.gen.profile);
  const auto poems = stanza_poems(a.gen.corpus);
  Rng rng(cfg.rng_seed);
  std::vector<std::pair<Poem, Poem>> outputs;
  for (std::size_t r = 0; r < a.runs; ++r) {
    const Poem& seed = pick_poem(poems, a.gen.poem_id, rng);
    const auto theme = pick_theme(a.gen.theme, res, rng);
    RunConfig run_cfg = cfg;
    run_cfg.rng_seed = rng.fork();
    Rng run_rng(run_cfg.rng_seed);
    RunResult result;
    try {
      result = run(seed, theme, run_cfg, profile, res, run_rng);
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what());
    }
    outputs.emplace_back(seed, choose_output(result, run_rng).individual.poem);
    std::cerr << "run " << r + 1 << "/" << a.runs << ": " << seed.id << " (" << theme << ")\n";
  }
  const auto exported = export_pairs(outputs, profile.era);
  if (exported.skipped) std::cerr << "warning: skipped " << exported.skipped << " runs with mismatched verse counts\n";
  std::ostringstream out;
  write_pairs(out, exported.records);
  write_file(a.gen.out, out.str());
  std::cout << "wrote " << exported.records.size() << " pairs to " << a.gen.out << "\n";
  return 0;
}

void add_run_options(CLI::App* sub, GenerateArgs& a) {
  sub->add_option("--corpus", a.corpus, "Annotated corpus (CoNLL-U)")->required()->check(CLI::ExistingFile);
  sub->add_option("--profile", a.profile, "Era profile JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--theme", a.theme, "Theme lemma; random open-class vocabulary word when omitted");
  sub->add_option("--poem-id", a.poem_id, "Seed stanza-poem id; random when omitted");
  a.generations_opt = sub->add_option("--generations", a.generations, "Override the configured generation count");
  a.population_opt = sub->add_option("--population", a.population, "Override population and offspring size");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"runo: evolve and judge Finnish poems under learned era aesthetics"};
  app.require_subcommand(1);
  Globals g;
  g.seed_opt = app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--config", g.config, "Run config JSON")->check(CLI::ExistingFile);
  g.threads_opt = app.add_option("--threads", g.threads, "Scoring threads (0 = all cores)");
  app.add_option("--resources", g.resources, "Directory with embeddings, n-grams and lexicons");

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn", "Learn an era profile from a labelled corpus");
  learn_cmd->add_option("--corpus", learn.corpus)->required()->check(CLI::ExistingFile);
  learn_cmd->add_option("--era", learn.era)->required();
  learn_cmd->add_option("--out", learn.out, "Profile JSON to write")->required();
  learn_cmd->add_option("--trees", learn.trees, "Trees per forest")->check(CLI::PositiveNumber);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Evolve a seed poem under a profile");
  add_run_options(gen_cmd, gen);
  gen_cmd->add_option("--out", gen.out, "Report JSON with the final population");
  gen_cmd->add_option("--out-corpus", gen.out_corpus, "Final population as CoNLL-U");

  FrameArgs frame;
  auto* frame_cmd = app.add_subcommand("frame", "Write the 13 framing statements for poems");
  frame_cmd->add_option("--poems", frame.poems, "CoNLL-U or plain-text poems")->required()->check(CLI::ExistingFile);
  frame_cmd->add_option("--poem-id", frame.poem_id);
  frame_cmd->add_option("--out", frame.out, "Rendered text; stdout when omitted");
  frame_cmd->add_option("--json", frame.json, "Structured sidecar");
  frame_cmd->add_option("--judgments", frame.judgments, "CSV tallies to score against")->check(CLI::ExistingFile);
  frame_cmd->add_flag("--finnish", frame.finnish, "Render the Finnish statements");

  LikeArgs like;
  auto* like_cmd = app.add_subcommand("like", "Share of poems each master likes");
  like_cmd->add_option("--poems", like.poems, "Poem files (repeatable)")->required()->check(CLI::ExistingFile);
  like_cmd->add_option("--profile", like.profiles, "Profiles (repeatable)")->required()->check(CLI::ExistingFile);
  like_cmd->add_option("--json", like.json, "Matrix as JSON");

  ExportArgs exp;
  auto* exp_cmd = app.add_subcommand("export-pairs", "Run the master repeatedly and write verse pairs as JSONL");
  add_run_options(exp_cmd, exp.gen);
  exp_cmd->add_option("--runs", exp.runs, "Number of runs")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--out", exp.gen.out, "JSONL output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*learn_cmd) return cmd_learn(g, learn);
    if (*gen_cmd) return cmd_generate(g, gen);
    if (*frame_cmd) return cmd_frame(g, frame);
    if (*like_cmd) return cmd_like(g, like);
    if (*exp_cmd) return cmd_export_pairs(g, exp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
