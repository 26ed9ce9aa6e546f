#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "runo/aesthetics.hpp"
#include "runo/framing.hpp"
#include "runo/master.hpp"
#include "runo/moo.hpp"
#include "runo/sonic.hpp"

namespace py = pybind11;
using namespace runo;

namespace {

// Structured results cross the boundary as JSON text; the Python side decodes.
std::string poem_json(const Poem& p) {
  nlohmann::ordered_json j;
  j["id"] = p.id;
  j["era"] = p.era ? nlohmann::ordered_json(*p.era) : nlohmann::ordered_json(nullptr);
  auto verses = nlohmann::ordered_json::array();
  for (const auto& v : p.verses) {
    auto tokens = nlohmann::ordered_json::array();
    for (const auto& t : v.tokens) tokens.push_back({{"form", t.surface}, {"lemma", t.lemma}, {"upos", t.pos}});
    verses.push_back(tokens);
  }
  j["verses"] = verses;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the runo poetry engine";

  py::class_<Poem>(m, "Poem")
      .def_readonly("id", &Poem::id)
      .def_readonly("era", &Poem::era)
      .def_property_readonly("verse_count", [](const Poem& p) { return p.verses.size(); })
      .def_property_readonly("text", [](const Poem& p) { return poem_text(p); })
      .def("to_json", &poem_json)
      .def("__repr__", [](const Poem& p) { return "<Poem " + p.id + ">"; });

  m.def("parse_corpus", [](const std::string& text) { return parse_corpus(text); });
  m.def("load_corpus", [](const std::string& path) { return load_corpus(path); });
  m.def("stanza_corpus", [](const std::vector<Poem>& poems) { return stanza_corpus(poems); });
  m.def("serialize_corpus", [](const std::vector<Poem>& poems) { return serialize_corpus(poems); });

  m.def("full_rhyme", &full_rhyme);
  m.def("assonance", &assonance);
  m.def("consonance", &consonance);
  m.def("syllabify", [](const std::string& word) -> std::optional<std::pair<std::vector<std::string>, std::string>> {
    auto s = syllabify(word);
    if (!s) return std::nullopt;
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < s->syllables.size(); ++i) parts.push_back(s->text(i));
    return std::pair{parts, s->pattern()};
  });

  py::class_<Resources, std::shared_ptr<Resources>>(m, "Resources")
      .def_property_readonly("vocabulary_size", [](const Resources& r) { return r.embeddings.size(); });
  m.def("load_resources", [](const std::string& dir) {
    return std::make_shared<Resources>(load_resources(ResourcePaths::in_directory(dir)));
  });
  m.def("annotate_plain_text", [](const std::string& text, const Resources& res) {
    const auto* table = dynamic_cast<const TableMorphology*>(res.morphology.get());
    if (!table) throw std::invalid_argument("resources have no table morphology");
    return annotate_plain_text(text, *table);
  });

  m.def("evaluate_json", [](const Poem& p, const Resources& res) { return evaluate(p, res).to_json().dump(); });
  m.def("gate", &gate, py::arg("value"), py::arg("lo"), py::arg("hi"), py::arg("weight"));
  m.def("percentile", &percentile);

  py::class_<AestheticProfile>(m, "Profile")
      .def_static("load", [](const std::string& path) { return AestheticProfile::load(path); })
      .def_static("identity", &AestheticProfile::identity)
      .def_static("from_json", [](const std::string& s) { return AestheticProfile::from_json(nlohmann::json::parse(s)); })
      .def_readonly("era", &AestheticProfile::era)
      .def("to_json", [](const AestheticProfile& p) { return p.to_json().dump(); });

  m.def("fitness", [](const Poem& p, const AestheticProfile& profile, const Resources& res) {
    return fitness(evaluate(p, res), profile).as_array();
  });
  m.def("likes", [](const Poem& p, const AestheticProfile& profile, const Resources& res) {
    return likes(p, profile, res);
  });
  m.def("learn_profile_json", [](const std::vector<std::pair<Poem, bool>>& labelled, const Resources& res,
                                 const std::string& era, std::uint64_t seed) {
    std::vector<LabeledReport> samples;
    for (const auto& [p, target] : labelled) samples.push_back({evaluate(p, res), target});
    ForestOptions opts;
    opts.seed = seed;
    return learn_profile(samples, era, opts).to_json().dump();
  });

  m.def("fast_nondominated_sort", [](const std::vector<std::vector<double>>& objectives) {
    std::vector<moo::ObjectivePoint> points;
    for (std::size_t i = 0; i < objectives.size(); ++i) points.push_back({i, objectives[i]});
    return moo::fast_nondominated_sort(points);
  });

  m.def(
      "generate_json",
      [](const Poem& seed, const std::string& theme, const AestheticProfile& profile, const Resources& res,
         const std::string& config_json) {
        RunConfig cfg = RunConfig::from_json(nlohmann::json::parse(config_json));
        Rng rng(cfg.rng_seed);
        RunResult result;
        {
          py::gil_scoped_release release;
          result = run(seed, theme, cfg, profile, res, rng);
        }
        auto pop = nlohmann::ordered_json::array();
        for (const auto& s : result.population) {
          const auto f = s.fitness.as_array();
          pop.push_back({{"theme", s.individual.theme},
                         {"text", poem_text(s.individual.poem)},
                         {"verse_count", s.individual.poem.verses.size()},
                         {"fitness", f},
                         {"liked", s.liked}});
        }
        return nlohmann::ordered_json{{"generations", result.generations}, {"population", pop}}.dump();
      },
      py::arg("seed"), py::arg("theme"), py::arg("profile"), py::arg("resources"), py::arg("config_json") = "{}");

  m.def(
      "frame_json",
      [](const Poem& p, const Resources& res, std::uint64_t seed) {
        Rng rng(seed);
        return framing::generate_framing(p, analyze(p, res), rng).to_json().dump();
      },
      py::arg("poem"), py::arg("resources"), py::arg("seed") = 1);

  m.def("export_pairs_jsonl", [](const std::vector<std::pair<Poem, Poem>>& runs, const std::string& era) {
    std::ostringstream out;
    write_pairs(out, export_pairs(runs, era).records);
    return out.str();
  });
}
