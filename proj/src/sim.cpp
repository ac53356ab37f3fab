// Copyright 2026 The Scaffold Authors
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

#include "scaffold/sim.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "scaffold/error.hpp"
#include "scaffold/event_log.hpp"
#include "scaffold/random.hpp"
#include "scaffold/study.hpp"
#include "scaffold/text.hpp"

namespace scaffold {
namespace {

constexpr std::int64_t kSimEpochUnixMs = 1735689600000;  // 2025-01-01T00:00:00Z

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> words = {
      "article",   "discusses", "several",  "researchers", "often",    "people",
      "describe",  "important", "example",  "process",     "studies",  "show",
      "because",   "various",   "approach", "results",     "include",  "overview",
      "later",     "early",     "general",  "common",      "different", "based",
      "related",   "known",     "widely",   "number",      "period",   "evidence",
      "questions", "practice",  "field",    "work",        "view",     "future",
      "terms",     "world",     "level",    "report",      "experts",  "argue",
      "careful",   "reading",   "suggests", "broad",       "detail",   "context",
      "useful",    "summary",   "follows",  "basic",       "notable",  "modern"};
  return words;
}

const std::vector<std::string>& off_topic_words() {
  static const std::vector<std::string> words = {
      "recipe",  "garden", "tomato",  "holiday", "beach",    "guitar",  "painting",
      "coffee",  "travel", "mountain", "camera", "bicycle",  "kitchen", "festival",
      "museum",  "weather", "train",   "novel",   "movie",    "village", "bakery",
      "harbour", "sunset", "picnic",  "lantern", "journey",  "concert", "orchard"};
  return words;
}

const std::vector<std::string>& hosts() {
  static const std::vector<std::string> h = {
      "learnhub.example",   "sciencenotes.example", "dailybrief.example",
      "campus.example",     "openlectures.example", "forum.example"};
  return h;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) {
    std::string clean;
    for (char c : w) {
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || (c & 0x80)) clean += c;
    }
    if (!clean.empty()) words.push_back(clean);
  }
  return words;
}

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  return items[uniform_index(rng, items.size())];
}

// Sentences of 8 to 14 words drawn from the weighted word sources.
std::string compose(Rng& rng, const std::vector<std::string>& primary,
                    const std::vector<std::string>& secondary, std::size_t length,
                    double primary_share) {
  std::string out;
  std::size_t in_sentence = 0;
  std::size_t sentence_length = 8 + uniform_index(rng, 7);
  for (std::size_t i = 0; i < length; ++i) {
    const bool use_primary = !primary.empty() && bernoulli(rng, primary_share);
    std::string word = use_primary ? pick(primary, rng) : pick(secondary, rng);
    if (in_sentence == 0) {
      word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
    }
    out += word;
    if (++in_sentence == sentence_length || i + 1 == length) {
      out += ". ";
      in_sentence = 0;
      sentence_length = 8 + uniform_index(rng, 7);
    } else {
      out += ' ';
    }
  }
  if (!out.empty()) out.pop_back();
  return out;
}

std::string first_words(std::string_view text, std::size_t n) {
  const auto words = [&] {
    std::vector<std::string> w;
    std::istringstream in{std::string(text)};
    std::string s;
    while (w.size() < n && in >> s) w.push_back(s);
    return w;
  }();
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

CorpusDocument make_doc(std::string id, std::string title, std::string body) {
  CorpusDocument d;
  d.doc_id = std::move(id);
  d.title = std::move(title);
  d.snippet = first_words(body, 24);
  d.body = std::move(body);
  return d;
}

}  // namespace

std::vector<CorpusDocument> synthesize_corpus(std::span<const TopicOutline> outlines,
                                              const CorpusSynthesisOptions& options) {
  Rng rng = make_rng(options.seed, 100);
  std::vector<CorpusDocument> docs;
  for (const TopicOutline& topic : outlines) {
    const auto topic_words = split_words(topic.title);
    std::vector<std::string> all_reference;
    for (const Subtopic* sub : topic.subtopics()) {
      std::vector<std::string> words = split_words(sub->reference_text);
      auto title_words = split_words(sub->title);
      all_reference.insert(all_reference.end(), words.begin(), words.end());
      for (int rep = 0; rep < 3; ++rep) {
        words.insert(words.end(), title_words.begin(), title_words.end());
      }
      words.insert(words.end(), topic_words.begin(), topic_words.end());
      for (std::size_t k = 0; k < options.docs_per_subtopic; ++k) {
        const std::size_t length = 90 + uniform_index(rng, 71);
        std::string body = sub->title + " and " + topic.title + ". " +
                           compose(rng, words, filler_words(), length, 0.65);
        std::string title;
        switch (k % 3) {
          case 0: title = sub->title + ": " + topic.title; break;
          case 1: title = "Understanding " + sub->title; break;
          default: title = sub->title + " explained"; break;
        }
        docs.push_back(make_doc("https://" + pick(hosts(), rng) + "/" + topic.topic_id + "/" +
                                    slugify(sub->id) + "-" + std::to_string(k + 1),
                                title, std::move(body)));
      }
    }
    for (std::size_t k = 0; k < options.thin_per_topic; ++k) {
      const std::size_t length = 20 + uniform_index(rng, 21);
      std::string body = topic.title + ". " + compose(rng, all_reference, filler_words(),
                                                      length, 0.6);
      docs.push_back(make_doc("https://forum.example/" + topic.topic_id + "/thread-" +
                                  std::to_string(k + 1),
                              "Short note on " + topic.title, std::move(body)));
    }
    for (std::size_t k = 0; k < options.encyclopedia_per_topic; ++k) {
      std::string body = topic.title + ". ";
      for (const Subtopic& l1 : topic.l1) body += l1.title + ". " + l1.reference_text + " ";
      body.pop_back();
      std::string slug = topic.title;
      std::replace(slug.begin(), slug.end(), ' ', '_');
      docs.push_back(make_doc("https://en.wikipedia.org/wiki/" + slug + "_" +
                                  std::to_string(k + 1),
                              topic.title + " - Encyclopedia", std::move(body)));
    }
  }
  for (std::size_t k = 0; k < options.off_topic; ++k) {
    const std::size_t length = 60 + uniform_index(rng, 81);
    std::string body = compose(rng, off_topic_words(), filler_words(), length, 0.5);
    const std::string title = "Notes about " + pick(off_topic_words(), rng);
    docs.push_back(make_doc("https://misc.example/offtopic/" + std::to_string(k + 1), title,
                            std::move(body)));
  }
  if (docs.size() > options.max_docs) {
    throw ConfigError("synthetic corpus would hold " + std::to_string(docs.size()) +
                      " documents, limit is " + std::to_string(options.max_docs));
  }
  std::sort(docs.begin(), docs.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  return docs;
}

Blacklist default_blacklist() {
  return Blacklist({"wikipedia.org", "wikiwand.com", "wikimedia.org", "dbpedia.org"});
}

std::string_view to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::FreeForm: return "freeform";
    case AgentKind::OutlineFollower: return "outline-follower";
    case AgentKind::GaugeChaser: return "gauge-chaser";
  }
  return "freeform";
}

std::optional<AgentKind> parse_agent(std::string_view name) {
  const std::string n = to_lower_ascii(name);
  for (AgentKind k : kAllAgents) {
    if (n == to_string(k)) return k;
  }
  if (n == "outlinefollower") return AgentKind::OutlineFollower;
  if (n == "gaugechaser") return AgentKind::GaugeChaser;
  return std::nullopt;
}

AgentProfile AgentProfile::defaults(AgentKind kind, std::uint64_t seed) {
  AgentProfile p;
  p.kind = kind;
  p.seed = seed;
  switch (kind) {
    case AgentKind::FreeForm:
      p.query_rate = 1.0;
      p.dwell_mean = 75.0;
      break;
    case AgentKind::OutlineFollower:
      p.query_rate = 1.5;
      p.dwell_mean = 90.0;
      break;
    case AgentKind::GaugeChaser:
      p.query_rate = 2.5;
      p.dwell_mean = 12.0;
      break;
  }
  return p;
}

const TopicOutline& SimWorld::outline(const std::string& topic_id) const {
  for (const auto& o : outlines) {
    if (o.topic_id == topic_id) return o;
  }
  throw LookupError("unknown topic '" + topic_id + "'");
}

namespace {

// Client-side view of one simulated session.
class Agent {
 public:
  Agent(const AgentProfile& profile, const TopicOutline& topic, StrategyKind strategy,
        SessionEngine& engine, ManualClock& clock, const LocalCorpus& corpus,
        std::string session_id, Rng rng)
      : profile_(profile),
        topic_(topic),
        strategy_(strategy),
        engine_(engine),
        clock_(clock),
        corpus_(corpus),
        id_(std::move(session_id)),
        rng_(std::move(rng)),
        subtopics_(topic.subtopics()) {}

  void pretest(const PreTestBundle& bundle) {
    std::vector<VksResponse> responses;
    for (const auto& item : bundle.items) {
      VksRecord r;
      r.term = item.term;
      if (item.topic_id == topic_.topic_id) {
        r.level = 1 + static_cast<int>(uniform_index(rng_, 2));
      } else if (item.topic_id == bundle.attention_topic) {
        r.level = 4;
      } else {
        r.level = 3 + static_cast<int>(uniform_index(rng_, 2));
      }
      if (r.level >= 3) r.definition = "what " + item.term + " means";
      responses.push_back({item.topic_id, r});
      if (item.topic_id == topic_.topic_id) pre_levels_.emplace_back(item.term, r.level);
    }
    clock_.advance(90'000 + static_cast<std::int64_t>(uniform_index(rng_, 60'000)));
    const PreTestOutcome outcome = engine_.submit_pretest(id_, responses);
    if (outcome.assigned_topic != topic_.topic_id) {
      throw ConsistencyError("simulated pre-test did not assign topic " + topic_.topic_id);
    }
    // Pre-test items for the topic keep bundle order; sort for a stable post-test.
    std::sort(pre_levels_.begin(), pre_levels_.end());
  }

  void search() {
    const std::int64_t start = engine_.now_ms(id_);
    const std::int64_t end = start + profile_.session_length.count();
    while (engine_.now_ms(id_) < end) {
      const std::string query = next_query();
      QueryResponse response = engine_.submit_query(id_, query, 1);
      ++queries_;
      browse(response, query, true);
      if (profile_.kind == AgentKind::GaugeChaser && !response.serp.results.empty()) {
        clock_.advance(2'000);
        QueryResponse page2 = engine_.submit_query(id_, query, 2);
        browse(page2, query, false);
      }
      if (bernoulli(rng_, 0.05) && tab_switches_ < 2) {
        ++tab_switches_;
        post(events::TabSwitch{});
      }
      const double wait_s =
          std::clamp(exponential(rng_, 300.0 / profile_.query_rate) * 0.6, 5.0, 480.0);
      clock_.advance(static_cast<std::int64_t>(wait_s * 1000.0));
    }
    // Half the sessions end with a document still open.
    if (!last_serp_.empty() && bernoulli(rng_, 0.5)) {
      for (const auto& doc : last_serp_) {
        if (!opened_.contains(doc)) {
          post(events::DocumentOpened{doc}, true);
          opened_.insert(doc);
          break;
        }
      }
      clock_.advance(30'000);
    }
  }

  void posttest() {
    const std::vector<std::string> concepts = engine_.finish_search(id_);
    const double gain = profile_.kind == AgentKind::OutlineFollower ? 0.5
                        : profile_.kind == AgentKind::FreeForm     ? 0.35
                                                                   : 0.25;
    std::vector<VksRecord> post;
    for (const auto& concept_name : concepts) {
      int pre = 1;
      for (const auto& [term, level] : pre_levels_) {
        if (term == concept_name) pre = level;
      }
      VksRecord r;
      r.term = concept_name;
      r.level = pre;
      if (bernoulli(rng_, gain)) r.level = std::min(4, pre + 1 + static_cast<int>(uniform_index(rng_, 2)));
      if (r.level >= 3) r.definition = "my notes on " + concept_name;
      post.push_back(r);
    }
    clock_.advance(300'000);
    engine_.submit_posttest(id_, post, summary());
  }

 private:
  void post(EventPayload payload, bool with_ts = false) {
    ClientEvent e;
    e.client_seq = ++client_seq_;
    if (with_ts) e.ts_ms = engine_.now_ms(id_);
    e.payload = std::move(payload);
    engine_.post_events(id_, std::span<const ClientEvent>(&e, 1));
  }

  std::vector<std::string> snippet_terms(std::span<const SearchResult> results) const {
    std::vector<std::string> terms;
    for (const auto& r : results) {
      for (auto& t : normalize(r.snippet)) terms.push_back(std::move(t));
    }
    return terms;
  }

  std::string join_distinct(std::vector<std::string> pool, std::size_t n) {
    std::string out;
    std::set<std::string> used;
    for (std::size_t attempt = 0; attempt < 20 && used.size() < n && !pool.empty(); ++attempt) {
      const std::string& t = pick(pool, rng_);
      if (used.insert(t).second) out += (out.empty() ? "" : " ") + t;
    }
    return out;
  }

  std::string free_form_query() {
    std::vector<std::string> pool = last_snippet_terms_;
    if (pool.empty()) {
      const std::string marker = "/" + topic_.topic_id + "/";
      std::vector<const CorpusDocument*> docs;
      for (const auto& d : corpus_.documents()) {
        if (d.doc_id.find(marker) != std::string::npos) docs.push_back(&d);
      }
      if (docs.empty()) throw ConfigError("corpus has no documents for " + topic_.topic_id);
      pool = normalize(pick(docs, rng_)->snippet);
    }
    return join_distinct(std::move(pool), 2 + uniform_index(rng_, 2));
  }

  std::string outline_query() {
    const Subtopic* sub = subtopics_[cursor_++ % subtopics_.size()];
    std::string q = sub->title;
    if (bernoulli(rng_, 0.5)) q = topic_.title + " " + q;
    if (!last_snippet_terms_.empty() && bernoulli(rng_, 0.25)) {
      q += " " + pick(last_snippet_terms_, rng_);
    }
    return q;
  }

  std::string gauge_query() {
    if (strategy_ == StrategyKind::Feedback) {
      const ScaffoldView view = engine_.scaffold(id_);
      const ScaffoldEntry* best = nullptr;
      for (const auto& e : view.entries) {
        if (!best || e.fill_fraction < best->fill_fraction) best = &e;
      }
      if (best) return best->title;
    }
    return pick(subtopics_, rng_)->title;
  }

  std::string next_query() {
    std::string q;
    switch (profile_.kind) {
      case AgentKind::FreeForm: q = free_form_query(); break;
      case AgentKind::OutlineFollower: q = outline_query(); break;
      case AgentKind::GaugeChaser: q = gauge_query(); break;
    }
    if (trim(q).empty()) q = topic_.title;
    return q;
  }

  void browse(const QueryResponse& response, const std::string&, bool first_page) {
    const auto& results = response.serp.results;
    if (first_page) {
      last_snippet_terms_ = snippet_terms(results);
      last_serp_.clear();
      for (const auto& r : results) last_serp_.push_back(r.doc_id);
    }
    const bool gauge = profile_.kind == AgentKind::GaugeChaser;
    const std::size_t viewed =
        gauge ? results.size() : std::min(results.size(), std::size_t{3} + uniform_index(rng_, 3));
    for (std::size_t i = 0; i < viewed; ++i) {
      post(events::SnippetViewed{results[i].doc_id});
      clock_.advance(1'500 + static_cast<std::int64_t>(uniform_index(rng_, 1'500)));
    }
    if (strategy_ == StrategyKind::Curated || strategy_ == StrategyKind::Feedback) {
      if (bernoulli(rng_, 0.3)) post(events::ScaffoldScrolled{});
    }

    const std::size_t to_open = gauge ? 3 + uniform_index(rng_, 2) : 1 + uniform_index(rng_, 2);
    std::size_t opened = 0;
    for (std::size_t i = 0; i < viewed && opened < to_open; ++i) {
      const std::string& doc = results[i].doc_id;
      if (opened_.contains(doc) || hidden_.contains(doc)) continue;
      ++opened;
      opened_.insert(doc);
      read(doc, gauge);
    }
    if (viewed > 0 && bernoulli(rng_, 0.1)) {
      const std::string& doc = results[viewed - 1].doc_id;
      if (!opened_.contains(doc)) {
        hidden_.insert(doc);
        post(events::Hidden{doc});
      }
    }
  }

  void read(const std::string& doc, bool gauge) {
    post(events::DocumentOpened{doc}, true);
    const double dwell_s = gauge ? std::clamp(exponential(rng_, profile_.dwell_mean), 4.0, 40.0)
                                 : std::clamp(exponential(rng_, profile_.dwell_mean), 20.0, 300.0);
    clock_.advance(static_cast<std::int64_t>(dwell_s * 1000.0));
    post(events::DocumentClosed{doc}, true);
    read_docs_.push_back(doc);
    if (bernoulli(rng_, 0.3)) post(events::Bookmarked{doc});
    const double gap_s = std::clamp(exponential(rng_, 15.0), 3.0, 60.0);
    clock_.advance(static_cast<std::int64_t>(gap_s * 1000.0));
  }

  std::string summary() {
    std::vector<std::string> words;
    for (const auto& doc : read_docs_) {
      if (const CorpusDocument* d = corpus_.find(doc)) {
        for (auto& w : split_words(d->snippet)) words.push_back(std::move(w));
      }
    }
    for (auto& w : split_words(topic_.title)) words.push_back(std::move(w));
    std::string text = "I searched for " + topic_.title + " and learned the following.";
    std::size_t count = word_count(text);
    while (count < kMinSummaryWords + 20) {
      text += " " + pick(words, rng_);
      ++count;
    }
    return text;
  }

  const AgentProfile& profile_;
  const TopicOutline& topic_;
  StrategyKind strategy_;
  SessionEngine& engine_;
  ManualClock& clock_;
  const LocalCorpus& corpus_;
  std::string id_;
  Rng rng_;
  std::vector<const Subtopic*> subtopics_;

  std::vector<std::pair<std::string, int>> pre_levels_;
  std::uint64_t client_seq_ = 0;
  std::size_t cursor_ = 0;
  std::size_t queries_ = 0;
  int tab_switches_ = 0;
  std::vector<std::string> last_snippet_terms_;
  std::vector<std::string> last_serp_;
  std::set<std::string> opened_;
  std::set<std::string> hidden_;
  std::vector<std::string> read_docs_;
};

}  // namespace

SimSession run_agent(const AgentProfile& profile, const std::string& topic_id,
                     StrategyKind strategy, SimWorld& world) {
  if (world.outlines.size() < 2) throw ConfigError("simulation needs at least two topics");
  std::size_t index = 0;
  while (index < world.outlines.size() && world.outlines[index].topic_id != topic_id) ++index;
  if (index == world.outlines.size()) throw LookupError("unknown topic '" + topic_id + "'");
  const TopicOutline& topic = world.outlines[index];
  const TopicOutline& decoy = world.outlines[(index + 1) % world.outlines.size()];

  const std::string session_id = "sim-" + std::string(to_string(profile.kind)) + "-" +
                                 std::string(to_string(strategy)) + "-" + topic.topic_id + "-" +
                                 std::to_string(profile.seed);

  TopicCatalog catalog({topic, decoy}, world.attention, world.corpus, world.embedder);
  MemoryEventSink sink;
  ManualClock clock(kSimEpochUnixMs);
  SessionEngine::Options options;
  options.session = world.session;
  options.seed = profile.seed;
  options.id_source = [session_id] { return session_id; };
  SessionEngine engine(catalog, world.corpus, world.blacklist, sink, clock, options);

  const CreatedSession created = engine.create("participant-" + session_id, strategy);
  Agent agent(profile, catalog.outline(topic.topic_id), strategy, engine, clock, world.corpus,
              session_id, make_rng(profile.seed, fnv1a64(session_id)));
  agent.pretest(created.pretest);
  agent.search();
  agent.posttest();

  SimSession result;
  result.session_id = session_id;
  result.log = sink.events(session_id);
  result.state = engine.snapshot(session_id);
  result.record = engine.report(session_id).record;
  return result;
}

}  // namespace scaffold
