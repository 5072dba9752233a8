// Copyright 2026 The ScopeIt Authors.
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

#include "scopeit/augment/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>

#include "scopeit/augment/augment.h"
#include "scopeit/common/error.h"
#include "scopeit/common/hash.h"

namespace scopeit::augment {
namespace {

using corpus::GoldEntity;
using corpus::LabeledDocument;
using corpus::SourceTag;
using Rng = std::mt19937_64;

template <typename C>
const auto& choose(Rng& rng, const C& c) {
  return c[std::uniform_int_distribution<size_t>(0, c.size() - 1)(rng)];
}

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

size_t between(Rng& rng, size_t lo, size_t hi) {
  return std::uniform_int_distribution<size_t>(lo, hi)(rng);
}

const std::vector<std::string> kPeople = {"Anna",  "Bob",   "Carlos", "Dana", "Erik",
                                          "Fatima", "Grace", "Hiro",   "Ines", "Jamal",
                                          "Kate",  "Liam",  "Mona",   "Nils"};
const std::vector<std::string> kSurnames = {"Lee",   "Novak",  "Garcia", "Okafor",
                                            "Smith", "Tanaka", "Weber",  "Rossi"};
const std::vector<std::string> kOrgs = {"Contoso", "Fabrikam", "Northwind", "Litware",
                                        "Tailspin", "Woodgrove"};
const std::vector<std::string> kTitles = {"Program Manager", "Sales Director", "Engineer",
                                          "Account Lead", "Analyst"};
const std::vector<std::string> kPlaces = {"the lobby", "the north office", "the cafe on Main Street",
                                          "Room 301", "the downtown office"};
const std::vector<std::string> kDays = {"Monday", "Tuesday", "Wednesday", "Thursday", "Friday",
                                        "next Tuesday"};
const std::vector<std::string> kTimes = {"10am", "2:30 pm", "noon", "3 pm", "9:15 am", "4pm"};
const std::vector<std::string> kZones = {"EST", "PST", "CST", "GMT", "UTC", "CET", "IST", "JST"};

struct Duration {
  std::string text;
  int minutes;
};
const std::vector<Duration> kDurations = {{"15 minutes", 15}, {"20 mins", 20},
                                          {"30 minutes", 30}, {"45 mins", 45},
                                          {"half an hour", 30}, {"1 hour", 60},
                                          {"2 hours", 120},    {"90 min", 90},
                                          {"1 hr", 60}};

struct Line {
  std::string text;
  int label;
};

// Fills {SLOT} markers. PHONE, DUR and TZ fills are recorded as entities.
class Filler {
 public:
  explicit Filler(Rng& rng) : rng_(rng) {}

  std::string fill(std::string_view pattern, std::vector<GoldEntity>* entities) {
    std::string out;
    size_t pos = 0;
    while (pos < pattern.size()) {
      size_t open = pattern.find('{', pos);
      if (open == std::string_view::npos) {
        out.append(pattern.substr(pos));
        break;
      }
      size_t close = pattern.find('}', open);
      out.append(pattern.substr(pos, open - pos));
      out += value(pattern.substr(open + 1, close - open - 1), entities);
      pos = close + 1;
    }
    return out;
  }

 private:
  std::string value(std::string_view slot, std::vector<GoldEntity>* entities) {
    if (slot == "PERSON") return choose(rng_, kPeople);
    if (slot == "FULLNAME") return choose(rng_, kPeople) + " " + choose(rng_, kSurnames);
    if (slot == "ORG") return choose(rng_, kOrgs);
    if (slot == "TITLE") return choose(rng_, kTitles);
    if (slot == "PLACE") return choose(rng_, kPlaces);
    if (slot == "DAY") return choose(rng_, kDays);
    if (slot == "TIME") return choose(rng_, kTimes);
    if (slot == "TZ") {
      std::string z = choose(rng_, kZones);
      if (entities) entities->push_back({"timezone", z});
      return z;
    }
    if (slot == "DUR") {
      const Duration& d = choose(rng_, kDurations);
      if (entities) entities->push_back({"duration", std::to_string(d.minutes)});
      return d.text;
    }
    if (slot == "PHONE") return phone(entities);
    throw SpecError("unknown generator slot {" + std::string(slot) + "}");
  }

  std::string phone(std::vector<GoldEntity>* entities) {
    auto digits = [&](size_t n, char first_min) {
      std::string s(1, static_cast<char>(between(rng_, static_cast<size_t>(first_min), '9')));
      for (size_t i = 1; i < n; ++i) s += static_cast<char>(between(rng_, '0', '9'));
      return s;
    };
    std::string a = digits(3, '2');
    std::string b = digits(3, '2');
    std::string c = digits(4, '0');
    std::string cc;
    std::string text;
    switch (between(rng_, 0, 4)) {
      case 0: text = a + "-" + b + "-" + c; break;
      case 1: text = "(" + a + ") " + b + "-" + c; break;
      case 2: text = a + "." + b + "." + c; break;
      case 3: cc = "1"; text = "+1 " + a + "-" + b + "-" + c; break;
      default: cc = "44"; text = "+44 " + a + " " + b + " " + c; break;
    }
    if (entities) entities->push_back({"phone", cc + a + b + c});
    return text;
  }

  Rng& rng_;
};

const std::vector<std::string> kRelevant = {
    "Can we get together on {DAY} at {TIME}?",
    "Would {DAY} at {TIME} {TZ} work for a quick sync?",
    "Let's set up a call for {DUR} on {DAY}.",
    "Please schedule {DUR} with {PERSON} and me next week.",
    "I'd like to book a room at {PLACE} for {DAY}.",
    "You can reach me at {PHONE} to confirm the time.",
    "Dial in at {PHONE} when the call starts.",
    "I am free {DAY} after {TIME} {TZ} if that suits you.",
    "Could we find {DUR} this week to go over the plan?",
    "Please send an invite for {DAY} morning.",
    "Let's meet at {PLACE} around {TIME}.",
    "Does {TIME} {TZ} on {DAY} fit your calendar?",
};

const std::vector<std::string> kFiller = {
    "I hope your week is going well.",
    "The quarterly numbers look good so far.",
    "{PERSON} shared the draft with {ORG} last week.",
    "Thanks again for the notes you sent.",
    "I attached the updated slides for reference.",
    "The new hires start at {ORG} soon.",
};

const std::vector<std::string> kDistractorFiller = {
    "The last review took {DUR} to finish.",
    "Our build now runs in {DUR} instead of a full day.",
    "The {ORG} help desk follows {TZ} for tickets.",
    "Their support line {PHONE} was very useful.",
};

const std::vector<std::string> kSalutations = {"Hi {PERSON},", "Hello {PERSON},", "Dear {PERSON},",
                                               "Hey {PERSON},"};
const std::vector<std::string> kClosings = {"Thanks,", "Best,", "Regards,", "Cheers,",
                                            "Best regards,"};

const std::vector<std::string> kReplies = {
    "Thanks for setting this up.", "Look forward to meeting you.", "Sounds good, see you then.",
    "Thanks {PERSON}!", "Great, talk soon.", "Works for me, thank you.",
    "Appreciate you organizing this."};

const std::vector<std::string> kNegativeBody = {
    "The invoice is due on {DAY}.",
    "Shipments leave the warehouse at {TIME} {TZ}.",
    "Please review the attached contract before {DAY}.",
    "The server upgrade finished at {TIME}.",
    "Quarterly results are attached.",
    "{PERSON} approved the budget for {ORG}.",
    "Gas prices moved up again this week.",
    "Let me know if the numbers look off.",
    "The training video runs {DUR}.",
    "The quarterly report is ready on the shared drive.",
    "Please update the pricing sheet by {DAY}.",
    "The outage lasted about {DUR} on {DAY}.",
    "Our office will be closed on {DAY}.",
    "I fixed the typo in the slides.",
};

const std::vector<std::string> kDisqualifiedBody = {
    "Can we meet to discuss this?", "Please reserve the projector.",
    "I will book a room for us.",   "The conference room is taken.",
    "Let's schedule a review.",     "The meeting notes are attached.",
};

const std::vector<std::string> kReviewBody = {
    "I watched this movie on {DAY} and loved the ending.",
    "The pasta was amazing and the staff were friendly.",
    "Service was slow but the food made up for it.",
    "We waited {DUR} for a table.",
    "The sequel is better than the original.",
    "Five stars for the soundtrack.",
    "The hotel was clean and quiet.",
    "The plot drags in the middle.",
    "I would come back for the desserts.",
    "We had to reserve a table days ahead.",
};

const std::vector<std::string> kScheduleRelevant = {
    "Please schedule the review with {PERSON}.", "We should schedule a call soon.",
    "Can you schedule time on {DAY}?", "I will schedule the demo for {ORG}."};
const std::vector<std::string> kScheduleOther = {
    "The report is attached.", "{PERSON} liked the draft.", "Numbers are up this quarter.",
    "The office is closed on {DAY}.", "Thanks for the update."};

const std::vector<std::string> kContextFrames = {
    "The team reviewed the plan", "Lisa sent the numbers",     "The vendor shipped the parts",
    "Our lawyer read the draft",  "The board saw the slides",  "Sam fixed the build",
    "The client paid the invoice", "We updated the roadmap",   "Marketing drafted the post",
    "The auditor checked the books", "Support closed the ticket", "Finance moved the budget"};

class Generator {
 public:
  Generator(const SyntheticSpec& spec, uint64_t seed) : spec_(spec), seed_(seed) {}

  Rng family_rng(std::string_view family) const {
    return Rng(seed_ ^ fnv1a64(family));
  }

  void signature(Rng& rng, Filler& f, std::vector<Line>& lines) {
    lines.push_back({f.fill("{FULLNAME}", nullptr), 0});
    lines.push_back({f.fill("{TITLE}, {ORG}", nullptr), 0});
    lines.push_back({f.fill("Tel: {PHONE}", nullptr), 0});
    if (coin(rng, 0.5)) lines.push_back({f.fill("Office hours 9am to 5pm {TZ}", nullptr), 0});
    if (coin(rng, 0.3)) lines.push_back({f.fill("Typical reply time: {DUR}", nullptr), 0});
  }

  LabeledDocument scheduling(Rng& rng, const std::string& id) {
    Filler f(rng);
    std::vector<GoldEntity> gold;
    std::vector<std::vector<Line>> passages;
    passages.push_back({{f.fill(choose(rng, kSalutations), nullptr), 0}});
    auto filler = [&](std::vector<Line>& p) {
      if (coin(rng, spec_.distractor_rate)) {
        p.push_back({f.fill(choose(rng, kDistractorFiller), nullptr), 0});
      } else {
        p.push_back({f.fill(choose(rng, kFiller), nullptr), 0});
      }
    };
    std::vector<Line> opening;
    for (size_t i = 0, n = between(rng, 0, 2); i < n; ++i) filler(opening);
    if (!opening.empty()) passages.push_back(std::move(opening));
    size_t relevant_passages = between(rng, 1, 2);
    for (size_t p = 0; p < relevant_passages; ++p) {
      std::vector<Line> body;
      for (size_t i = 0, n = between(rng, 1, 2); i < n; ++i) {
        body.push_back({f.fill(choose(rng, kRelevant), &gold), 1});
      }
      if (coin(rng, 0.3)) filler(body);
      passages.push_back(std::move(body));
    }
    if (coin(rng, 0.5)) {
      std::vector<Line> tail;
      filler(tail);
      passages.push_back(std::move(tail));
    }
    std::vector<Line> closing = {{choose(rng, kClosings), 0}};
    if (coin(rng, spec_.signature_rate)) signature(rng, f, closing);
    passages.push_back(std::move(closing));
    LabeledDocument d = assemble(id, passages, SourceTag::kInternal);
    d.entities = std::move(gold);
    return d;
  }

  LabeledDocument reply(Rng& rng, const std::string& id) {
    Filler f(rng);
    std::vector<std::vector<Line>> passages;
    passages.push_back({{f.fill(choose(rng, kSalutations), nullptr), 0}});
    std::vector<Line> body;
    for (size_t i = 0, n = between(rng, 1, 2); i < n; ++i) {
      body.push_back({f.fill(choose(rng, kReplies), nullptr), 0});
    }
    passages.push_back(std::move(body));
    std::vector<Line> closing = {{choose(rng, kClosings), 0}};
    if (coin(rng, spec_.signature_rate)) signature(rng, f, closing);
    passages.push_back(std::move(closing));
    return assemble(id, passages, SourceTag::kInternal);
  }

  LabeledDocument negative_candidate(Rng& rng, const std::string& id, bool review) {
    Filler f(rng);
    const auto& pool = review ? kReviewBody : kNegativeBody;
    std::vector<std::vector<Line>> passages;
    if (!review) passages.push_back({{f.fill(choose(rng, kSalutations), nullptr), 0}});
    std::vector<Line> body;
    for (size_t i = 0, n = between(rng, 2, 5); i < n; ++i) {
      body.push_back({f.fill(choose(rng, pool), nullptr), 0});
    }
    if (!review && coin(rng, 0.2)) {
      body.insert(body.begin() + static_cast<long>(between(rng, 0, body.size())),
                  {choose(rng, kDisqualifiedBody), 0});
    }
    passages.push_back(std::move(body));
    if (!review) {
      std::vector<Line> closing = {{choose(rng, kClosings), 0}};
      if (coin(rng, spec_.signature_rate)) signature(rng, f, closing);
      passages.push_back(std::move(closing));
    }
    return assemble(id, passages, review ? SourceTag::kNegativeReview : SourceTag::kNegativeEnron);
  }

  LabeledDocument separable(Rng& rng, const std::string& id) {
    Filler f(rng);
    std::vector<Line> lines;
    size_t n = between(rng, 2, 6);
    size_t forced = between(rng, 0, n - 1);
    for (size_t i = 0; i < n; ++i) {
      bool pos = i == forced || coin(rng, 0.3);
      lines.push_back({f.fill(choose(rng, pos ? kScheduleRelevant : kScheduleOther), nullptr),
                       pos ? 1 : 0});
    }
    return assemble(id, {lines}, SourceTag::kInternal);
  }

  LabeledDocument context(Rng& rng, const std::string& id) {
    const ContextFamilySpec& c = spec_.context;
    std::vector<Line> lines;
    bool prev_y = false;
    for (size_t i = 0, n = between(rng, c.min_sentences, c.max_sentences); i < n; ++i) {
      bool x = coin(rng, c.x_rate);
      bool y = coin(rng, c.y_rate);
      std::string s = choose(rng, kContextFrames);
      if (y) s += " " + c.y_token;
      if (x) s += " as " + c.x_token;
      s += ".";
      lines.push_back({s, (i > 0 && x && prev_y) ? 1 : 0});
      prev_y = y;
    }
    return assemble(id, {lines}, SourceTag::kInternal);
  }

  LabeledDocument assemble(const std::string& id, const std::vector<std::vector<Line>>& passages,
                           SourceTag source) {
    std::vector<std::string> sentences;
    std::vector<int> labels;
    std::vector<int> passage_ids;
    corpus::Stats& s = tally_[id];
    s.n_docs = 1;
    for (size_t p = 0; p < passages.size(); ++p) {
      for (const Line& l : passages[p]) {
        sentences.push_back(l.text);
        labels.push_back(l.label);
        passage_ids.push_back(static_cast<int>(p));
        ++s.n_sent;
        (l.label ? s.n_pos : s.n_neg)++;
      }
    }
    return corpus::make_document(id, sentences, std::move(labels), source, std::move(passage_ids));
  }

  void alias_tally(const std::string& from, const std::string& to) { tally_[to] = tally_.at(from); }

  corpus::Stats tally(const std::vector<LabeledDocument>& docs) const {
    corpus::Stats out;
    for (const LabeledDocument& d : docs) {
      const corpus::Stats& s = tally_.at(d.id());
      out.n_docs += s.n_docs;
      out.n_sent += s.n_sent;
      out.n_pos += s.n_pos;
      out.n_neg += s.n_neg;
    }
    return out;
  }

 private:
  const SyntheticSpec& spec_;
  uint64_t seed_;
  std::unordered_map<std::string, corpus::Stats> tally_;
};

std::string numbered(std::string_view prefix, size_t k) {
  std::string n = std::to_string(k);
  return std::string(prefix) + "-" + std::string(n.size() < 6 ? 6 - n.size() : 0, '0') + n;
}

void check_rate(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw SpecError(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

SyntheticSpec SyntheticSpec::from_json(const nlohmann::json& j) {
  static const std::set<std::string> kKeys = {
      "pos_templates", "replies", "negatives", "review_negatives", "shuffled", "separable",
      "context_dependent", "signature_rate", "distractor_rate", "context", "fractions"};
  static const std::set<std::string> kContextKeys = {"x_rate", "y_rate", "min_sentences",
                                                     "max_sentences", "x_token", "y_token"};
  if (!j.is_object()) throw SpecError("generator spec must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kKeys.count(k)) throw SpecError("unknown generator spec key '" + k + "'");
  }
  SyntheticSpec s;
  try {
    auto count = [&](const char* key, size_t& out) {
      if (!j.contains(key)) return;
      if (!j[key].is_number_integer() || j[key].get<long long>() < 0) {
        throw SpecError(std::string(key) + " must be a non-negative integer");
      }
      out = j[key].get<size_t>();
    };
    count("pos_templates", s.pos_templates);
    count("replies", s.replies);
    count("negatives", s.negatives);
    count("review_negatives", s.review_negatives);
    count("shuffled", s.shuffled);
    count("separable", s.separable);
    count("context_dependent", s.context_dependent);
    s.signature_rate = j.value("signature_rate", s.signature_rate);
    s.distractor_rate = j.value("distractor_rate", s.distractor_rate);
    if (j.contains("context")) {
      const auto& c = j["context"];
      if (!c.is_object()) throw SpecError("context must be an object");
      for (const auto& [k, v] : c.items()) {
        if (!kContextKeys.count(k)) throw SpecError("unknown context key '" + k + "'");
      }
      s.context.x_rate = c.value("x_rate", s.context.x_rate);
      s.context.y_rate = c.value("y_rate", s.context.y_rate);
      s.context.min_sentences = c.value("min_sentences", s.context.min_sentences);
      s.context.max_sentences = c.value("max_sentences", s.context.max_sentences);
      s.context.x_token = c.value("x_token", s.context.x_token);
      s.context.y_token = c.value("y_token", s.context.y_token);
    }
    if (j.contains("fractions")) {
      const auto& f = j["fractions"];
      if (f.is_array() && f.size() == 3) {
        s.fractions = {f[0].get<double>(), f[1].get<double>(), f[2].get<double>()};
      } else if (f.is_object()) {
        s.fractions.train = f.value("train", s.fractions.train);
        s.fractions.validation = f.value("validation", s.fractions.validation);
        s.fractions.test = f.value("test", s.fractions.test);
      } else {
        throw SpecError("fractions must be [train, validation, test] or an object");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("bad generator spec value: ") + e.what());
  }
  check_rate(s.signature_rate, "signature_rate");
  check_rate(s.distractor_rate, "distractor_rate");
  check_rate(s.context.x_rate, "context.x_rate");
  check_rate(s.context.y_rate, "context.y_rate");
  if (s.context.min_sentences < 1 || s.context.max_sentences < s.context.min_sentences) {
    throw SpecError("context sentence bounds must satisfy 1 <= min <= max");
  }
  const auto& f = s.fractions;
  if (f.train < 0 || f.validation < 0 || f.test < 0 ||
      std::abs(f.train + f.validation + f.test - 1.0) > 1e-9) {
    throw SpecError("fractions must be non-negative and sum to 1");
  }
  if (s.base_documents() == 0) throw SpecError("generator spec requests no documents");
  if (s.shuffled > 0 && s.pos_templates == 0) {
    throw SpecError("shuffled variants need scheduling emails (pos_templates)");
  }
  return s;
}

nlohmann::json SyntheticSpec::to_json() const {
  return {{"pos_templates", pos_templates},
          {"replies", replies},
          {"negatives", negatives},
          {"review_negatives", review_negatives},
          {"shuffled", shuffled},
          {"separable", separable},
          {"context_dependent", context_dependent},
          {"signature_rate", signature_rate},
          {"distractor_rate", distractor_rate},
          {"context",
           {{"x_rate", context.x_rate},
            {"y_rate", context.y_rate},
            {"min_sentences", context.min_sentences},
            {"max_sentences", context.max_sentences},
            {"x_token", context.x_token},
            {"y_token", context.y_token}}},
          {"fractions", {fractions.train, fractions.validation, fractions.test}}};
}

size_t SyntheticSpec::base_documents() const {
  return pos_templates + replies + negatives + review_negatives + separable + context_dependent;
}

nlohmann::json Bookkeeping::to_json() const {
  return {{"train", corpus::to_json(train)},
          {"validation", corpus::to_json(validation)},
          {"test", corpus::to_json(test)},
          {"documents_by_family", documents_by_family},
          {"negative_candidates", negative_candidates},
          {"negatives_rejected", negatives_rejected}};
}

SyntheticCorpus build_synthetic_corpus(const SyntheticSpec& spec, uint64_t seed) {
  Generator gen(spec, seed);
  SyntheticCorpus out;
  Bookkeeping& book = out.bookkeeping;
  std::vector<LabeledDocument> docs;
  auto family = [&](const char* name, size_t n, auto make) {
    if (n == 0) return;
    Rng rng = gen.family_rng(name);
    for (size_t k = 0; k < n; ++k) docs.push_back(make(rng, numbered(name, k)));
    book.documents_by_family[name] = n;
  };
  family("sched", spec.pos_templates,
         [&](Rng& rng, const std::string& id) { return gen.scheduling(rng, id); });
  family("reply", spec.replies, [&](Rng& rng, const std::string& id) { return gen.reply(rng, id); });
  family("sep", spec.separable,
         [&](Rng& rng, const std::string& id) { return gen.separable(rng, id); });
  family("ctx", spec.context_dependent,
         [&](Rng& rng, const std::string& id) { return gen.context(rng, id); });

  const DisqualificationList dq = DisqualificationList::defaults();
  auto negatives = [&](const char* name, size_t n, bool review) {
    if (n == 0) return;
    Rng rng = gen.family_rng(name);
    size_t accepted = 0;
    for (size_t k = 0; accepted < n; ++k) {
      LabeledDocument c = gen.negative_candidate(rng, numbered(name, k), review);
      ++book.negative_candidates;
      auto kept = filter_negatives({c}, dq, c.source);
      if (kept.empty()) {
        ++book.negatives_rejected;
        continue;
      }
      docs.push_back(std::move(kept[0]));
      ++accepted;
    }
    book.documents_by_family[name] = n;
  };
  negatives("neg", spec.negatives, false);
  negatives("review", spec.review_negatives, true);

  out.split = corpus::split_corpus(std::move(docs), spec.fractions, seed);

  if (spec.shuffled > 0) {
    std::vector<const LabeledDocument*> eligible;
    for (const LabeledDocument& d : out.split.train) {
      if (d.id().rfind("sched-", 0) == 0 && passage_ranges(d.doc).size() > 3) {
        eligible.push_back(&d);
      }
    }
    if (eligible.empty()) throw SpecError("no training email has more than three passages");
    Rng rng = gen.family_rng("shuf");
    std::vector<LabeledDocument> variants;
    for (size_t k = 0; k < spec.shuffled; ++k) {
      const LabeledDocument& src = *choose(rng, eligible);
      LabeledDocument v = shuffle_passages(src, rng());
      v.doc.id = numbered("shuf", k) + "-" + src.id();
      v.source = SourceTag::kAugmentedShuffle;
      gen.alias_tally(src.id(), v.id());
      variants.push_back(std::move(v));
    }
    for (auto& v : variants) out.split.train.push_back(std::move(v));
    book.documents_by_family["shuf"] = spec.shuffled;
  }

  book.train = gen.tally(out.split.train);
  book.validation = gen.tally(out.split.validation);
  book.test = gen.tally(out.split.test);
  return out;
}

}  // namespace scopeit::augment
