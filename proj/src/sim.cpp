// Copyright 2026 The EVI Authors.
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

#include "evi/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "evi/rng.hpp"
#include "evi/text.hpp"

namespace evi {
namespace {

struct Phrases {
  const char* postcode;
  const char* name;
  const char* dob;
  const char* miss;
};

Phrases phrases_for(Locale l) {
  switch (l) {
    case Locale::kEnGB: return {"my postcode is", "my name is", "i was born on", "sorry can you repeat that"};
    case Locale::kPlPL: return {"mój kod pocztowy to", "nazywam się", "urodziłem się", "przepraszam nie dosłyszałem"};
    case Locale::kFrFR: return {"mon code postal est", "je m'appelle", "je suis né le", "pardon vous pouvez répéter"};
  }
  return {"", "", "", ""};
}

class Speaker {
 public:
  Speaker(const LocaleResources& res, Rng& rng) : res_(res), rng_(rng), phrases_(phrases_for(res.locale)) {
    for (const auto& [word, letter] : res.spelling.alphabet) {
      if (word.find(' ') != std::string::npos) continue;
      auto& slot = nato_[letter];
      if (slot.empty() || word < slot) slot = word;
    }
  }

  std::string postcode(const std::string& pc) {
    switch (rng_.below(5)) {
      case 0: return text::casefold(res_.display_postcode(pc));
      case 1: return spell(pc, false, false);
      case 2: return spell(pc, true, false);
      case 3: return spell(pc, true, true);
      default: return std::string(phrases_.postcode) + " " + text::casefold(res_.display_postcode(pc));
    }
  }

  std::string name(const Profile& p) {
    switch (rng_.below(5)) {
      case 0:
      case 1: return p.name_full();
      case 2: return std::string(phrases_.name) + " " + p.name_full();
      case 3: return p.name_last + " " + p.name_first;
      default: {
        std::string out;
        for (char32_t c : text::to_u32(p.name_last)) {
          if (c == U' ') continue;
          if (!out.empty()) out += ' ';
          out += text::to_utf8(std::u32string(1, c));
        }
        return out;
      }
    }
  }

  std::string dob(const Date& d) {
    const std::string month = res_.month_words[static_cast<std::size_t>(d.month - 1)];
    const std::string day = std::to_string(d.day);
    const std::string year = std::to_string(d.year);
    char numeric[16];
    std::snprintf(numeric, sizeof numeric, "%02d/%02d/%04d", d.day, d.month, d.year);
    switch (rng_.below(4)) {
      case 0: return day + " " + month + " " + year;
      case 1: return std::string(phrases_.dob) + " " + day + " " + month + " " + year;
      case 2: return numeric;
      default: return res_.locale == Locale::kEnGB ? month + " " + day + " " + year : day + " " + month + " " + year;
    }
  }

  std::string miss() const { return phrases_.miss; }

 private:
  std::string spell(const std::string& pc, bool digit_words, bool nato) {
    std::vector<std::string> parts;
    for (char c : pc) {
      if (c >= '0' && c <= '9') {
        parts.push_back(digit_words ? res_.digit_words[static_cast<std::size_t>(c - '0')] : std::string(1, c));
      } else {
        const std::string letter(1, c);
        auto it = nato_.find(letter);
        parts.push_back(nato && it != nato_.end() ? it->second : text::casefold(letter));
      }
    }
    return text::join(parts, " ");
  }

  const LocaleResources& res_;
  Rng& rng_;
  Phrases phrases_;
  std::map<std::string, std::string> nato_;
};

std::string corrupt(const std::string& utterance, Rng& rng) {
  std::vector<std::string> toks = text::split_ws(utterance);
  if (toks.empty()) return utterance;
  const std::size_t at = rng.below(toks.size());
  switch (rng.below(3)) {
    case 0: {
      std::u32string w = text::to_u32(toks[at]);
      w[rng.below(w.size())] = static_cast<char32_t>(U'a' + rng.below(26));
      toks[at] = text::to_utf8(w);
      break;
    }
    case 1:
      if (toks.size() > 1) toks.erase(toks.begin() + static_cast<std::ptrdiff_t>(at));
      break;
    default:
      toks.insert(toks.begin() + static_cast<std::ptrdiff_t>(at), "uh");
      break;
  }
  return text::join(toks, " ");
}

}  // namespace

std::vector<DialogueTranscript> simulate_dialogues(const KnowledgeBase& kb, const LocaleResources& res,
                                                   const SimulationSpec& spec) {
  if (kb.size() == 0) throw ConfigError("cannot simulate dialogues over an empty KB");
  const std::string tag(to_string(res.locale));
  std::vector<DialogueTranscript> out;
  for (std::size_t i = 0; i < spec.n_dialogues; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "sim-%s-%05zu", tag.c_str(), i + 1);
    Rng rng = Rng::keyed(spec.seed, {"dialogue", id});
    const Profile& p = kb.profiles()[rng.below(kb.size())];
    Speaker speaker(res, rng);

    DialogueTranscript t;
    t.dialogue_id = id;
    t.locale = res.locale;
    t.true_profile_id = p.profile_id;
    for (int turn = 1; turn <= 9; ++turn) {
      std::string clean;
      if (rng.bernoulli(spec.miss_rate)) {
        clean = speaker.miss();
      } else {
        switch (Turn::item_for_turn(turn)) {
          case ItemKind::kPostcode: clean = speaker.postcode(p.postcode); break;
          case ItemKind::kName: clean = speaker.name(p); break;
          case ItemKind::kDob: clean = speaker.dob(p.dob); break;
        }
      }
      Turn tr;
      tr.turn_index = turn;
      tr.prompt_variant = "Q" + std::to_string(turn);
      const std::size_t n = 1 + rng.below(std::max<std::size_t>(spec.max_nbest, 1));
      for (std::size_t k = 0; k < n; ++k) {
        const bool noisy = k > 0 || rng.bernoulli(spec.noise);
        tr.nbest.push_back(noisy ? corrupt(clean, rng) : clean);
      }
      t.turns.push_back(std::move(tr));
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace evi
