#pragma once

// Five-policy fixture corpus with token-keyed signals: every classifier
// decision is linearly separable by construction, so the derived labels and
// the overlap matrix are hand-computable.

#include <string>
#include <vector>

#include "testutil.hpp"

namespace fixture {

// Segment patterns reused verbatim between the training corpus and the
// fixture policies.
inline const char* kLinkedAnalyticsContact =
    "we fpcollect your contactinfo data identifiable docollect inapp "
    "analyticspurpose";
inline const char* kTrackingShare =
    "we tpshare onlineactivity data anonymized adspurpose thirdcollect "
    "docollect";
inline const char* kDoesNotCollect = "we dontcollect fpcollect data";
inline const char* kChildrenAudience = "audiencesect childterm data";
inline const char* kRegionAudience = "audiencesect adultterm data";
inline const char* kMisc = "miscinfo policy data";
inline const char* kWebsiteOnly = "we fpcollect websiteonly data docollect";
inline const char* kSeeOnly = "we tpshare seeonly data docollect";

inline std::vector<std::string> vocabulary() {
  return {"fpcollect",  "tpshare",   "audiencesect", "miscinfo",
          "identifiable", "anonymized", "adspurpose", "analyticspurpose",
          "contactinfo", "onlineactivity", "dontcollect", "docollect",
          "websiteonly", "inapp",     "thirdcollect", "seeonly",
          "childterm",  "adultterm", "we",           "your",
          "data",       "the",       "policy",       "terms",
          "content",    "and"};
}

inline std::string embeddings_text() {
  auto vocab = vocabulary();
  std::string out = std::to_string(vocab.size()) + " " + std::to_string(vocab.size()) + "\n";
  for (size_t i = 0; i < vocab.size(); ++i) {
    out += vocab[i];
    for (size_t d = 0; d < vocab.size(); ++d) {
      out += (d == i) ? " 1" : " 0";
    }
    out += "\n";
  }
  return out;
}

inline std::string training_corpus_jsonl() {
  struct Pattern {
    const char* text;
    const char* annotation;  // practices + attributes JSON fragments
  };
  // Filler suffixes vary the mean embedding without touching the signal.
  const std::vector<std::string> fillers = {"", " the policy", " your terms",
                                            " and content", " the data policy",
                                            " your content"};
  const std::vector<Pattern> patterns = {
      {kLinkedAnalyticsContact,
       R"("practices": ["FirstPartyCollectionUse"], "attributes": {
          "DoesDoesNot": ["Does"], "Identifiability": ["Identifiable"],
          "Purpose": ["AnalyticsResearch"], "PersonalInformationType": ["Contact"],
          "ActionFirstParty": ["CollectInMobileApp"]})"},
      {kTrackingShare,
       R"("practices": ["ThirdPartyCollectionSharing"], "attributes": {
          "DoesDoesNot": ["Does"], "Identifiability": ["AggregatedOrAnonymized"],
          "Purpose": ["Advertising"], "PersonalInformationType": ["UserOnlineActivities"],
          "ActionThirdParty": ["CollectOnFirstPartyWebsiteApp"]})"},
      {kDoesNotCollect,
       R"("practices": ["FirstPartyCollectionUse"], "attributes": {
          "DoesDoesNot": ["DoesNot"]})"},
      {kChildrenAudience,
       R"("practices": ["InternationalSpecificAudiences"], "attributes": {
          "AudienceType": ["Children"]})"},
      {kRegionAudience,
       R"("practices": ["InternationalSpecificAudiences"], "attributes": {
          "AudienceType": ["CitizensOfSpecificRegions"]})"},
      {kMisc, R"("practices": ["Other"], "attributes": {})"},
      {kWebsiteOnly,
       R"("practices": ["FirstPartyCollectionUse"], "attributes": {
          "DoesDoesNot": ["Does"], "ActionFirstParty": ["CollectOnWebsite"]})"},
      {kSeeOnly,
       R"("practices": ["ThirdPartyCollectionSharing"], "attributes": {
          "DoesDoesNot": ["Does"], "ActionThirdParty": ["See"]})"},
  };
  std::string out;
  for (const auto& pattern : patterns) {
    for (const auto& filler : fillers) {
      std::string text = pattern.text + filler;
      out += "{\"text\": \"" + text + "\", " + pattern.annotation + "}\n";
    }
  }
  return out;
}

inline std::string paragraph(const std::string& text) {
  return "<p>" + text + ".</p>\n";
}

// Writes the whole corpus (policies, labels, metadata, embeddings, training
// corpus, templates) plus a config file pointing at it.
inline std::string write_corpus(const testutil::TempDir& dir,
                                const std::string& out_dir) {
  using testutil::write_file;

  write_file(dir.file("policies/pol_a.html"),
             "<html><body>\n" + paragraph(kLinkedAnalyticsContact) +
                 paragraph(kChildrenAudience) + "</body></html>\n");
  write_file(dir.file("policies/pol_b.html"),
             "<html><body>\n" + paragraph(kTrackingShare) + "</body></html>\n");
  write_file(dir.file("policies/pol_c.html"),
             "<html><body>\n" + paragraph(kDoesNotCollect) + "</body></html>\n");
  write_file(dir.file("policies/pol_d.html"),
             "<html><body>\n" + paragraph(kWebsiteOnly) + paragraph(kSeeOnly) +
                 "</body></html>\n");
  write_file(dir.file("policies/pol_e.html"),
             "<html><body>\n" + paragraph(kLinkedAnalyticsContact) +
                 paragraph(kTrackingShare) + "</body></html>\n");

  write_file(dir.file("labels.json"), R"([
    {"app_id": "app_a", "privacy_types": [
      {"type": "DataLinkedToYou", "purposes": [
        {"purpose": "Analytics", "categories": ["ContactInfo"]}]}]},
    {"app_id": "app_b", "privacy_types": [
      {"type": "DataLinkedToYou", "purposes": [
        {"purpose": "Analytics", "categories": ["ContactInfo"]}]}]},
    {"app_id": "app_c", "privacy_types": [{"type": "DataNotCollected"}]},
    {"app_id": "app_d", "privacy_types": [{"type": "DataNotCollected"}]},
    {"app_id": "app_e", "privacy_types": [{"type": "DataNotCollected"}]}
  ])");

  write_file(dir.file("metadata.jsonl"),
             R"({"app_id": "app_a", "price": 0, "has_iap": false, "content_rating": "4+", "policy_url": "https://example.com/pol_a.html", "seller": "A"})"
             "\n"
             R"({"app_id": "app_b", "price": 0, "has_iap": true, "content_rating": "9+", "policy_url": "https://example.com/pol_b.html", "seller": "B"})"
             "\n"
             R"({"app_id": "app_c", "price": 1.99, "has_iap": false, "content_rating": "12+", "policy_url": "https://example.com/pol_c.html", "seller": "C"})"
             "\n"
             R"({"app_id": "app_d", "price": 2.99, "has_iap": true, "content_rating": "17+", "policy_url": "https://example.com/pol_d.html", "seller": "D"})"
             "\n"
             R"({"app_id": "app_e", "price": 0, "has_iap": false, "content_rating": "4+", "policy_url": "https://example.com/pol_e.html", "seller": "E"})"
             "\n");

  write_file(dir.file("embeddings.txt"), embeddings_text());
  write_file(dir.file("train.jsonl"), training_corpus_jsonl());

  write_file(dir.file("templates/tmpl_match.txt"),
             std::string(kLinkedAnalyticsContact) + ".\n\n" + kChildrenAudience +
                 ".\n");
  write_file(dir.file("templates/tmpl_other.txt"),
             "miscinfo policy data terms.\n\nthe policy terms content.\n");

  std::string config = "corpus_dir = " + dir.str() +
                       "\nannotated_corpus = " + dir.file("train.jsonl") +
                       "\nembeddings_file = " + dir.file("embeddings.txt") +
                       "\ntemplates_dir = " + dir.file("templates") +
                       "\nout_dir = " + out_dir +
                       "\nepochs = 300\nlearning_rate = 0.5\nl2 = 0.0001\n"
                       "split_ratio = 0.8\nsplit_seed = 11\ntrain_seed = 12\n"
                       "bootstrap_seed = 13\n";
  write_file(dir.file("config.txt"), config);
  return dir.file("config.txt");
}

}  // namespace fixture
