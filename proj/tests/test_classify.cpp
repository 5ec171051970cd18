#include <doctest.h>

#include <cmath>

#include "labelaudit/classify/annotate.hpp"
#include "labelaudit/classify/metrics.hpp"
#include "labelaudit/classify/train.hpp"
#include "labelaudit/errors.hpp"
#include "labelaudit/ingest/segment.hpp"
#include "labelaudit/rng.hpp"
#include "testutil.hpp"

using namespace labelaudit;
using namespace labelaudit::classify;

namespace {

ingest::AnnotatedSegment seg_with_practices(const std::string& text,
                                            std::set<std::string> practices) {
  ingest::AnnotatedSegment s;
  s.text = text;
  s.practices = std::move(practices);
  return s;
}

ingest::AnnotatedSegment seg_with_attr(const std::string& text, Attribute attr,
                                       std::set<std::string> values) {
  ingest::AnnotatedSegment s;
  s.text = text;
  s.attributes[attr] = std::move(values);
  return s;
}

// Head that predicts its label iff the given basis token is present.
ClassifierModel token_model(Attribute attribute,
                            const std::vector<std::pair<std::string, size_t>>& labels,
                            size_t dimension) {
  ClassifierModel model;
  model.attribute = attribute;
  model.dimension = dimension;
  for (const auto& [label, token_index] : labels) {
    LabelHead head;
    head.label = label;
    head.weights.assign(dimension, 0.0);
    head.weights[token_index] = 40.0;
    head.bias = -10.0;
    model.heads.push_back(std::move(head));
  }
  return model;
}

}  // namespace

// ------------------------------------------------------------------ split

TEST_CASE("split_train_test keeps only relevant segments and splits 80/20") {
  ingest::AnnotatedCorpus corpus;
  for (int i = 0; i < 10; ++i) {
    corpus.segments.push_back(seg_with_attr("text " + std::to_string(i),
                                            Attribute::Identifiability,
                                            {value::kIdentifiable}));
  }
  corpus.segments.push_back(seg_with_practices("irrelevant", {}));
  auto [train_set, test_set] =
      split_train_test(corpus, Attribute::Identifiability, 0.8, 7);
  CHECK(train_set.segments.size() == 8);
  CHECK(test_set.segments.size() == 2);

  SUBCASE("same seed gives identical partitions") {
    auto [train2, test2] = split_train_test(corpus, Attribute::Identifiability, 0.8, 7);
    for (size_t i = 0; i < train_set.segments.size(); ++i) {
      CHECK(train_set.segments[i].text == train2.segments[i].text);
    }
    for (size_t i = 0; i < test_set.segments.size(); ++i) {
      CHECK(test_set.segments[i].text == test2.segments[i].text);
    }
  }
}

TEST_CASE("split_train_test needs at least two relevant segments") {
  ingest::AnnotatedCorpus corpus;
  corpus.segments.push_back(
      seg_with_attr("only one", Attribute::Identifiability, {value::kIdentifiable}));
  CHECK_THROWS_AS(split_train_test(corpus, Attribute::Identifiability, 0.8, 1),
                  InsufficientData);
}

// ------------------------------------------------------------------ train

TEST_CASE("training a separable toy corpus reaches 100% training accuracy") {
  // Label "collect" holds exactly when the token "collect" appears.
  auto embedding = testutil::basis_embedding({"collect", "share", "other", "more"});
  ingest::AnnotatedCorpus train_set;
  for (int i = 0; i < 40; ++i) {
    bool positive = i % 2 == 0;
    std::string text = positive ? "we collect more" : "we share other";
    train_set.segments.push_back(seg_with_practices(
        text, positive ? std::set<std::string>{"FirstPartyCollectionUse"}
                       : std::set<std::string>{"Other"}));
  }
  Hyperparameters hyper;
  hyper.epochs = 300;
  ClassifierModel model =
      train(Attribute::SegmentPractices, train_set, embedding, hyper);

  for (const auto& seg : train_set.segments) {
    auto scores = predict(model, embed::embed_tokens(embedding, ingest::tokenize(seg.text)));
    CHECK(scores.predicted == seg.practices);
  }
}

TEST_CASE("training is deterministic: same data and seed, identical weights") {
  auto embedding = testutil::random_embedding({"a", "b", "c", "d", "e"}, 6, 11);
  ingest::AnnotatedCorpus train_set;
  for (int i = 0; i < 20; ++i) {
    train_set.segments.push_back(seg_with_attr(
        i % 3 ? "a b c" : "d e", Attribute::Purpose,
        i % 3 ? std::set<std::string>{value::kAdvertising}
              : std::set<std::string>{value::kAnalyticsResearch}));
  }
  Hyperparameters hyper;
  ClassifierModel m1 = train(Attribute::Purpose, train_set, embedding, hyper);
  ClassifierModel m2 = train(Attribute::Purpose, train_set, embedding, hyper);
  REQUIRE(m1.heads.size() == m2.heads.size());
  for (size_t h = 0; h < m1.heads.size(); ++h) {
    CHECK(m1.heads[h].bias == m2.heads[h].bias);
    for (size_t d = 0; d < m1.heads[h].weights.size(); ++d) {
      CHECK(m1.heads[h].weights[d] == m2.heads[h].weights[d]);
    }
  }
}

TEST_CASE("training loss is non-increasing per epoch at the default rate") {
  auto embedding = testutil::random_embedding({"p", "q", "r", "s"}, 5, 3);
  std::vector<embed::Vector> features;
  BinaryLogistic problem;
  std::vector<std::string> texts = {"p q", "q r", "r s", "p s", "q", "r"};
  for (size_t i = 0; i < texts.size(); ++i) {
    features.push_back(embed::embed_tokens(embedding, ingest::tokenize(texts[i])));
    problem.targets.push_back(i % 2);
  }
  problem.features = &features;
  problem.l2 = 1e-4;

  embed::Vector w(5, 0.0);
  double b = 0.0;
  double previous = problem.loss(w, b);
  embed::Vector grad(5, 0.0);
  double grad_b = 0.0;
  for (int epoch = 0; epoch < 50; ++epoch) {
    problem.gradient(w, b, grad, grad_b);
    for (size_t d = 0; d < w.size(); ++d) w[d] -= 0.5 * grad[d];
    b -= 0.5 * grad_b;
    double current = problem.loss(w, b);
    CHECK(current <= previous + 1e-12);
    previous = current;
  }
}

TEST_CASE("labels without positives become flagged constant predictors") {
  auto embedding = testutil::basis_embedding({"x", "y"});
  ingest::AnnotatedCorpus train_set;
  // "Does" appears on every segment, "DoesNot" on none that are annotated
  // along with it; include it in the vocabulary via a single segment listing
  // both so the label set contains a no-negative and a normal label.
  train_set.segments.push_back(
      seg_with_attr("x", Attribute::DoesDoesNot, {value::kDoes}));
  train_set.segments.push_back(
      seg_with_attr("y", Attribute::DoesDoesNot, {value::kDoes}));
  ClassifierModel model =
      train(Attribute::DoesDoesNot, train_set, embedding, Hyperparameters{});
  REQUIRE(model.heads.size() == 1);
  REQUIRE(model.heads[0].constant.has_value());
  CHECK(*model.heads[0].constant == true);  // no negative example

  auto scores = predict(model, embed::embed_tokens(embedding, {"x"}));
  CHECK(scores.scores.at(value::kDoes) == 1.0);
}

// ---------------------------------------------------------------- predict

TEST_CASE("zero model scores 0.5 everywhere and the threshold is inclusive") {
  ClassifierModel model;
  model.attribute = Attribute::Purpose;
  model.dimension = 3;
  model.heads.push_back({"A", {0, 0, 0}, 0.0, std::nullopt});
  model.heads.push_back({"B", {0, 0, 0}, 0.0, std::nullopt});
  auto scores = predict(model, {1.0, 2.0, 3.0});
  CHECK(scores.scores.at("A") == doctest::Approx(0.5));
  CHECK(scores.predicted.size() == 2);  // 0.5 >= 0.5
}

TEST_CASE("predict evaluates the sigmoid of the logit") {
  ClassifierModel model;
  model.attribute = Attribute::Purpose;
  model.dimension = 1;
  model.heads.push_back({"pos", {4.0}, 0.0, std::nullopt});
  model.heads.push_back({"neg", {-4.0}, 0.0, std::nullopt});
  auto scores = predict(model, {1.0});
  CHECK(scores.scores.at("pos") == doctest::Approx(0.9820137900));
  CHECK(scores.scores.at("neg") == doctest::Approx(0.0179862100));
  CHECK(scores.predicted == std::set<std::string>{"pos"});

  CHECK_THROWS_AS(predict(model, {1.0, 2.0}), DimensionMismatch);
}

// --------------------------------------------------------------- evaluate

TEST_CASE("evaluate computes presence and absence rows from the confusion") {
  auto embedding = testutil::basis_embedding({"hit", "miss"});
  ClassifierModel model = token_model(Attribute::Purpose, {{"L", 0}}, 2);

  ingest::AnnotatedCorpus test_set;
  test_set.segments.push_back(seg_with_attr("hit", Attribute::Purpose, {"L"}));   // TP
  test_set.segments.push_back(seg_with_attr("hit", Attribute::Purpose, {}));      // FP
  test_set.segments.push_back(seg_with_attr("miss", Attribute::Purpose, {}));     // TN
  test_set.segments.push_back(seg_with_attr("miss", Attribute::Purpose, {}));     // TN

  MetricsReport report = evaluate(model, test_set, embedding);
  const LabelMetrics& m = report.per_label.at("L");
  CHECK(m.presence.precision == doctest::Approx(0.5));
  CHECK(m.presence.recall == doctest::Approx(1.0));
  CHECK(m.presence.f1 == doctest::Approx(2.0 / 3.0));
  CHECK(m.presence.support == 1);
  CHECK(m.absence.precision == doctest::Approx(1.0));
  CHECK(m.absence.recall == doctest::Approx(2.0 / 3.0));
  CHECK(m.absence.f1 == doctest::Approx(0.8));
  CHECK(m.absence.support == 3);
  CHECK(report.macro_f1 == doctest::Approx((2.0 / 3.0 + 0.8) / 2.0));
}

TEST_CASE("a perfect predictor scores 1.0 across the board") {
  auto embedding = testutil::basis_embedding({"a", "b"});
  ClassifierModel model = token_model(Attribute::Purpose, {{"A", 0}, {"B", 1}}, 2);
  ingest::AnnotatedCorpus test_set;
  // Skewed support: A on 9 segments, B on 1.
  for (int i = 0; i < 9; ++i) {
    test_set.segments.push_back(seg_with_attr("a", Attribute::Purpose, {"A"}));
  }
  test_set.segments.push_back(seg_with_attr("b", Attribute::Purpose, {"B"}));
  MetricsReport report = evaluate(model, test_set, embedding);
  CHECK(report.macro_precision == doctest::Approx(1.0));
  CHECK(report.macro_recall == doctest::Approx(1.0));
  CHECK(report.macro_f1 == doctest::Approx(1.0));
}

TEST_CASE("a predictor that never predicts has zero presence recall and F1") {
  auto embedding = testutil::basis_embedding({"a"});
  ClassifierModel model;
  model.attribute = Attribute::Purpose;
  model.dimension = 1;
  model.heads.push_back({"A", {0.0}, -20.0, std::nullopt});
  ingest::AnnotatedCorpus test_set;
  test_set.segments.push_back(seg_with_attr("a", Attribute::Purpose, {"A"}));
  test_set.segments.push_back(seg_with_attr("a", Attribute::Purpose, {"A"}));
  MetricsReport report = evaluate(model, test_set, embedding);
  CHECK(report.per_label.at("A").presence.recall == 0.0);
  CHECK(report.per_label.at("A").presence.f1 == 0.0);
}

// --------------------------------------------------------------- bootstrap

TEST_CASE("bootstrap CI collapses for perfect and always-wrong predictors") {
  auto embedding = testutil::basis_embedding({"a", "b"});
  ingest::AnnotatedCorpus test_set;
  for (int i = 0; i < 10; ++i) {
    test_set.segments.push_back(
        seg_with_attr(i % 2 ? "a" : "b", Attribute::Purpose, {i % 2 ? "A" : "B"}));
  }
  ClassifierModel perfect = token_model(Attribute::Purpose, {{"A", 0}, {"B", 1}}, 2);
  ConfidenceInterval ci = bootstrap_accuracy(perfect, test_set, embedding, 200, 42);
  CHECK(ci.resamples == 200);
  CHECK(ci.point == doctest::Approx(1.0));
  CHECK(ci.lower == doctest::Approx(1.0));
  CHECK(ci.upper == doctest::Approx(1.0));

  // Swapped tokens predict the wrong label everywhere.
  ClassifierModel wrong = token_model(Attribute::Purpose, {{"A", 1}, {"B", 0}}, 2);
  ConfidenceInterval bad = bootstrap_accuracy(wrong, test_set, embedding, 200, 42);
  CHECK(bad.point == doctest::Approx(0.0));
  CHECK(bad.lower == doctest::Approx(0.0));
  CHECK(bad.upper == doctest::Approx(0.0));
}

TEST_CASE("bootstrap bounds are deterministic per seed") {
  auto embedding = testutil::basis_embedding({"a", "b"});
  ingest::AnnotatedCorpus test_set;
  // Half the truth disagrees with the token so accuracy varies by resample.
  for (int i = 0; i < 12; ++i) {
    test_set.segments.push_back(
        seg_with_attr(i % 2 ? "a" : "b", Attribute::Purpose,
                      {i % 4 < 2 ? "A" : "B"}));
  }
  ClassifierModel model = token_model(Attribute::Purpose, {{"A", 0}, {"B", 1}}, 2);
  ConfidenceInterval c1 = bootstrap_accuracy(model, test_set, embedding, 200, 9);
  ConfidenceInterval c2 = bootstrap_accuracy(model, test_set, embedding, 200, 9);
  CHECK(c1.lower == c2.lower);
  CHECK(c1.upper == c2.upper);
  CHECK(c1.lower <= c1.upper);
}

// ---------------------------------------------------------- gradient check

TEST_CASE("analytic gradient matches central finite differences") {
  auto embedding = testutil::random_embedding({"t0", "t1", "t2", "t3", "t4"}, 4, 99);
  std::vector<embed::Vector> features;
  BinaryLogistic problem;
  DeterministicRng rng(5);
  for (int i = 0; i < 12; ++i) {
    std::string text = "t" + std::to_string(rng.bounded(5)) + " t" +
                       std::to_string(rng.bounded(5));
    features.push_back(embed::embed_tokens(embedding, ingest::tokenize(text)));
    problem.targets.push_back(static_cast<int>(rng.bounded(2)));
  }
  problem.features = &features;
  problem.l2 = 0.01;

  embed::Vector w = {0.3, -0.2, 0.05, 0.4};
  double b = -0.1;
  embed::Vector grad(4, 0.0);
  double grad_b = 0.0;
  problem.gradient(w, b, grad, grad_b);

  const double h = 1e-6;
  for (size_t d = 0; d < w.size(); ++d) {
    embed::Vector lo = w, hi = w;
    lo[d] -= h;
    hi[d] += h;
    double fd = (problem.loss(hi, b) - problem.loss(lo, b)) / (2 * h);
    CHECK(std::abs(fd - grad[d]) / std::max(1e-12, std::abs(fd)) < 1e-5);
  }
  double fd_b = (problem.loss(w, b + h) - problem.loss(w, b - h)) / (2 * h);
  CHECK(std::abs(fd_b - grad_b) / std::max(1e-12, std::abs(fd_b)) < 1e-5);
}

// ------------------------------------------------------------ persistence

TEST_CASE("model save/load round-trips to bit-identical predictions") {
  testutil::TempDir dir("model_io");
  auto embedding = testutil::random_embedding({"u", "v", "w"}, 3, 21);
  ingest::AnnotatedCorpus train_set;
  for (int i = 0; i < 12; ++i) {
    train_set.segments.push_back(seg_with_attr(
        i % 2 ? "u v" : "w", Attribute::Identifiability,
        i % 2 ? std::set<std::string>{value::kIdentifiable}
              : std::set<std::string>{value::kAggregatedOrAnonymized}));
  }
  ClassifierModel model =
      train(Attribute::Identifiability, train_set, embedding, Hyperparameters{});
  save_model(model, dir.file("m.model.json"));
  ClassifierModel reloaded = load_model(dir.file("m.model.json"));

  for (const auto& seg : train_set.segments) {
    auto vec = embed::embed_tokens(embedding, ingest::tokenize(seg.text));
    auto a = predict(model, vec);
    auto b = predict(reloaded, vec);
    for (const auto& [label, score] : a.scores) {
      CHECK(score == b.scores.at(label));  // exact, not approximate
    }
    CHECK(a.predicted == b.predicted);
  }
}

// --------------------------------------------------------------- annotate

namespace {

ClassifierStack toy_stack() {
  // Dimension 8 basis: collect,email,audience,child,does,website,see,filler
  ClassifierStack stack;
  stack[Attribute::SegmentPractices] = token_model(
      Attribute::SegmentPractices,
      {{practice::kFirstPartyCollectionUse, 0},
       {practice::kInternationalSpecificAudiences, 2}},
      8);
  stack[Attribute::DoesDoesNot] =
      token_model(Attribute::DoesDoesNot, {{value::kDoesNot, 4}}, 8);
  stack[Attribute::Identifiability] =
      token_model(Attribute::Identifiability, {{value::kIdentifiable, 1}}, 8);
  stack[Attribute::Purpose] =
      token_model(Attribute::Purpose, {{value::kAdvertising, 1}}, 8);
  stack[Attribute::PersonalInformationType] = token_model(
      Attribute::PersonalInformationType, {{value::kContact, 1}}, 8);
  stack[Attribute::AudienceType] =
      token_model(Attribute::AudienceType, {{value::kChildren, 3}}, 8);
  stack[Attribute::ActionFirstParty] =
      token_model(Attribute::ActionFirstParty, {{value::kCollectOnWebsite, 5}}, 8);
  stack[Attribute::ActionThirdParty] =
      token_model(Attribute::ActionThirdParty, {{value::kSee, 6}}, 8);
  return stack;
}

embed::EmbeddingModel toy_embedding() {
  return testutil::basis_embedding(
      {"collect", "email", "audience", "child", "does", "website", "see", "filler"});
}

ingest::Segment make_segment(const std::string& text, int index = 0) {
  ingest::Segment s;
  s.policy_id = "p1";
  s.index = index;
  s.text = text;
  s.tokens = ingest::tokenize(text);
  return s;
}

}  // namespace

TEST_CASE("annotate gates attribute classifiers on predicted practices") {
  auto stack = toy_stack();
  auto embedding = toy_embedding();

  SegmentAnnotation a = annotate(stack, make_segment("collect email"), embedding);
  CHECK(a.practices == std::set<std::string>{practice::kFirstPartyCollectionUse});
  CHECK(a.attributes.count(Attribute::PersonalInformationType) == 1);
  CHECK(a.predicts(Attribute::PersonalInformationType, value::kContact));
  CHECK(a.attributes.count(Attribute::ActionFirstParty) == 1);
  // Third-party action is not triggered without the third-party practice.
  CHECK(a.attributes.count(Attribute::ActionThirdParty) == 0);
  CHECK(a.attributes.count(Attribute::AudienceType) == 0);
}

TEST_CASE("segments with no triggering practice get no attributes") {
  auto stack = toy_stack();
  auto embedding = toy_embedding();
  SegmentAnnotation a = annotate(stack, make_segment("filler"), embedding);
  CHECK(a.practices.empty());
  CHECK(a.attributes.empty());
}

TEST_CASE("audience practice triggers only the audience classifier") {
  auto stack = toy_stack();
  auto embedding = toy_embedding();
  SegmentAnnotation a = annotate(stack, make_segment("audience child"), embedding);
  CHECK(a.practices ==
        std::set<std::string>{practice::kInternationalSpecificAudiences});
  CHECK(a.attributes.size() == 1);
  CHECK(a.predicts(Attribute::AudienceType, value::kChildren));
}

TEST_CASE("a triggered attribute without a model raises MissingClassifier") {
  auto stack = toy_stack();
  stack.erase(Attribute::DoesDoesNot);
  auto embedding = toy_embedding();
  CHECK_THROWS_AS(annotate(stack, make_segment("collect email"), embedding),
                  MissingClassifier);
}

TEST_CASE("gating invariant: attributes imply a triggering practice") {
  auto stack = toy_stack();
  auto embedding = toy_embedding();
  std::vector<std::string> vocabulary = {"collect", "email", "audience", "child",
                                         "does",    "website", "see",     "filler"};
  DeterministicRng rng(13);
  for (int i = 0; i < 200; ++i) {
    std::string text;
    for (size_t k = 0; k < 1 + rng.bounded(4); ++k) {
      if (!text.empty()) text += ' ';
      text += vocabulary[rng.bounded(vocabulary.size())];
    }
    SegmentAnnotation a = annotate(stack, make_segment(text), embedding);
    if (!a.attributes.empty()) {
      bool triggered =
          a.has_practice(practice::kFirstPartyCollectionUse) ||
          a.has_practice(practice::kThirdPartyCollectionSharing) ||
          a.has_practice(practice::kInternationalSpecificAudiences);
      CHECK(triggered);
    }
  }
}
