#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "ucover/common.hpp"
#include "ucover/elemset.hpp"

namespace ucover {

struct Scenario {
  double prob = 0.0;
  ElemSet elements;
};

// The random request-set model. Three variants:
//   scenario    - explicit list of (probability, request set) pairs,
//   independent - each element activates independently with its own prob,
//   sampler     - black-box draw procedure, exact evaluation impossible.
class Distribution {
 public:
  enum class Kind { scenario, independent, sampler };

  using DrawFn = std::function<ElemSet(uint64_t seed)>;

  static Distribution scenarios(int universe, std::vector<Scenario> scs) {
    Distribution d;
    d.kind_ = Kind::scenario;
    d.n_ = universe;
    double total = 0.0;
    for (const auto& sc : scs) {
      if (sc.prob <= 0.0 || sc.prob > 1.0 + kTol)
        throw ValidationError("scenario probability outside (0,1]");
      if (sc.elements.universe() != universe)
        throw ValidationError("scenario set universe mismatch");
      total += sc.prob;
    }
    // Normalize away float dust; reject anything that is genuinely off.
    if (std::abs(total - 1.0) > 1e-6)
      throw ValidationError("scenario probabilities do not sum to 1");
    for (auto& sc : scs) sc.prob /= total;
    d.scenarios_ = std::move(scs);
    return d;
  }

  static Distribution independent(std::vector<double> probs) {
    Distribution d;
    d.kind_ = Kind::independent;
    d.n_ = static_cast<int>(probs.size());
    for (double p : probs) {
      if (p < -kTol || p > 1.0 + kTol)
        throw ValidationError("activation probability outside [0,1]");
    }
    for (double& p : probs) p = std::min(1.0, std::max(0.0, p));
    d.probs_ = std::move(probs);
    return d;
  }

  static Distribution sampler(int universe, DrawFn draw) {
    Distribution d;
    d.kind_ = Kind::sampler;
    d.n_ = universe;
    d.draw_ = std::move(draw);
    d.draw_calls_ = std::make_shared<std::atomic<uint64_t>>(0);
    return d;
  }

  Kind kind() const { return kind_; }
  int universe() const { return n_; }
  const std::vector<Scenario>& scenario_list() const { return scenarios_; }
  const std::vector<double>& activation_probs() const { return probs_; }

  // Number of black-box draws made so far (sampler variant only).
  uint64_t draw_calls() const { return draw_calls_ ? draw_calls_->load() : 0; }

  friend double hit_prob(const Distribution&, const ElemSet&);
  friend ElemSet sample_request(const Distribution&, uint64_t);

 private:
  Kind kind_ = Kind::scenario;
  int n_ = 0;
  std::vector<Scenario> scenarios_;
  std::vector<double> probs_;
  DrawFn draw_;
  std::shared_ptr<std::atomic<uint64_t>> draw_calls_;
};

// Probability that the sampled request set intersects B. Submodular and
// monotone in B; the kernel of every objective in this library.
inline double hit_prob(const Distribution& dist, const ElemSet& B) {
  if (B.universe() != dist.universe())
    throw ValidationError("hit_prob: universe mismatch");
  if (B.empty()) return 0.0;
  switch (dist.kind()) {
    case Distribution::Kind::scenario: {
      double p = 0.0;
      for (const auto& sc : dist.scenarios_) {
        if (sc.elements.intersects(B)) p += sc.prob;
      }
      return std::min(1.0, p);
    }
    case Distribution::Kind::independent: {
      double miss = 1.0;
      B.for_each([&](int u) { miss *= 1.0 - dist.probs_[u]; });
      return 1.0 - miss;
    }
    case Distribution::Kind::sampler:
      throw NotEvaluableError(
          "hit probability is not exactly evaluable for a sampler "
          "distribution; use the sample-average solver (saa) instead");
  }
  return 0.0;
}

// Convenience: hit probability of a single element.
inline double hit_prob(const Distribution& dist, int u) {
  ElemSet s(dist.universe());
  s.insert(u);
  return hit_prob(dist, s);
}

// Draws one request set. Deterministic function of (dist, seed).
inline ElemSet sample_request(const Distribution& dist, uint64_t seed) {
  switch (dist.kind()) {
    case Distribution::Kind::scenario: {
      std::mt19937_64 gen(seed);
      double u = uniform01(gen);
      double acc = 0.0;
      for (const auto& sc : dist.scenarios_) {
        acc += sc.prob;
        if (u < acc) return sc.elements;
      }
      return dist.scenarios_.back().elements;  // float dust at the top end
    }
    case Distribution::Kind::independent: {
      std::mt19937_64 gen(seed);
      ElemSet out(dist.universe());
      for (int u = 0; u < dist.universe(); ++u) {
        if (uniform01(gen) < dist.probs_[u]) out.insert(u);
      }
      return out;
    }
    case Distribution::Kind::sampler: {
      dist.draw_calls_->fetch_add(1);
      return dist.draw_(seed);
    }
  }
  return ElemSet(dist.universe());
}

// Builds the empirical scenario distribution of a sample list: one scenario
// per distinct sampled set, probability = multiplicity / N.
inline Distribution empirical(int universe, const std::vector<ElemSet>& samples) {
  if (samples.empty()) throw ValidationError("empirical: empty sample list");
  std::map<ElemSet, int> counts;
  for (const auto& s : samples) {
    if (s.universe() != universe)
      throw ValidationError("empirical: sample universe mismatch");
    counts[s] += 1;
  }
  std::vector<Scenario> scs;
  scs.reserve(counts.size());
  const double n = static_cast<double>(samples.size());
  for (const auto& [set, cnt] : counts) scs.push_back({cnt / n, set});
  return Distribution::scenarios(universe, std::move(scs));
}

}  // namespace ucover
