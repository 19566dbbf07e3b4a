#pragma once

// Bounded enumeration of finite fuzzy interpretations and countermodel search
// for entailment, fm-entailment and validity.
//
// The search space for a signature with |N_C| concept names, |N_R| role names
// and |N_I| individuals, domain sizes 1..N and grid {0, 1/q, ..., 1} is
//
//   sum_{n=1..N} (q+1)^(|N_C| n + |N_R| n^2) * n^|N_I|
//
// interpretations. They are numbered domain size first; within one size the
// index is a mixed-radix number whose least significant digit is the first
// slot. Slots are concept entries (concept-major, then element), then role
// entries (role-major, then x, then y), then individual bindings. With seed 0
// digit d stands for d/q; any other seed permutes the grid values of every
// slot the same way. A search that stops at the first hit therefore returns
// the hit of smallest index, which has minimal domain size.
//
// A negative result only means that no countermodel exists within the bounds.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fzt/interpretation.hpp"
#include "fzt/kb.hpp"
#include "fzt/weighted.hpp"

namespace fzt {

enum class SearchMode { plain, fm };

struct SearchConfig {
  std::size_t max_domain = 2;
  std::int64_t denominator = 2;  // q
  Logic logic = Logic::godel;
  std::uint64_t budget = 1'000'000;  // interpretations examined at most
  SearchMode mode = SearchMode::plain;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  void validate() const {
    if (max_domain < 1) throw std::invalid_argument("max domain size must be at least 1");
    if (denominator < 1) throw std::invalid_argument("grid denominator must be at least 1");
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  }
};

struct SearchStats {
  std::uint64_t examined = 0;  // interpretations visited, up to and including a hit
  std::uint64_t models = 0;    // of those, the ones accepted by the model filter
  std::uint64_t space = 0;     // size of the bounded space (saturating)
  bool truncated = false;      // the budget is smaller than the space
  std::size_t max_domain = 0;
  std::int64_t denominator = 0;
};

namespace detail {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace detail

inline std::uint64_t count_interpretations(const Signature& sig, std::size_t domain_size, std::int64_t q) {
  const std::uint64_t n = domain_size;
  const std::uint64_t grid = static_cast<std::uint64_t>(q) + 1;
  std::uint64_t entries = sig.concepts().size() * n + sig.roles().size() * n * n;
  return detail::sat_mul(detail::sat_pow(grid, entries), detail::sat_pow(n, sig.individuals().size()));
}

inline std::uint64_t count_interpretations_up_to(const Signature& sig, std::size_t max_domain, std::int64_t q) {
  std::uint64_t total = 0;
  for (std::size_t n = 1; n <= max_domain; ++n) total = detail::sat_add(total, count_interpretations(sig, n, q));
  return total;
}

/// Index-addressable space of interpretations; see the header comment.
class InterpretationSpace {
 public:
  InterpretationSpace(Signature sig, const SearchConfig& cfg) : sig_(std::move(sig)), cfg_(cfg) {
    cfg_.validate();
    for (std::int64_t d = 0; d <= cfg_.denominator; ++d) grid_.push_back(Degree(d, cfg_.denominator));
    if (cfg_.seed != 0) {
      std::mt19937_64 rng(cfg_.seed);
      for (std::size_t i = grid_.size() - 1; i > 0; --i) std::swap(grid_[i], grid_[rng() % (i + 1)]);
    }
    std::uint64_t offset = 0;
    for (std::size_t n = 1; n <= cfg_.max_domain; ++n) {
      offsets_.push_back(offset);
      offset = detail::sat_add(offset, count_interpretations(sig_, n, cfg_.denominator));
    }
    total_ = offset;
  }

  const Signature& signature() const { return sig_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t limit() const { return std::min(total_, cfg_.budget); }
  bool truncated() const { return total_ > cfg_.budget; }

  std::size_t domain_size_of(std::uint64_t index) const {
    std::size_t n = 1;
    while (n < offsets_.size() && offsets_[n] <= index) ++n;
    return n;
  }

  FuzzyInterpretation blank(std::size_t n) const { return FuzzyInterpretation::with_size(cfg_.logic, sig_, n); }

  // Overwrites every slot of `out`, whose domain size must be domain_size_of(index).
  void decode(std::uint64_t index, FuzzyInterpretation& out) const {
    const std::size_t n = out.size();
    std::uint64_t local = index - offsets_.at(n - 1);
    const std::uint64_t radix = grid_.size();
    for (std::size_t c = 0; c < sig_.concepts().size(); ++c) {
      auto& values = out.concept_values(c);
      for (std::size_t x = 0; x < n; ++x) {
        values[x] = grid_[local % radix];
        local /= radix;
      }
    }
    for (std::size_t r = 0; r < sig_.roles().size(); ++r) {
      auto& values = out.role_values(r);
      for (std::size_t xy = 0; xy < n * n; ++xy) {
        values[xy] = grid_[local % radix];
        local /= radix;
      }
    }
    for (std::size_t i = 0; i < sig_.individuals().size(); ++i) {
      out.bind_index(i, local % n);
      local /= n;
    }
  }

  FuzzyInterpretation at(std::uint64_t index) const {
    auto I = blank(domain_size_of(index));
    decode(index, I);
    return I;
  }

 private:
  Signature sig_;
  SearchConfig cfg_;
  std::vector<Degree> grid_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t total_ = 0;
};

/// Visits interpretations in index order until `visit(index, I)` returns
/// false or the budget is used up. Returns statistics; `models` stays 0.
template <typename Visitor>
SearchStats enumerate_interpretations(const Signature& sig, const SearchConfig& cfg, Visitor&& visit) {
  InterpretationSpace space(sig, cfg);
  SearchStats stats{0, 0, space.total(), space.truncated(), cfg.max_domain, cfg.denominator};
  std::optional<FuzzyInterpretation> I;
  for (std::uint64_t i = 0; i < space.limit(); ++i) {
    std::size_t n = space.domain_size_of(i);
    if (!I || I->size() != n) I = space.blank(n);
    space.decode(i, *I);
    ++stats.examined;
    if (!visit(i, static_cast<const FuzzyInterpretation&>(*I))) break;
  }
  return stats;
}

/// What a classifier says about one interpretation.
struct Visit {
  bool model = false;  // passes the model filter
  bool hit = false;    // the interpretation the search is looking for
};

struct SearchOutcome {
  std::optional<std::uint64_t> hit_index;
  std::optional<FuzzyInterpretation> hit;
  SearchStats stats;
};

/// Finds the smallest-index interpretation classified as a hit. Work is split
/// into fixed chunks handed out round-robin to `cfg.jobs` threads; the result,
/// including statistics, does not depend on the number of threads.
template <typename Classifier>
SearchOutcome search_interpretations(const Signature& sig, const SearchConfig& cfg, Classifier&& classify) {
  InterpretationSpace space(sig, cfg);
  const std::uint64_t limit = space.limit();
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (limit + kChunk - 1) / kChunk;

  struct ChunkResult {
    std::uint64_t models = 0;
    std::uint64_t examined = 0;
    std::optional<std::uint64_t> hit;
  };
  std::mutex mu;
  std::map<std::uint64_t, ChunkResult> results;
  std::atomic<std::uint64_t> best_chunk{chunks};
  std::atomic<std::uint64_t> next_chunk{0};
  std::exception_ptr error;

  auto worker = [&]() {
    try {
      std::optional<FuzzyInterpretation> I;
      for (;;) {
        std::uint64_t chunk = next_chunk.fetch_add(1);
        if (chunk >= chunks || chunk > best_chunk.load()) return;
        ChunkResult r;
        const std::uint64_t end = std::min(limit, (chunk + 1) * kChunk);
        for (std::uint64_t i = chunk * kChunk; i < end; ++i) {
          std::size_t n = space.domain_size_of(i);
          if (!I || I->size() != n) I = space.blank(n);
          space.decode(i, *I);
          ++r.examined;
          Visit v = classify(static_cast<const FuzzyInterpretation&>(*I));
          if (v.model) ++r.models;
          if (v.hit) {
            r.hit = i;
            break;
          }
        }
        std::lock_guard lock(mu);
        results[chunk] = r;
        if (r.hit) {
          std::uint64_t cur = best_chunk.load();
          while (chunk < cur && !best_chunk.compare_exchange_weak(cur, chunk)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      best_chunk.store(0);
    }
  };

  if (cfg.jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < cfg.jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  SearchOutcome out;
  out.stats = {0, 0, space.total(), false, cfg.max_domain, cfg.denominator};
  for (const auto& [chunk, r] : results) {
    if (chunk > best_chunk.load()) break;
    out.stats.examined += r.examined;
    out.stats.models += r.models;
    if (r.hit) {
      out.hit_index = r.hit;
      out.hit = space.at(*r.hit);
      break;
    }
  }
  out.stats.truncated = space.truncated();
  return out;
}

struct EntailmentVerdict {
  bool refuted = false;
  std::optional<FuzzyInterpretation> countermodel;
  std::uint64_t countermodel_index = 0;
  SearchStats stats;
};

namespace detail {

inline void require_declared(const FuzzyAxiom& ax, const Signature& sig) {
  std::vector<Violation> v;
  check_axiom(ax, sig, "goal", v);
  if (!v.empty()) throw std::invalid_argument("invalid goal axiom: " + v.front().message);
}

inline EntailmentVerdict verdict_from(SearchOutcome&& o) {
  EntailmentVerdict v;
  v.stats = o.stats;
  if (o.hit_index) {
    v.refuted = true;
    v.countermodel = std::move(o.hit);
    v.countermodel_index = *o.hit_index;
  }
  return v;
}

}  // namespace detail

/// Searches for a model of the KB (its strict part in plain mode, an fm-model
/// in fm mode) that falsifies `goal`. The configured logic overrides kb.logic.
inline EntailmentVerdict check_entailment_bounded(const WeightedKB& kb, const FuzzyAxiom& goal,
                                                  const SearchConfig& cfg) {
  detail::require_declared(goal, kb.signature);
  WeightedKB effective = kb;
  effective.logic = cfg.logic;
  const bool fm = cfg.mode == SearchMode::fm;
  return detail::verdict_from(search_interpretations(kb.signature, cfg, [&](const FuzzyInterpretation& I) {
    Visit v;
    v.model = fm ? accepts_fm_model(I, effective) : satisfies_strict_part(I, effective);
    v.hit = v.model && !satisfies(I, goal);
    return v;
  }));
}

inline EntailmentVerdict check_fm_entailment_bounded(const WeightedKB& kb, const FuzzyAxiom& goal,
                                                     SearchConfig cfg) {
  cfg.mode = SearchMode::fm;
  return check_entailment_bounded(kb, goal, cfg);
}

/// Signature holding exactly the names the axiom mentions, sorted.
inline Signature signature_of(const FuzzyAxiom& ax) {
  std::set<std::string> concepts, roles, individuals;
  ax.collect_names(concepts, roles, individuals);
  return Signature({concepts.begin(), concepts.end()}, {roles.begin(), roles.end()},
                   {individuals.begin(), individuals.end()});
}

/// Searches for any interpretation falsifying `ax`.
inline EntailmentVerdict check_validity_bounded(const FuzzyAxiom& ax, Logic logic, SearchConfig cfg) {
  cfg.logic = logic;
  return detail::verdict_from(search_interpretations(signature_of(ax), cfg, [&](const FuzzyInterpretation& I) {
    return Visit{true, !satisfies(I, ax)};
  }));
}

}  // namespace fzt
