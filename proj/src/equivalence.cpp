#include "bh/equivalence.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bh/bh_core.hpp"
#include "bh/constructions.hpp"
#include "bh/error.hpp"
#include "bh/number_theory.hpp"

namespace bh {

std::string_view to_string(Criterion c) noexcept {
  switch (c) {
    case Criterion::i: return "i";
    case Criterion::ii: return "ii";
    case Criterion::iii: return "iii";
    case Criterion::iv: return "iv";
    case Criterion::v: return "v";
    case Criterion::vi: return "vi";
    case Criterion::vii_restricted: return "vii-restricted";
    case Criterion::vii_full: return "vii-full";
    case Criterion::direct: return "direct";
  }
  return "?";
}

std::string_view to_string(SingerMode m) noexcept { return m == SingerMode::fast ? "fast" : "full"; }

SingerMode parse_singer_mode(std::string_view text) {
  if (text == "fast") return SingerMode::fast;
  if (text == "full") return SingerMode::full;
  fail(ErrorCode::invalid_argument, "unknown mode '" + std::string(text) + "' (expected fast or full)");
}

std::vector<std::uint64_t> BClassification::representatives() const {
  std::vector<std::uint64_t> out;
  for (const auto& c : classes) out.push_back(c.representative);
  return out;
}

std::uint64_t BClassification::representative_of(std::uint64_t b) const {
  for (const auto& c : classes) {
    if (std::binary_search(c.members.begin(), c.members.end(), b)) return c.representative;
  }
  fail(ErrorCode::invalid_argument, std::to_string(b) + " is not a classified b value");
}

namespace {

// Union-find over [1, window]; the root of a class is always its smallest member.
class Classifier {
 public:
  Classifier(BClassification& cls, std::vector<std::uint64_t> candidates)
      : cls_(cls), parent_(cls.window + 1), candidate_(cls.window + 1, false), classes_(candidates.size()) {
    std::iota(parent_.begin(), parent_.end(), std::uint64_t{0});
    for (auto b : candidates) candidate_[b] = true;
    candidates_ = std::move(candidates);
  }

  const std::vector<std::uint64_t>& candidates() const { return candidates_; }

  std::uint64_t fold(std::uint64_t e) const { return to_one_based(e, cls_.window); }

  // Merges b with the window image of e when that image is a candidate.
  void relate(std::uint64_t b, std::uint64_t e, Criterion why) {
    const std::uint64_t target = fold(e);
    if (!candidate_[target]) return;
    std::uint64_t rb = find(b), re = find(target);
    if (rb == re) return;
    cls_.merges.push_back(Merge{b, e, why});
    if (re < rb) std::swap(rb, re);
    parent_[re] = rb;
    --classes_;
  }

  void close_stage(Criterion stage) { cls_.counts_after_stage.push_back(StageCount{stage, classes_}); }

  void finish() {
    cls_.classes.clear();
    std::vector<std::size_t> slot(parent_.size(), SIZE_MAX);
    for (auto b : candidates_) {
      const std::uint64_t root = find(b);
      if (slot[root] == SIZE_MAX) {
        slot[root] = cls_.classes.size();
        cls_.classes.push_back(EquivalenceClass{root, {}});
      }
      cls_.classes[slot[root]].members.push_back(b);
    }
    std::sort(cls_.classes.begin(), cls_.classes.end(),
              [](const auto& x, const auto& y) { return x.representative < y.representative; });
  }

 private:
  std::uint64_t find(std::uint64_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  BClassification& cls_;
  std::vector<std::uint64_t> parent_;
  std::vector<bool> candidate_;
  std::vector<std::uint64_t> candidates_;
  std::size_t classes_;
};

// Criterion ii / vi: every full-degree exponent in the translation fibre of b.
void translation_stage(const FieldCtx& ctx, const PrimePower& q, Classifier& uf, Criterion why) {
  const auto scalars = ctx.subfield_keys(q);
  for (auto b : uf.candidates()) {
    const auto beta = ctx.exp_key(b);
    for (std::size_t i = 1; i < scalars.size(); ++i) uf.relate(b, ctx.dlog_key(ctx.add_key(beta, scalars[i])), why);
  }
}

void frobenius_stage(const FieldCtx& ctx, Classifier& uf, Criterion why) {
  const std::uint64_t n = ctx.group_order();
  for (auto b : uf.candidates()) uf.relate(b, mul_mod(b, ctx.characteristic(), n), why);
}

bool in_subfield_key(const FieldCtx& ctx, FieldCtx::Key x, const PrimePower& q) {
  return x == 0 || ctx.exponent_degree(ctx.dlog_key(x), q) == 1;
}

FieldCtx::Key scaled(const FieldCtx& ctx, FieldCtx::Key scalar, std::uint64_t exponent) {
  return scalar == 0 ? 0 : ctx.exp_key(ctx.dlog_key(scalar) + exponent);
}

void require_field(const FieldCtx& ctx, Family family, int h, const PrimePower& q) {
  if (h < 2) fail(ErrorCode::invalid_argument, "h must be >= 2");
  if (ctx.characteristic() != q.p || ctx.degree() != family_field_degree(family, h, q)) {
    fail(ErrorCode::invalid_argument, "field does not match classification parameters");
  }
}

}  // namespace

BClassification bose_b_classes(const FieldCtx& ctx, int h, const PrimePower& q) {
  require_field(ctx, Family::bose, h, q);
  BClassification cls;
  cls.family = Family::bose;
  cls.h = h;
  cls.q = q;
  cls.window = family_window(Family::bose, h, q);
  Classifier uf(cls, valid_b_values(ctx, Family::bose, h, q));
  uf.close_stage(Criterion::i);
  frobenius_stage(ctx, uf, Criterion::iii);
  uf.close_stage(Criterion::iii);
  translation_stage(ctx, q, uf, Criterion::ii);
  uf.close_stage(Criterion::ii);
  uf.finish();
  return cls;
}

BClassification singer_b_classes(const FieldCtx& ctx, int h, const PrimePower& q, SingerMode mode) {
  require_field(ctx, Family::singer, h, q);
  BClassification cls;
  cls.family = Family::singer;
  cls.h = h;
  cls.q = q;
  cls.mode = mode;
  cls.window = family_window(Family::singer, h, q);
  const std::uint64_t n = ctx.group_order();
  Classifier uf(cls, valid_b_values(ctx, Family::singer, h, q));
  uf.close_stage(Criterion::iv);
  frobenius_stage(ctx, uf, Criterion::v);
  uf.close_stage(Criterion::v);
  translation_stage(ctx, q, uf, Criterion::vi);
  uf.close_stage(Criterion::vi);

  const auto scalars = ctx.subfield_keys(q);
  // r = 0, t = 1: t^e (t^b + w) = 1 gives e = -dlog(t^b + w).
  for (auto b : uf.candidates()) {
    const auto beta = ctx.exp_key(b);
    for (auto w : scalars) {
      const std::uint64_t lg = ctx.dlog_key(ctx.add_key(beta, w));
      uf.relate(b, (n - lg) % n, Criterion::vii_restricted);
    }
  }
  uf.close_stage(Criterion::vii_restricted);

  if (mode == SingerMode::full) {
    // r t^b + t t^(e+b) + w t^e = s  <=>  t^e = (s - r t^b) / (t t^b + w)
    const std::size_t nq = scalars.size();
    std::vector<std::size_t> neg_index(nq);
    for (std::size_t i = 0; i < nq; ++i) {
      const auto neg = ctx.neg_key(scalars[i]);
      neg_index[i] = static_cast<std::size_t>(std::find(scalars.begin(), scalars.end(), neg) - scalars.begin());
    }
    std::vector<std::uint64_t> logs(nq * nq);
    std::vector<bool> nonzero(nq * nq);
    for (auto b : uf.candidates()) {
      // logs[u * nq + v] = dlog(u t^b + v)
      for (std::size_t u = 0; u < nq; ++u) {
        const auto ub = scaled(ctx, scalars[u], b);
        for (std::size_t v = 0; v < nq; ++v) {
          const auto x = ctx.add_key(ub, scalars[v]);
          nonzero[u * nq + v] = x != 0;
          logs[u * nq + v] = x == 0 ? 0 : ctx.dlog_key(x);
        }
      }
      for (std::size_t r = 0; r < nq; ++r) {
        for (std::size_t t = 0; t < nq; ++t) {
          if (r == 0 && t == 0) continue;
          for (std::size_t w = 0; w < nq; ++w) {
            const std::size_t den = t * nq + w;
            if (!nonzero[den]) continue;
            for (std::size_t s = 0; s < nq; ++s) {
              const std::size_t num = neg_index[r] * nq + s;
              if (!nonzero[num]) continue;
              uf.relate(b, (logs[num] + n - logs[den]) % n, Criterion::vii_full);
            }
          }
        }
      }
    }
    uf.close_stage(Criterion::vii_full);
  }
  uf.finish();
  return cls;
}

BClassification classify(const FieldCtx& ctx, Family family, int h, const PrimePower& q, SingerMode mode) {
  return family == Family::bose ? bose_b_classes(ctx, h, q) : singer_b_classes(ctx, h, q, mode);
}

bool merge_condition_holds(const FieldCtx& ctx, const BClassification& cls, const Merge& merge) {
  const std::uint64_t n = ctx.group_order();
  const PrimePower& q = cls.q;
  const std::uint64_t b = merge.b % n, e = merge.e % n;
  const auto tb = ctx.exp_key(b), te = ctx.exp_key(e);
  const auto scalars = ctx.subfield_keys(q);
  switch (merge.criterion) {
    case Criterion::i:
    case Criterion::iv:
      return b % cls.window == e % cls.window;
    case Criterion::ii:
    case Criterion::vi:
      return in_subfield_key(ctx, ctx.add_key(tb, ctx.neg_key(te)), q);
    case Criterion::iii:
    case Criterion::v: {
      std::uint64_t pi = 1;
      for (unsigned i = 0; i < ctx.degree(); ++i) {
        if (mul_mod(pi, e, n) == b) return true;
        pi = mul_mod(pi, ctx.characteristic(), n);
      }
      return false;
    }
    case Criterion::vii_restricted:
    case Criterion::vii_full: {
      const bool restricted = merge.criterion == Criterion::vii_restricted;
      for (std::size_t r = 0; r < scalars.size(); ++r) {
        for (std::size_t t = 0; t < scalars.size(); ++t) {
          if (r == 0 && t == 0) continue;
          if (restricted && (r != 0 || scalars[t] != 1)) continue;
          for (auto w : scalars) {
            auto sum = ctx.add_key(scaled(ctx, scalars[r], b), scaled(ctx, scalars[t], e + b));
            sum = ctx.add_key(sum, scaled(ctx, w, e));
            if (in_subfield_key(ctx, sum, q)) return true;
          }
        }
      }
      return false;
    }
    case Criterion::direct:
      return affinely_equivalent(construct(ctx, cls.family, cls.h, q, b), construct(ctx, cls.family, cls.h, q, e))
          .has_value();
  }
  return false;
}

CertificationReport certify_inequivalence(const FieldCtx& ctx, const BClassification& cls) {
  CertificationReport report;
  report.refined = cls;
  const auto reps = cls.representatives();
  std::vector<CyclicSet> sets;
  sets.reserve(reps.size());
  for (auto b : reps) sets.push_back(construct(ctx, cls.family, cls.h, cls.q, b));

  // class index -> absorbing class index
  std::vector<std::size_t> owner(reps.size());
  std::iota(owner.begin(), owner.end(), std::size_t{0});
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      ++report.pairs_checked;
      if (!affinely_equivalent(sets[i], sets[j])) continue;
      report.equivalent_pairs.emplace_back(reps[i], reps[j]);
      std::size_t oi = i, oj = j;
      while (owner[oi] != oi) oi = owner[oi];
      while (owner[oj] != oj) oj = owner[oj];
      if (oi == oj) continue;
      owner[oj] = oi;
      report.refined.merges.push_back(Merge{reps[i], reps[j], Criterion::direct});
    }
  }
  if (!report.equivalent_pairs.empty()) {
    std::vector<EquivalenceClass> merged;
    std::vector<std::size_t> slot(reps.size(), SIZE_MAX);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::size_t root = i;
      while (owner[root] != root) root = owner[root];
      if (slot[root] == SIZE_MAX) {
        slot[root] = merged.size();
        merged.push_back(EquivalenceClass{reps[root], {}});
      }
      auto& dst = merged[slot[root]].members;
      dst.insert(dst.end(), cls.classes[i].members.begin(), cls.classes[i].members.end());
    }
    for (auto& c : merged) std::sort(c.members.begin(), c.members.end());
    report.refined.classes = std::move(merged);
    report.refined.counts_after_stage.push_back(StageCount{Criterion::direct, report.refined.classes.size()});
  }
  return report;
}

}  // namespace bh
