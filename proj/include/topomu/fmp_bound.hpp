#pragma once

// Finite-model-property size bounds. Per depth level,
//
//   perDepth[0] = 2^s * 2^(2^s)
//   perDepth[n] = 2^s * 2^(2^s) * 2^perDepth[n-1]      (1 <= n <= s-1)
//
// with s = |Sigma|, and the model depth is bounded by s-1. Already at s = 3
// the level-2 value is a power tower no bignum can hold, so values are kept
// as exact lazy towers (c + sum of 2^e with recursive exponents) that
// materialize to plain integers whenever they fit.

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topomu/errors.hpp"

namespace topomu {

using BigInt = boost::multiprecision::cpp_int;

class HugeInt {
 public:
  // Values of 2^e stay materialized while e <= kMaterialBits.
  static constexpr uint64_t kMaterialBits = uint64_t{1} << 21;

  HugeInt() : c_(0) {}
  HugeInt(const BigInt& v) : c_(v) {}          // NOLINT: implicit by design
  HugeInt(uint64_t v) : c_(v) {}               // NOLINT
  HugeInt(int v) : c_(v) {}                    // NOLINT

  static HugeInt exp2(const HugeInt& e) {
    if (e.isMaterial() && e.c_ >= 0 && e.c_ <= kMaterialBits)
      return HugeInt(BigInt(1) << size_t(e.c_));
    HugeInt r;
    r.terms_.push_back(std::make_shared<const HugeInt>(e));
    return r;
  }

  bool isMaterial() const { return terms_.empty(); }

  const BigInt& toBigInt() const {
    if (!isMaterial()) throw InvalidInputError("value too large to materialize");
    return c_;
  }

  HugeInt operator+(const HugeInt& o) const {
    HugeInt r;
    r.c_ = c_ + o.c_;
    r.terms_ = terms_;
    for (const auto& t : o.terms_) r.addTerm(t);
    return r;
  }

  // Exact three-way comparison. Single recursion down the dominant
  // exponents; when two close material exponents would leave the sign
  // ambiguous, both sides are small enough to materialize exactly.
  int compare(const HugeInt& o) const {
    if (isMaterial() && o.isMaterial()) return cmp(c_, o.c_);
    if (isMaterial()) return -o.compareAgainstMaterial(c_);
    if (o.isMaterial()) return compareAgainstMaterial(o.c_);
    const HugeInt& ea = *terms_.front();
    const HugeInt& eb = *o.terms_.front();
    int ce = ea.compare(eb);
    if (ce == 0) return stripTop().compare(o.stripTop());
    // x > y implies 2^x > (terms + c) * 2^y once x - y covers the slack.
    if (ea.isMaterial() && eb.isMaterial()) {
      BigInt gap = ea.c_ - eb.c_;
      if (gap < 0) gap = -gap;
      if (gap >= 64) return ce;
      auto ma = tryMaterialize(kExtendedBits), mb = o.tryMaterialize(kExtendedBits);
      if (ma && mb) return cmp(*ma, *mb);
      throw InvalidInputError("tower comparison too close to decide");
    }
    // An immaterial exponent exceeds any material one by far more than the
    // slack (immaterial values start at 2^(kMaterialBits + 1)).
    return ce;
  }

  bool operator==(const HugeInt& o) const { return compare(o) == 0; }
  bool operator<(const HugeInt& o) const { return compare(o) < 0; }
  bool operator>(const HugeInt& o) const { return compare(o) > 0; }

  // True when the value is exactly 2^e; exposes e.
  bool isPowerOfTwo() const {
    if (isMaterial()) {
      if (c_ <= 0) return false;
      BigInt v = c_;
      return (v & (v - 1)) == 0;
    }
    return c_ == 0 && terms_.size() == 1;
  }

  HugeInt pow2Exponent() const {
    if (!isPowerOfTwo()) throw InvalidInputError("not a power of two");
    if (isMaterial()) return HugeInt(BigInt(boost::multiprecision::msb(c_)));
    return *terms_[0];
  }

  std::string toString() const {
    if (isMaterial()) return c_.str();
    std::string s;
    for (const auto& t : terms_) {
      if (!s.empty()) s += " + ";
      s += "2^(" + t->toString() + ")";
    }
    if (c_ != 0) s += " + " + c_.str();
    return s;
  }

  std::optional<BigInt> tryMaterialize(uint64_t bitLimit = kExtendedBits) const {
    BigInt acc = c_;
    for (const auto& t : terms_) {
      if (!t->isMaterial()) return std::nullopt;
      if (t->c_ < 0 || t->c_ > bitLimit) return std::nullopt;
      acc += BigInt(1) << size_t(t->c_);
    }
    return acc;
  }

 private:
  static constexpr uint64_t kExtendedBits = (uint64_t{1} << 23) + 4096;

  static int cmp(const BigInt& a, const BigInt& b) { return a == b ? 0 : (a < b ? -1 : 1); }

  // Keeps terms sorted descending; merges equal exponents into a carry.
  void addTerm(std::shared_ptr<const HugeInt> t) {
    for (size_t i = 0; i < terms_.size(); ++i) {
      int c = t->compare(*terms_[i]);
      if (c > 0) {
        terms_.insert(terms_.begin() + i, std::move(t));
        return;
      }
      if (c == 0) {  // 2^e + 2^e = 2^(e+1)
        HugeInt bumped = *terms_[i] + HugeInt(1);
        terms_.erase(terms_.begin() + i);
        HugeInt asPow = exp2(bumped);
        if (asPow.isMaterial())
          c_ += asPow.c_;
        else
          addTerm(asPow.terms_[0]);
        return;
      }
    }
    terms_.push_back(std::move(t));
  }

  // *this is immaterial (so at least 2^(kMaterialBits + 1)); other is plain.
  int compareAgainstMaterial(const BigInt& other) const {
    if (other <= 0) return 1;
    BigInt bits = BigInt(boost::multiprecision::msb(other)) + 1;
    const HugeInt& e = *terms_.front();
    // value >= 2^e, and value < 2^(e + 64): decide via e against bits(other)
    if (e.compare(HugeInt(bits)) >= 0) return 1;
    HugeInt upper = e + HugeInt(64);
    if (upper.compare(HugeInt(bits - 1)) <= 0) return -1;
    if (auto m = tryMaterialize(kExtendedBits)) return cmp(*m, other);
    throw InvalidInputError("tower comparison too close to decide");
  }

  HugeInt stripTop() const {
    HugeInt r = *this;
    r.terms_.erase(r.terms_.begin());
    return r;
  }

  BigInt c_;
  std::vector<std::shared_ptr<const HugeInt>> terms_;  // descending exponents
};

struct FmpBound {
  std::vector<HugeInt> perDepth;
  HugeInt total;
  int depthBound = 0;
};

inline FmpBound fmpBound(int sigmaSize) {
  if (sigmaSize < 1)
    throw InvalidInputError("sigma size must be at least 1 (Sigma contains the seed)");
  BigInt a = BigInt(sigmaSize) + (BigInt(1) << sigmaSize);  // log2 of 2^s * 2^(2^s)
  FmpBound out;
  out.depthBound = sigmaSize - 1;
  out.perDepth.push_back(HugeInt::exp2(HugeInt(a)));
  for (int n = 1; n <= sigmaSize - 1; ++n)
    out.perDepth.push_back(HugeInt::exp2(HugeInt(a) + out.perDepth.back()));
  out.total = HugeInt(0);
  for (const auto& v : out.perDepth) out.total = out.total + v;
  return out;
}

}  // namespace topomu
