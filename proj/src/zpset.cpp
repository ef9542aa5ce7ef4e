#include "subgroup_lab/zpset.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <string>

#include "subgroup_lab/errors.hpp"
#include "subgroup_lab/ntt.hpp"

namespace sglab {

namespace {

std::size_t word_count(std::uint32_t p) { return (static_cast<std::size_t>(p) + 63) / 64; }

std::uint64_t low_mask(std::size_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// 64 bits of src starting at bit pos; bits past the end read as zero.
std::uint64_t read64(std::span<const std::uint64_t> src, std::size_t pos) {
  const std::size_t w = pos >> 6;
  const unsigned b = pos & 63;
  if (w >= src.size()) return 0;
  std::uint64_t v = src[w] >> b;
  if (b != 0 && w + 1 < src.size()) v |= src[w + 1] << (64 - b);
  return v;
}

// Visits [dst_off, dst_off + len) in chunks that never straddle a
// destination word, handing fn(word_index, shift, src_bits).
template <typename Fn>
void for_each_chunk(std::span<const std::uint64_t> src, std::size_t dst_off,
                    std::size_t src_off, std::size_t len, Fn&& fn) {
  std::size_t i = 0;
  while (i < len) {
    const std::size_t d = dst_off + i;
    const unsigned db = d & 63;
    const std::size_t chunk = std::min<std::size_t>(64 - db, len - i);
    fn(d >> 6, db, read64(src, src_off + i) & low_mask(chunk));
    i += chunk;
  }
}

void or_range(std::vector<std::uint64_t>& dst, std::size_t dst_off,
              std::span<const std::uint64_t> src, std::size_t src_off, std::size_t len) {
  for_each_chunk(src, dst_off, src_off, len,
                 [&](std::size_t w, unsigned shift, std::uint64_t bits) {
                   dst[w] |= bits << shift;
                 });
}

void or_translated(std::vector<std::uint64_t>& dst, std::span<const std::uint64_t> src,
                   std::uint32_t p, std::uint32_t z) {
  or_range(dst, z, src, 0, p - z);
  if (z != 0) or_range(dst, 0, src, p - z, z);
}

void require_same_modulus(const ZpSet& x, const ZpSet& y) {
  if (x.p() != y.p()) {
    throw ModulusMismatch("sets over Z_" + std::to_string(x.p()) + " and Z_" +
                          std::to_string(y.p()));
  }
}

}  // namespace

ZpSet::ZpSet(Modulus p) : p_(p), words_(word_count(p.value()), 0) {}

ZpSet::ZpSet(Modulus p, std::vector<std::uint64_t> words)
    : p_(p), words_(std::move(words)) {
  recount();
}

void ZpSet::recount() {
  card_ = 0;
  for (std::uint64_t w : words_) card_ += std::popcount(w);
}

ZpSet ZpSet::from_elements(Modulus p, std::span<const std::uint32_t> elems) {
  std::vector<std::uint64_t> words(word_count(p.value()), 0);
  for (std::uint32_t e : elems) {
    const std::uint32_t x = e % p.value();
    words[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  return ZpSet(p, std::move(words));
}

ZpSet ZpSet::from_elements(Modulus p, std::initializer_list<std::uint32_t> elems) {
  return from_elements(p, std::span<const std::uint32_t>(elems.begin(), elems.size()));
}

ZpSet ZpSet::from_words(Modulus p, std::vector<std::uint64_t> words) {
  words.resize(word_count(p.value()), 0);
  const unsigned tail = p.value() & 63;
  if (tail != 0) words.back() &= low_mask(tail);
  return ZpSet(p, std::move(words));
}

ZpSet ZpSet::full(Modulus p) {
  return from_words(p, std::vector<std::uint64_t>(word_count(p.value()), ~std::uint64_t{0}));
}

ZpSet ZpSet::units(Modulus p) {
  auto words = full(p).words_;
  words[0] &= ~std::uint64_t{1};
  return ZpSet(p, std::move(words));
}

std::vector<std::uint32_t> ZpSet::elements() const {
  std::vector<std::uint32_t> out;
  out.reserve(card_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

ZpSet ZpSet::translated(std::uint32_t z) const {
  z %= p();
  std::vector<std::uint64_t> out(words_.size(), 0);
  or_translated(out, words_, p(), z);
  return ZpSet(p_, std::move(out));
}

bool ZpSet::is_subset_of(const ZpSet& other) const {
  require_same_modulus(*this, other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

std::string ZpSet::to_string() const {
  std::string out = std::to_string(p()) + ":{";
  bool first = true;
  for (std::uint32_t e : elements()) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  out += '}';
  return out;
}

ZpSet ZpSet::parse(std::string_view text) {
  auto fail = [&]() -> ZpSet {
    throw InvalidArgument("malformed set literal: " + std::string(text));
  };
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  const auto colon = compact.find(':');
  if (colon == std::string::npos || compact.size() < colon + 3 ||
      compact[colon + 1] != '{' || compact.back() != '}') {
    return fail();
  }
  auto to_u64 = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) fail();
    return v;
  };
  const Modulus p(to_u64(std::string_view(compact).substr(0, colon)));
  std::vector<std::uint32_t> elems;
  std::string_view body = std::string_view(compact).substr(colon + 2);
  body.remove_suffix(1);
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto v = to_u64(body.substr(0, comma));
    if (v >= p.value()) fail();
    elems.push_back(static_cast<std::uint32_t>(v));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    if (body.empty()) fail();
  }
  return from_elements(p, elems);
}

ZpSet set_union(const ZpSet& x, const ZpSet& y) {
  require_same_modulus(x, y);
  std::vector<std::uint64_t> w(x.words().begin(), x.words().end());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] |= y.words()[i];
  return ZpSet::from_words(x.modulus(), std::move(w));
}

ZpSet set_intersection(const ZpSet& x, const ZpSet& y) {
  require_same_modulus(x, y);
  std::vector<std::uint64_t> w(x.words().begin(), x.words().end());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= y.words()[i];
  return ZpSet::from_words(x.modulus(), std::move(w));
}

std::size_t intersection_count_translated(const ZpSet& x, const ZpSet& y,
                                          std::uint32_t z) {
  require_same_modulus(x, y);
  const std::uint32_t p = x.p();
  z %= p;
  const auto xw = x.words();
  std::size_t count = 0;
  auto acc = [&](std::size_t w, unsigned shift, std::uint64_t bits) {
    count += std::popcount(xw[w] & (bits << shift));
  };
  for_each_chunk(y.words(), z, 0, p - z, acc);
  if (z != 0) for_each_chunk(y.words(), 0, p - z, z, acc);
  return count;
}

ZpSet sumset_shift_or(const ZpSet& x, const ZpSet& y) {
  require_same_modulus(x, y);
  const ZpSet& small = x.size() <= y.size() ? x : y;
  const ZpSet& large = x.size() <= y.size() ? y : x;
  std::vector<std::uint64_t> out(large.words().size(), 0);
  for (std::uint32_t e : small.elements()) or_translated(out, large.words(), x.p(), e);
  return ZpSet::from_words(x.modulus(), std::move(out));
}

ZpSet sumset_convolution(const ZpSet& x, const ZpSet& y) {
  require_same_modulus(x, y);
  const std::uint32_t p = x.p();
  if (x.empty() || y.empty()) return ZpSet(x.modulus());
  std::vector<std::uint64_t> u(p, 0), v(p, 0);
  for (std::uint32_t e : x.elements()) u[e] = 1;
  for (std::uint32_t e : y.elements()) v[e] = 1;
  const auto lin = ntt::linear_convolution(u, v);
  std::vector<std::uint32_t> members;
  for (std::uint32_t z = 0; z < p; ++z) {
    const std::uint64_t c = lin[z] + (z + p < lin.size() ? lin[z + p] : 0);
    if (c >= 1) members.push_back(z);
  }
  return ZpSet::from_elements(x.modulus(), members);
}

ZpSet sumset(const ZpSet& x, const ZpSet& y) {
  if (std::min(x.size(), y.size()) <= kSumsetShiftOrLimit) return sumset_shift_or(x, y);
  return sumset_convolution(x, y);
}

ZpSet fold_sumset(const ZpSet& a, int k) {
  if (k < 1) throw InvalidArgument("fold_sumset requires k >= 1");
  ZpSet acc = a;
  for (int i = 1; i < k; ++i) acc = sumset(acc, a);
  return acc;
}

ZpSet shift_intersect(const ZpSet& c, std::uint32_t z) {
  return set_intersection(c, c.translated(z));
}

ZpSet dilate(const ZpSet& x, std::uint32_t a) {
  const std::uint64_t p = x.p();
  if (a % p == 0) throw InvalidArgument("dilation by 0");
  std::vector<std::uint32_t> out;
  out.reserve(x.size());
  for (std::uint32_t e : x.elements()) {
    out.push_back(static_cast<std::uint32_t>(static_cast<std::uint64_t>(e) * a % p));
  }
  return ZpSet::from_elements(x.modulus(), out);
}

ZpSet to_zpset(const Subgroup& A) { return ZpSet::from_elements(A.modulus(), A.elements()); }

InvariantSet invariant_set_unchecked(const Subgroup& A, std::vector<std::uint32_t> reps,
                                     bool includes_zero) {
  const std::uint64_t p = A.p();
  std::sort(reps.begin(), reps.end());
  std::vector<std::uint32_t> members;
  members.reserve(reps.size() * A.size() + 1);
  for (std::uint32_t r : reps) {
    for (std::uint32_t a : A.elements()) {
      members.push_back(static_cast<std::uint32_t>(r * static_cast<std::uint64_t>(a) % p));
    }
  }
  if (includes_zero) members.push_back(0);
  return InvariantSet(ZpSet::from_elements(A.modulus(), members), A, std::move(reps),
                      includes_zero);
}

InvariantSet invariant_set(const Subgroup& A, std::span<const std::uint32_t> reps,
                           bool includes_zero) {
  const std::uint32_t p = A.p();
  std::vector<bool> seen(p, false);
  std::vector<std::uint32_t> normalized;
  for (std::uint32_t r0 : reps) {
    const std::uint32_t r = r0 % p;
    if (r == 0) throw InvalidArgument("coset representative must be nonzero");
    if (seen[r]) {
      throw InvalidArgument("representatives " + std::to_string(r0) +
                            " duplicates an earlier coset");
    }
    for (std::uint32_t a : A.elements()) {
      seen[static_cast<std::uint64_t>(r) * a % p] = true;
    }
    normalized.push_back(r);
  }
  return invariant_set_unchecked(A, std::move(normalized), includes_zero);
}

bool is_invariant(const ZpSet& s, const Subgroup& A) {
  if (s.p() != A.p()) throw ModulusMismatch("set and subgroup moduli differ");
  const std::uint64_t g = A.generator();
  for (std::uint32_t x : s.elements()) {
    if (x != 0 && !s.contains(static_cast<std::uint32_t>(g * x % A.p()))) return false;
  }
  return true;
}

InvariantSet as_invariant(const ZpSet& s, const CosetDecomposition& cosets) {
  const Subgroup& A = cosets.subgroup();
  if (s.p() != A.p()) throw ModulusMismatch("set and subgroup moduli differ");
  std::vector<std::uint32_t> hits(cosets.count(), 0);
  for (std::uint32_t x : s.elements()) {
    if (x != 0) ++hits[cosets.coset_of(x)];
  }
  std::vector<std::uint32_t> reps;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] == A.order()) {
      reps.push_back(cosets.reps()[i]);
    } else if (hits[i] != 0) {
      throw InvarianceViolation("set meets coset " + std::to_string(cosets.reps()[i]) +
                                "A partially");
    }
  }
  return InvariantSet(s, A, std::move(reps), s.contains(0));
}

InvariantSet invariant_sumset(const InvariantSet& x, const InvariantSet& y,
                              const CosetDecomposition& cosets) {
  if (!(x.subgroup() == y.subgroup()) || !(x.subgroup() == cosets.subgroup())) {
    throw InvalidArgument("invariant_sumset over different subgroups");
  }
  const std::uint32_t p = x.base().p();
  const ZpSet& loop_set = x.size() <= y.size() ? x.base() : y.base();
  const ZpSet& probe_set = x.size() <= y.size() ? y.base() : x.base();
  if (loop_set.empty()) return invariant_set_unchecked(x.subgroup(), {}, false);
  const auto loop = loop_set.elements();
  auto reachable = [&](std::uint32_t target) {
    for (std::uint32_t e : loop) {
      const std::uint32_t other = target >= e ? target - e : target + p - e;
      if (probe_set.contains(other)) return true;
    }
    return false;
  };
  std::vector<std::uint32_t> reps;
  for (std::uint32_t r : cosets.reps()) {
    if (reachable(r)) reps.push_back(r);
  }
  return invariant_set_unchecked(x.subgroup(), std::move(reps), reachable(0));
}

InvariantSet invariant_fold(const CosetDecomposition& cosets, int k) {
  if (k < 1) throw InvalidArgument("invariant_fold requires k >= 1");
  const InvariantSet a = invariant_set_unchecked(cosets.subgroup(), {1}, false);
  InvariantSet acc = a;
  for (int i = 1; i < k; ++i) acc = invariant_sumset(acc, a, cosets);
  return acc;
}

}  // namespace sglab
